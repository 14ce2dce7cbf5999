#include "ikep/generator.hpp"

#include <cmath>
#include <string>

#include "ikep/error.hpp"
#include "ikep/random.hpp"

namespace ikep {

namespace {

constexpr std::uint64_t kPoolStream = 1;
constexpr std::uint64_t kArrivalStream = 2;
constexpr std::uint64_t kPartitionStream = 3;

const BloodType kBlood[] = {BloodType::kO, BloodType::kA, BloodType::kB, BloodType::kAB};
const PraClass kPra[] = {PraClass::kLow, PraClass::kMedium, PraClass::kHigh};

double failure(const GeneratorParams& g, PraClass p) { return g.crossmatch_failure[static_cast<int>(p)]; }

}  // namespace

bool blood_compatible(BloodType donor, BloodType patient) {
  return donor == BloodType::kO || donor == patient || patient == BloodType::kAB;
}

std::vector<int> country_sizes(SizeSetting setting, int n, int pool) {
  if (n < 1 || n > pool) {
    throw ValidationError("cannot split a pool of " + std::to_string(pool) + " into " + std::to_string(n) +
                          " countries");
  }
  std::vector<int> weight(n, 1);
  if (setting == SizeSetting::kVarying) {
    const int outer = static_cast<int>(std::lround(n / 3.0));
    for (int p = 0; p < n; ++p) weight[p] = p < outer ? 1 : (p < n - outer ? 2 : 3);
  }
  int total = 0;
  for (int w : weight) total += w;
  std::vector<int> sizes(n);
  int used = 0;
  for (int p = 0; p < n; ++p) {
    sizes[p] = static_cast<int>(static_cast<long long>(pool) * weight[p] / total);
    used += sizes[p];
  }
  for (int p = 0; used < pool; p = (p + 1) % n, ++used) ++sizes[p];
  return sizes;
}

CompatibilityGraph generate_pool(const SimulationConfig& cfg, int instance_index) {
  const GeneratorParams& gp = cfg.generator;
  const auto idx = static_cast<std::uint64_t>(instance_index);
  SplitMix64 rng(derive_seed(cfg.seed, {kPoolStream, idx}));
  const int size = cfg.pool_size;

  std::vector<Vertex> vertices(size);
  for (int i = 0; i < size; ++i) {
    Vertex& v = vertices[i];
    v.id = i;
    v.country = 0;
    for (;;) {
      v.patient_blood = kBlood[rng.categorical(gp.blood_frequencies)];
      v.donor_blood = kBlood[rng.categorical(gp.blood_frequencies)];
      v.pra = kPra[rng.categorical(gp.pra_frequencies)];
      const bool own_match =
          blood_compatible(*v.donor_blood, *v.patient_blood) && rng.uniform() >= failure(gp, *v.pra);
      if (!gp.reject_compatible_pairs || !own_match) break;
    }
  }

  std::vector<Edge> edges;
  for (int i = 0; i < size; ++i) {
    for (int j = i + 1; j < size; ++j) {
      const Vertex& a = vertices[i];
      const Vertex& b = vertices[j];
      // Both crossmatches are drawn for every pair to keep streams aligned.
      const bool ab = rng.uniform() >= failure(gp, *b.pra);
      const bool ba = rng.uniform() >= failure(gp, *a.pra);
      if (ab && ba && blood_compatible(*a.donor_blood, *b.patient_blood) &&
          blood_compatible(*b.donor_blood, *a.patient_blood)) {
        edges.emplace_back(i, j);
      }
    }
  }

  SplitMix64 arrivals(derive_seed(cfg.seed, {kArrivalStream, idx}));
  std::vector<int> order(size);
  for (int i = 0; i < size; ++i) order[i] = i;
  arrivals.shuffle(order);
  const int first = std::min(size, static_cast<int>(std::ceil(cfg.round1_fraction * size - 1e-9)));
  for (int k = 0; k < size; ++k) {
    vertices[order[k]].arrival_round =
        k < first || cfg.rounds == 1 ? 1 : static_cast<int>(arrivals.uniform_int(2, cfg.rounds));
  }
  return CompatibilityGraph(1, std::move(vertices), std::move(edges));
}

CompatibilityGraph partition_pool(const CompatibilityGraph& pool, const std::vector<int>& sizes,
                                  std::uint64_t seed) {
  int total = 0;
  for (int s : sizes) total += s;
  if (total != pool.size()) {
    throw ValidationError("country sizes sum to " + std::to_string(total) + " for a pool of " +
                          std::to_string(pool.size()));
  }
  SplitMix64 rng(seed);
  std::vector<int> order(pool.size());
  for (int i = 0; i < pool.size(); ++i) order[i] = i;
  rng.shuffle(order);
  std::vector<Vertex> vertices = pool.vertices();
  int k = 0;
  for (int p = 0; p < static_cast<int>(sizes.size()); ++p) {
    for (int c = 0; c < sizes[p]; ++c) vertices[order[k++]].country = p;
  }
  return CompatibilityGraph(static_cast<int>(sizes.size()), std::move(vertices), pool.edges());
}

CompatibilityGraph generate_instance(const SimulationConfig& cfg, SizeSetting setting, int n,
                                     int instance_index) {
  const CompatibilityGraph pool = generate_pool(cfg, instance_index);
  const std::uint64_t seed =
      derive_seed(cfg.seed, {kPartitionStream, static_cast<std::uint64_t>(setting), static_cast<std::uint64_t>(n),
                             static_cast<std::uint64_t>(instance_index)});
  return partition_pool(pool, country_sizes(setting, n, cfg.pool_size), seed);
}

}  // namespace ikep
