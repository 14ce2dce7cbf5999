#pragma once

#include <cstdint>
#include <vector>

#include "ikep/config.hpp"
#include "ikep/graph.hpp"

namespace ikep {

/// Donor blood type can give to patient blood type.
bool blood_compatible(BloodType donor, BloodType patient);

/// Country sizes summing to pool. Equal: floor(pool / n), remainder to the
/// lowest indices. Varying: round(n / 3) small and as many large countries,
/// the rest medium, with weights 1:2:3 scaled to the pool (small first).
/// Throws ValidationError when n < 1 or n > pool.
std::vector<int> country_sizes(SizeSetting setting, int n, int pool);

/// The country-free pool of one instance: pool_size pairs with blood types,
/// PRA classes, arrival rounds and mutual-compatibility edges, all in
/// country 0. Depends only on (cfg.seed, instance index) and the pool and
/// generator parameters, so every n and setting shares it.
CompatibilityGraph generate_pool(const SimulationConfig& cfg, int instance_index);

/// Relabels the pool into countries of the given sizes by a seeded shuffle.
CompatibilityGraph partition_pool(const CompatibilityGraph& pool, const std::vector<int>& sizes,
                                  std::uint64_t seed);

/// generate_pool followed by a partition for (setting, n). Deterministic.
CompatibilityGraph generate_instance(const SimulationConfig& cfg, SizeSetting setting, int n,
                                     int instance_index);

}  // namespace ikep
