#include "ikep/balancing.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>

#include "ikep/error.hpp"

namespace ikep {

namespace {

constexpr double kTol = 1e-9;

struct Interval {
  int lo;
  int hi;
};

// s with |x - s| <= d (strict: < d), as integer bounds.
Interval within(double x, double d, bool strict) {
  const double e = strict ? -kTol : kTol;
  return {static_cast<int>(std::ceil(x - d - e)), static_cast<int>(std::floor(x + d + e))};
}

Interval meet(Interval a, Interval b) { return {std::max(a.lo, b.lo), std::min(a.hi, b.hi)}; }

void check_length(const IntervalMatcher& m, std::span<const double> x) {
  if (static_cast<int>(x.size()) != m.graph().n_countries()) {
    throw ValidationError("target allocation has " + std::to_string(x.size()) + " entries for " +
                          std::to_string(m.graph().n_countries()) + " countries");
  }
}

class Searcher {
 public:
  Searcher(IntervalMatcher& m, std::span<const double> x)
      : m_(m), x_(x.begin(), x.end()), mate_(m.base_mates()), n_(m.graph().n_countries()) {
    for (int p = 0; p < n_; ++p) box_.push_back({0, m.graph().country_sizes()[p]});
  }

  const std::vector<int>& mate() const { return mate_; }
  std::vector<Interval>& box() { return box_; }

  double x(int p) const { return x_[p]; }
  double deviation(int p) const { return std::abs(x_[p] - counts_[p]); }

  void refresh() { counts_ = matched_counts_from_mates(m_.graph(), mate_); }

  // Tries the intervals; on success adopts the matching.
  bool attempt(const std::vector<Interval>& iv) {
    std::vector<int> lo(n_);
    std::vector<int> hi(n_);
    for (int p = 0; p < n_; ++p) {
      lo[p] = iv[p].lo;
      hi[p] = iv[p].hi;
    }
    auto found = m_.solve(lo, hi, &mate_);
    if (!found) return false;
    mate_ = std::move(*found);
    refresh();
    return true;
  }

  // Sorted distinct candidate deviations |x_p - k| for the given countries.
  std::vector<double> candidates(const std::vector<int>& countries, double below) const {
    std::vector<double> c;
    for (int p : countries) {
      for (int k = box_[p].lo; k <= box_[p].hi; ++k) {
        const double d = std::abs(x_[p] - k);
        if (d <= below + kTol) c.push_back(d);
      }
    }
    std::sort(c.begin(), c.end());
    std::vector<double> out;
    for (double d : c) {
      if (out.empty() || d > out.back() + kTol) out.push_back(d);
    }
    return out;
  }

  // Smallest candidate d such that the given countries fit within d inside
  // the current box. Leaves the matching at a witness.
  double min_level(const std::vector<int>& countries, double upper) {
    const std::vector<double> c = candidates(countries, upper);
    auto boxed = [&](double d) {
      std::vector<Interval> iv = box_;
      for (int p : countries) iv[p] = meet(iv[p], within(x_[p], d, false));
      return iv;
    };
    std::size_t lo = 0;
    std::size_t hi = c.size() - 1;
    while (lo < hi) {
      const std::size_t mid = (lo + hi) / 2;
      if (attempt(boxed(c[mid]))) {
        hi = mid;
      } else {
        lo = mid + 1;
      }
    }
    if (!attempt(boxed(c[lo]))) throw std::logic_error("no maximum matching meets the current intervals");
    return c[lo];
  }

 private:
  IntervalMatcher& m_;
  std::vector<double> x_;
  std::vector<int> mate_;
  int n_;
  std::vector<Interval> box_;
  MatchedCounts counts_;
};

BalancedMatching finish(const IntervalMatcher& m, std::span<const double> x, const std::vector<int>& mate) {
  BalancedMatching out;
  out.matching = matching_from_mates(m.graph(), mate);
  out.deviations = deviation_vector(x, matched_counts_from_mates(m.graph(), mate));
  out.d1 = out.deviations.max();
  return out;
}

std::vector<int> all_countries(int n) {
  std::vector<int> c(n);
  for (int p = 0; p < n; ++p) c[p] = p;
  return c;
}

void lexmin_greedy(Searcher& s, int n) {
  std::vector<char> finished(n, 0);
  for (;;) {
    int p = -1;
    for (int q = 0; q < n; ++q) {
      if (!finished[q] && (p < 0 || s.deviation(q) > s.deviation(p) + kTol)) p = q;
    }
    if (p < 0) return;
    const double level = s.deviation(p);
    std::vector<Interval>& box = s.box();
    for (int q = 0; q < n; ++q) {
      if (!finished[q] && q != p) box[q] = meet(box[q], within(s.x(q), level, false));
    }
    std::vector<Interval> trial = box;
    trial[p] = meet(box[p], within(s.x(p), level, true));
    if (trial[p].lo <= trial[p].hi && s.attempt(trial)) {
      box[p] = trial[p];
    } else {
      box[p] = meet(box[p], within(s.x(p), level, false));
      finished[p] = 1;
    }
  }
}

void lexmin_levels(Searcher& s, int n) {
  std::vector<int> unfinished = all_countries(n);
  double upper = 0.0;
  for (int p = 0; p < n; ++p) upper = std::max(upper, s.deviation(p));
  while (!unfinished.empty()) {
    const double d = s.min_level(unfinished, upper);
    std::vector<Interval>& box = s.box();
    for (int p : unfinished) box[p] = meet(box[p], within(s.x(p), d, false));
    // Inclusion-minimal set of countries that stay at d; the rest go below.
    std::vector<int> tight = unfinished;
    for (int p : unfinished) {
      std::vector<Interval> trial = box;
      bool empty = false;
      for (int q : unfinished) {
        if (q == p || std::find(tight.begin(), tight.end(), q) == tight.end()) {
          trial[q] = meet(box[q], within(s.x(q), d, true));
          empty = empty || trial[q].lo > trial[q].hi;
        }
      }
      if (!empty && s.attempt(trial)) tight.erase(std::find(tight.begin(), tight.end(), p));
    }
    std::vector<int> rest;
    for (int p : unfinished) {
      if (std::find(tight.begin(), tight.end(), p) == tight.end()) {
        box[p] = meet(box[p], within(s.x(p), d, true));
        rest.push_back(p);
      }
    }
    if (!s.attempt(box)) throw std::logic_error("lexmin level lost feasibility");
    unfinished = std::move(rest);
    upper = d;
  }
}

}  // namespace

DeviationVector deviation_vector(std::span<const double> x, const MatchedCounts& s) {
  if (x.size() != s.size()) {
    throw ValidationError("allocation has " + std::to_string(x.size()) + " entries but matched counts have " +
                          std::to_string(s.size()));
  }
  DeviationVector out;
  for (std::size_t p = 0; p < x.size(); ++p) out.by_country.push_back(std::abs(x[p] - s[p]));
  out.sorted = out.by_country;
  std::sort(out.sorted.begin(), out.sorted.end(), std::greater<>());
  return out;
}

int lex_compare(const std::vector<double>& a, const std::vector<double>& b, double tol) {
  for (std::size_t i = 0; i < a.size() && i < b.size(); ++i) {
    if (a[i] < b[i] - tol) return -1;
    if (a[i] > b[i] + tol) return 1;
  }
  return static_cast<int>(a.size() > b.size()) - static_cast<int>(a.size() < b.size());
}

Matching arbitrary_maximum_matching(const CompatibilityGraph& g) { return maximum_matching(g); }

BalancedMatching min_d1_matching(IntervalMatcher& matcher, std::span<const double> x) {
  check_length(matcher, x);
  const int n = matcher.graph().n_countries();
  Searcher s(matcher, x);
  s.refresh();
  if (n == 0) return finish(matcher, x, s.mate());
  double upper = 0.0;
  for (int p = 0; p < n; ++p) upper = std::max(upper, s.deviation(p));
  s.min_level(all_countries(n), upper);
  return finish(matcher, x, s.mate());
}

BalancedMatching min_d1_matching(const CompatibilityGraph& g, std::span<const double> x) {
  IntervalMatcher matcher(g);
  return min_d1_matching(matcher, x);
}

BalancedMatching lexmin_matching(IntervalMatcher& matcher, std::span<const double> x, LexminMethod method) {
  check_length(matcher, x);
  const int n = matcher.graph().n_countries();
  Searcher s(matcher, x);
  s.refresh();
  if (method == LexminMethod::kGreedy) {
    lexmin_greedy(s, n);
  } else {
    lexmin_levels(s, n);
  }
  return finish(matcher, x, s.mate());
}

BalancedMatching lexmin_matching(const CompatibilityGraph& g, std::span<const double> x, LexminMethod method) {
  IntervalMatcher matcher(g);
  return lexmin_matching(matcher, x, method);
}

}  // namespace ikep
