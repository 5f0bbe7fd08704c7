// Seeded random k-tournaments and Property O rate estimates.
//
// Randomness is SplitMix64 throughout, so every value is reproducible across
// platforms:
//   mix(x)             = SplitMix64 output function applied to x
//   derive(seed, i)    = mix(seed ^ mix(i + 0x9E3779B97F4A7C15))
//   tournament(seed)   : subset s (colex order) draws from the SplitMix64
//                        stream whose state starts at derive(seed, s)
//   trial t of a run   : tournament(derive(seed, t))
// Orientations are uniform over the k! permutations: an index in [0, k!) is
// drawn by multiply-shift with exact rejection and then unranked.

#ifndef PROPO_MONTECARLO_HPP
#define PROPO_MONTECARLO_HPP

#include <cmath>
#include <cstdint>
#include <thread>
#include <vector>

#include "propo/core.hpp"
#include "propo/search.hpp"
#include "propo/verify.hpp"

namespace propo {

inline std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  return mix64(seed ^ mix64(index + 0x9E3779B97F4A7C15ULL));
}

class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t state) : state_(state) {}

  std::uint64_t next() {
    state_ += 0x9E3779B97F4A7C15ULL;
    return mix64(state_);
  }

  /// Uniform integer in [0, bound).
  std::uint64_t below(std::uint64_t bound) {
    if (bound == 0) throw InputError("empty range");
    auto m = static_cast<unsigned __int128>(next()) * bound;
    auto low = static_cast<std::uint64_t>(m);
    if (low < bound) {
      const std::uint64_t threshold = (0 - bound) % bound;
      while (low < threshold) {
        m = static_cast<unsigned __int128>(next()) * bound;
        low = static_cast<std::uint64_t>(m);
      }
    }
    return static_cast<std::uint64_t>(m >> 64);
  }

 private:
  std::uint64_t state_;
};

inline OrientedHypergraph random_tournament(const TournamentSpace& space, std::uint64_t seed) {
  OrientedHypergraph h(space.k(), space.n());
  for (std::size_t s = 0; s < space.subset_count(); ++s) {
    SplitMix64 rng(derive_seed(seed, s));
    h.add_edge(space.oriented(s, rng.below(space.radix())));
  }
  return h;
}

/// max_bits caps C(n,k) * log2(k!), the size of the table of oriented subsets.
inline OrientedHypergraph random_tournament(unsigned n, unsigned k, std::uint64_t seed,
                                            double max_bits = 4096.0) {
  return random_tournament(TournamentSpace(n, k, max_bits), seed);
}

struct TrialSummary {
  unsigned n = 0;
  unsigned k = 0;
  Count trials = 0;
  Count successes = 0;
  double rate = 0;
  double standard_error = 0;
  std::uint64_t seed = 0;

  friend bool operator==(const TrialSummary&, const TrialSummary&) = default;
};

/// Trial t checks tournament(derive(seed, t)); outcomes depend only on
/// (n, k, seed, t), never on the worker count.
inline TrialSummary estimate_property_o_rate(unsigned n, unsigned k, Count trials,
                                             std::uint64_t seed, unsigned workers = 1,
                                             const EnumerationBudget& budget = {}) {
  if (trials < 1) throw InputError("trials must be at least 1");
  if (n > budget.max_vertices) {
    throw BudgetExceeded("per-trial verification on n=" + std::to_string(n) +
                         " exceeds the budget of n <= " + std::to_string(budget.max_vertices));
  }
  const TournamentSpace space(n, k, 4096.0);
  workers = std::max<unsigned>(1, static_cast<unsigned>(std::min<Count>(workers, trials)));
  std::vector<Count> successes(workers, 0);
  auto work = [&](unsigned w) {
    BacktrackingSearch search;
    const Count begin = trials * w / workers;
    const Count end = trials * (w + 1) / workers;
    for (Count t = begin; t < end; ++t) {
      const auto h = random_tournament(space, derive_seed(seed, t));
      if (!search.has_violating_order(h)) ++successes[w];
    }
  };
  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work, w);
    for (auto& t : pool) t.join();
  }
  TrialSummary sum;
  sum.n = n;
  sum.k = k;
  sum.trials = trials;
  sum.seed = seed;
  for (Count s : successes) sum.successes += s;
  sum.rate = static_cast<double>(sum.successes) / static_cast<double>(trials);
  sum.standard_error = std::sqrt(sum.rate * (1.0 - sum.rate) / static_cast<double>(trials));
  return sum;
}

struct MonotonicityFlag {
  unsigned n = 0;  // compares rate(n+1) against rate(n)
  double lower_rate = 0;
  double upper_rate = 0;
  double tolerance = 0;  // 3 * combined standard error
  bool breach = false;
};

/// Statistical probe: rate(n+1) >= rate(n) - 3 * combined standard error.
/// Breaches are reported, not treated as failures.
inline std::vector<MonotonicityFlag> monotonicity_probe(unsigned k, unsigned n_first,
                                                        unsigned n_last, Count trials,
                                                        std::uint64_t seed, unsigned workers = 1) {
  std::vector<TrialSummary> sums;
  for (unsigned n = n_first; n <= n_last + 1; ++n) {
    sums.push_back(estimate_property_o_rate(n, k, trials, seed, workers));
  }
  std::vector<MonotonicityFlag> flags;
  for (std::size_t i = 0; i + 1 < sums.size(); ++i) {
    MonotonicityFlag f;
    f.n = sums[i].n;
    f.lower_rate = sums[i].rate;
    f.upper_rate = sums[i + 1].rate;
    f.tolerance = 3.0 * std::hypot(sums[i].standard_error, sums[i + 1].standard_error);
    f.breach = f.upper_rate < f.lower_rate - f.tolerance;
    flags.push_back(f);
  }
  return flags;
}

}  // namespace propo

#endif  // PROPO_MONTECARLO_HPP
