// Exhaustive census of k-tournaments and edge-minimality analysis.
//
// A k-tournament on n vertices picks one of the k! orientations for each of
// the C(n,k) k-subsets. Subsets are ordered colexicographically and the
// orientation of subset s is digit s of a mixed-radix counter in base k!, with
// digit 0 least significant. Orientation o of a subset S is S rearranged by
// the o-th permutation in lexicographic order, so o = 0 lists S ascending.
// The counter range is cut into contiguous partitions which run
// independently; results are merged by counter index so they do not depend on
// how partitions are scheduled onto threads.

#ifndef PROPO_SEARCH_HPP
#define PROPO_SEARCH_HPP

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <functional>
#include <limits>
#include <mutex>
#include <optional>
#include <ostream>
#include <thread>
#include <vector>

#include "propo/core.hpp"
#include "propo/verify.hpp"

namespace propo {

struct CensusOptions {
  unsigned parallel_partitions = 1;
  unsigned workers = 0;  // threads; 0 means one per partition
  bool symmetry_pruning = false;
  Count progress_interval = 0;  // 0 disables progress lines
  std::ostream* progress = nullptr;
  bool stop_at_first_witness = false;
  double max_bits = 48.0;  // cap on C(n,k) * log2(k!)
  bool early_reject = true;
  bool check_violations = false;  // re-verify every violating order found
  // Counter window [range_begin, range_end); range_end = 0 means the end of
  // the space. Partitions split the window.
  Count range_begin = 0;
  Count range_end = 0;
};

struct SearchReport {
  unsigned n = 0;
  unsigned k = 0;
  Count total_enumerated = 0;
  Count property_o_found = 0;
  std::optional<OrientedHypergraph> first_witness;
  std::optional<Count> first_witness_index;
  double elapsed_seconds = 0;
  bool early_rejected = false;
  bool stopped_early = false;
  Count violations_checked = 0;
  CensusOptions options;
};

struct VisitResult {
  bool witness = false;
  bool stop = false;
};

/// Visitors may run concurrently for different partitions, never for the
/// same partition.
using TournamentVisitor =
    std::function<VisitResult(const OrientedHypergraph&, Count index, unsigned partition)>;

/// The fixed combinatorial frame shared by every tournament on (n, k).
class TournamentSpace {
 public:
  TournamentSpace(unsigned n, unsigned k, double max_bits = 48.0) : n_(n), k_(k) {
    if (k < 2) throw InputError("uniformity k must be at least 2");
    if (n < k) throw InputError("tournaments need n >= k");
    const Count m = binomial(n, k);
    const double bits = static_cast<double>(m) * std::log2(static_cast<double>(factorial(k)));
    if (bits > max_bits) {
      throw BudgetExceeded("tournament space of " + std::to_string(bits) +
                           " bits exceeds the budget of " + std::to_string(max_bits) + " bits");
    }
    radix_ = factorial(k);
    total_ = 1;
    for (Count s = 0; s < m && total_ != 0; ++s) {
      if (__builtin_mul_overflow(total_, radix_, &total_)) total_ = 0;
    }

    // k-subsets in colex order: compare by largest element first.
    std::vector<Vertex> comb(k);
    std::iota(comb.begin(), comb.end(), Vertex{0});
    for (;;) {
      subsets_.push_back(comb);
      unsigned i = 0;
      while (i < k && (i + 1 < k ? comb[i] + 1 == comb[i + 1] : comb[i] + 1 == n)) ++i;
      if (i == k) break;
      ++comb[i];
      for (unsigned j = 0; j < i; ++j) comb[j] = j;
    }
    perms_.reserve(static_cast<std::size_t>(radix_));
    for (Count o = 0; o < radix_; ++o) perms_.push_back(unrank_permutation(k, o));
    tuples_.resize(subsets_.size() * radix_ * k);
    for (std::size_t s = 0; s < subsets_.size(); ++s) {
      for (Count o = 0; o < radix_; ++o) {
        for (unsigned j = 0; j < k; ++j) {
          tuples_[(s * radix_ + o) * k + j] = subsets_[s][perms_[o][j]];
        }
      }
    }
  }

  unsigned n() const { return n_; }
  unsigned k() const { return k_; }
  std::size_t subset_count() const { return subsets_.size(); }
  Count radix() const { return radix_; }
  /// Number of tournaments; throws when it does not fit in 64 bits.
  Count total() const {
    if (total_ == 0) throw OverflowError("tournament count exceeds 64 bits");
    return total_;
  }
  const std::vector<Vertex>& subset(std::size_t s) const { return subsets_[s]; }
  const std::vector<Vertex>& permutation(Count o) const { return perms_[o]; }

  std::span<const Vertex> oriented(std::size_t s, Count o) const {
    return {tuples_.data() + (s * radix_ + o) * k_, k_};
  }

  /// Colex rank of a sorted k-subset.
  std::size_t subset_rank(std::span<const Vertex> sorted) const {
    Count r = 0;
    for (unsigned i = 0; i < sorted.size(); ++i) r += binomial(sorted[i], i + 1);
    return static_cast<std::size_t>(r);
  }

  std::vector<Count> digits_of(Count index) const {
    std::vector<Count> d(subsets_.size());
    for (auto& x : d) {
      x = index % radix_;
      index /= radix_;
    }
    return d;
  }

  OrientedHypergraph tournament(std::span<const Count> digits) const {
    OrientedHypergraph h(k_, n_);
    for (std::size_t s = 0; s < subsets_.size(); ++s) h.add_edge(oriented(s, digits[s]));
    return h;
  }

  OrientedHypergraph tournament_at(Count index) const { return tournament(digits_of(index)); }

  /// Digit vector of an arbitrary k-tournament on this vertex set.
  std::vector<Count> digits_for(const OrientedHypergraph& h) const {
    if (h.n() != n_ || h.k() != k_ || h.edge_count() != subsets_.size()) {
      throw InputError("hypergraph is not a tournament of this space");
    }
    std::vector<Count> d(subsets_.size(), radix_);
    std::vector<Vertex> sorted(k_);
    std::vector<Vertex> pattern(k_);
    for (std::size_t i = 0; i < h.edge_count(); ++i) {
      const auto e = h.edge(i);
      std::copy(e.begin(), e.end(), sorted.begin());
      std::sort(sorted.begin(), sorted.end());
      for (unsigned j = 0; j < k_; ++j) {
        pattern[j] = static_cast<Vertex>(
            std::lower_bound(sorted.begin(), sorted.end(), e[j]) - sorted.begin());
      }
      const auto s = subset_rank(sorted);
      if (d.at(s) != radix_) throw InputError("hypergraph repeats a k-subset");
      d[s] = rank_permutation(pattern);
    }
    return d;
  }

  Count index_of(std::span<const Count> digits) const {
    Count idx = 0;
    for (std::size_t s = digits.size(); s-- > 0;) idx = idx * radix_ + digits[s];
    return idx;
  }

 private:
  unsigned n_;
  unsigned k_;
  Count radix_ = 1;
  Count total_ = 1;  // 0 when unrepresentable
  std::vector<std::vector<Vertex>> subsets_;
  std::vector<std::vector<Vertex>> perms_;
  std::vector<Vertex> tuples_;
};

namespace detail {

// Vertex relabelings acting on digit vectors, used to keep only the
// counter-minimal member of each isomorphism class.
class RelabelTable {
 public:
  explicit RelabelTable(const TournamentSpace& space) : m_(space.subset_count()), radix_(space.radix()) {
    const unsigned n = space.n();
    const unsigned k = space.k();
    std::vector<Vertex> rho(n);
    std::iota(rho.begin(), rho.end(), Vertex{0});
    std::vector<Vertex> image(k);
    std::vector<Vertex> sorted(k);
    std::vector<Vertex> pattern(k);
    while (std::next_permutation(rho.begin(), rho.end())) {  // skips the identity
      const std::size_t base_t = target_.size();
      target_.resize(base_t + m_);
      const std::size_t base_o = orient_.size();
      orient_.resize(base_o + m_ * radix_);
      for (std::size_t s = 0; s < m_; ++s) {
        for (Count o = 0; o < radix_; ++o) {
          const auto t = space.oriented(s, o);
          for (unsigned j = 0; j < k; ++j) image[j] = rho[t[j]];
          sorted = image;
          std::sort(sorted.begin(), sorted.end());
          for (unsigned j = 0; j < k; ++j) {
            pattern[j] = static_cast<Vertex>(
                std::lower_bound(sorted.begin(), sorted.end(), image[j]) - sorted.begin());
          }
          target_[base_t + s] = space.subset_rank(sorted);
          orient_[base_o + s * radix_ + o] = rank_permutation(pattern);
        }
      }
      ++count_;
    }
  }

  // True iff no relabeling maps the digits to a smaller counter value.
  bool is_minimal(std::span<const Count> digits, std::vector<Count>& scratch) const {
    scratch.resize(m_);
    for (std::size_t r = 0; r < count_; ++r) {
      const std::size_t* tgt = target_.data() + r * m_;
      const Count* ori = orient_.data() + r * m_ * radix_;
      for (std::size_t s = 0; s < m_; ++s) scratch[tgt[s]] = ori[s * radix_ + digits[s]];
      for (std::size_t s = m_; s-- > 0;) {
        if (scratch[s] < digits[s]) return false;
        if (scratch[s] > digits[s]) break;
      }
    }
    return true;
  }

 private:
  std::size_t m_;
  Count radix_;
  std::size_t count_ = 0;
  std::vector<std::size_t> target_;
  std::vector<Count> orient_;
};

struct PartitionResult {
  Count visited = 0;
  Count witnesses = 0;
  std::optional<Count> first_witness;
  std::optional<Count> stop_at;
};

}  // namespace detail

/// Visits every k-tournament on n vertices (or one per isomorphism class with
/// symmetry pruning) in counter order within each partition.
inline SearchReport enumerate_tournaments(unsigned n, unsigned k, const TournamentVisitor& visitor,
                                          const CensusOptions& options = {}) {
  const auto t0 = std::chrono::steady_clock::now();
  const TournamentSpace space(n, k, std::min(options.max_bits, 63.0));
  std::optional<detail::RelabelTable> relabels;
  if (options.symmetry_pruning) relabels.emplace(space);

  const unsigned partitions = std::max(1u, options.parallel_partitions);
  const Count first = options.range_begin;
  const Count last = options.range_end ? options.range_end : space.total();
  if (first > last || last > space.total()) throw InputError("census range outside the tournament space");
  const Count span = last - first;
  auto bound = [&](unsigned p) -> Count {
    return first + static_cast<Count>((static_cast<unsigned __int128>(span) * p) / partitions);
  };

  std::vector<detail::PartitionResult> results(partitions);
  std::atomic<Count> stop_index{std::numeric_limits<Count>::max()};
  std::atomic<unsigned> next_partition{0};
  std::atomic<Count> examined{0};
  std::atomic<Count> found{0};
  std::mutex progress_mutex;
  const Count interval = options.progress ? options.progress_interval : 0;

  auto report_progress = [&](Count add_examined, Count add_found) {
    found.fetch_add(add_found);
    const Count before = examined.fetch_add(add_examined);
    const Count after = before + add_examined;
    if (interval && before / interval != after / interval) {
      const double secs =
          std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      std::lock_guard lock(progress_mutex);
      *options.progress << "examined=" << after << " found=" << found.load()
                        << " elapsed=" << secs << "\n";
    }
  };

  auto run_partition = [&](unsigned p) {
    auto& res = results[p];
    const Count begin = bound(p);
    const Count end = bound(p + 1);
    if (begin == end) return;
    auto digits = space.digits_of(begin);
    OrientedHypergraph h = space.tournament(digits);
    std::vector<Count> scratch;
    Count pending_examined = 0;
    Count pending_found = 0;
    for (Count index = begin; index < end; ++index) {
      if ((index & 0x3ff) == 0 && index > stop_index.load(std::memory_order_relaxed)) break;
      if (!relabels || relabels->is_minimal(digits, scratch)) {
        ++res.visited;
        ++pending_examined;
        const VisitResult v = visitor(h, index, p);
        if (v.witness) {
          ++res.witnesses;
          ++pending_found;
          if (!res.first_witness) res.first_witness = index;
        }
        if (v.stop) {
          res.stop_at = index;
          Count cur = stop_index.load();
          while (index < cur && !stop_index.compare_exchange_weak(cur, index)) {
          }
          break;
        }
        if (pending_examined == 4096) {
          report_progress(pending_examined, pending_found);
          pending_examined = pending_found = 0;
        }
      }
      // Mixed-radix increment, rewriting only the edges whose digit changed.
      for (std::size_t s = 0; s < digits.size(); ++s) {
        if (++digits[s] < space.radix()) {
          h.set_edge(s, space.oriented(s, digits[s]));
          break;
        }
        digits[s] = 0;
        h.set_edge(s, space.oriented(s, 0));
      }
    }
    report_progress(pending_examined, pending_found);
  };

  auto work = [&] {
    for (;;) {
      const unsigned p = next_partition.fetch_add(1);
      if (p >= partitions) return;
      run_partition(p);
    }
  };
  const unsigned threads =
      std::max(1u, std::min(partitions, options.workers ? options.workers : partitions));
  if (threads == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }

  SearchReport rep;
  rep.n = n;
  rep.k = k;
  rep.options = options;
  const Count stop = stop_index.load();
  rep.stopped_early = stop != std::numeric_limits<Count>::max();
  for (unsigned p = 0; p < partitions; ++p) {
    const auto& r = results[p];
    if (rep.stopped_early && bound(p) > stop) break;
    rep.total_enumerated += r.visited;
    rep.property_o_found += r.witnesses;
    if (r.first_witness && !rep.first_witness_index) rep.first_witness_index = r.first_witness;
  }
  if (rep.stopped_early && !relabels) rep.total_enumerated = stop + 1 - first;
  if (rep.first_witness_index) rep.first_witness = space.tournament_at(*rep.first_witness_index);
  rep.elapsed_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

/// Searches all k-tournaments on n vertices for Property O. A zero
/// property_o_found certifies that no oriented k-graph on n vertices has
/// Property O, since adding edges never destroys the property.
inline SearchReport prove_vertex_lower_bound(unsigned n, unsigned k, const CensusOptions& options = {}) {
  if (k < 2) throw InputError("uniformity k must be at least 2");
  if (n < k) throw InputError("census needs n >= k");
  if (options.early_reject && binomial(n, k) <= factorial(k)) {
    // A Property O graph needs more than k! edges, a tournament has C(n,k).
    SearchReport rep;
    rep.n = n;
    rep.k = k;
    rep.options = options;
    rep.early_rejected = true;
    return rep;
  }
  const unsigned partitions = std::max(1u, options.parallel_partitions);
  std::vector<BacktrackingSearch> searchers(partitions);
  std::vector<Count> checked(partitions, 0);
  auto visitor = [&](const OrientedHypergraph& h, Count, unsigned p) {
    VisitResult v;
    if (options.check_violations) {
      const auto res = searchers[p].run(h);
      if (res.violating_order) {
        for (std::size_t i = 0; i < h.edge_count(); ++i) {
          if (is_consistent(h.edge(i), *res.violating_order)) {
            throw std::logic_error("census produced an unsound violating order");
          }
        }
        ++checked[p];
      } else {
        v.witness = true;
      }
    } else {
      v.witness = !searchers[p].has_violating_order(h);
    }
    v.stop = v.witness && options.stop_at_first_witness;
    return v;
  };
  auto rep = enumerate_tournaments(n, k, visitor, options);
  for (Count c : checked) rep.violations_checked += c;
  return rep;
}

/// Orients every k-subset missing from h ascending, producing a tournament.
inline OrientedHypergraph complete_to_tournament(const OrientedHypergraph& h) {
  require_valid(h);
  const TournamentSpace space(h.n(), h.k(), std::numeric_limits<double>::infinity());
  std::vector<std::uint8_t> present(space.subset_count(), 0);
  std::vector<Vertex> sorted(h.k());
  for (std::size_t i = 0; i < h.edge_count(); ++i) {
    const auto e = h.edge(i);
    std::copy(e.begin(), e.end(), sorted.begin());
    std::sort(sorted.begin(), sorted.end());
    present[space.subset_rank(sorted)] = 1;
  }
  OrientedHypergraph out = h;
  for (std::size_t s = 0; s < space.subset_count(); ++s) {
    if (!present[s]) out.add_edge(space.oriented(s, 0));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Edge minimality

struct EdgeVerdict {
  std::size_t edge = 0;
  bool essential = false;
  std::optional<LinearOrder> witness;  // violating order of H - e
};

struct MinimalityReport {
  std::vector<EdgeVerdict> edges;
  std::size_t essential_count() const {
    return static_cast<std::size_t>(
        std::count_if(edges.begin(), edges.end(), [](const EdgeVerdict& v) { return v.essential; }));
  }
};

inline OrientedHypergraph without_edge(const OrientedHypergraph& h, std::size_t i) {
  OrientedHypergraph out = h;
  out.remove_edge(i);
  return out;
}

/// Edge e is redundant iff H - e still has Property O.
inline MinimalityReport edge_minimality(const OrientedHypergraph& h, const VerifyOptions& opts = {}) {
  if (!check_property_o(h, opts).has_property_o()) {
    throw InputError("edge minimality requires a hypergraph with Property O");
  }
  MinimalityReport rep;
  for (std::size_t i = 0; i < h.edge_count(); ++i) {
    const auto cert = check_property_o(without_edge(h, i), opts);
    rep.edges.push_back({i, !cert.has_property_o(), cert.violating_order});
  }
  return rep;
}

}  // namespace propo

#endif  // PROPO_SEARCH_HPP
