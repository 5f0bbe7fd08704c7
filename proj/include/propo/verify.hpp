// Property O deciders: lexicographic enumeration of all orders and a
// backtracking search that grows an order from its minimum upward.

#ifndef PROPO_VERIFY_HPP
#define PROPO_VERIFY_HPP

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "propo/core.hpp"

namespace propo {

struct EnumerationBudget {
  unsigned max_vertices = 12;  // 12! ~ 4.8e8 orders
};

struct FinderResult {
  std::optional<LinearOrder> violating_order;
  Count orders_examined = 0;
  Count nodes_expanded = 0;
};

enum class Verdict { kPropertyO, kViolated };
enum class Method { kExhaustive, kBacktracking, kStructured };
enum class MethodChoice { kExhaustive, kBacktracking, kAuto };

inline const char* to_string(Verdict v) {
  return v == Verdict::kPropertyO ? "PropertyO" : "Violated";
}

inline const char* to_string(Method m) {
  switch (m) {
    case Method::kExhaustive: return "exhaustive";
    case Method::kBacktracking: return "backtracking";
    case Method::kStructured: return "structured";
  }
  return "?";
}

struct VerificationCertificate {
  Verdict verdict = Verdict::kViolated;
  Method method = Method::kExhaustive;
  std::optional<LinearOrder> violating_order;
  Count orders_examined = 0;
  Count nodes_expanded = 0;

  bool has_property_o() const { return verdict == Verdict::kPropertyO; }
};

namespace detail {

inline void require_budget(const OrientedHypergraph& h, const EnumerationBudget& budget) {
  if (h.n() > budget.max_vertices) {
    throw BudgetExceeded("enumerating " + std::to_string(h.n()) +
                         "! orders exceeds the budget of n <= " +
                         std::to_string(budget.max_vertices) +
                         "; use the backtracking method or raise the budget");
  }
}

inline bool any_consistent(const OrientedHypergraph& h, const std::vector<Vertex>& pos) {
  const unsigned k = h.k();
  const auto flat = h.flat();
  for (std::size_t base = 0; base < flat.size(); base += k) {
    bool ok = true;
    for (unsigned j = 1; j < k; ++j) {
      if (pos[flat[base + j - 1]] >= pos[flat[base + j]]) {
        ok = false;
        break;
      }
    }
    if (ok) return true;
  }
  return false;
}

inline unsigned consistent_edges(const OrientedHypergraph& h, const std::vector<Vertex>& pos) {
  const unsigned k = h.k();
  const auto flat = h.flat();
  unsigned c = 0;
  for (std::size_t base = 0; base < flat.size(); base += k) {
    bool ok = true;
    for (unsigned j = 1; j < k; ++j) {
      if (pos[flat[base + j - 1]] >= pos[flat[base + j]]) {
        ok = false;
        break;
      }
    }
    c += ok ? 1 : 0;
  }
  return c;
}

// Scans the orders whose minimum is `first` in lexicographic order. Returns
// the offset of the first violating order within the block, if any.
inline std::optional<Count> scan_block(const OrientedHypergraph& h, Vertex first,
                                       std::vector<Vertex>& asc) {
  const unsigned n = h.n();
  asc.clear();
  asc.push_back(first);
  for (Vertex v = 0; v < n; ++v) {
    if (v != first) asc.push_back(v);
  }
  std::vector<Vertex> pos(n);
  Count offset = 0;
  do {
    for (unsigned i = 0; i < n; ++i) pos[asc[i]] = i;
    if (!any_consistent(h, pos)) return offset;
    ++offset;
  } while (std::next_permutation(asc.begin() + 1, asc.end()));
  return std::nullopt;
}

// Open-addressing set of fixed-width keys (all keys of one set have the same
// number of 64-bit words). Slots are stored contiguously.
class FlatKeySet {
 public:
  void reset(std::size_t words) {
    words_ = words;
    size_ = 0;
    slots_.assign(kInitialSlots * words_, 0);
    used_.assign(kInitialSlots, 0);
  }

  std::size_t size() const { return size_; }

  bool contains(std::span<const std::uint64_t> key) const {
    const std::size_t mask = used_.size() - 1;
    for (std::size_t i = hash(key) & mask;; i = (i + 1) & mask) {
      if (!used_[i]) return false;
      if (std::equal(key.begin(), key.end(), slots_.begin() + static_cast<std::ptrdiff_t>(i * words_))) {
        return true;
      }
    }
  }

  void insert(std::span<const std::uint64_t> key) {
    if (2 * (size_ + 1) > used_.size()) grow();
    place(key);
  }

 private:
  static constexpr std::size_t kInitialSlots = 1024;

  static std::size_t hash(std::span<const std::uint64_t> key) {
    std::uint64_t h = 0x9E3779B97F4A7C15ULL;
    for (auto w : key) {
      h = (h ^ w) * 0xBF58476D1CE4E5B9ULL;
      h ^= h >> 29;
    }
    h *= 0x94D049BB133111EBULL;
    return static_cast<std::size_t>(h ^ (h >> 32));
  }

  void place(std::span<const std::uint64_t> key) {
    const std::size_t mask = used_.size() - 1;
    for (std::size_t i = hash(key) & mask;; i = (i + 1) & mask) {
      auto slot = slots_.begin() + static_cast<std::ptrdiff_t>(i * words_);
      if (!used_[i]) {
        used_[i] = 1;
        std::copy(key.begin(), key.end(), slot);
        ++size_;
        return;
      }
      if (std::equal(key.begin(), key.end(), slot)) return;
    }
  }

  void grow() {
    std::vector<std::uint64_t> old_slots = std::move(slots_);
    std::vector<std::uint8_t> old_used = std::move(used_);
    slots_.assign(old_slots.size() * 2, 0);
    used_.assign(old_used.size() * 2, 0);
    size_ = 0;
    for (std::size_t i = 0; i < old_used.size(); ++i) {
      if (old_used[i]) place({old_slots.data() + i * words_, words_});
    }
  }

  std::size_t words_ = 1;
  std::size_t size_ = 0;
  std::vector<std::uint64_t> slots_;
  std::vector<std::uint8_t> used_;
};

}  // namespace detail

/// Returns the lexicographically first order (by ascending sequence) that is
/// consistent with no edge. `workers` > 1 splits the search by minimum
/// element; the result does not depend on the worker count.
inline FinderResult find_violating_order_exhaustive(const OrientedHypergraph& h,
                                                    const EnumerationBudget& budget = {},
                                                    unsigned workers = 1) {
  detail::require_budget(h, budget);
  const unsigned n = h.n();
  FinderResult res;
  if (n == 0) {
    res.orders_examined = 1;
    if (h.edge_count() == 0) res.violating_order = LinearOrder{};
    return res;
  }
  const Count block_size = factorial(n - 1);
  // found[b] holds the offset of the first violating order in block b.
  std::vector<std::optional<Count>> found(n);
  std::atomic<unsigned> next_block{0};
  std::atomic<unsigned> best_block{n};

  auto work = [&] {
    std::vector<Vertex> asc;
    asc.reserve(n);
    for (;;) {
      const unsigned b = next_block.fetch_add(1);
      if (b >= n || b > best_block.load()) return;
      found[b] = detail::scan_block(h, b, asc);
      if (found[b]) {
        unsigned cur = best_block.load();
        while (b < cur && !best_block.compare_exchange_weak(cur, b)) {
        }
      }
    }
  };

  workers = std::max(1u, std::min(workers, n));
  if (workers == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }

  for (unsigned b = 0; b < n; ++b) {
    if (!found[b]) continue;
    std::vector<Vertex> asc;
    asc.push_back(b);
    for (Vertex v = 0; v < n; ++v) {
      if (v != b) asc.push_back(v);
    }
    for (Count i = 0; i < *found[b]; ++i) std::next_permutation(asc.begin() + 1, asc.end());
    res.violating_order = LinearOrder(std::move(asc));
    res.orders_examined = b * block_size + *found[b] + 1;
    return res;
  }
  res.orders_examined = factorial(n);
  return res;
}

/// Depth-first construction of a violating order, smallest element first.
///
/// Every edge tracks the index of its next expected vertex. Placing that
/// vertex advances the edge; placing any other vertex of the edge kills it for
/// the rest of the branch. An edge that reaches full advancement is consistent
/// with every completion, so the branch is abandoned.
///
/// A vertex that no live edge currently expects can always be placed next
/// without branching: moving it forward in any violating completion leaves that
/// completion violating. Branching therefore only happens among vertices that
/// some live edge is waiting for.
///
/// On larger inputs (memo_min_vertices <= n <= 64) failed states are
/// memoised. The future of a branch depends only on the set of placed
/// vertices and the set of dead edges, so that pair is the key.
///
/// The object keeps its buffers between runs so that it can be reused across
/// many small inputs.
class BacktrackingSearch {
 public:
  explicit BacktrackingSearch(unsigned memo_min_vertices = 16, std::size_t memo_capacity = std::size_t{1} << 25)
      : memo_min_vertices_(memo_min_vertices), memo_capacity_(memo_capacity) {}

  FinderResult run(const OrientedHypergraph& h) {
    setup(h);
    FinderResult res;
    if (dfs()) {
      res.violating_order = LinearOrder(order_);
      res.orders_examined = 1;
    }
    res.nodes_expanded = nodes_;
    return res;
  }

  /// Cheaper variant for census loops: answers whether a violating order
  /// exists without materialising it.
  bool has_violating_order(const OrientedHypergraph& h) {
    setup(h);
    return dfs();
  }

  Count nodes_expanded() const { return nodes_; }
  std::size_t memo_size() const { return use_memo_ ? memo_.size() : 0; }

 private:

  static constexpr std::uint32_t kDead = std::numeric_limits<std::uint32_t>::max();

  struct Incidence {
    std::uint32_t edge;
    std::uint32_t slot;
  };
  struct TrailEntry {
    std::uint32_t edge;
    std::uint32_t old_progress;
  };

  void setup(const OrientedHypergraph& h) {
    k_ = h.k();
    n_ = h.n();
    flat_ = h.flat();
    const auto m = static_cast<std::uint32_t>(h.edge_count());
    inc_start_.assign(n_ + 1, 0);
    for (Vertex v : flat_) ++inc_start_[v + 1];
    for (unsigned v = 0; v < n_; ++v) inc_start_[v + 1] += inc_start_[v];
    incidence_.resize(flat_.size());
    fill_.assign(inc_start_.begin(), inc_start_.end() - 1);
    for (std::uint32_t e = 0; e < m; ++e) {
      for (std::uint32_t s = 0; s < k_; ++s) {
        const Vertex v = flat_[e * k_ + s];
        incidence_[fill_[v]++] = {e, s};
      }
    }
    progress_.assign(m, 0);
    expected_count_.assign(n_, 0);
    for (std::uint32_t e = 0; e < m; ++e) ++expected_count_[flat_[e * k_]];
    placed_.assign(n_, 0);
    order_.clear();
    trail_.clear();
    live_ = m;
    nodes_ = 0;
    use_memo_ = n_ >= memo_min_vertices_ && n_ <= 64;
    key_.assign(use_memo_ ? 1 + (m + 63) / 64 : 0, 0);
    if (use_memo_) memo_.reset(key_.size());
  }

  void toggle_dead_bit(std::uint32_t e) {
    if (use_memo_) key_[1 + e / 64] ^= std::uint64_t{1} << (e % 64);
  }

  Vertex expected_of(std::uint32_t e, std::uint32_t p) const {
    return (p == kDead || p >= k_) ? kNone : flat_[e * k_ + p];
  }

  void set_progress(std::uint32_t e, std::uint32_t p) {
    const std::uint32_t old = progress_[e];
    if (const Vertex v = expected_of(e, old); v != kNone) --expected_count_[v];
    if (old == kDead) {
      ++live_;
      toggle_dead_bit(e);
    }
    progress_[e] = p;
    if (const Vertex v = expected_of(e, p); v != kNone) ++expected_count_[v];
    if (p == kDead) {
      --live_;
      toggle_dead_bit(e);
    }
  }

  // Places v; returns false if some edge became fully consistent.
  bool place(Vertex v) {
    ++nodes_;
    placed_[v] = 1;
    if (use_memo_) key_[0] ^= std::uint64_t{1} << v;
    order_.push_back(v);
    bool completed = false;
    for (std::uint32_t i = inc_start_[v]; i < inc_start_[v + 1]; ++i) {
      const auto [e, slot] = incidence_[i];
      const std::uint32_t p = progress_[e];
      if (p == kDead) continue;
      trail_.push_back({e, p});
      if (slot == p) {
        set_progress(e, p + 1);
        if (p + 1 == k_) completed = true;
      } else {
        set_progress(e, kDead);
      }
    }
    return !completed;
  }

  void unplace(Vertex v, std::size_t trail_mark) {
    while (trail_.size() > trail_mark) {
      const auto t = trail_.back();
      trail_.pop_back();
      set_progress(t.edge, t.old_progress);
    }
    placed_[v] = 0;
    if (use_memo_) key_[0] ^= std::uint64_t{1} << v;
    order_.pop_back();
  }

  bool dfs() {
    if (order_.size() == n_) return true;
    if (live_ == 0) {
      for (Vertex v = 0; v < n_; ++v) {
        if (!placed_[v]) order_.push_back(v);
      }
      return true;
    }
    if (use_memo_ && memo_.contains(key_)) return false;
    if (expand()) return true;
    if (use_memo_ && memo_.size() < memo_capacity_) memo_.insert(key_);
    return false;
  }

  bool expand() {
    for (Vertex v = 0; v < n_; ++v) {
      if (!placed_[v] && expected_count_[v] == 0) {
        const std::size_t mark = trail_.size();
        if (place(v) && dfs()) return true;
        unplace(v, mark);
        return false;
      }
    }
    for (Vertex v = 0; v < n_; ++v) {
      if (placed_[v]) continue;
      const std::size_t mark = trail_.size();
      if (place(v) && dfs()) return true;
      unplace(v, mark);
    }
    return false;
  }

  static constexpr Vertex kNone = std::numeric_limits<Vertex>::max();

  unsigned k_ = 0;
  unsigned n_ = 0;
  std::span<const Vertex> flat_;
  std::vector<std::uint32_t> inc_start_;
  std::vector<std::uint32_t> fill_;
  std::vector<Incidence> incidence_;
  std::vector<std::uint32_t> progress_;
  std::vector<std::uint32_t> expected_count_;
  std::vector<std::uint8_t> placed_;
  std::vector<Vertex> order_;
  std::vector<TrailEntry> trail_;
  std::uint32_t live_ = 0;
  Count nodes_ = 0;
  unsigned memo_min_vertices_;
  std::size_t memo_capacity_;
  bool use_memo_ = false;
  std::vector<std::uint64_t> key_;  // placed mask, then dead-edge bits
  detail::FlatKeySet memo_;
};

inline FinderResult find_violating_order_backtracking(const OrientedHypergraph& h) {
  BacktrackingSearch search;
  return search.run(h);
}

struct VerifyOptions {
  MethodChoice method = MethodChoice::kAuto;
  EnumerationBudget budget{};
  unsigned workers = 1;
  unsigned auto_exhaustive_max_n = 9;
};

/// Decides Property O. Violated certificates are re-checked edge by edge
/// before they are returned.
inline VerificationCertificate check_property_o(const OrientedHypergraph& h,
                                                const VerifyOptions& opts = {}) {
  require_valid(h);
  Method method = Method::kBacktracking;
  switch (opts.method) {
    case MethodChoice::kExhaustive: method = Method::kExhaustive; break;
    case MethodChoice::kBacktracking: method = Method::kBacktracking; break;
    case MethodChoice::kAuto:
      method = h.n() <= opts.auto_exhaustive_max_n ? Method::kExhaustive : Method::kBacktracking;
      break;
  }
  const FinderResult found = method == Method::kExhaustive
                                 ? find_violating_order_exhaustive(h, opts.budget, opts.workers)
                                 : find_violating_order_backtracking(h);
  VerificationCertificate cert;
  cert.method = method;
  cert.orders_examined = found.orders_examined;
  cert.nodes_expanded = found.nodes_expanded;
  if (found.violating_order) {
    for (std::size_t i = 0; i < h.edge_count(); ++i) {
      if (is_consistent(h.edge(i), *found.violating_order)) {
        throw std::logic_error("violating order is consistent with edge " + std::to_string(i));
      }
    }
    cert.verdict = Verdict::kViolated;
    cert.violating_order = found.violating_order;
  } else {
    cert.verdict = Verdict::kPropertyO;
  }
  return cert;
}

inline VerificationCertificate check_property_o(const OrientedHypergraph& h, MethodChoice method) {
  VerifyOptions opts;
  opts.method = method;
  return check_property_o(h, opts);
}

// ---------------------------------------------------------------------------
// Coverage histogram

/// counts[c] = number of linear orders consistent with exactly c edges.
struct CoverageHistogram {
  unsigned k = 0;
  unsigned n = 0;
  std::size_t edge_count = 0;
  std::map<unsigned, Count> counts;

  Count total_orders() const {
    Count s = 0;
    for (const auto& [c, m] : counts) s = checked_add(s, m);
    return s;
  }
  Count weighted_sum() const {
    Count s = 0;
    for (const auto& [c, m] : counts) s = checked_add(s, checked_mul(c, m));
    return s;
  }
  Count expected_total() const { return factorial(n); }
  Count expected_weighted_sum() const {
    if (edge_count == 0) return 0;
    return checked_mul(edge_count, count_consistent_orders(k, n));
  }
  bool total_holds() const { return total_orders() == expected_total(); }
  bool weighted_holds() const { return weighted_sum() == expected_weighted_sum(); }
  Count uncovered() const {
    const auto it = counts.find(0);
    return it == counts.end() ? 0 : it->second;
  }
};

inline CoverageHistogram coverage_histogram(const OrientedHypergraph& h,
                                            const EnumerationBudget& budget = {}) {
  require_valid(h);
  detail::require_budget(h, budget);
  CoverageHistogram hist;
  hist.k = h.k();
  hist.n = h.n();
  hist.edge_count = h.edge_count();
  const unsigned n = h.n();
  std::vector<Vertex> asc(n);
  std::iota(asc.begin(), asc.end(), Vertex{0});
  std::vector<Vertex> pos(n);
  std::vector<Count> dense(h.edge_count() + 1, 0);
  do {
    for (unsigned i = 0; i < n; ++i) pos[asc[i]] = i;
    ++dense[detail::consistent_edges(h, pos)];
  } while (std::next_permutation(asc.begin(), asc.end()));
  for (std::size_t c = 0; c < dense.size(); ++c) {
    if (dense[c]) hist.counts[static_cast<unsigned>(c)] = dense[c];
  }
  if (!hist.total_holds() || !hist.weighted_holds()) {
    throw std::logic_error("coverage histogram violates its conservation identities");
  }
  return hist;
}

}  // namespace propo

#endif  // PROPO_VERIFY_HPP
