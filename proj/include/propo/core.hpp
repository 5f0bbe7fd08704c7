// Core data model for oriented k-uniform hypergraphs.
//
// An oriented edge is an ordered k-tuple of distinct vertices; a linear order
// is stored as its ascending sequence (position 0 holds the minimum).

#ifndef PROPO_CORE_HPP
#define PROPO_CORE_HPP

#include <algorithm>
#include <cstdint>
#include <initializer_list>
#include <limits>
#include <numeric>
#include <set>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace propo {

using Vertex = std::uint32_t;
using Count = std::uint64_t;

/// Bad arguments or malformed data supplied by the caller.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A request that would exceed a configured enumeration budget.
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Fixed-width exact arithmetic overflowed.
class OverflowError : public std::overflow_error {
 public:
  using std::overflow_error::overflow_error;
};

// ---------------------------------------------------------------------------
// Exact integer helpers

inline Count checked_mul(Count a, Count b) {
  Count r = 0;
  if (__builtin_mul_overflow(a, b, &r)) {
    throw OverflowError("exact product exceeds 64 bits");
  }
  return r;
}

inline Count checked_add(Count a, Count b) {
  Count r = 0;
  if (__builtin_add_overflow(a, b, &r)) {
    throw OverflowError("exact sum exceeds 64 bits");
  }
  return r;
}

inline Count factorial(unsigned n) {
  Count r = 1;
  for (unsigned i = 2; i <= n; ++i) r = checked_mul(r, i);
  return r;
}

/// Falling factorial n * (n-1) * ... * (m+1) = n!/m!.
inline Count factorial_ratio(unsigned n, unsigned m) {
  if (m > n) throw InputError("factorial_ratio requires m <= n");
  Count r = 1;
  for (unsigned i = m + 1; i <= n; ++i) r = checked_mul(r, i);
  return r;
}

inline Count binomial(unsigned n, unsigned k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  Count r = 1;
  for (unsigned i = 1; i <= k; ++i) {
    // r * (n - k + i) is divisible by i at every step.
    const Count num = checked_mul(r, n - k + i);
    r = num / i;
  }
  return r;
}

/// Number of linear orders of n elements consistent with one oriented k-edge,
/// i.e. C(n,k) * (n-k)! = n!/k!.
inline Count count_consistent_orders(unsigned k, unsigned n) {
  if (k < 2) throw InputError("uniformity k must be at least 2");
  if (k > n) throw InputError("count_consistent_orders requires k <= n");
  return factorial_ratio(n, k);
}

// ---------------------------------------------------------------------------
// Permutations in lexicographic order

/// Lexicographic rank of a permutation of {0..size-1}.
inline Count rank_permutation(std::span<const Vertex> perm) {
  const auto size = static_cast<unsigned>(perm.size());
  Count rank = 0;
  for (unsigned i = 0; i < size; ++i) {
    Count smaller = 0;
    for (unsigned j = i + 1; j < size; ++j) {
      if (perm[j] < perm[i]) ++smaller;
    }
    rank = checked_add(rank, checked_mul(smaller, factorial(size - 1 - i)));
  }
  return rank;
}

/// Inverse of rank_permutation: the index-th permutation of {0..size-1}.
inline std::vector<Vertex> unrank_permutation(unsigned size, Count index) {
  if (index >= factorial(size)) throw InputError("permutation index out of range");
  std::vector<Vertex> pool(size);
  std::iota(pool.begin(), pool.end(), Vertex{0});
  std::vector<Vertex> perm;
  perm.reserve(size);
  for (unsigned i = size; i > 0; --i) {
    const Count block = factorial(i - 1);
    const auto pick = static_cast<std::size_t>(index / block);
    index %= block;
    perm.push_back(pool[pick]);
    pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(pick));
  }
  return perm;
}

// ---------------------------------------------------------------------------
// Domain types

/// Ordered k-tuple of vertices. The tuple order is the orientation.
struct OrientedEdge {
  std::vector<Vertex> vertices;

  OrientedEdge() = default;
  OrientedEdge(std::initializer_list<Vertex> vs) : vertices(vs) {}
  explicit OrientedEdge(std::span<const Vertex> vs) : vertices(vs.begin(), vs.end()) {}

  std::size_t size() const { return vertices.size(); }
  friend bool operator==(const OrientedEdge&, const OrientedEdge&) = default;
  friend auto operator<=>(const OrientedEdge&, const OrientedEdge&) = default;
};

/// Oriented k-graph on vertices {0..n-1}. Edges live in one flat buffer;
/// edge(i) is a view of the i-th tuple.
///
/// Construction only checks arity. Use validate() for the full invariants so
/// that malformed inputs remain representable and reportable.
class OrientedHypergraph {
 public:
  OrientedHypergraph() = default;
  OrientedHypergraph(unsigned k, unsigned n) : k_(k), n_(n) {
    if (k < 1) throw InputError("uniformity k must be positive");
  }
  OrientedHypergraph(unsigned k, unsigned n,
                     std::initializer_list<std::initializer_list<Vertex>> edges)
      : OrientedHypergraph(k, n) {
    for (const auto& e : edges) add_edge(std::span<const Vertex>(e.begin(), e.size()));
  }

  unsigned k() const { return k_; }
  unsigned n() const { return n_; }
  std::size_t edge_count() const { return k_ == 0 ? 0 : flat_.size() / k_; }
  bool empty() const { return flat_.empty(); }

  std::span<const Vertex> edge(std::size_t i) const {
    return {flat_.data() + i * k_, k_};
  }

  void add_edge(std::span<const Vertex> e) {
    if (e.size() != k_) {
      throw InputError("edge arity " + std::to_string(e.size()) + " does not match k=" +
                       std::to_string(k_));
    }
    flat_.insert(flat_.end(), e.begin(), e.end());
  }
  void add_edge(const OrientedEdge& e) { add_edge(std::span<const Vertex>(e.vertices)); }
  void add_edge(std::initializer_list<Vertex> e) {
    add_edge(std::span<const Vertex>(e.begin(), e.size()));
  }

  /// Overwrites edge i in place (used by enumerators that reuse one value).
  void set_edge(std::size_t i, std::span<const Vertex> e) {
    std::copy(e.begin(), e.end(), flat_.begin() + static_cast<std::ptrdiff_t>(i * k_));
  }

  void remove_edge(std::size_t i) {
    const auto first = flat_.begin() + static_cast<std::ptrdiff_t>(i * k_);
    flat_.erase(first, first + k_);
  }

  std::vector<OrientedEdge> edges() const {
    std::vector<OrientedEdge> out;
    out.reserve(edge_count());
    for (std::size_t i = 0; i < edge_count(); ++i) out.emplace_back(edge(i));
    return out;
  }

  std::span<const Vertex> flat() const { return flat_; }

  friend bool operator==(const OrientedHypergraph&, const OrientedHypergraph&) = default;

 private:
  unsigned k_ = 2;
  unsigned n_ = 0;
  std::vector<Vertex> flat_;
};

/// A linear order on {0..n-1}, stored as its ascending sequence together with
/// the inverse (position of each vertex).
class LinearOrder {
 public:
  LinearOrder() = default;
  explicit LinearOrder(std::vector<Vertex> ascending) : ascending_(std::move(ascending)) {
    position_.assign(ascending_.size(), kUnset);
    for (std::size_t i = 0; i < ascending_.size(); ++i) {
      const Vertex v = ascending_[i];
      if (v >= ascending_.size() || position_[v] != kUnset) {
        throw InputError("linear order is not a permutation of 0..n-1");
      }
      position_[v] = static_cast<Vertex>(i);
    }
  }

  static LinearOrder identity(unsigned n) {
    std::vector<Vertex> asc(n);
    std::iota(asc.begin(), asc.end(), Vertex{0});
    return LinearOrder(std::move(asc));
  }

  std::size_t size() const { return ascending_.size(); }
  const std::vector<Vertex>& ascending() const { return ascending_; }
  Vertex position(Vertex v) const { return position_.at(v); }

  LinearOrder reversed() const {
    return LinearOrder(std::vector<Vertex>(ascending_.rbegin(), ascending_.rend()));
  }

  std::string to_string() const {
    std::string s;
    for (std::size_t i = 0; i < ascending_.size(); ++i) {
      if (i) s += ' ';
      s += std::to_string(ascending_[i]);
    }
    return s;
  }

  friend bool operator==(const LinearOrder& a, const LinearOrder& b) {
    return a.ascending_ == b.ascending_;
  }

 private:
  static constexpr Vertex kUnset = std::numeric_limits<Vertex>::max();
  std::vector<Vertex> ascending_;
  std::vector<Vertex> position_;
};

// ---------------------------------------------------------------------------
// Consistency

/// True iff e = (x1..xk) satisfies x1 < x2 < ... < xk in the order.
inline bool is_consistent(std::span<const Vertex> e, const LinearOrder& order) {
  for (Vertex v : e) {
    if (v >= order.size()) {
      throw InputError("edge vertex " + std::to_string(v) + " outside order of size " +
                       std::to_string(order.size()));
    }
  }
  for (std::size_t i = 1; i < e.size(); ++i) {
    if (order.position(e[i - 1]) >= order.position(e[i])) return false;
  }
  return true;
}

inline bool is_consistent(const OrientedEdge& e, const LinearOrder& order) {
  return is_consistent(std::span<const Vertex>(e.vertices), order);
}

// ---------------------------------------------------------------------------
// Validation

struct Violation {
  enum class Kind { kBadUniformity, kRepeatedVertex, kOutOfRange, kDuplicateSet };
  Kind kind;
  std::size_t edge = 0;       // offending edge
  std::size_t other_edge = 0; // first edge with the same set (kDuplicateSet only)
  std::string message;
};

struct ValidationResult {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
  explicit operator bool() const { return ok(); }
};

inline std::string format_set(std::vector<Vertex> s) {
  std::sort(s.begin(), s.end());
  std::string out = "{";
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(s[i]);
  }
  return out + "}";
}

inline ValidationResult validate(const OrientedHypergraph& h) {
  ValidationResult res;
  if (h.k() < 2) {
    res.violations.push_back({Violation::Kind::kBadUniformity, 0, 0,
                              "uniformity k=" + std::to_string(h.k()) + " is below 2"});
  }
  std::vector<std::pair<std::vector<Vertex>, std::size_t>> sets;
  sets.reserve(h.edge_count());
  for (std::size_t i = 0; i < h.edge_count(); ++i) {
    const auto e = h.edge(i);
    bool range_ok = true;
    for (Vertex v : e) {
      if (v >= h.n()) {
        res.violations.push_back({Violation::Kind::kOutOfRange, i, 0,
                                  "vertex " + std::to_string(v) + " out of range in edge " +
                                      std::to_string(i) + " (n=" + std::to_string(h.n()) +
                                      ")"});
        range_ok = false;
        break;
      }
    }
    std::vector<Vertex> sorted(e.begin(), e.end());
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
      res.violations.push_back({Violation::Kind::kRepeatedVertex, i, 0,
                                "repeated vertex in edge " + std::to_string(i)});
      continue;
    }
    if (range_ok) sets.emplace_back(std::move(sorted), i);
  }
  std::sort(sets.begin(), sets.end());
  for (std::size_t i = 1; i < sets.size(); ++i) {
    if (sets[i].first == sets[i - 1].first) {
      // Report against the earliest edge carrying the set.
      std::size_t first = i - 1;
      while (first > 0 && sets[first - 1].first == sets[i].first) --first;
      res.violations.push_back({Violation::Kind::kDuplicateSet, sets[i].second,
                                sets[first].second,
                                "duplicate underlying set " + format_set(sets[i].first) +
                                    " in edges " + std::to_string(sets[first].second) +
                                    " and " + std::to_string(sets[i].second)});
    }
  }
  std::stable_sort(res.violations.begin(), res.violations.end(),
                   [](const Violation& a, const Violation& b) { return a.edge < b.edge; });
  return res;
}

inline void require_valid(const OrientedHypergraph& h) {
  const auto res = validate(h);
  if (!res.ok()) throw InputError("invalid hypergraph: " + res.violations.front().message);
}

// ---------------------------------------------------------------------------
// Structural transforms

/// Restricts to the vertices that occur in some edge, compacting indices while
/// preserving their relative order.
inline OrientedHypergraph support_restriction(const OrientedHypergraph& h) {
  std::vector<Vertex> remap(h.n(), std::numeric_limits<Vertex>::max());
  for (Vertex v : h.flat()) remap.at(v) = 0;
  Vertex next = 0;
  for (auto& r : remap) {
    if (r == 0) r = next++;
  }
  OrientedHypergraph out(h.k(), next);
  std::vector<Vertex> buf(h.k());
  for (std::size_t i = 0; i < h.edge_count(); ++i) {
    const auto e = h.edge(i);
    for (std::size_t j = 0; j < e.size(); ++j) buf[j] = remap[e[j]];
    out.add_edge(buf);
  }
  return out;
}

inline OrientedHypergraph reverse(const OrientedHypergraph& h) {
  OrientedHypergraph out(h.k(), h.n());
  std::vector<Vertex> buf(h.k());
  for (std::size_t i = 0; i < h.edge_count(); ++i) {
    const auto e = h.edge(i);
    std::reverse_copy(e.begin(), e.end(), buf.begin());
    out.add_edge(buf);
  }
  return out;
}

/// Applies the vertex map v -> relabel[v] to every edge.
inline OrientedHypergraph relabel(const OrientedHypergraph& h, std::span<const Vertex> relabel) {
  if (relabel.size() != h.n()) throw InputError("relabeling size must equal n");
  OrientedHypergraph out(h.k(), h.n());
  std::vector<Vertex> buf(h.k());
  for (std::size_t i = 0; i < h.edge_count(); ++i) {
    const auto e = h.edge(i);
    for (std::size_t j = 0; j < e.size(); ++j) buf[j] = relabel[e[j]];
    out.add_edge(buf);
  }
  return out;
}

/// Image of an order under the same vertex map.
inline LinearOrder relabel(const LinearOrder& order, std::span<const Vertex> relabel) {
  std::vector<Vertex> asc;
  asc.reserve(order.size());
  for (Vertex v : order.ascending()) asc.push_back(relabel[v]);
  return LinearOrder(std::move(asc));
}

/// Same edge multiset regardless of listing order.
inline bool same_edge_set(const OrientedHypergraph& a, const OrientedHypergraph& b) {
  if (a.k() != b.k() || a.n() != b.n()) return false;
  auto ea = a.edges();
  auto eb = b.edges();
  std::sort(ea.begin(), ea.end());
  std::sort(eb.begin(), eb.end());
  return ea == eb;
}

inline std::string edge_to_string(std::span<const Vertex> e) {
  std::string s;
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (i) s += ' ';
    s += std::to_string(e[i]);
  }
  return s;
}

}  // namespace propo

#endif  // PROPO_CORE_HPP
