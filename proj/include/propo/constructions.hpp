// Explicit Property O hypergraphs and the general k-uniform construction.
//
// General construction layout (1-based names, 0-based indices):
//   x_i        -> i-1                                  i in 1..k-1
//   a_j        -> (k-1) + (j-1)                        j in 1..(k-1)!
//   fresh(j,i) -> (k-1) + (k-1)! + (j-1)(k-1) + (i-1)
// Edges, in emission order:
//   1. (pi_j(x), a_j) for j ascending;
//   2. for j, then i, then l in L ascending: the tuple pi_j(x) with a_j
//      inserted before position i, with position l overwritten by fresh(j,i).
// L holds the odd positions below k together with k itself.

#ifndef PROPO_CONSTRUCTIONS_HPP
#define PROPO_CONSTRUCTIONS_HPP

#include <algorithm>
#include <limits>
#include <span>
#include <utility>
#include <string>
#include <vector>

#include "propo/core.hpp"

namespace propo {

/// The j-th permutation of {1..k-1} in lexicographic order; j = 1 is the
/// identity.
inline std::vector<Vertex> permutation_at(unsigned k, Count j) {
  if (k < 2) throw InputError("permutation_at requires k >= 2");
  const Count count = factorial(k - 1);
  if (j < 1 || j > count) {
    throw InputError("permutation index " + std::to_string(j) + " outside 1.." +
                     std::to_string(count));
  }
  auto perm = unrank_permutation(k - 1, j - 1);
  for (auto& v : perm) ++v;
  return perm;
}

/// Places y immediately before position i (1-based) of the tuple.
inline std::vector<Vertex> insert_at(std::span<const Vertex> tuple, Vertex y, unsigned i) {
  if (i < 1 || i > tuple.size()) {
    throw InputError("insertion position " + std::to_string(i) + " outside 1.." +
                     std::to_string(tuple.size()));
  }
  std::vector<Vertex> out(tuple.begin(), tuple.end());
  out.insert(out.begin() + (i - 1), y);
  return out;
}

inline std::vector<Vertex> insert_at(std::initializer_list<Vertex> tuple, Vertex y, unsigned i) {
  return insert_at(std::span<const Vertex>(tuple.begin(), tuple.size()), y, i);
}

/// Replacement positions (1-based) used for every (j, i) pair.
struct ReplacementPlan {
  unsigned k = 0;
  std::vector<unsigned> positions;

  static ReplacementPlan for_uniformity(unsigned k) {
    ReplacementPlan plan;
    plan.k = k;
    for (unsigned l = 1; l < k; l += 2) plan.positions.push_back(l);
    plan.positions.push_back(k);
    return plan;
  }

  /// Smallest position l with rank in {l-1, l}, or 0 if none.
  unsigned witness_for_rank(unsigned rank) const {
    for (unsigned l : positions) {
      if (rank + 1 == l || rank == l) return l;
    }
    return 0;
  }

  /// Every rank 0..k is covered by some {l-1, l}.
  bool covers_all_ranks() const {
    for (unsigned r = 0; r <= k; ++r) {
      if (witness_for_rank(r) == 0) return false;
    }
    return true;
  }
};

struct GeneralLayout {
  unsigned k = 0;

  explicit GeneralLayout(unsigned uniformity) : k(uniformity) {
    if (k < 3) throw InputError("general construction requires k >= 3");
  }

  Count permutation_count() const { return factorial(k - 1); }
  Vertex x_index(unsigned i) const { return i - 1; }
  Vertex a_index(Count j) const { return static_cast<Vertex>((k - 1) + (j - 1)); }
  Vertex fresh_index(Count j, unsigned i) const {
    return static_cast<Vertex>((k - 1) + permutation_count() + (j - 1) * (k - 1) + (i - 1));
  }
  Count vertex_count() const {
    return checked_add(k - 1, checked_mul(k, permutation_count()));
  }

  /// pi_j applied to (x_1, ..., x_{k-1}).
  std::vector<Vertex> permuted_x(Count j) const {
    auto perm = permutation_at(k, j);
    for (auto& v : perm) v = x_index(v);
    return perm;
  }

  std::vector<Vertex> base_edge(Count j) const {
    auto e = permuted_x(j);
    e.push_back(a_index(j));
    return e;
  }

  /// pi_j(x) with a_j inserted before position i.
  std::vector<Vertex> inserted_tuple(Count j, unsigned i) const {
    return insert_at(permuted_x(j), a_index(j), i);
  }

  /// inserted_tuple(j, i) with position l overwritten by fresh(j, i).
  std::vector<Vertex> replaced_edge(Count j, unsigned i, unsigned l) const {
    auto t = inserted_tuple(j, i);
    t.at(l - 1) = fresh_index(j, i);
    return t;
  }
};

/// (floor(k/2)+1) k! - floor(k/2) (k-1)!
inline Count theorem2_edge_count(unsigned k) {
  if (k < 3) throw InputError("edge-count formula requires k >= 3");
  const Count half = k / 2;
  const Count lhs = checked_mul(half + 1, factorial(k));
  const Count rhs = checked_mul(half, factorial(k - 1));
  return lhs - rhs;
}

/// The same count in the form ((k-1)(floor(k/2)+1) + 1) (k-1)!.
inline Count theorem2_edge_count_product_form(unsigned k) {
  if (k < 3) throw InputError("edge-count formula requires k >= 3");
  const Count half = k / 2;
  return checked_mul(checked_add(checked_mul(k - 1, half + 1), 1), factorial(k - 1));
}

inline OrientedHypergraph construct_general(unsigned k) {
  const GeneralLayout layout(k);
  const auto plan = ReplacementPlan::for_uniformity(k);
  const Count perms = layout.permutation_count();
  const Count n = layout.vertex_count();
  if (n > std::numeric_limits<Vertex>::max()) throw OverflowError("vertex count too large");
  OrientedHypergraph h(k, static_cast<unsigned>(n));
  for (Count j = 1; j <= perms; ++j) h.add_edge(layout.base_edge(j));
  for (Count j = 1; j <= perms; ++j) {
    for (unsigned i = 1; i < k; ++i) {
      const auto t = layout.inserted_tuple(j, i);
      const Vertex fresh = layout.fresh_index(j, i);
      for (unsigned l : plan.positions) {
        auto e = t;
        e[l - 1] = fresh;
        h.add_edge(e);
      }
    }
  }
  return h;
}

/// Cyclically oriented triangle: k=2, n=3.
inline OrientedHypergraph construct_cyclic_triangle() {
  return OrientedHypergraph(2, 3, {{0, 1}, {1, 2}, {2, 0}});
}

/// Ten-edge 3-graph. Vertex map x,y,a,b,c,d,e,f -> 0..7.
inline OrientedHypergraph construct_claim1() {
  constexpr Vertex x = 0, y = 1, a = 2, b = 3, c = 4, d = 5, e = 6, f = 7;
  return OrientedHypergraph(3, 8,
                            {{x, y, a}, {a, x, c}, {c, x, y}, {x, a, d}, {d, a, y},
                             {y, x, b}, {b, y, e}, {e, y, x}, {y, b, f}, {f, b, x}});
}

/// 18-edge 3-graph on a0,a1,a2,b0,b1,b2 -> 0..5: (a_i, a_{i+1}, b_j) and
/// (b_i, b_{i+1}, a_j), indices mod 3.
inline OrientedHypergraph construct_h1() {
  OrientedHypergraph h(3, 6);
  const auto a = [](unsigned i) { return static_cast<Vertex>(i % 3); };
  const auto b = [](unsigned i) { return static_cast<Vertex>(3 + i % 3); };
  for (unsigned i = 0; i < 3; ++i) {
    for (unsigned j = 0; j < 3; ++j) h.add_edge({a(i), a(i + 1), b(j)});
  }
  for (unsigned i = 0; i < 3; ++i) {
    for (unsigned j = 0; j < 3; ++j) h.add_edge({b(i), b(i + 1), a(j)});
  }
  return h;
}

/// The ten-edge graph with e merged into d and f into c. Vertex map
/// x,y,a,b,c,d -> 0..5.
inline OrientedHypergraph construct_h2() {
  constexpr Vertex x = 0, y = 1, a = 2, b = 3, c = 4, d = 5;
  return OrientedHypergraph(3, 6,
                            {{x, y, a}, {a, x, c}, {c, x, y}, {x, a, d}, {d, a, y},
                             {y, x, b}, {b, y, d}, {d, y, x}, {y, b, c}, {c, b, x}});
}

// ---------------------------------------------------------------------------
// Structured verification of the general construction

/// One covered case: the x's in pi_j order, a_j in insertion slot i (slot k
/// means a_j comes last), and the fresh vertex at rank r among the k tuple
/// elements. Slot k is covered by the step-1 edge and carries rank 0.
struct CaseWitness {
  Count j = 0;
  unsigned i = 0;
  unsigned rank = 0;
  unsigned position = 0;  // replaced position l, or 0 for the step-1 edge
  std::vector<Vertex> edge;
};

struct StructuredReport {
  unsigned k = 0;
  bool ok = false;
  Count permutations_checked = 0;  // (a)
  Count placements_checked = 0;    // (b)
  Count cases_checked = 0;         // (c): (j, i, r) triples
  Count cases_covered = 0;
  bool rank_coverage = false;
  std::vector<CaseWitness> witnesses;  // filled when requested
  std::vector<std::string> failures;
};

namespace detail {

// Local order used by the rank cases: the inserted tuple ascending, with the
// fresh vertex placed so that `rank` tuple elements lie below it. Tuple
// elements get odd keys 2m+1 and the fresh vertex gets 2*rank. Keys live in a
// table over all vertices so that one object serves every (j, i) pair.
class LocalRankOrder {
 public:
  explicit LocalRankOrder(std::size_t vertex_count) : key_(vertex_count, -1) {}

  void assign(std::span<const Vertex> tuple, Vertex fresh) {
    for (Vertex v : touched_) key_[v] = -1;
    touched_.assign(tuple.begin(), tuple.end());
    for (std::size_t m = 0; m < tuple.size(); ++m) key_[tuple[m]] = 2L * static_cast<long>(m) + 1;
    fresh_ = fresh;
  }

  bool consistent(std::span<const Vertex> edge, unsigned rank) const {
    long prev = -1;
    for (Vertex v : edge) {
      const long key = v == fresh_ ? 2L * rank : (v < key_.size() ? key_[v] : -1);
      if (key < 0 || key <= prev) return false;
      prev = key;
    }
    return true;
  }

  /// True when every vertex of `tuple` has a key and the keys increase.
  bool increasing(std::span<const Vertex> tuple) const {
    long prev = -1;
    for (Vertex v : tuple) {
      const long key = v < key_.size() ? key_[v] : -1;
      if (key < 0 || key <= prev) return false;
      prev = key;
    }
    return true;
  }

  /// Ranks r for which `tuple` with 1-based position l overwritten by the
  /// fresh vertex is consistent, as the closed range [first, second]. Assumes
  /// increasing(tuple): dropping one element keeps the rest increasing, so
  /// only the two neighbours of position l bound the fresh key 2r.
  std::pair<long, long> rank_window(std::span<const Vertex> tuple, unsigned l) const {
    const long below = l >= 2 ? key_[tuple[l - 2]] : -1;
    const long above = l < tuple.size() ? key_[tuple[l]] : std::numeric_limits<long>::max();
    const long lo = below / 2 + 1 + (below < 0 ? -1 : 0);
    const long hi = above == std::numeric_limits<long>::max() ? static_cast<long>(tuple.size())
                                                              : (above - 1) / 2;
    return {lo, hi};
  }

 private:
  std::vector<long> key_;
  std::vector<Vertex> touched_;
  Vertex fresh_ = 0;
};

}  // namespace detail

/// Checks, without enumerating orders, that the case analysis behind the
/// general construction is exhaustive:
///   (a) the step-1 edges realise every relative order of the x's, each with
///       a_j last;
///   (b) insertion slots 1..k-1 realise every non-final placement of a_j;
///   (c) for every rank of the fresh vertex among the inserted tuple, some
///       replaced edge is consistent.
/// Tuples are rebuilt from pi_j in place; the layout's own tuples are compared
/// for the first and last permutation.
inline StructuredReport structured_verify_general(unsigned k, bool record_witnesses = false) {
  const GeneralLayout layout(k);
  const auto plan = ReplacementPlan::for_uniformity(k);
  StructuredReport rep;
  rep.k = k;
  rep.rank_coverage = plan.covers_all_ranks();
  if (!rep.rank_coverage) rep.failures.push_back("replacement plan misses a rank");
  if (plan.positions.size() != k / 2 + 1) rep.failures.push_back("replacement plan size");

  // Witness position for each rank, and its slot in plan.positions.
  std::vector<unsigned> witness(k + 1);
  std::vector<std::size_t> witness_slot(k + 1);
  for (unsigned r = 0; r <= k; ++r) {
    witness[r] = plan.witness_for_rank(r);
    witness_slot[r] = static_cast<std::size_t>(
        std::find(plan.positions.begin(), plan.positions.end(), witness[r]) - plan.positions.begin());
  }
  std::vector<std::pair<long, long>> window(plan.positions.size());

  const Count perms = layout.permutation_count();
  const Vertex first_a = layout.a_index(1);
  const Vertex first_fresh = layout.fresh_index(1, 1);
  detail::LocalRankOrder local(static_cast<std::size_t>(layout.vertex_count()));
  std::vector<Vertex> px = layout.permuted_x(1);
  std::vector<Vertex> prev_perm;
  std::vector<Vertex> t(k);
  Count cases_checked = 0;
  Count cases_covered = 0;
  for (Count j = 1; j <= perms; ++j) {
    // (a) distinct x-orders, strictly increasing in lexicographic order. pi_j
    // is advanced with next_permutation; the layout's own pi_j is compared at
    // both ends of the range.
    if (j > 1) {
      prev_perm = px;
      if (!std::next_permutation(px.begin(), px.end()) || !(prev_perm < px)) {
        rep.failures.push_back("x-orders not distinct at j=" + std::to_string(j));
      }
    }
    const bool layout_check = j == 1 || j == perms;
    if (j == 1) {
      for (unsigned m = 0; m + 1 < k; ++m) {
        if (px[m] != layout.x_index(m + 1)) rep.failures.push_back("pi_1 is not the identity");
      }
    }
    const Vertex a = static_cast<Vertex>(first_a + (j - 1));
    if (layout_check) {
      auto base = px;
      base.push_back(a);
      if (a != layout.a_index(j) || px != layout.permuted_x(j) || base != layout.base_edge(j)) {
        rep.failures.push_back("step-1 edge malformed at j=" + std::to_string(j));
      }
    }
    ++rep.permutations_checked;
    if (record_witnesses) {
      auto base = px;
      base.push_back(a);
      rep.witnesses.push_back({j, k, 0, 0, std::move(base)});
    }

    for (unsigned i = 1; i < k; ++i) {
      // (b) a_j sits at slot i and the x's keep their pi_j order.
      std::copy(px.begin(), px.begin() + (i - 1), t.begin());
      t[i - 1] = a;
      std::copy(px.begin() + (i - 1), px.end(), t.begin() + i);
      const Vertex fresh = static_cast<Vertex>(first_fresh + (j - 1) * (k - 1) + (i - 1));
      bool placed = t[i - 1] == a;
      for (unsigned m = 0, x = 0; m < k; ++m) {
        if (m != i - 1) placed = placed && t[m] == px[x++];
      }
      if (layout_check) {
        placed = placed && t == layout.inserted_tuple(j, i) && fresh == layout.fresh_index(j, i);
        for (unsigned l : plan.positions) {
          auto e = t;
          e[l - 1] = fresh;
          placed = placed && e == layout.replaced_edge(j, i, l);
        }
      }
      if (!placed) {
        rep.failures.push_back("insertion malformed at j=" + std::to_string(j) +
                               " i=" + std::to_string(i));
      }
      ++rep.placements_checked;

      // (c) every rank of the fresh vertex has a consistent replaced edge.
      local.assign(t, fresh);
      const bool ordered = local.increasing(t);
      for (std::size_t p = 0; p < plan.positions.size(); ++p) {
        window[p] = local.rank_window(t, plan.positions[p]);
      }
      for (unsigned r = 0; r <= k; ++r) {
        ++cases_checked;
        if (witness[r] == 0) continue;
        const auto [lo, hi] = window[witness_slot[r]];
        if (ordered && lo <= r && r <= hi) {
          ++cases_covered;
          if (record_witnesses) {
            auto edge = t;
            edge[witness[r] - 1] = fresh;
            rep.witnesses.push_back({j, i, r, witness[r], std::move(edge)});
          }
        } else {
          rep.failures.push_back("rank " + std::to_string(r) + " uncovered at j=" +
                                 std::to_string(j) + " i=" + std::to_string(i));
        }
      }
    }
  }
  rep.cases_checked = cases_checked;
  rep.cases_covered = cases_covered;
  rep.ok = rep.failures.empty() && rep.rank_coverage && rep.cases_covered == rep.cases_checked &&
           rep.permutations_checked == perms;
  return rep;
}

}  // namespace propo

#endif  // PROPO_CONSTRUCTIONS_HPP
