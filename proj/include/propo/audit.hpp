// Class-size audit behind the k!+1 edge lower bound.
//
// Vertices are relabeled so that the base edge becomes (0,1,...,k-1) and the
// remaining vertices follow in ascending original order. For each permutation
// s of the base block, the "bar order" lists s(0) < ... < s(k-1) and then
// k < k+1 < ... < n-1. class_sizes[i] counts the permutations whose bar order
// makes edge i consistent. A nonzero class size is k!/m! where m is the
// number of base vertices in edge i.

#ifndef PROPO_AUDIT_HPP
#define PROPO_AUDIT_HPP

#include <algorithm>
#include <limits>
#include <numeric>
#include <vector>

#include "propo/core.hpp"

namespace propo {

struct AuditReport {
  std::size_t base_edge = 0;
  std::vector<Count> class_sizes;
  std::vector<unsigned> intersection_sizes;
  Count total = 0;
  Count residue = 0;
  Count min_coverage = 0;
  bool divisibility_ok = true;  // every class size is 0 or k!/m!
};

/// Vertex map sending the base edge to 0..k-1 and the rest, in ascending
/// original order, to k..n-1.
inline std::vector<Vertex> base_block_relabeling(const OrientedHypergraph& h,
                                                 std::size_t base_edge) {
  const auto base = h.edge(base_edge);
  constexpr Vertex kUnset = std::numeric_limits<Vertex>::max();
  std::vector<Vertex> map(h.n(), kUnset);
  Vertex next = 0;
  for (Vertex v : base) map[v] = next++;
  for (Vertex v = 0; v < h.n(); ++v) {
    if (map[v] == kUnset) map[v] = next++;
  }
  return map;
}

inline AuditReport lower_bound_audit(const OrientedHypergraph& h, std::size_t base_edge) {
  require_valid(h);
  if (base_edge >= h.edge_count()) {
    throw InputError("base edge index " + std::to_string(base_edge) + " out of range (" +
                     std::to_string(h.edge_count()) + " edges)");
  }
  const unsigned k = h.k();
  const unsigned n = h.n();
  const auto relabeled = relabel(h, base_block_relabeling(h, base_edge));
  const Count k_fact = factorial(k);

  AuditReport rep;
  rep.base_edge = base_edge;
  rep.class_sizes.assign(h.edge_count(), 0);
  rep.intersection_sizes.resize(h.edge_count());
  for (std::size_t i = 0; i < h.edge_count(); ++i) {
    const auto e = relabeled.edge(i);
    rep.intersection_sizes[i] =
        static_cast<unsigned>(std::count_if(e.begin(), e.end(), [k](Vertex v) { return v < k; }));
  }

  std::vector<Vertex> sigma(k);
  std::iota(sigma.begin(), sigma.end(), Vertex{0});
  std::vector<Vertex> asc(n);
  std::iota(asc.begin(), asc.end(), Vertex{0});
  rep.min_coverage = std::numeric_limits<Count>::max();
  do {
    std::copy(sigma.begin(), sigma.end(), asc.begin());
    const LinearOrder bar(asc);
    Count covered = 0;
    for (std::size_t i = 0; i < relabeled.edge_count(); ++i) {
      if (is_consistent(relabeled.edge(i), bar)) {
        ++rep.class_sizes[i];
        ++covered;
      }
    }
    rep.min_coverage = std::min(rep.min_coverage, covered);
  } while (std::next_permutation(sigma.begin(), sigma.end()));

  for (std::size_t i = 0; i < rep.class_sizes.size(); ++i) {
    rep.total = checked_add(rep.total, rep.class_sizes[i]);
    const Count expected = k_fact / factorial(rep.intersection_sizes[i]);
    if (rep.class_sizes[i] != 0 && rep.class_sizes[i] != expected) rep.divisibility_ok = false;
  }
  if (rep.class_sizes[base_edge] != 1) rep.divisibility_ok = false;
  rep.residue = rep.total % k;
  return rep;
}

}  // namespace propo

#endif  // PROPO_AUDIT_HPP
