#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "whitehead/errors.hpp"
#include "whitehead/graph.hpp"
#include "whitehead/vertex_set.hpp"

namespace whitehead {

/// Based partition at an operative vertex u: a partition of Γ − st(u) into
/// petals, each a union of components of Γ − st(u). The singleton block {u}
/// is implicit. Petals are kept in ascending order of their minimum.
struct BasedPartition {
  int operative = 0;
  std::vector<VertexSet> petals;

  std::size_t length() const { return petals.size(); }

  VertexSet support() const {
    VertexSet s;
    for (VertexSet p : petals) s |= p;
    return s;
  }

  // Index of the petal containing x, or -1.
  int petal_of(int x) const {
    for (std::size_t i = 0; i < petals.size(); ++i)
      if (petals[i].contains(x)) return static_cast<int>(i);
    return -1;
  }

  void normalize() {
    std::sort(petals.begin(), petals.end(),
              [](VertexSet a, VertexSet b) { return a.min() < b.min(); });
  }

  std::string to_string() const {
    std::string out = std::to_string(operative) + ":{";
    for (std::size_t i = 0; i < petals.size(); ++i) {
      if (i) out += ',';
      out += petals[i].to_string();
    }
    return out + "}";
  }

  friend bool operator==(const BasedPartition&, const BasedPartition&) = default;
  friend auto operator<=>(const BasedPartition&, const BasedPartition&) = default;
};

inline BasedPartition trivial_partition(const Graph& g, int u) {
  VertexSet rest = g.vertices() - g.star(u);
  if (rest.empty())
    throw domain_error("vertex " + std::to_string(u) + " is dominating; reduce the graph first");
  return BasedPartition{u, {rest}};
}

/// Every based partition at u: one per set partition of the component list
/// of Γ − st(u), so Bell(#components) of them. The trivial partition is first.
inline std::vector<BasedPartition> enumerate_based_partitions(const Graph& g, int u) {
  const std::vector<VertexSet> comps = components_minus_star(g, u);
  const std::size_t k = comps.size();
  std::vector<BasedPartition> out;
  // Restricted growth strings: block[0] = 0, block[i] <= 1 + max(block[0..i-1]).
  std::vector<std::size_t> block(k, 0);
  std::vector<std::size_t> prefix_max(k, 0);
  for (;;) {
    std::size_t blocks = prefix_max[k - 1] + 1;
    BasedPartition p{u, std::vector<VertexSet>(blocks)};
    for (std::size_t i = 0; i < k; ++i) p.petals[block[i]] |= comps[i];
    // Blocks are opened in order of their first component, so they already
    // ascend by minimum.
    out.push_back(std::move(p));

    std::size_t i = k;
    while (i-- > 1) {
      if (block[i] <= prefix_max[i - 1]) break;
    }
    if (i == 0 || i >= k) break;
    ++block[i];
    prefix_max[i] = std::max(prefix_max[i - 1], block[i]);
    for (std::size_t j = i + 1; j < k; ++j) {
      block[j] = 0;
      prefix_max[j] = prefix_max[j - 1];
    }
  }
  return out;
}

/// p ≤ q: every petal of q lies inside some petal of p.
inline bool refines(const BasedPartition& p, const BasedPartition& q) {
  if (p.operative != q.operative)
    throw domain_error("refines: operative vertices differ (" + std::to_string(p.operative) +
                       " vs " + std::to_string(q.operative) + ")");
  for (VertexSet b : q.petals) {
    bool inside = false;
    for (VertexSet a : p.petals)
      if (b.is_subset_of(a)) {
        inside = true;
        break;
      }
    if (!inside) return false;
  }
  return true;
}

/// Crossing of based partitions at distinct vertices u, v. Adjacent vertices
/// never cross. Otherwise they cross when some petal P at u avoiding the
/// dominant component D^v meets some petal Q at v avoiding D^u.
inline bool crosses(const Graph& g, const BasedPartition& p, const BasedPartition& q) {
  const int u = p.operative;
  const int v = q.operative;
  if (u == v) throw domain_error("crosses: both partitions are based at " + std::to_string(u));
  if (g.star(v).contains(u)) return false;
  const VertexSet dom_v = dominant_component(g, u, v);
  const VertexSet dom_u = dominant_component(g, v, u);
  for (VertexSet pp : p.petals) {
    if (dom_v.is_subset_of(pp)) continue;
    for (VertexSet qq : q.petals) {
      if (dom_u.is_subset_of(qq)) continue;
      if (pp.intersects(qq)) return true;
    }
  }
  return false;
}

/// Crossing via shared components: some component shared by u and v lies in
/// a petal P at u and a petal Q at v with D^v ⊄ P and D^u ⊄ Q.
inline bool crosses_by_shared_component(const Graph& g, const BasedPartition& p,
                                        const BasedPartition& q) {
  const int u = p.operative;
  const int v = q.operative;
  if (u == v) throw domain_error("crosses: both partitions are based at " + std::to_string(u));
  if (g.star(v).contains(u)) return false;
  const VertexSet dom_v = dominant_component(g, u, v);
  const VertexSet dom_u = dominant_component(g, v, u);
  for (VertexSet c : components_minus_star(g, u)) {
    if (classify_component(g, u, v, c) != ComponentClass::Shared) continue;
    int pi = p.petal_of(c.min());
    int qi = q.petal_of(c.min());
    if (pi < 0 || qi < 0) continue;
    const VertexSet pp = p.petals[pi];
    const VertexSet qq = q.petals[qi];
    if (c.is_subset_of(pp) && c.is_subset_of(qq) && !dom_v.is_subset_of(pp) &&
        !dom_u.is_subset_of(qq))
      return true;
  }
  return false;
}

inline bool compatible(const Graph& g, const BasedPartition& p, const BasedPartition& q) {
  if (g.star(q.operative).contains(p.operative)) return true;
  return !crosses(g, p, q);
}

/// Replaces petal `index` by {part, petal − part}. `part` must be a nonempty
/// proper union of components of Γ − st(u) inside that petal.
inline BasedPartition split_petal(const Graph& g, const BasedPartition& p, std::size_t index,
                                  VertexSet part) {
  if (index >= p.petals.size()) throw domain_error("split_petal: petal index out of range");
  const VertexSet petal = p.petals[index];
  if (part.empty() || part == petal || !part.is_subset_of(petal))
    throw domain_error("split_petal: " + part.to_string() + " is not a nonempty proper subset of " +
                       petal.to_string());
  for (VertexSet c : components_minus_star(g, p.operative)) {
    if (c.intersects(part) && !c.is_subset_of(part))
      throw domain_error("split_petal: " + part.to_string() + " cuts the component " +
                         c.to_string());
  }
  BasedPartition out = p;
  out.petals[index] = petal - part;
  out.petals.push_back(part);
  out.normalize();
  return out;
}

/// Components of Γ − st(u) inside the given petal, ordered by minimum.
inline std::vector<VertexSet> petal_components(const Graph& g, int u, VertexSet petal) {
  std::vector<VertexSet> out;
  for (VertexSet c : components_minus_star(g, u))
    if (c.is_subset_of(petal)) out.push_back(c);
  return out;
}

/// Every binary split of a petal, as the part that does NOT contain the
/// petal's first component. Parts come in increasing order of their
/// component-subset mask, so the first entry is the "least" split.
inline std::vector<VertexSet> binary_split_parts(const Graph& g, int u, VertexSet petal) {
  const std::vector<VertexSet> comps = petal_components(g, u, petal);
  std::vector<VertexSet> parts;
  if (comps.size() < 2) return parts;
  const std::size_t rest = comps.size() - 1;
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << rest); ++mask) {
    VertexSet part;
    for (std::size_t i = 0; i < rest; ++i)
      if ((mask >> i) & 1U) part |= comps[i + 1];
    parts.push_back(part);
  }
  return parts;
}

}  // namespace whitehead

template <>
struct std::hash<whitehead::BasedPartition> {
  std::size_t operator()(const whitehead::BasedPartition& p) const noexcept {
    std::size_t h = std::hash<int>{}(p.operative);
    for (auto s : p.petals) h = h * 1099511628211ULL ^ std::hash<whitehead::VertexSet>{}(s);
    return h;
  }
};
