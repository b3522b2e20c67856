#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "whitehead/errors.hpp"
#include "whitehead/graph.hpp"
#include "whitehead/parallel.hpp"
#include "whitehead/partition.hpp"
#include "whitehead/poset.hpp"

namespace whitehead {

/// Partial conjugation C^j_I of the petal I by the vertex j. Canonical when
/// I is a union of components of Γ − st(j) avoiding its minimal element.
struct CanonicalGenerator {
  int vertex = 0;
  VertexSet petal;

  std::string to_string() const { return "C^" + std::to_string(vertex) + "_" + petal.to_string(); }

  friend bool operator==(const CanonicalGenerator&, const CanonicalGenerator&) = default;
  friend auto operator<=>(const CanonicalGenerator&, const CanonicalGenerator&) = default;
};

/// Sorted, duplicate-free.
using GeneratorSet = std::vector<CanonicalGenerator>;

inline GeneratorSet make_generator_set(std::vector<CanonicalGenerator> gens) {
  std::sort(gens.begin(), gens.end());
  gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
  return gens;
}

inline bool is_canonical(const Graph& g, const CanonicalGenerator& c) {
  if (!g.has_vertex(c.vertex) || c.petal.empty()) return false;
  VertexSet rest = g.vertices() - g.star(c.vertex);
  if (rest.empty() || !c.petal.is_subset_of(rest) || c.petal.contains(rest.min())) return false;
  for (VertexSet comp : components_minus_star(g, c.vertex))
    if (comp.intersects(c.petal) && !comp.is_subset_of(c.petal)) return false;
  return true;
}

/// Every canonical generator of the graph, in generator order.
inline GeneratorSet all_canonical_generators(const Graph& g) {
  GeneratorSet out;
  for (int v : g.vertices()) {
    auto comps = components_minus_star(g, v);
    // comps[0] holds the minimal element.
    const std::size_t k = comps.size() - 1;
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << k); ++mask) {
      VertexSet petal;
      for (std::size_t i = 0; i < k; ++i)
        if ((mask >> i) & 1U) petal |= comps[i + 1];
      out.push_back({v, petal});
    }
  }
  return make_generator_set(std::move(out));
}

/// B(τ): one generator per petal avoiding the minimal element of Γ − st(j).
inline GeneratorSet canonical_basis(const Graph& g, const VertexType& t) {
  GeneratorSet out;
  for (const auto& p : t.parts) {
    const int m = minimal_vertex(g, p.operative);
    for (VertexSet petal : p.petals)
      if (!petal.contains(m)) out.push_back({p.operative, petal});
  }
  return make_generator_set(std::move(out));
}

/// A ⊆ B(τ).
inline bool supports(const Graph& g, const VertexType& t, const GeneratorSet& a) {
  const GeneratorSet basis = canonical_basis(g, t);
  return std::includes(basis.begin(), basis.end(), a.begin(), a.end());
}

/// The generator lies in Stab(τ) exactly when its petal is a union of petals
/// of τ_j.
inline bool in_stabilizer(const VertexType& t, const CanonicalGenerator& c) {
  for (VertexSet petal : t.at(c.vertex).petals)
    if (petal.intersects(c.petal) && !petal.is_subset_of(c.petal)) return false;
  return true;
}

namespace detail {

inline bool compatible_with_rest(const Graph& g, const VertexType& t, std::size_t pos,
                                 const BasedPartition& candidate) {
  for (std::size_t i = 0; i < t.parts.size(); ++i) {
    if (i == pos) continue;
    if (!compatible(g, candidate, t.parts[i])) return false;
  }
  return true;
}

}  // namespace detail

/// Parts X of the binary splits {X, petal − X} of petal `k` at position `pos`
/// that keep τ a vertex type.
inline std::vector<VertexSet> admissible_splits(const Graph& g, const VertexType& t,
                                                std::size_t pos, std::size_t k) {
  const BasedPartition& p = t.parts[pos];
  std::vector<VertexSet> out;
  for (VertexSet part : binary_split_parts(g, p.operative, p.petals[k])) {
    if (detail::compatible_with_rest(g, t, pos, split_petal(g, p, k, part))) out.push_back(part);
  }
  return out;
}

inline bool petal_splittable(const Graph& g, const VertexType& t, std::size_t pos, std::size_t k) {
  const BasedPartition& p = t.parts[pos];
  for (VertexSet part : binary_split_parts(g, p.operative, p.petals[k]))
    if (detail::compatible_with_rest(g, t, pos, split_petal(g, p, k, part))) return true;
  return false;
}

/// Indices of the petals of τ_j that admit at least one admissible binary split.
inline std::vector<std::size_t> splittable_petals(const Graph& g, const VertexType& t, int j) {
  const std::size_t pos = t.position_of(j);
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k < t.parts[pos].length(); ++k)
    if (petal_splittable(g, t, pos, k)) out.push_back(k);
  return out;
}

struct PetalRef {
  int vertex = 0;
  std::size_t petal = 0;

  friend bool operator==(const PetalRef&, const PetalRef&) = default;
};

/// Splittable petals not containing the minimal element of Γ − st(v).
inline std::vector<PetalRef> worrisome_petals(const Graph& g, const VertexType& t) {
  std::vector<PetalRef> out;
  for (const auto& p : t.parts) {
    const int m = minimal_vertex(g, p.operative);
    for (std::size_t k : splittable_petals(g, t, p.operative))
      if (!p.petals[k].contains(m)) out.push_back({p.operative, k});
  }
  return out;
}

inline bool is_essential(const Graph& g, const VertexType& t) {
  for (const auto& p : t.parts) {
    const int m = minimal_vertex(g, p.operative);
    const std::size_t pos = t.position_of(p.operative);
    for (std::size_t k = 0; k < p.length(); ++k)
      if (!p.petals[k].contains(m) && petal_splittable(g, t, pos, k)) return false;
  }
  return true;
}

struct EssentialCover {
  VertexType cover;
  int distance = 0;  // s = rk(cover) − rk(τ)
};

/// Splits worrisome petals until none remain. Order: lowest vertex, then the
/// lexicographically least worrisome petal, then the least admissible part.
inline EssentialCover essential_cover(const Graph& g, const VertexType& t) {
  VertexType current = t;
  for (;;) {
    auto worry = worrisome_petals(g, current);
    if (worry.empty()) break;
    // worrisome_petals lists vertices ascending and petals in canonical order.
    const PetalRef w = worry.front();
    const std::size_t pos = current.position_of(w.vertex);
    auto parts = admissible_splits(g, current, pos, w.petal);
    current.parts[pos] = split_petal(g, current.parts[pos], w.petal, parts.front());
  }
  return {current, current.rank() - t.rank()};
}

/// Same process with uniformly random choices of worrisome petal and split.
template <class Rng>
EssentialCover essential_cover_randomized(const Graph& g, const VertexType& t, Rng& rng) {
  VertexType current = t;
  for (;;) {
    auto worry = worrisome_petals(g, current);
    if (worry.empty()) break;
    std::uniform_int_distribution<std::size_t> pick_petal(0, worry.size() - 1);
    const PetalRef w = worry[pick_petal(rng)];
    const std::size_t pos = current.position_of(w.vertex);
    auto parts = admissible_splits(g, current, pos, w.petal);
    std::uniform_int_distribution<std::size_t> pick_part(0, parts.size() - 1);
    current.parts[pos] = split_petal(g, current.parts[pos], w.petal, parts[pick_part(rng)]);
  }
  return {current, current.rank() - t.rank()};
}

/// τ(A): at each vertex the petals of A there plus the remainder, which holds
/// the minimal element. Returns nullopt when A is not a compatible family.
inline std::optional<VertexType> try_cone_point(const Graph& g, const GeneratorSet& a) {
  VertexType t;
  for (int v : g.vertices()) {
    BasedPartition p{v, {}};
    VertexSet rest = g.vertices() - g.star(v);
    VertexSet used;
    for (const auto& c : a) {
      if (c.vertex != v) continue;
      if (!is_canonical(g, c) || c.petal.intersects(used)) return std::nullopt;
      used |= c.petal;
      p.petals.push_back(c.petal);
    }
    p.petals.push_back(rest - used);
    p.normalize();
    t.parts.push_back(std::move(p));
  }
  for (const auto& c : a)
    if (!g.has_vertex(c.vertex)) return std::nullopt;
  for (std::size_t i = 0; i < t.parts.size(); ++i)
    for (std::size_t j = i + 1; j < t.parts.size(); ++j)
      if (!compatible(g, t.parts[i], t.parts[j])) return std::nullopt;
  return t;
}

inline VertexType cone_point(const Graph& g, const GeneratorSet& a) {
  auto t = try_cone_point(g, a);
  if (!t) {
    std::string names;
    for (const auto& c : a) names += (names.empty() ? "" : " ") + c.to_string();
    throw domain_error("incompatible generator set {" + names + "}");
  }
  return *t;
}

/// Essential types per rank: K[q].
inline std::vector<std::size_t> essential_counts(const WhiteheadPoset& poset, unsigned jobs = 1) {
  std::vector<char> essential(poset.size(), 0);
  parallel_for(poset.size(), jobs, [&](std::size_t i) {
    essential[i] = is_essential(poset.graph(), poset[i]) ? 1 : 0;
  });
  std::vector<std::size_t> k(static_cast<std::size_t>(poset.height()) + 1, 0);
  for (std::size_t i = 0; i < poset.size(); ++i)
    if (essential[i]) ++k[static_cast<std::size_t>(poset.rank(i))];
  while (k.size() > 1 && k.back() == 0) k.pop_back();
  return k;
}

inline std::vector<std::size_t> essential_counts(const Graph& g, PosetOptions options = {}) {
  return essential_counts(enumerate_poset(g, options), options.jobs);
}

}  // namespace whitehead
