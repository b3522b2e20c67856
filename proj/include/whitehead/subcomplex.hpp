#pragma once

#include <string>
#include <vector>

#include "whitehead/essential.hpp"
#include "whitehead/poset.hpp"

namespace whitehead {

enum class SubcomplexKind { Supp, Peripheral, ConeC };

inline const char* to_string(SubcomplexKind k) {
  switch (k) {
    case SubcomplexKind::Supp: return "supp";
    case SubcomplexKind::Peripheral: return "peripheral";
    case SubcomplexKind::ConeC: return "cone";
  }
  return "?";
}

/// Which poset elements τ qualify as the bottom of a chain in the subcomplex.
/// A ⊆ Stab(τ) is decided as τ(A) ≤ τ.
inline std::vector<char> subcomplex_bottoms(const WhiteheadPoset& poset, const GeneratorSet& a,
                                            SubcomplexKind kind) {
  const Graph& g = poset.graph();
  const VertexType apex = cone_point(g, a);
  std::vector<char> keep(poset.size(), 0);
  for (std::size_t i = 0; i < poset.size(); ++i) {
    const bool in_stab = leq(apex, poset[i]);
    const bool supported = in_stab && supports(g, poset[i], a);
    switch (kind) {
      case SubcomplexKind::Supp: keep[i] = supports(g, poset[i], a); break;
      case SubcomplexKind::Peripheral: keep[i] = in_stab && !supported; break;
      case SubcomplexKind::ConeC: keep[i] = in_stab; break;
    }
  }
  return keep;
}

/// Chains σ of every dimension whose bottom τ⁰ satisfies the condition of
/// `kind` (B(σ) and Stab(σ) are those of τ⁰).
inline std::vector<Chain> subcomplex_cells(const WhiteheadPoset& poset, const GeneratorSet& a,
                                           SubcomplexKind kind) {
  const auto keep = subcomplex_bottoms(poset, a, kind);
  std::vector<Chain> out;
  for (const auto& layer : all_chains(poset))
    for (const auto& c : layer)
      if (keep[c.bottom()]) out.push_back(c);
  return out;
}

}  // namespace whitehead
