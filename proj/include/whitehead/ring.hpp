#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "whitehead/errors.hpp"
#include "whitehead/essential.hpp"
#include "whitehead/graph.hpp"
#include "whitehead/poset.hpp"

namespace whitehead {

// ---------------------------------------------------------------------------
// Free words

struct Letter {
  int symbol = 0;
  int exponent = 1;  // +1 or -1

  friend bool operator==(const Letter&, const Letter&) = default;
};

struct FreeWord {
  std::vector<Letter> letters;

  FreeWord() = default;
  FreeWord(std::initializer_list<Letter> l) : letters(l) {}

  static FreeWord symbol(int s, int exponent = 1) { return FreeWord{{s, exponent}}; }

  bool empty() const { return letters.empty(); }
  std::size_t size() const { return letters.size(); }

  FreeWord inverse() const {
    FreeWord w;
    for (auto it = letters.rbegin(); it != letters.rend(); ++it) w.letters.push_back({it->symbol, -it->exponent});
    return w;
  }

  friend FreeWord operator*(FreeWord a, const FreeWord& b) {
    a.letters.insert(a.letters.end(), b.letters.begin(), b.letters.end());
    return a;
  }

  friend bool operator==(const FreeWord&, const FreeWord&) = default;

  /// Letters as names[symbol] with "^-1" on inverses, separated by spaces.
  std::string to_string(const std::vector<std::string>& names) const {
    if (letters.empty()) return "1";
    std::string s;
    for (std::size_t i = 0; i < letters.size(); ++i) {
      if (i) s += ' ';
      const auto sym = static_cast<std::size_t>(letters[i].symbol);
      s += sym < names.size() ? names[sym] : "g" + std::to_string(sym);
      if (letters[i].exponent < 0) s += "^-1";
    }
    return s;
  }
};

inline FreeWord free_reduce(const FreeWord& w) {
  FreeWord out;
  for (const Letter& l : w.letters) {
    if (!out.letters.empty() && out.letters.back().symbol == l.symbol && out.letters.back().exponent == -l.exponent)
      out.letters.pop_back();
    else
      out.letters.push_back(l);
  }
  return out;
}

/// [a, b] = a b a⁻¹ b⁻¹.
inline FreeWord commutator(const FreeWord& a, const FreeWord& b) { return a * b * a.inverse() * b.inverse(); }

// ---------------------------------------------------------------------------
// Presentation of ΣPAut

/// A partial conjugation C^u_A by a single component A, or its dual class γ^u_A.
struct ComponentGenerator {
  int vertex = 0;
  VertexSet component;

  std::string to_string(const char* letter = "C") const {
    return std::string(letter) + "^" + std::to_string(vertex) + "_" + component.to_string();
  }

  friend bool operator==(const ComponentGenerator&, const ComponentGenerator&) = default;
  friend auto operator<=>(const ComponentGenerator&, const ComponentGenerator&) = default;
};

inline std::vector<ComponentGenerator> component_generators(const Graph& g) {
  std::vector<ComponentGenerator> out;
  for (int v : g.vertices())
    for (VertexSet c : components_minus_star(g, v)) out.push_back({v, c});
  return out;
}

struct Relation {
  std::string tag;  // "i", "ii" or "iii"
  FreeWord left;    // the relation is [left, right]
  FreeWord right;

  FreeWord word() const { return commutator(left, right); }
};

struct Presentation {
  std::vector<ComponentGenerator> generators;
  std::vector<Relation> relations;

  std::optional<std::size_t> index_of(const ComponentGenerator& c) const {
    auto it = std::lower_bound(generators.begin(), generators.end(), c);
    if (it == generators.end() || !(*it == c)) return std::nullopt;
    return static_cast<std::size_t>(it - generators.begin());
  }

  std::size_t require(const ComponentGenerator& c) const {
    auto i = index_of(c);
    if (!i) throw domain_error("unknown generator " + c.to_string());
    return *i;
  }

  std::vector<std::string> names() const {
    std::vector<std::string> n;
    for (const auto& g : generators) n.push_back(g.to_string());
    return n;
  }

  std::size_t count(const std::string& tag) const {
    return static_cast<std::size_t>(
        std::count_if(relations.begin(), relations.end(), [&](const Relation& r) { return r.tag == tag; }));
  }

  /// One relation per line in commutator notation.
  std::string to_text() const {
    const auto n = names();
    std::string s = "generators " + std::to_string(generators.size()) + "\n";
    for (const auto& name : n) s += "  " + name + "\n";
    s += "relations " + std::to_string(relations.size()) + "\n";
    for (const auto& r : relations) s += "  " + r.tag + ": [" + r.left.to_string(n) + ", " + r.right.to_string(n) + "]\n";
    return s;
  }
};

inline Presentation presentation(const Graph& g) {
  if (!is_reduced(g)) throw domain_error("presentation requires a graph without dominating vertices");
  Presentation p;
  p.generators = component_generators(g);
  std::sort(p.generators.begin(), p.generators.end());
  auto word = [&](const ComponentGenerator& c) { return FreeWord::symbol(static_cast<int>(p.require(c))); };

  const auto& gens = p.generators;
  for (std::size_t a = 0; a < gens.size(); ++a) {
    for (std::size_t b = a + 1; b < gens.size(); ++b) {
      const int u = gens[a].vertex;
      const int v = gens[b].vertex;
      if (g.star(v).contains(u)) {
        p.relations.push_back({"i", word(gens[a]), word(gens[b])});
        continue;
      }
      const auto ca = classify_component(g, u, v, gens[a].component);
      const auto cb = classify_component(g, v, u, gens[b].component);
      const bool shared_distinct = ca == ComponentClass::Shared && cb == ComponentClass::Shared &&
                                   gens[a].component != gens[b].component;
      if (shared_distinct || ca == ComponentClass::Subordinate || cb == ComponentClass::Subordinate)
        p.relations.push_back({"ii", word(gens[a]), word(gens[b])});
    }
  }
  for (int u : g.vertices())
    for (int v : g.vertices()) {
      if (g.star(v).contains(u)) continue;
      const VertexSet dom = dominant_component(g, u, v);
      for (VertexSet a : components_minus_star(g, u)) {
        if (classify_component(g, u, v, a) != ComponentClass::Shared) continue;
        p.relations.push_back({"iii", word({u, a}) * word({u, dom}), word({v, a})});
      }
    }
  return p;
}

/// Images of the generators; unset entries are unassigned.
using Assignment = std::vector<std::optional<FreeWord>>;

inline FreeWord apply_assignment(const Assignment& assign, const FreeWord& w) {
  FreeWord out;
  for (const Letter& l : w.letters) {
    const auto s = static_cast<std::size_t>(l.symbol);
    if (s >= assign.size() || !assign[s]) throw domain_error("generator " + std::to_string(s) + " is unassigned");
    out = out * (l.exponent > 0 ? *assign[s] : assign[s]->inverse());
  }
  return free_reduce(out);
}

/// Index of the first relation whose image is not trivial, if any.
inline std::optional<std::size_t> first_broken_relation(const Presentation& p, const Assignment& assign) {
  if (assign.size() != p.generators.size())
    throw domain_error("assignment has " + std::to_string(assign.size()) + " entries for " +
                       std::to_string(p.generators.size()) + " generators");
  for (std::size_t i = 0; i < assign.size(); ++i)
    if (!assign[i]) throw domain_error("generator " + p.generators[i].to_string() + " is unassigned");
  for (std::size_t r = 0; r < p.relations.size(); ++r)
    if (!apply_assignment(assign, p.relations[r].word()).empty()) return r;
  return std::nullopt;
}

inline bool verify_homomorphism(const Presentation& p, const Assignment& assign) {
  return !first_broken_relation(p, assign).has_value();
}

inline constexpr int kLetterX = 0;
inline constexpr int kLetterY = 1;

/// φ₁ for non-adjacent i, j: C^i_{D^j} ↦ x, C^j_{D^i} ↦ y, everything else ↦ 1.
inline Assignment phi1_assignment(const Graph& g, const Presentation& p, int i, int j) {
  if (i == j || g.adjacent(i, j)) throw domain_error("φ₁ needs two distinct non-adjacent vertices");
  Assignment a(p.generators.size(), FreeWord{});
  a[p.require({i, dominant_component(g, i, j)})] = FreeWord::symbol(kLetterX);
  a[p.require({j, dominant_component(g, j, i)})] = FreeWord::symbol(kLetterY);
  return a;
}

/// φ₂: φ₁ plus C^i_C ↦ x⁻¹ and C^j_C ↦ y⁻¹ for a shared component C.
inline Assignment phi2_assignment(const Graph& g, const Presentation& p, int i, int j, VertexSet shared) {
  if (classify_component(g, i, j, shared) != ComponentClass::Shared)
    throw domain_error(shared.to_string() + " is not shared by " + std::to_string(i) + " and " + std::to_string(j));
  Assignment a = phi1_assignment(g, p, i, j);
  a[p.require({i, shared})] = FreeWord::symbol(kLetterX, -1);
  a[p.require({j, shared})] = FreeWord::symbol(kLetterY, -1);
  return a;
}

/// Components shared by non-adjacent i and j.
inline std::vector<VertexSet> shared_components(const Graph& g, int i, int j) {
  std::vector<VertexSet> out;
  for (VertexSet c : components_minus_star(g, i))
    if (classify_component(g, i, j, c) == ComponentClass::Shared) out.push_back(c);
  return out;
}

// ---------------------------------------------------------------------------
// Degree two of R

/// γ^i_A γ^j_B with (i,A) < (j,B).
struct RingBasisElement {
  ComponentGenerator first;
  ComponentGenerator second;

  std::string to_string() const { return first.to_string("γ") + " " + second.to_string("γ"); }

  friend bool operator==(const RingBasisElement&, const RingBasisElement&) = default;
  friend auto operator<=>(const RingBasisElement&, const RingBasisElement&) = default;
};

/// Why the product of two distinct generators is not a basis monomial, or
/// nullopt if it is one.
inline std::optional<std::string> b2_exclusion(const Graph& g, const ComponentGenerator& a,
                                               const ComponentGenerator& b) {
  if (a.vertex == b.vertex || g.adjacent(a.vertex, b.vertex)) return std::nullopt;
  const auto ca = classify_component(g, a.vertex, b.vertex, a.component);
  const auto cb = classify_component(g, b.vertex, a.vertex, b.component);
  if (ca == ComponentClass::Shared && a.component == b.component) return std::string("shared and equal");
  if (ca == ComponentClass::Dominant && cb == ComponentClass::Dominant) return std::string("both dominant");
  return std::nullopt;
}

inline bool is_b2_element(const Graph& g, const RingBasisElement& e) {
  if (!is_component_of(g, e.first.vertex, e.first.component) || !is_component_of(g, e.second.vertex, e.second.component))
    return false;
  if (!(e.first < e.second)) return false;
  return !b2_exclusion(g, e.first, e.second).has_value();
}

inline std::vector<RingBasisElement> enumerate_B2(const Graph& g) {
  auto gens = component_generators(g);
  std::sort(gens.begin(), gens.end());
  std::vector<RingBasisElement> out;
  for (std::size_t a = 0; a < gens.size(); ++a)
    for (std::size_t b = a + 1; b < gens.size(); ++b)
      if (!b2_exclusion(g, gens[a], gens[b])) out.push_back({gens[a], gens[b]});
  return out;
}

/// Integer combination of basis monomials.
using Degree2Combination = std::map<RingBasisElement, long long>;

/// Rewrites γ^i_A ∧ γ^j_B in the basis B₂ using
///   γ∧γ = 0, graded commutativity, γ^i_{D^j} ∧ γ^j_{D^i} = 0 and
///   γ^i_C ∧ γ^j_C = γ^i_C ∧ γ^j_{D^i} + γ^i_{D^j} ∧ γ^j_C.
inline Degree2Combination reduce_degree2(const Graph& g, const ComponentGenerator& a, const ComponentGenerator& b) {
  Degree2Combination out;
  auto add = [&out](RingBasisElement e, long long c) {
    if ((out[e] += c) == 0) out.erase(e);
  };
  if (a == b) return out;
  long long sign = 1;
  ComponentGenerator x = a;
  ComponentGenerator y = b;
  if (y < x) {
    std::swap(x, y);
    sign = -1;
  }
  auto why = b2_exclusion(g, x, y);
  if (!why) {
    add({x, y}, sign);
    return out;
  }
  if (*why == "both dominant") return out;
  // Shared and equal: C at i = x.vertex and j = y.vertex.
  const int i = x.vertex;
  const int j = y.vertex;
  const VertexSet c = x.component;
  const ComponentGenerator d_i{j, dominant_component(g, j, i)};
  const ComponentGenerator d_j{i, dominant_component(g, i, j)};
  // Both terms already have i before j, and neither is excluded.
  add({x, d_i}, sign);
  add({d_j, {j, c}}, sign);
  return out;
}

// ---------------------------------------------------------------------------
// The standard basis of H² and the map φ

struct B1Type1 {
  std::size_t element;  // poset index of a rank-2 essential type
};
struct B1Type2 {
  std::size_t element;  // poset index of a rank-1 essential type
  int vertex;
};
struct B1Type3 {
  int u;
  int v;
};

using B1Element = std::variant<B1Type1, B1Type2, B1Type3>;

inline std::string to_string(const WhiteheadPoset& poset, const B1Element& e) {
  if (auto* t = std::get_if<B1Type1>(&e)) return "type1 " + poset[t->element].to_string();
  if (auto* t = std::get_if<B1Type2>(&e)) return "type2 (" + poset[t->element].to_string() + ", " + std::to_string(t->vertex) + ")";
  const auto& t = std::get<B1Type3>(e);
  return "type3 {" + std::to_string(t.u) + "," + std::to_string(t.v) + "}";
}

inline std::vector<B1Element> enumerate_B1(const WhiteheadPoset& poset) {
  const Graph& g = poset.graph();
  std::vector<B1Element> out;
  for (std::size_t i = 0; i < poset.size(); ++i)
    if (poset.rank(i) == 2 && is_essential(g, poset[i])) out.push_back(B1Type1{i});
  for (std::size_t i = 0; i < poset.size(); ++i)
    if (poset.rank(i) == 1 && is_essential(g, poset[i]))
      for (int v : g.vertices()) out.push_back(B1Type2{i, v});
  for (auto [u, v] : g.edges()) out.push_back(B1Type3{u, v});
  return out;
}

struct PhiImage {
  RingBasisElement element;
  std::string rule;  // "1.1", "1.2.1", "1.2.2", "2.1.1", "2.1.2", "2.2", "2.3", "3"
};

namespace detail {

inline RingBasisElement ordered(ComponentGenerator a, ComponentGenerator b) {
  if (b < a) std::swap(a, b);
  return {a, b};
}

struct NontrivialPart {
  int vertex;
  VertexSet minimal_petal;
  std::vector<VertexSet> others;  // petals avoiding the minimal element
};

inline std::vector<NontrivialPart> nontrivial_parts(const Graph& g, const VertexType& t) {
  std::vector<NontrivialPart> out;
  for (const auto& p : t.parts) {
    if (p.length() < 2) continue;
    const int m = minimal_vertex(g, p.operative);
    NontrivialPart np{p.operative, {}, {}};
    for (VertexSet petal : p.petals) {
      if (petal.contains(m))
        np.minimal_petal = petal;
      else
        np.others.push_back(petal);
    }
    out.push_back(std::move(np));
  }
  return out;
}

}  // namespace detail

inline PhiImage phi(const WhiteheadPoset& poset, const B1Element& e) {
  const Graph& g = poset.graph();
  using detail::ordered;

  if (auto* t3 = std::get_if<B1Type3>(&e)) {
    const int i = t3->u;
    const int j = t3->v;
    return {ordered({i, component_containing(g, i, minimal_vertex(g, i))},
                    {j, component_containing(g, j, minimal_vertex(g, j))}),
            "3"};
  }

  if (auto* t1 = std::get_if<B1Type1>(&e)) {
    const auto parts = detail::nontrivial_parts(g, poset[t1->element]);
    if (parts.size() == 1 && parts[0].others.size() == 2)
      return {ordered({parts[0].vertex, parts[0].others[0]}, {parts[0].vertex, parts[0].others[1]}), "1.1"};
    if (parts.size() == 2 && parts[0].others.size() == 1 && parts[1].others.size() == 1) {
      for (int flip = 0; flip < 2; ++flip) {
        const auto& pi = parts[flip];
        const auto& pj = parts[1 - flip];
        const int i = pi.vertex;
        const int j = pj.vertex;
        if (g.adjacent(i, j)) break;
        const VertexSet d_j = dominant_component(g, i, j);
        const VertexSet d_i = dominant_component(g, j, i);
        const VertexSet q2 = pj.others[0];
        if (d_j.is_subset_of(pi.minimal_petal) && d_i.is_subset_of(q2) && d_i != q2)
          return {ordered({i, pi.others[0]}, {j, d_i}), "1.2.1"};
      }
      return {ordered({parts[0].vertex, parts[0].others[0]}, {parts[1].vertex, parts[1].others[0]}), "1.2.2"};
    }
    throw internal_error("φ: rank-2 type " + poset[t1->element].to_string() + " matches no case");
  }

  const auto& t2 = std::get<B1Type2>(e);
  const auto parts = detail::nontrivial_parts(g, poset[t2.element]);
  if (parts.size() != 1 || parts[0].others.size() != 1)
    throw internal_error("φ: rank-1 type " + poset[t2.element].to_string() + " matches no case");
  const int a = parts[0].vertex;
  const int k = t2.vertex;
  const VertexSet p2 = parts[0].others[0];
  const int m_a = minimal_vertex(g, a);
  const int m_k = minimal_vertex(g, k);
  if (k != a && !g.adjacent(a, k)) {
    const VertexSet dom_a = dominant_component(g, a, k);  // component of Γ − st(a) holding k
    const VertexSet dom_k = dominant_component(g, k, a);  // component of Γ − st(k) holding a
    const VertexSet u_a = component_containing(g, a, m_a);
    const VertexSet u_k = component_containing(g, k, m_k);
    if (m_a != m_k) {
      if (classify_component(g, k, a, u_k) == ComponentClass::Shared && p2 == u_k)
        return {ordered({a, dom_a}, {k, u_k}), "2.1.1"};
      if (classify_component(g, a, k, u_a) == ComponentClass::Shared && p2 == dom_a)
        return {ordered({a, dom_a}, {k, u_a}), "2.1.2"};
    }
    if (dom_k.contains(m_k) && classify_component(g, a, k, u_a) == ComponentClass::Subordinate && p2 == dom_a)
      return {ordered({a, u_a}, {k, dom_k}), "2.2"};
  }
  return {ordered({a, p2}, {k, component_containing(g, k, m_k)}), "2.3"};
}

struct PhiReport {
  std::size_t b1_size = 0;
  std::size_t b2_size = 0;
  std::map<std::string, std::size_t> rule_counts;
  std::vector<std::string> outside_b2;                            // images that are not basis monomials
  std::vector<std::pair<std::string, std::string>> collisions;    // B₁ elements with equal images
  std::vector<std::string> failures;                              // case-analysis gaps

  bool injective() const { return collisions.empty(); }
  bool ok() const { return failures.empty() && outside_b2.empty() && collisions.empty() && b1_size == b2_size; }
};

inline PhiReport verify_phi(const WhiteheadPoset& poset) {
  const Graph& g = poset.graph();
  PhiReport r;
  const auto b1 = enumerate_B1(poset);
  r.b1_size = b1.size();
  r.b2_size = enumerate_B2(g).size();
  std::map<RingBasisElement, std::size_t> seen;
  for (std::size_t n = 0; n < b1.size(); ++n) {
    PhiImage img;
    try {
      img = phi(poset, b1[n]);
    } catch (const internal_error& ex) {
      r.failures.push_back(ex.what());
      continue;
    }
    ++r.rule_counts[img.rule];
    if (!is_b2_element(g, img.element))
      r.outside_b2.push_back(to_string(poset, b1[n]) + " -> " + img.element.to_string() + " [" + img.rule + "]");
    auto [it, fresh] = seen.emplace(img.element, n);
    if (!fresh) r.collisions.emplace_back(to_string(poset, b1[it->second]), to_string(poset, b1[n]));
  }
  return r;
}

}  // namespace whitehead
