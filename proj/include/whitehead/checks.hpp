#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "whitehead/essential.hpp"
#include "whitehead/graph.hpp"
#include "whitehead/homology.hpp"
#include "whitehead/partition.hpp"
#include "whitehead/poset.hpp"
#include "whitehead/ring.hpp"
#include "whitehead/subcomplex.hpp"

namespace whitehead {

struct CheckResult {
  std::string suite;
  std::string name;
  bool passed = true;
  std::string detail;
};

struct CheckOptions {
  std::uint64_t seed = 1;
  std::size_t shuffles = 100;    // random split orders per inessential type
  std::size_t max_family = 2;    // largest |A| for the cone contractibility check
  bool homology = true;          // E¹ rows and subcomplex homology
  unsigned jobs = 1;
};

namespace detail {

// Collects failures; keeps the first few messages.
class Tally {
 public:
  Tally(std::string suite, std::string name) : r_{std::move(suite), std::move(name), true, ""} {}

  void fail(const std::string& why) {
    if (failures_++ < 3) r_.detail += (r_.detail.empty() ? "" : "; ") + why;
    r_.passed = false;
  }
  void expect(bool ok, const std::string& why) {
    if (!ok) fail(why);
  }
  void count() { ++cases_; }

  CheckResult done() {
    if (r_.passed)
      r_.detail = std::to_string(cases_) + " cases";
    else if (failures_ > 3)
      r_.detail += "; " + std::to_string(failures_ - 3) + " more";
    return r_;
  }

 private:
  CheckResult r_;
  std::size_t failures_ = 0;
  std::size_t cases_ = 0;
};

template <class T>
std::string join(const std::vector<T>& v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s + "]";
}

}  // namespace detail

// --- graph -----------------------------------------------------------------

inline CheckResult check_graph_structure(const Graph& g) {
  detail::Tally t("graph", "components and trichotomy");
  t.expect(reduce_dominating(reduce_dominating(g)) == reduce_dominating(g), "reduction is not idempotent");
  const Graph r = reduce_dominating(g);
  for (int v : r.vertices()) {
    VertexSet seen;
    for (VertexSet c : components_minus_star(r, v)) {
      t.count();
      t.expect(!c.intersects(seen), "overlapping components at " + std::to_string(v));
      t.expect(!c.intersects(r.star(v)), "component meets st(" + std::to_string(v) + ")");
      seen |= c;
    }
    t.expect(seen == r.vertices() - r.star(v), "components do not cover Γ−st(" + std::to_string(v) + ")");
    for (int u : r.vertices()) {
      if (r.star(v).contains(u)) continue;
      for (VertexSet c : components_minus_star(r, u)) {
        t.count();
        int tags = 0;
        const bool dominant = c.contains(v);
        const bool shared = is_component_of(r, v, c);
        const bool subordinate = c.is_subset_of(dominant_component(r, v, u));
        tags = int(dominant) + int(shared) + int(subordinate);
        t.expect(tags == 1, c.to_string() + " at " + std::to_string(u) + " has " + std::to_string(tags) + " tags");
        if (shared || subordinate) t.expect(!c.intersects(r.star(v)), "shared/subordinate component meets st(v)");
      }
    }
  }
  return t.done();
}

// --- partitions ------------------------------------------------------------

inline CheckResult check_crossing_equivalence(const Graph& g) {
  detail::Tally t("partition", "crossing characterizations agree");
  const Graph r = reduce_dominating(g);
  const auto verts = r.vertices().to_vector();
  for (int u : verts)
    for (int v : verts) {
      if (u == v) continue;
      const auto pu = enumerate_based_partitions(r, u);
      const auto pv = enumerate_based_partitions(r, v);
      for (const auto& p : pu)
        for (const auto& q : pv) {
          t.count();
          const bool direct = crosses(r, p, q);
          t.expect(direct == crosses_by_shared_component(r, p, q), p.to_string() + " vs " + q.to_string());
          t.expect(direct == crosses(r, q, p), "asymmetric: " + p.to_string() + " vs " + q.to_string());
        }
    }
  return t.done();
}

inline CheckResult check_refinement_order(const Graph& g) {
  detail::Tally t("partition", "refinement is a partial order");
  const Graph r = reduce_dominating(g);
  for (int u : r.vertices()) {
    const auto ps = enumerate_based_partitions(r, u);
    for (const auto& a : ps) {
      t.expect(refines(a, a), "not reflexive at " + a.to_string());
      for (const auto& b : ps) {
        t.count();
        if (refines(a, b)) {
          t.expect(a.length() <= b.length(), "length drops along " + a.to_string() + " <= " + b.to_string());
          if (refines(b, a)) t.expect(a == b, "not antisymmetric");
          for (const auto& c : ps)
            if (refines(b, c)) t.expect(refines(a, c), "not transitive");
        }
      }
    }
  }
  return t.done();
}

// --- poset -----------------------------------------------------------------

inline CheckResult check_poset_order(const WhiteheadPoset& P) {
  detail::Tally t("poset", "order axioms and covers");
  const Graph& g = P.graph();
  const std::size_t n = P.size();
  for (std::size_t a = 0; a < n; ++a) {
    t.expect(P.leq(0, a), "nuclear type is not below " + P[a].to_string());
    t.expect(P.leq(a, a), "not reflexive");
  }
  std::vector<std::vector<char>> le(n, std::vector<char>(n, 0));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) le[a][b] = P.leq(a, b) ? 1 : 0;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      if (!le[a][b]) continue;
      t.count();
      if (a != b) {
        t.expect(!le[b][a], "not antisymmetric");
        t.expect(a < b && P.rank(a) < P.rank(b), "strict relation against index or rank order");
        // Comparable types are compatible as a whole.
        for (const auto& pa : P[a].parts)
          for (const auto& pb : P[b].parts)
            if (pa.operative != pb.operative)
              t.expect(compatible(g, pa, pb), "comparable types cross: " + P[a].to_string() + " < " + P[b].to_string());
      }
      for (std::size_t c = 0; c < n; ++c)
        if (le[b][c]) t.expect(le[a][c] != 0, "not transitive");
    }
  // Covers: rank difference one and comparable, and nothing else.
  std::set<std::pair<std::uint32_t, std::uint32_t>> hasse(P.hasse_edges().begin(), P.hasse_edges().end());
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      const bool cover = le[a][b] && P.rank(b) == P.rank(a) + 1;
      t.expect(cover == (hasse.count({static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(b)}) > 0),
               "Hasse edge mismatch " + std::to_string(a) + "->" + std::to_string(b));
    }
  return t.done();
}

// --- essential types -------------------------------------------------------

inline CheckResult check_canonical_basis(const WhiteheadPoset& P) {
  detail::Tally t("essential", "canonical basis size and cone points");
  const Graph& g = P.graph();
  for (std::size_t i = 0; i < P.size(); ++i) {
    t.count();
    const auto b = canonical_basis(g, P[i]);
    t.expect(b.size() == static_cast<std::size_t>(P.rank(i)), "|B| != rank at " + P[i].to_string());
    for (const auto& c : b) {
      t.expect(is_canonical(g, c), c.to_string() + " not canonical");
      t.expect(in_stabilizer(P[i], c), c.to_string() + " not in its own stabilizer");
    }
    t.expect(cone_point(g, b) == P[i], "τ(B(τ)) != τ at " + P[i].to_string());
  }
  // Compatible families of size at most two.
  const auto gens = all_canonical_generators(g);
  for (std::size_t a = 0; a < gens.size(); ++a)
    for (std::size_t b = a; b < gens.size(); ++b) {
      GeneratorSet fam = make_generator_set({gens[a], gens[b]});
      auto apex = try_cone_point(g, fam);
      if (!apex) continue;
      t.count();
      t.expect(canonical_basis(g, *apex) == fam, "B(τ(A)) != A");
      t.expect(P.find(*apex).has_value(), "cone point outside the poset");
      for (std::size_t i = 0; i < P.size(); ++i) {
        bool in_stab = true;
        for (const auto& c : fam) in_stab = in_stab && in_stabilizer(P[i], c);
        t.expect(in_stab == leq(*apex, P[i]), "stabilizer test disagrees with τ(A) ≤ τ");
      }
    }
  return t.done();
}

inline CheckResult check_essential_rank_one(const WhiteheadPoset& P) {
  detail::Tally t("essential", "K1 equals the canonical generator count of single components");
  const Graph& g = P.graph();
  std::size_t expected = 0;
  for (int v : g.vertices()) expected += components_minus_star(g, v).size() - 1;
  const auto k = essential_counts(P);
  const std::size_t k1 = k.size() > 1 ? k[1] : 0;
  t.count();
  t.expect(k1 == expected, "K1 = " + std::to_string(k1) + ", expected " + std::to_string(expected));
  return t.done();
}

inline CheckResult check_essential_characterizations(const WhiteheadPoset& P) {
  detail::Tally t("essential", "essential iff no worrisome petal iff empty Peripheral");
  const Graph& g = P.graph();
  for (std::size_t i = 0; i < P.size(); ++i) {
    t.count();
    const bool e = is_essential(g, P[i]);
    t.expect(e == worrisome_petals(g, P[i]).empty(), "worrisome list disagrees at " + P[i].to_string());
    const auto keep = subcomplex_bottoms(P, canonical_basis(g, P[i]), SubcomplexKind::Peripheral);
    const bool empty = std::none_of(keep.begin(), keep.end(), [](char c) { return c != 0; });
    t.expect(e == empty, "Peripheral(B(τ)) disagrees at " + P[i].to_string());
  }
  return t.done();
}

inline CheckResult check_essential_cover(const WhiteheadPoset& P, const CheckOptions& opt) {
  detail::Tally t("essential", "essential cover is unique, idempotent and monotone");
  const Graph& g = P.graph();
  std::mt19937_64 rng(opt.seed);
  for (std::size_t i = 0; i < P.size(); ++i) {
    const auto cover = essential_cover(g, P[i]);
    t.count();
    t.expect(is_essential(g, cover.cover), "cover not essential");
    t.expect(leq(P[i], cover.cover), "cover not above τ");
    t.expect(cover.distance == cover.cover.rank() - P[i].rank(), "s is not the rank difference");
    t.expect(essential_cover(g, cover.cover).cover == cover.cover && essential_cover(g, cover.cover).distance == 0,
             "cover not idempotent");
    if (is_essential(g, P[i])) {
      t.expect(cover.distance == 0, "essential type moved");
      continue;
    }
    for (std::size_t s = 0; s < opt.shuffles; ++s) {
      const auto other = essential_cover_randomized(g, P[i], rng);
      t.expect(other.cover == cover.cover && other.distance == cover.distance,
               "random order reached " + other.cover.to_string() + " from " + P[i].to_string());
    }
  }
  return t.done();
}

// --- homology --------------------------------------------------------------

inline CheckResult check_e1_concentration(const WhiteheadPoset& P, unsigned jobs = 1) {
  detail::Tally t("homology", "E1 rows concentrated in degree 0 with rank K_q");
  const auto k = essential_counts(P, jobs);
  const auto dims = e1_dimensions(P);
  for (std::size_t q = 0; q <= static_cast<std::size_t>(P.height()); ++q) {
    t.count();
    const auto cx = build_e1_row(P, q);
    t.expect(boundary_squares_to_zero(cx), "d∘d != 0 in row " + std::to_string(q));
    const auto h = homology(cx, false, jobs);
    const std::size_t kq = q < k.size() ? k[q] : 0;
    t.expect(h.at(0) == kq, "row " + std::to_string(q) + ": H0 = " + std::to_string(h.at(0)) + ", K = " + std::to_string(kq));
    for (int d = 1; d <= cx.top_degree(); ++d)
      t.expect(h.at(d) == 0, "row " + std::to_string(q) + ": H" + std::to_string(d) + " != 0");
    t.expect(h.torsion_free(), "row " + std::to_string(q) + " has torsion");
    long long euler = 0;
    for (std::size_t p = 0; p < dims.size(); ++p) euler += (p % 2 ? -1LL : 1LL) * static_cast<long long>(dims[p][q]);
    t.expect(euler == static_cast<long long>(kq), "row " + std::to_string(q) + ": Euler characteristic " + std::to_string(euler));
  }
  return t.done();
}

inline CheckResult check_d_squared(const WhiteheadPoset& P) {
  detail::Tally t("homology", "d∘d = 0 on every E1 row");
  for (std::size_t q = 0; q <= static_cast<std::size_t>(P.height()); ++q) {
    t.count();
    t.expect(boundary_squares_to_zero(build_e1_row(P, q)), "row " + std::to_string(q));
  }
  return t.done();
}

inline CheckResult check_subcomplexes(const WhiteheadPoset& P, const CheckOptions& opt) {
  detail::Tally t("homology", "C(A) and Peripheral(A) acyclic, supp(A) = C(A) when essential");
  const Graph& g = P.graph();
  const auto gens = all_canonical_generators(g);
  std::vector<GeneratorSet> families{{}};
  for (std::size_t a = 0; a < gens.size(); ++a) {
    families.push_back({gens[a]});
    if (opt.max_family >= 2)
      for (std::size_t b = a + 1; b < gens.size(); ++b) families.push_back(make_generator_set({gens[a], gens[b]}));
  }
  for (const auto& fam : families) {
    auto apex = try_cone_point(g, fam);
    if (!apex) continue;
    t.count();
    const auto cone = subcomplex_cells(P, fam, SubcomplexKind::ConeC);
    t.expect(subcomplex_homology(cone).vanishes(), "C(A) not acyclic for |A|=" + std::to_string(fam.size()));
    if (is_essential(g, *apex)) {
      t.expect(subcomplex_cells(P, fam, SubcomplexKind::Supp) == cone, "supp(A) != C(A) for an essential A");
      t.expect(subcomplex_cells(P, fam, SubcomplexKind::Peripheral).empty(), "Peripheral(A) nonempty for essential A");
    } else if (fam.size() == 1) {
      t.expect(subcomplex_homology(subcomplex_cells(P, fam, SubcomplexKind::Peripheral)).vanishes(),
               "Peripheral(" + fam[0].to_string() + ") not acyclic");
    }
  }
  return t.done();
}

inline CheckResult check_psaut(const Graph& g, const std::vector<std::size_t>& k) {
  detail::Tally t("homology", "ΣPAut Betti numbers");
  const Graph r = reduce_dominating(g);
  std::vector<std::uint64_t> kk(k.begin(), k.end());
  const auto n = clique_counts(r);
  const auto a = psaut_by_convolution(kk, n);
  const auto b = psaut_by_direct_sum(kk, n);
  t.count();
  t.expect(a == b, "convolution " + detail::join(a) + " vs direct " + detail::join(b));
  std::size_t conjugations = 0;
  for (int v : r.vertices()) conjugations += components_minus_star(r, v).size();
  const std::uint64_t b1 = a.size() > 1 ? a[1] : 0;
  t.expect(b1 == conjugations, "degree 1 is " + std::to_string(b1) + ", partial conjugations " + std::to_string(conjugations));
  return t.done();
}

// --- ring ------------------------------------------------------------------

inline CheckResult check_degree_two(const WhiteheadPoset& P, const std::vector<std::size_t>& k) {
  detail::Tally t("ring", "|B1| = |B2| = H2 rank, φ injective into B2");
  const Graph& g = P.graph();
  const auto report = verify_phi(P);
  std::vector<std::uint64_t> kk(k.begin(), k.end());
  const auto psaut = psaut_by_convolution(kk, clique_counts(g));
  const std::uint64_t h2 = psaut.size() > 2 ? psaut[2] : 0;
  t.count();
  t.expect(report.b1_size == report.b2_size, "|B1| = " + std::to_string(report.b1_size) + ", |B2| = " + std::to_string(report.b2_size));
  t.expect(report.b2_size == h2, "|B2| = " + std::to_string(report.b2_size) + ", H2 rank " + std::to_string(h2));
  for (const auto& f : report.failures) t.fail("case gap: " + f);
  for (const auto& o : report.outside_b2) t.fail("outside B2: " + o);
  for (const auto& [x, y] : report.collisions) t.fail("collision: " + x + " and " + y);
  return t.done();
}

inline CheckResult check_relation_four(const Graph& g) {
  detail::Tally t("ring", "excluded monomials rewrite into B2");
  const Graph r = reduce_dominating(g);
  const auto b2 = enumerate_B2(r);
  const std::set<RingBasisElement> basis(b2.begin(), b2.end());
  auto gens = component_generators(r);
  for (const auto& a : gens)
    for (const auto& b : gens) {
      t.count();
      const auto combo = reduce_degree2(r, a, b);
      for (const auto& [e, c] : combo) t.expect(basis.count(e) > 0, e.to_string() + " not in B2");
      if (a == b || a.vertex == b.vertex || r.adjacent(a.vertex, b.vertex)) continue;
      const int i = a.vertex;
      const int j = b.vertex;
      const ComponentGenerator dj{i, dominant_component(r, i, j)};
      const ComponentGenerator di{j, dominant_component(r, j, i)};
      if (a == dj && b == di) t.expect(combo.empty(), "dominant pair does not vanish");
      if (a.component == b.component && classify_component(r, i, j, a.component) == ComponentClass::Shared) {
        // γ^i_C γ^j_C = γ^i_C γ^j_{D^i} + γ^i_{D^j} γ^j_C, written in order i, j.
        Degree2Combination expected;
        auto put = [&](ComponentGenerator x, ComponentGenerator y, long long c) {
          if (y < x) {
            std::swap(x, y);
            c = -c;
          }
          expected[{x, y}] += c;
        };
        put(a, di, 1);
        put(dj, b, 1);
        t.expect(combo == expected, "relation (4) rewrite mismatch for " + a.to_string("γ") + " " + b.to_string("γ"));
      }
    }
  return t.done();
}

inline CheckResult check_homomorphisms(const Graph& g) {
  detail::Tally t("ring", "φ1 and φ2 respect the presentation; a corrupted map does not");
  const Graph r = reduce_dominating(g);
  const auto pres = presentation(r);
  for (int i : r.vertices())
    for (int j : r.vertices()) {
      if (i == j || r.adjacent(i, j)) continue;
      t.count();
      t.expect(verify_homomorphism(pres, phi1_assignment(r, pres, i, j)),
               "φ1 fails for " + std::to_string(i) + "," + std::to_string(j));
      for (VertexSet c : shared_components(r, i, j)) {
        t.count();
        t.expect(verify_homomorphism(pres, phi2_assignment(r, pres, i, j, c)),
                 "φ2 fails for " + std::to_string(i) + "," + std::to_string(j) + " over " + c.to_string());
        // Send C^j_C to x⁻¹ instead of y⁻¹: the type iii relation for (j, i, C) breaks.
        auto bad = phi2_assignment(r, pres, i, j, c);
        bad[pres.require({j, c})] = FreeWord::symbol(kLetterX, -1);
        t.expect(!verify_homomorphism(pres, bad), "corrupted assignment accepted");
      }
    }
  return t.done();
}

/// Every suite on one graph. The graph is reduced first.
inline std::vector<CheckResult> run_checks(const Graph& g, const CheckOptions& opt = {}) {
  const Graph r = reduce_dominating(g);
  const auto P = enumerate_poset(r, {500000, opt.jobs});
  const auto k = essential_counts(P, opt.jobs);
  std::vector<CheckResult> out;
  out.push_back(check_graph_structure(g));
  out.push_back(check_crossing_equivalence(r));
  out.push_back(check_refinement_order(r));
  out.push_back(check_poset_order(P));
  out.push_back(check_canonical_basis(P));
  out.push_back(check_essential_rank_one(P));
  out.push_back(check_essential_characterizations(P));
  out.push_back(check_essential_cover(P, opt));
  if (opt.homology) {
    out.push_back(check_e1_concentration(P, opt.jobs));
    out.push_back(check_subcomplexes(P, opt));
  } else {
    out.push_back(check_d_squared(P));
  }
  out.push_back(check_psaut(r, k));
  out.push_back(check_degree_two(P, k));
  out.push_back(check_relation_four(r));
  out.push_back(check_homomorphisms(r));
  return out;
}

}  // namespace whitehead
