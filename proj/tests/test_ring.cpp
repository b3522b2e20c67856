#include <gtest/gtest.h>

#include "corpus.hpp"
#include "oracles.hpp"
#include "whitehead/ring.hpp"

using namespace whitehead;

namespace {

BasedPartition at(int u, std::vector<VertexSet> petals) {
  BasedPartition p{u, std::move(petals)};
  p.normalize();
  return p;
}

VertexType with(const Graph& g, std::vector<BasedPartition> parts) {
  VertexType t = nuclear_type(g);
  for (auto& p : parts) t.parts[t.position_of(p.operative)] = p;
  return t;
}

RingBasisElement monomial(ComponentGenerator a, ComponentGenerator b) {
  if (b < a) std::swap(a, b);
  return {a, b};
}

struct Census {
  std::size_t i = 0, ii = 0, iii = 0;
};

// Relation counts from breadth-first components: commuting generators at
// equal or adjacent vertices; pairs with distinct shared or any subordinate
// component; one type iii relation per ordered pair and shared component.
Census relation_census(const Graph& g) {
  const auto a = oracle::adjacency(g);
  std::vector<std::pair<int, oracle::Block>> gens;
  for (int v : a.verts)
    for (const auto& c : oracle::components_minus_star(a, v)) gens.emplace_back(v, c);
  auto is_comp = [&](int v, const oracle::Block& c) {
    const auto cs = oracle::components_minus_star(a, v);
    return std::find(cs.begin(), cs.end(), c) != cs.end();
  };
  Census n;
  for (std::size_t x = 0; x < gens.size(); ++x)
    for (std::size_t y = x + 1; y < gens.size(); ++y) {
      const auto& [u, cu] = gens[x];
      const auto& [v, cv] = gens[y];
      if (u == v || a.nbrs.at(u).count(v)) {
        ++n.i;
        continue;
      }
      const bool sub_u = !cu.count(v) && !is_comp(v, cu);
      const bool sub_v = !cv.count(u) && !is_comp(u, cv);
      const bool shared_distinct = !cu.count(v) && !cv.count(u) && is_comp(v, cu) && is_comp(u, cv) && cu != cv;
      if (sub_u || sub_v || shared_distinct) ++n.ii;
    }
  for (int u : a.verts)
    for (int v : a.verts) {
      if (u == v || a.nbrs.at(u).count(v)) continue;
      for (const auto& c : oracle::components_minus_star(a, u))
        if (!c.count(v) && is_comp(v, c)) ++n.iii;
    }
  return n;
}

}  // namespace

TEST(FreeWord, Reduction) {
  const FreeWord x = FreeWord::symbol(0);
  const FreeWord y = FreeWord::symbol(1);
  EXPECT_TRUE(free_reduce(x * x.inverse()).empty());
  EXPECT_EQ(free_reduce(x.inverse() * x * y.inverse()), y.inverse());
  const FreeWord w = x * y * x;
  EXPECT_EQ(free_reduce(w), w);
  EXPECT_TRUE(free_reduce(commutator(x, x)).empty());
  EXPECT_FALSE(free_reduce(commutator(x, y)).empty());
  EXPECT_TRUE(free_reduce(w * w.inverse()).empty());
  EXPECT_EQ(w.to_string({"x", "y"}), "x y x");
  EXPECT_EQ(x.inverse().to_string({"x"}), "x^-1");
}

TEST(Presentation, Counts) {
  const auto p = presentation(corpus::g5());
  EXPECT_EQ(p.generators.size(), 15u);
  const auto f2 = presentation(corpus::edgeless(2));
  EXPECT_EQ(f2.generators.size(), 2u);
  EXPECT_TRUE(f2.relations.empty());
  // F3: three same-vertex pairs, no type ii, one shared component per ordered pair.
  const auto f3 = presentation(corpus::edgeless(3));
  EXPECT_EQ(f3.count("i"), 3u);
  EXPECT_EQ(f3.count("ii"), 0u);
  EXPECT_EQ(f3.count("iii"), 6u);
  EXPECT_THROW(presentation(corpus::path(3)), domain_error);
}

TEST(Presentation, MatchesRelationCensus) {
  for (const auto& e : corpus::small_graphs()) {
    const Graph g = reduce_dominating(e.graph);
    const auto p = presentation(g);
    const auto n = relation_census(g);
    EXPECT_EQ(p.generators.size(), oracle::partial_conjugations(g)) << e.name;
    EXPECT_EQ(p.count("i"), n.i) << e.name;
    EXPECT_EQ(p.count("ii"), n.ii) << e.name;
    EXPECT_EQ(p.count("iii"), n.iii) << e.name;
  }
}

TEST(Homomorphisms, PhiOneAndTwo) {
  const Graph g = corpus::g5();
  const auto p = presentation(g);
  for (int i : g.vertices())
    for (int j : g.vertices()) {
      if (i == j || g.adjacent(i, j)) continue;
      EXPECT_TRUE(verify_homomorphism(p, phi1_assignment(g, p, i, j)));
      for (VertexSet c : shared_components(g, i, j)) EXPECT_TRUE(verify_homomorphism(p, phi2_assignment(g, p, i, j, c)));
    }
  EXPECT_THROW(phi1_assignment(g, p, 1, 2), domain_error);
  EXPECT_THROW(phi2_assignment(g, p, 3, 4, {4}), domain_error);
}

TEST(Homomorphisms, CorruptedAssignmentsAreRejected) {
  const Graph g = corpus::g5();
  const auto p = presentation(g);
  const VertexSet shared{5};
  // Both dominant generators sent to x.
  auto bad = phi2_assignment(g, p, 3, 4, shared);
  bad[p.require({4, dominant_component(g, 4, 3)})] = FreeWord::symbol(kLetterX);
  EXPECT_TRUE(first_broken_relation(p, bad).has_value());
  std::size_t broken_iii = 0;
  for (const auto& r : p.relations)
    if (r.tag == "iii" && !apply_assignment(bad, r.word()).empty()) ++broken_iii;
  EXPECT_GT(broken_iii, 0u);
  // The shared generator at 4 sent to x⁻¹.
  bad = phi2_assignment(g, p, 3, 4, shared);
  bad[p.require({4, shared})] = FreeWord::symbol(kLetterX, -1);
  EXPECT_FALSE(verify_homomorphism(p, bad));
  // Unassigned generator.
  bad = phi1_assignment(g, p, 3, 4);
  bad[0].reset();
  EXPECT_THROW(verify_homomorphism(p, bad), domain_error);
}

TEST(Homomorphisms, HoldOnCorpus) {
  for (const auto& e : corpus::small_graphs()) {
    const Graph g = reduce_dominating(e.graph);
    const auto p = presentation(g);
    for (int i : g.vertices())
      for (int j : g.vertices()) {
        if (i == j || g.adjacent(i, j)) continue;
        EXPECT_TRUE(verify_homomorphism(p, phi1_assignment(g, p, i, j))) << e.name;
        for (VertexSet c : shared_components(g, i, j))
          EXPECT_TRUE(verify_homomorphism(p, phi2_assignment(g, p, i, j, c))) << e.name;
      }
  }
}

TEST(DegreeTwo, BasisSizes) {
  EXPECT_EQ(enumerate_B2(corpus::g5()).size(), 78u);
  EXPECT_EQ(enumerate_B2(corpus::edgeless(2)).size(), 0u);
  EXPECT_EQ(enumerate_B2(corpus::edgeless(4)).size(), 48u);
  for (const auto& e : corpus::small_graphs()) {
    const Graph g = reduce_dominating(e.graph);
    EXPECT_EQ(enumerate_B2(g).size(), oracle::degree_two_census(g)) << e.name;
    const auto P = enumerate_poset(g);
    const auto h = oracle::convolve(oracle::essential_counts(g), oracle::clique_counts(g));
    EXPECT_EQ(enumerate_B1(P).size(), h.size() > 2 ? h[2] : 0) << e.name;
  }
}

TEST(DegreeTwo, Exclusions) {
  const Graph g = corpus::g5();
  EXPECT_EQ(*b2_exclusion(g, {3, {4}}, {4, {3}}), "both dominant");
  EXPECT_EQ(*b2_exclusion(g, {3, {5}}, {4, {5}}), "shared and equal");
  EXPECT_FALSE(b2_exclusion(g, {3, {5}}, {4, {1, 2}}).has_value());
  EXPECT_FALSE(is_b2_element(g, {{4, {5}}, {3, {5}}}));
}

TEST(DegreeTwo, Rewriting) {
  const Graph g = corpus::g5();
  // γ^3_{5} γ^4_{5} = γ^3_{5} γ^4_{3} + γ^3_{4} γ^4_{5}.
  const Degree2Combination expected{{monomial({3, {5}}, {4, {3}}), 1}, {monomial({3, {4}}, {4, {5}}), 1}};
  EXPECT_EQ(reduce_degree2(g, {3, {5}}, {4, {5}}), expected);
  EXPECT_TRUE(reduce_degree2(g, {3, {4}}, {4, {3}}).empty());
  EXPECT_TRUE(reduce_degree2(g, {3, {4}}, {3, {4}}).empty());
  const auto swapped = reduce_degree2(g, {4, {1, 2}}, {3, {5}});
  ASSERT_EQ(swapped.size(), 1u);
  EXPECT_EQ(swapped.begin()->second, -1);
}

TEST(Phi, Examples) {
  const Graph g = corpus::g5();
  const auto P = enumerate_poset(g);
  const auto t3 = phi(P, B1Type3{1, 2});
  EXPECT_EQ(t3.element, monomial({1, {3}}, {2, {3}}));
  EXPECT_EQ(t3.rule, "3");
  const auto one = *P.find(with(g, {at(3, {{1, 2}, {4}, {5}})}));
  const auto t1 = phi(P, B1Type1{one});
  EXPECT_EQ(t1.element, monomial({3, {4}}, {3, {5}}));
  EXPECT_EQ(t1.rule, "1.1");
  const auto two = *P.find(with(g, {at(1, {{3, 4}, {5}})}));
  const auto t2 = phi(P, B1Type2{two, 3});
  EXPECT_EQ(t2.element, monomial({1, {5}}, {3, {1, 2}}));
  EXPECT_EQ(t2.rule, "2.3");
}

TEST(Phi, InjectiveIntoB2OnCorpus) {
  for (const auto& e : corpus::small_graphs()) {
    const auto P = enumerate_poset(reduce_dominating(e.graph));
    const auto r = verify_phi(P);
    EXPECT_TRUE(r.ok()) << e.name;
    EXPECT_TRUE(r.failures.empty()) << e.name;
    EXPECT_TRUE(r.outside_b2.empty()) << e.name;
    EXPECT_TRUE(r.injective()) << e.name;
    EXPECT_EQ(r.b1_size, r.b2_size) << e.name;
  }
  const auto r = verify_phi(enumerate_poset(corpus::edgeless(4)));
  EXPECT_EQ(r.b1_size, 48u);
}
