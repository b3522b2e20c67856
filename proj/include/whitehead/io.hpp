#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>
#include "whitehead/checks.hpp"
#include "whitehead/errors.hpp"
#include "whitehead/essential.hpp"
#include "whitehead/graph.hpp"
#include "whitehead/homology.hpp"
#include "whitehead/poset.hpp"
#include "whitehead/ring.hpp"

namespace whitehead {

using json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

// --- graphs and posets -----------------------------------------------------

inline json vertex_set_json(VertexSet s) { return s.to_vector(); }

inline VertexSet vertex_set_from_json(const json& j) {
  VertexSet s;
  for (const auto& x : j) {
    const int v = x.get<int>();
    if (v < 1 || v > kMaxVertices) throw domain_error("vertex label " + std::to_string(v) + " out of range");
    s.insert(v);
  }
  return s;
}

inline json graph_json(const Graph& g) {
  json e = json::array();
  for (auto [u, v] : g.edges()) e.push_back({u, v});
  return {{"vertices", vertex_set_json(g.vertices())}, {"edges", e}};
}

/// Inverse of graph_json; labels are kept as given.
inline Graph graph_from_json(const json& j) {
  const VertexSet verts = vertex_set_from_json(j.at("vertices"));
  std::vector<std::pair<int, int>> edges;
  for (const auto& e : j.at("edges")) edges.emplace_back(e.at(0).get<int>(), e.at(1).get<int>());
  int top = 0;
  for (int v : verts) top = v;
  return Graph::from_edges(top, edges).induced(verts);
}

inline json vertex_type_json(const VertexType& t) {
  json parts = json::array();
  for (const auto& p : t.parts) {
    json petals = json::array();
    for (VertexSet s : p.petals) petals.push_back(vertex_set_json(s));
    parts.push_back({{"vertex", p.operative}, {"petals", petals}});
  }
  return parts;
}

inline VertexType vertex_type_from_json(const json& j) {
  VertexType t;
  for (const auto& p : j) {
    BasedPartition bp{p.at("vertex").get<int>(), {}};
    for (const auto& s : p.at("petals")) bp.petals.push_back(vertex_set_from_json(s));
    bp.normalize();
    t.parts.push_back(std::move(bp));
  }
  return t;
}

inline json poset_json(const WhiteheadPoset& P) {
  json elems = json::array();
  for (std::size_t i = 0; i < P.size(); ++i)
    elems.push_back({{"index", i}, {"rank", P.rank(i)}, {"parts", vertex_type_json(P[i])}});
  json hasse = json::array();
  for (auto [a, b] : P.hasse_edges()) hasse.push_back({a, b});
  return {{"schema", kSchemaVersion},
          {"graph", graph_json(P.graph())},
          {"canonical_form", canonical_form(P.graph())},
          {"size", P.size()},
          {"rank_histogram", P.rank_histogram()},
          {"elements", elems},
          {"hasse", hasse}};
}

inline WhiteheadPoset poset_from_json(const json& j) {
  if (j.value("schema", 0) != kSchemaVersion) throw domain_error("unsupported poset schema");
  Graph g = graph_from_json(j.at("graph"));
  std::vector<VertexType> elems;
  for (const auto& e : j.at("elements")) elems.push_back(vertex_type_from_json(e.at("parts")));
  return WhiteheadPoset::from_elements(std::move(g), std::move(elems));
}

/// Hasse diagram in Graphviz form, one node per element labelled by its type.
inline std::string poset_dot(const WhiteheadPoset& P) {
  std::ostringstream out;
  out << "digraph whitehead {\n  rankdir=BT;\n  node [shape=box, fontsize=10];\n";
  for (std::size_t i = 0; i < P.size(); ++i)
    out << "  n" << i << " [label=\"" << P[i].to_string() << "\\nrank " << P.rank(i) << "\"];\n";
  for (auto [a, b] : P.hasse_edges()) out << "  n" << a << " -> n" << b << ";\n";
  out << "}\n";
  return out.str();
}

inline std::string e1_csv(const std::vector<std::vector<std::uint64_t>>& table) {
  std::string s = "p,q,dim\n";
  for (std::size_t p = 0; p < table.size(); ++p)
    for (std::size_t q = 0; q < table[p].size(); ++q)
      s += std::to_string(p) + "," + std::to_string(q) + "," + std::to_string(table[p][q]) + "\n";
  return s;
}

// --- cache -----------------------------------------------------------------

inline std::string cache_key(const Graph& reduced) {
  std::ostringstream s;
  s << std::hex << content_hash(canonical_form(reduced));
  return s.str();
}

/// Reads a cached poset for the reduced graph, or builds and stores it.
/// An entry whose stored canonical form differs (hash collision) is ignored.
inline WhiteheadPoset cached_poset(const Graph& reduced, const std::string& dir, PosetOptions options) {
  if (dir.empty()) return enumerate_poset(reduced, options);
  namespace fs = std::filesystem;
  const fs::path file = fs::path(dir) / ("poset-" + cache_key(reduced) + ".json");
  if (fs::exists(file)) {
    std::ifstream in(file);
    try {
      json j = json::parse(in);
      if (j.value("canonical_form", "") == canonical_form(reduced)) return poset_from_json(j);
    } catch (const json::exception&) {
      // Unreadable entry; rebuild below.
    }
  }
  WhiteheadPoset P = enumerate_poset(reduced, options);
  fs::create_directories(dir);
  std::ofstream(file) << poset_json(P).dump() << "\n";
  return P;
}

// --- report ----------------------------------------------------------------

struct Report {
  Graph graph;
  Graph reduced;
  std::vector<std::size_t> rank_histogram;
  std::vector<std::size_t> chain_counts;
  std::vector<std::size_t> essential;
  std::vector<std::uint64_t> cliques;
  std::vector<std::uint64_t> psout;
  std::vector<std::uint64_t> psaut;
  std::vector<std::vector<std::uint64_t>> e1;
  std::optional<PhiReport> ring;
  std::vector<CheckResult> checks;
};

inline Report make_report(const Graph& g, const WhiteheadPoset& P, unsigned jobs, bool with_ring) {
  Report r;
  r.graph = g;
  r.reduced = P.graph();
  r.rank_histogram = P.rank_histogram();
  for (const auto& layer : all_chains(P)) r.chain_counts.push_back(layer.size());
  r.essential = essential_counts(P, jobs);
  r.cliques = clique_counts(r.reduced);
  r.psout.assign(r.essential.begin(), r.essential.end());
  r.psaut = psaut_by_convolution(r.psout, r.cliques);
  r.e1 = e1_dimensions(P);
  if (with_ring) r.ring = verify_phi(P);
  return r;
}

/// Cross-checks between the report fields; throws internal_error on mismatch.
inline void assert_consistent(const Report& r) {
  auto need = [](bool ok, const std::string& what) {
    if (!ok) throw internal_error("report inconsistency: " + what);
  };
  need(std::vector<std::uint64_t>(r.essential.begin(), r.essential.end()) == r.psout, "ΣPOut Betti differs from K");
  need(r.psaut == psaut_by_direct_sum(r.psout, r.cliques), "ΣPAut Betti differs from the direct sum");
  need(!r.chain_counts.empty() && r.chain_counts[0] == [&] {
    std::size_t s = 0;
    for (auto h : r.rank_histogram) s += h;
    return s;
  }(), "vertex count of the order complex differs from the poset size");
  need(r.e1.size() == r.chain_counts.size(), "E1 table height differs from the chain dimensions");
  for (std::size_t p = 0; p < r.e1.size(); ++p) need(r.e1[p][0] == r.chain_counts[p], "E1 column 0 differs from chain counts");
  if (r.ring) {
    const std::uint64_t h2 = r.psaut.size() > 2 ? r.psaut[2] : 0;
    need(r.ring->b2_size == h2, "|B2| differs from the degree-2 Betti number");
  }
}

inline json report_json(const Report& r) {
  assert_consistent(r);
  json j{{"schema", kSchemaVersion},
         {"graph",
          {{"n", r.graph.vertex_count()},
           {"edges", r.graph.edge_count()},
           {"reduced_n", r.reduced.vertex_count()},
           {"reduced_edges", r.reduced.edge_count()}}},
         {"poset", {{"size", r.chain_counts.empty() ? 0 : r.chain_counts[0]}, {"rank_histogram", r.rank_histogram}, {"chain_counts", r.chain_counts}}},
         {"K", r.essential},
         {"N", r.cliques},
         {"betti_psout", r.psout},
         {"betti_psaut", r.psaut},
         {"e1_dimensions", r.e1}};
  if (r.ring) {
    j["ring"] = {{"B1", r.ring->b1_size},
                 {"B2", r.ring->b2_size},
                 {"phi_injective", r.ring->injective()},
                 {"phi_ok", r.ring->ok()},
                 {"phi_rules", r.ring->rule_counts}};
  }
  if (!r.checks.empty()) {
    json c = json::array();
    for (const auto& x : r.checks)
      c.push_back({{"suite", x.suite}, {"name", x.name}, {"passed", x.passed}, {"detail", x.detail}});
    j["checks"] = c;
  }
  return j;
}

inline json presentation_json(const Presentation& p) {
  const auto names = p.names();
  json gens = json::array();
  for (const auto& g : p.generators)
    gens.push_back({{"name", g.to_string()}, {"vertex", g.vertex}, {"component", vertex_set_json(g.component)}});
  auto word_json = [](const FreeWord& w) {
    json a = json::array();
    for (const auto& l : w.letters) a.push_back({l.symbol, l.exponent});
    return a;
  };
  json rels = json::array();
  for (const auto& r : p.relations)
    rels.push_back({{"type", r.tag},
                    {"text", "[" + r.left.to_string(names) + ", " + r.right.to_string(names) + "]"},
                    {"left", word_json(r.left)},
                    {"right", word_json(r.right)},
                    {"word", word_json(r.word())}});
  return {{"schema", kSchemaVersion}, {"generators", gens}, {"relations", rels}};
}

}  // namespace whitehead
