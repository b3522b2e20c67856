#pragma once

#include <array>
#include <charconv>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>
#include "whitehead/errors.hpp"
#include "whitehead/vertex_set.hpp"

namespace whitehead {

/// Finite simplicial graph on labelled vertices.
///
/// Labels are positive integers (at most 64); their numeric order is the
/// vertex order, so "the minimal element" of any vertex set is its smallest
/// label. Removing vertices keeps the remaining labels untouched.
class Graph {
 public:
  Graph() = default;

  /// Graph on vertices 1..n. Throws domain_error on self-loops, duplicate
  /// edges or endpoints outside 1..n.
  static Graph from_edges(int n, const std::vector<std::pair<int, int>>& edges) {
    if (n < 0 || n > kMaxVertices)
      throw domain_error("vertex count must be in 0.." + std::to_string(kMaxVertices));
    Graph g;
    g.vertices_ = VertexSet::range(n);
    for (auto [u, v] : edges) {
      if (u < 1 || u > n || v < 1 || v > n)
        throw domain_error("edge endpoint out of range 1.." + std::to_string(n));
      if (u == v) throw domain_error("self-loop at vertex " + std::to_string(u));
      if (g.adj_[u - 1].contains(v))
        throw domain_error("duplicate edge {" + std::to_string(std::min(u, v)) + "," +
                           std::to_string(std::max(u, v)) + "}");
      g.adj_[u - 1].insert(v);
      g.adj_[v - 1].insert(u);
    }
    return g;
  }

  VertexSet vertices() const { return vertices_; }
  int vertex_count() const { return vertices_.size(); }
  bool has_vertex(int v) const { return vertices_.contains(v); }

  bool adjacent(int u, int v) const { return has_vertex(u) && adj_[u - 1].contains(v); }

  VertexSet link(int v) const {
    require_vertex(v);
    return adj_[v - 1];
  }

  VertexSet star(int v) const {
    require_vertex(v);
    VertexSet s = adj_[v - 1];
    s.insert(v);
    return s;
  }

  // Edges {u, v} with u < v, in lexicographic order.
  std::vector<std::pair<int, int>> edges() const {
    std::vector<std::pair<int, int>> out;
    for (int u : vertices_)
      for (int v : adj_[u - 1])
        if (u < v) out.emplace_back(u, v);
    return out;
  }

  std::size_t edge_count() const {
    std::size_t twice = 0;
    for (int v : vertices_) twice += static_cast<std::size_t>(adj_[v - 1].size());
    return twice / 2;
  }

  Graph induced(VertexSet keep) const {
    Graph g;
    g.vertices_ = vertices_ & keep;
    for (int v : g.vertices_) g.adj_[v - 1] = adj_[v - 1] & g.vertices_;
    return g;
  }

  void require_vertex(int v) const {
    if (!has_vertex(v)) throw domain_error("unknown vertex " + std::to_string(v));
  }

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  VertexSet vertices_;
  std::array<VertexSet, kMaxVertices> adj_{};
};

inline VertexSet star(const Graph& g, int v) { return g.star(v); }

/// A vertex is dominating when its star is the whole vertex set.
inline bool is_dominating(const Graph& g, int v) { return g.star(v) == g.vertices(); }

inline bool is_reduced(const Graph& g) {
  for (int v : g.vertices())
    if (is_dominating(g, v)) return false;
  return true;
}

/// Repeatedly deletes dominating vertices. The result may be empty.
inline Graph reduce_dominating(const Graph& g) {
  Graph current = g;
  for (;;) {
    VertexSet dominating;
    for (int v : current.vertices())
      if (is_dominating(current, v)) dominating.insert(v);
    if (dominating.empty()) return current;
    current = current.induced(current.vertices() - dominating);
  }
}

/// Connected component of the induced subgraph on `within` that contains x.
inline VertexSet component_within(const Graph& g, VertexSet within, int x) {
  VertexSet comp = VertexSet::single(x);
  VertexSet frontier = comp;
  while (!frontier.empty()) {
    VertexSet next;
    for (int y : frontier) next |= g.link(y) & within;
    next -= comp;
    comp |= next;
    frontier = next;
  }
  return comp;
}

/// Connected components of Γ − st(v), each sorted, ordered by minimum.
inline std::vector<VertexSet> components_minus_star(const Graph& g, int v) {
  VertexSet rest = g.vertices() - g.star(v);
  if (rest.empty())
    throw domain_error("vertex " + std::to_string(v) +
                       " is dominating; reduce the graph first");
  std::vector<VertexSet> out;
  while (!rest.empty()) {
    VertexSet comp = component_within(g, rest, rest.min());
    out.push_back(comp);
    rest -= comp;
  }
  return out;
}

/// Smallest label of Γ − st(v).
inline int minimal_vertex(const Graph& g, int v) {
  VertexSet rest = g.vertices() - g.star(v);
  if (rest.empty())
    throw domain_error("vertex " + std::to_string(v) + " is dominating");
  return rest.min();
}

/// The component of Γ − st(u) containing x (x must lie outside st(u)).
inline VertexSet component_containing(const Graph& g, int u, int x) {
  VertexSet rest = g.vertices() - g.star(u);
  if (!rest.contains(x))
    throw domain_error("vertex " + std::to_string(x) + " lies in st(" + std::to_string(u) + ")");
  return component_within(g, rest, x);
}

/// Dominant component of Γ − st(u) with respect to a vertex v ∉ st(u).
inline VertexSet dominant_component(const Graph& g, int u, int v) {
  return component_containing(g, u, v);
}

inline bool is_component_of(const Graph& g, int u, VertexSet a) {
  if (a.empty()) return false;
  VertexSet rest = g.vertices() - g.star(u);
  return a.is_subset_of(rest) && component_within(g, rest, a.min()) == a;
}

enum class ComponentClass { Shared, Dominant, Subordinate };

inline const char* to_string(ComponentClass c) {
  switch (c) {
    case ComponentClass::Shared: return "shared";
    case ComponentClass::Dominant: return "dominant";
    case ComponentClass::Subordinate: return "subordinate";
  }
  return "?";
}

/// Classifies a component A of Γ − st(u) relative to a vertex v ∉ st(u).
inline ComponentClass classify_component(const Graph& g, int u, int v, VertexSet a) {
  g.require_vertex(u);
  g.require_vertex(v);
  if (g.star(v).contains(u))
    throw domain_error("vertices " + std::to_string(u) + " and " + std::to_string(v) +
                       " are adjacent or equal");
  if (!is_component_of(g, u, a))
    throw domain_error(a.to_string() + " is not a component of Γ−st(" + std::to_string(u) + ")");
  if (a.contains(v)) return ComponentClass::Dominant;
  if (is_component_of(g, v, a)) return ComponentClass::Shared;
  VertexSet dominant_at_v = dominant_component(g, v, u);
  if (a.is_subset_of(dominant_at_v)) return ComponentClass::Subordinate;
  throw internal_error("component " + a.to_string() + " fits no class");
}

/// N[j] = number of j-cliques, N[0] = 1, up to the clique number.
inline std::vector<std::uint64_t> clique_counts(const Graph& g) {
  std::vector<std::uint64_t> counts{1};
  auto extend = [&](auto&& self, int size, VertexSet candidates) -> void {
    for (int v : candidates) {
      if (counts.size() <= static_cast<std::size_t>(size + 1)) counts.push_back(0);
      ++counts[size + 1];
      VertexSet later = VertexSet::from_bits(v >= 64 ? 0 : ~((std::uint64_t{1} << v) - 1));
      self(self, size + 1, candidates & g.link(v) & later);
    }
  };
  extend(extend, 0, g.vertices());
  return counts;
}

// ---------------------------------------------------------------------------
// Input formats

namespace detail {

inline std::string_view trim(std::string_view s) {
  const char* ws = " \t\r\n";
  auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

inline std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
    std::size_t j = i;
    while (j < s.size() && s[j] != ' ' && s[j] != '\t') ++j;
    if (j > i) out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

inline bool to_int(std::string_view s, int& out) {
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc{} && p == s.data() + s.size();
}

inline Graph parse_json_graph(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw parse_error(0, std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("n") || !doc["n"].is_number_integer())
    throw parse_error(0, "JSON graph needs an integer field \"n\"");
  int n = doc["n"].get<int>();
  std::vector<std::pair<int, int>> edges;
  if (doc.contains("edges")) {
    if (!doc["edges"].is_array()) throw parse_error(0, "\"edges\" must be an array");
    for (const auto& e : doc["edges"]) {
      if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() ||
          !e[1].is_number_integer())
        throw parse_error(0, "edge entries must be [u, v] integer pairs");
      edges.emplace_back(e[0].get<int>(), e[1].get<int>());
    }
  }
  try {
    return Graph::from_edges(n, edges);
  } catch (const domain_error& e) {
    throw parse_error(0, e.what());
  }
}

}  // namespace detail

/// Parses the edge-list text format or the JSON form {"n": .., "edges": [[u,v],..]}.
///
/// Edge list: the first non-comment line holds n, each further line "u v".
/// '#' starts a comment that runs to the end of the line.
inline Graph parse_graph(std::string_view text) {
  std::string_view body = detail::trim(text);
  if (!body.empty() && body.front() == '{') return detail::parse_json_graph(body);

  int n = -1;
  std::vector<std::pair<int, int>> edges;
  std::vector<std::vector<bool>> seen;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    std::string_view line = text.substr(pos, nl - pos);
    pos = nl + 1;
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = detail::trim(line);
    if (line.empty()) continue;
    auto tokens = detail::split_ws(line);
    if (n < 0) {
      if (tokens.size() != 1 || !detail::to_int(tokens[0], n) || n < 0)
        throw parse_error(line_no, "expected a vertex count");
      if (n > kMaxVertices)
        throw parse_error(line_no, "at most " + std::to_string(kMaxVertices) + " vertices supported");
      seen.assign(n + 1, std::vector<bool>(n + 1, false));
      continue;
    }
    int u = 0;
    int v = 0;
    if (tokens.size() != 2 || !detail::to_int(tokens[0], u) || !detail::to_int(tokens[1], v))
      throw parse_error(line_no, "expected an edge \"u v\"");
    if (u < 1 || u > n || v < 1 || v > n)
      throw parse_error(line_no, "edge endpoint out of range 1.." + std::to_string(n));
    if (u == v) throw parse_error(line_no, "self-loop at vertex " + std::to_string(u));
    if (seen[u][v]) throw parse_error(line_no, "duplicate edge");
    seen[u][v] = seen[v][u] = true;
    edges.emplace_back(u, v);
  }
  if (n < 0) throw parse_error(0, "empty graph description");
  return Graph::from_edges(n, edges);
}

inline Graph load_graph(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw parse_error(0, "cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_graph(ss.str());
}

/// Canonical text form of a labelled graph; labels are kept (they are semantic).
inline std::string canonical_form(const Graph& g) {
  std::string out = "V";
  for (int v : g.vertices()) out += " " + std::to_string(v);
  out += ";E";
  for (auto [u, v] : g.edges()) out += " " + std::to_string(u) + "-" + std::to_string(v);
  return out;
}

// FNV-1a, stable across platforms.
inline std::uint64_t content_hash(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace whitehead
