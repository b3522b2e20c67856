#pragma once

#include <string>
#include <vector>

#include "whitehead/graph.hpp"

namespace corpus {

struct Entry {
  std::string name;
  whitehead::Graph graph;  // as given; reduce before use
};

inline whitehead::Graph g5() { return whitehead::Graph::from_edges(5, {{1, 2}}); }
inline whitehead::Graph edgeless(int n) { return whitehead::Graph::from_edges(n, {}); }

inline whitehead::Graph path(int n) {
  std::vector<std::pair<int, int>> e;
  for (int i = 1; i < n; ++i) e.emplace_back(i, i + 1);
  return whitehead::Graph::from_edges(n, e);
}

inline whitehead::Graph cycle(int n) {
  auto e = std::vector<std::pair<int, int>>{};
  for (int i = 1; i < n; ++i) e.emplace_back(i, i + 1);
  e.emplace_back(1, n);
  return whitehead::Graph::from_edges(n, e);
}

inline whitehead::Graph star(int leaves) {
  std::vector<std::pair<int, int>> e;
  for (int i = 2; i <= leaves + 1; ++i) e.emplace_back(1, i);
  return whitehead::Graph::from_edges(leaves + 1, e);
}

// Figure graph with st(2) = {1,2,3} and components {4}, {5..11} of Γ − st(2).
inline whitehead::Graph g11() {
  return whitehead::Graph::from_edges(
      11, {{1, 2}, {2, 3}, {3, 10}, {3, 8}, {5, 6}, {5, 10}, {5, 8}, {8, 9}, {6, 7}, {10, 11}});
}

// Graphs whose reductions have at most five vertices.
inline std::vector<Entry> small_graphs() {
  return {
      {"G5", g5()},
      {"F2", edgeless(2)},
      {"F3", edgeless(3)},
      {"F4", edgeless(4)},
      {"F5", edgeless(5)},
      {"P3", path(3)},
      {"P4", path(4)},
      {"P5", path(5)},
      {"K1,3", star(3)},
      {"K1,4", star(4)},
      {"C4", cycle(4)},
      {"C5", cycle(5)},
      {"2K2", whitehead::Graph::from_edges(4, {{1, 2}, {3, 4}})},
      {"K3+K1", whitehead::Graph::from_edges(4, {{1, 2}, {2, 3}, {1, 3}})},
      {"P4+K1", whitehead::Graph::from_edges(5, {{1, 2}, {2, 3}, {3, 4}})},
      {"paw+K1", whitehead::Graph::from_edges(5, {{1, 2}, {2, 3}, {1, 3}, {3, 4}})},
  };
}

}  // namespace corpus
