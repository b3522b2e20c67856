#pragma once

#include <algorithm>
#include <atomic>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "whitehead/errors.hpp"
#include "whitehead/graph.hpp"
#include "whitehead/parallel.hpp"
#include "whitehead/partition.hpp"

namespace whitehead {

/// One based partition per vertex of a reduced graph, in ascending vertex
/// order, pairwise compatible.
struct VertexType {
  std::vector<BasedPartition> parts;

  // Position of the partition based at v.
  std::size_t position_of(int v) const {
    for (std::size_t i = 0; i < parts.size(); ++i)
      if (parts[i].operative == v) return i;
    throw domain_error("vertex type has no partition at vertex " + std::to_string(v));
  }
  const BasedPartition& at(int v) const { return parts[position_of(v)]; }

  int rank() const {
    int r = 0;
    for (const auto& p : parts) r += static_cast<int>(p.length()) - 1;
    return r;
  }

  bool is_nuclear() const { return rank() == 0; }

  std::string to_string() const {
    std::string out;
    for (const auto& p : parts) {
      if (p.length() <= 1) continue;
      if (!out.empty()) out += ' ';
      out += p.to_string();
    }
    return out.empty() ? "O" : out;
  }

  friend bool operator==(const VertexType&, const VertexType&) = default;
  friend auto operator<=>(const VertexType&, const VertexType&) = default;
};

}  // namespace whitehead

template <>
struct std::hash<whitehead::VertexType> {
  std::size_t operator()(const whitehead::VertexType& t) const noexcept {
    std::size_t h = 0;
    for (const auto& p : t.parts) h = h * 31 + std::hash<whitehead::BasedPartition>{}(p);
    return h;
  }
};

namespace whitehead {

inline int rank(const VertexType& t) { return t.rank(); }

/// Componentwise refinement order.
inline bool leq(const VertexType& a, const VertexType& b) {
  if (a.parts.size() != b.parts.size()) throw domain_error("leq: vertex types of different graphs");
  for (std::size_t i = 0; i < a.parts.size(); ++i)
    if (!refines(a.parts[i], b.parts[i])) return false;
  return true;
}

inline VertexType nuclear_type(const Graph& g) {
  VertexType t;
  for (int v : g.vertices()) t.parts.push_back(trivial_partition(g, v));
  return t;
}

/// True when the partitions are well formed for g and pairwise compatible.
inline bool is_vertex_type(const Graph& g, const VertexType& t) {
  const auto verts = g.vertices().to_vector();
  if (t.parts.size() != verts.size()) return false;
  for (std::size_t i = 0; i < verts.size(); ++i) {
    const auto& p = t.parts[i];
    if (p.operative != verts[i] || p.petals.empty()) return false;
    VertexSet seen;
    for (VertexSet petal : p.petals) {
      if (petal.empty() || petal.intersects(seen)) return false;
      seen |= petal;
    }
    if (seen != g.vertices() - g.star(p.operative)) return false;
    for (VertexSet c : components_minus_star(g, p.operative))
      if (p.petal_of(c.min()) < 0 || !c.is_subset_of(p.petals[p.petal_of(c.min())])) return false;
  }
  for (std::size_t i = 0; i < verts.size(); ++i)
    for (std::size_t j = i + 1; j < verts.size(); ++j)
      if (!compatible(g, t.parts[i], t.parts[j])) return false;
  return true;
}

/// A p-simplex of the order complex: strictly increasing element indices.
struct Chain {
  std::vector<std::uint32_t> elements;

  int dim() const { return static_cast<int>(elements.size()) - 1; }
  std::uint32_t bottom() const { return elements.front(); }

  friend bool operator==(const Chain&, const Chain&) = default;
  friend auto operator<=>(const Chain&, const Chain&) = default;
};

struct PosetOptions {
  std::size_t cap = 500000;
  unsigned jobs = 1;
};

/// The Γ-Whitehead poset of a reduced graph.
///
/// Elements are sorted by rank and then lexicographically, so index 0 is the
/// nuclear type and every strict relation a < b has index(a) < index(b).
class WhiteheadPoset {
 public:
  WhiteheadPoset() = default;

  /// Builds the poset from an explicit element list (used when reading a
  /// serialized poset back). Elements are re-sorted and validated.
  static WhiteheadPoset from_elements(Graph g, std::vector<VertexType> elements) {
    for (const auto& t : elements)
      if (!is_vertex_type(g, t)) throw domain_error("not a vertex type: " + t.to_string());
    WhiteheadPoset p;
    p.graph_ = std::move(g);
    p.elements_ = std::move(elements);
    p.finish();
    return p;
  }

  const Graph& graph() const { return graph_; }
  std::size_t size() const { return elements_.size(); }
  const std::vector<VertexType>& elements() const { return elements_; }
  const VertexType& operator[](std::size_t i) const { return elements_[i]; }
  int rank(std::size_t i) const { return ranks_[i]; }
  int height() const { return ranks_.empty() ? 0 : ranks_.back(); }

  std::vector<std::size_t> rank_histogram() const {
    std::vector<std::size_t> h(static_cast<std::size_t>(height()) + 1, 0);
    for (int r : ranks_) ++h[static_cast<std::size_t>(r)];
    return h;
  }

  /// Covering pairs (a, b): b is obtained from a by one binary petal split.
  const std::vector<std::pair<std::uint32_t, std::uint32_t>>& hasse_edges() const {
    return hasse_;
  }

  std::optional<std::size_t> find(const VertexType& t) const {
    auto it = index_.find(t);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  bool leq(std::size_t a, std::size_t b) const { return whitehead::leq(elements_[a], elements_[b]); }

  /// For each element, the ascending indices of all strictly greater
  /// elements. Computed on first use.
  const std::vector<std::vector<std::uint32_t>>& strictly_above() const {
    std::call_once(lazy_->once, [this] {
      auto& above = lazy_->above;
      above.assign(size(), {});
      for (std::size_t a = 0; a < size(); ++a)
        for (std::size_t b = a + 1; b < size(); ++b)
          if (ranks_[b] > ranks_[a] && leq(a, b)) above[a].push_back(static_cast<std::uint32_t>(b));
    });
    return lazy_->above;
  }

 private:
  friend WhiteheadPoset enumerate_poset(const Graph& g, PosetOptions options);

  struct Lazy {
    std::once_flag once;
    std::vector<std::vector<std::uint32_t>> above;
  };

  void finish() {
    std::sort(elements_.begin(), elements_.end(), [](const VertexType& a, const VertexType& b) {
      int ra = a.rank();
      int rb = b.rank();
      if (ra != rb) return ra < rb;
      return a < b;
    });
    ranks_.clear();
    index_.clear();
    for (std::size_t i = 0; i < elements_.size(); ++i) {
      ranks_.push_back(elements_[i].rank());
      if (!index_.emplace(elements_[i], i).second)
        throw domain_error("duplicate vertex type " + elements_[i].to_string());
    }
    hasse_.clear();
    for (std::size_t i = 0; i < elements_.size(); ++i) {
      const VertexType& t = elements_[i];
      for (std::size_t pos = 0; pos < t.parts.size(); ++pos) {
        const BasedPartition& p = t.parts[pos];
        for (std::size_t k = 0; k < p.length(); ++k) {
          for (VertexSet part : binary_split_parts(graph_, p.operative, p.petals[k])) {
            VertexType next = t;
            next.parts[pos] = split_petal(graph_, p, k, part);
            if (auto j = find(next))
              hasse_.emplace_back(static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(*j));
          }
        }
      }
    }
    std::sort(hasse_.begin(), hasse_.end());
    lazy_ = std::make_shared<Lazy>();
  }

  Graph graph_;
  std::vector<VertexType> elements_;
  std::vector<int> ranks_;
  std::unordered_map<VertexType, std::size_t> index_;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> hasse_;
  std::shared_ptr<Lazy> lazy_ = std::make_shared<Lazy>();
};

/// Enumerates Wh_Γ: per-vertex based partitions, combined by a depth-first
/// product that keeps only pairwise compatible choices. Partition-pair
/// verdicts are tabulated once per non-adjacent vertex pair.
inline WhiteheadPoset enumerate_poset(const Graph& g, PosetOptions options = {}) {
  if (!is_reduced(g)) throw domain_error("enumerate_poset requires a graph without dominating vertices");
  const std::vector<int> verts = g.vertices().to_vector();
  const std::size_t m = verts.size();

  std::vector<std::vector<BasedPartition>> choices(m);
  for (std::size_t i = 0; i < m; ++i) choices[i] = enumerate_based_partitions(g, verts[i]);

  // ok[i][j][a * |P_j| + b] for i < j; empty table means "always compatible".
  std::vector<std::vector<std::vector<char>>> ok(m, std::vector<std::vector<char>>(m));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j) {
      if (g.adjacent(verts[i], verts[j])) continue;
      auto& table = ok[i][j];
      table.resize(choices[i].size() * choices[j].size());
      for (std::size_t a = 0; a < choices[i].size(); ++a)
        for (std::size_t b = 0; b < choices[j].size(); ++b)
          table[a * choices[j].size() + b] = compatible(g, choices[i][a], choices[j][b]) ? 1 : 0;
    }

  std::atomic<std::size_t> found{0};
  std::atomic<bool> overflow{false};
  const std::size_t roots = m == 0 ? 1 : choices[0].size();
  std::vector<std::vector<std::vector<std::uint16_t>>> per_root(roots);

  parallel_for(roots, options.jobs, [&](std::size_t root) {
    if (m == 0) {
      per_root[0].push_back({});
      found = 1;
      return;
    }
    std::vector<std::uint16_t> pick(m, 0);
    pick[0] = static_cast<std::uint16_t>(root);
    auto& out = per_root[root];
    auto dfs = [&](auto&& self, std::size_t depth) -> void {
      if (overflow.load(std::memory_order_relaxed)) return;
      if (depth == m) {
        if (found.fetch_add(1) + 1 > options.cap) {
          overflow = true;
          return;
        }
        out.push_back(pick);
        return;
      }
      for (std::size_t c = 0; c < choices[depth].size(); ++c) {
        bool good = true;
        for (std::size_t prev = 0; prev < depth && good; ++prev) {
          const auto& table = ok[prev][depth];
          if (!table.empty() && !table[pick[prev] * choices[depth].size() + c]) good = false;
        }
        if (!good) continue;
        pick[depth] = static_cast<std::uint16_t>(c);
        self(self, depth + 1);
      }
    };
    dfs(dfs, 1);
  });

  if (overflow)
    throw resource_error("Whitehead poset exceeds the cap of " + std::to_string(options.cap) +
                             " elements (stopped after " + std::to_string(options.cap) + ")",
                         options.cap);

  WhiteheadPoset poset;
  poset.graph_ = g;
  for (const auto& bucket : per_root)
    for (const auto& pick : bucket) {
      VertexType t;
      t.parts.reserve(m);
      for (std::size_t i = 0; i < m; ++i) t.parts.push_back(choices[i][pick[i]]);
      poset.elements_.push_back(std::move(t));
    }
  poset.finish();
  return poset;
}

/// All chains of the given dimension, in lexicographic order of indices.
inline std::vector<Chain> chains(const WhiteheadPoset& poset, int dim) {
  std::vector<Chain> out;
  if (dim < 0 || poset.size() == 0) return out;
  const auto& above = poset.strictly_above();
  std::vector<std::uint32_t> stack;
  auto dfs = [&](auto&& self, std::uint32_t last) -> void {
    if (static_cast<int>(stack.size()) == dim + 1) {
      out.push_back(Chain{stack});
      return;
    }
    for (std::uint32_t next : above[last]) {
      stack.push_back(next);
      self(self, next);
      stack.pop_back();
    }
  };
  for (std::uint32_t start = 0; start < poset.size(); ++start) {
    stack.assign(1, start);
    dfs(dfs, start);
  }
  return out;
}

/// Chains of every dimension, indexed by dimension.
inline std::vector<std::vector<Chain>> all_chains(const WhiteheadPoset& poset) {
  std::vector<std::vector<Chain>> out;
  for (int d = 0;; ++d) {
    auto layer = chains(poset, d);
    if (layer.empty()) break;
    out.push_back(std::move(layer));
  }
  return out;
}

}  // namespace whitehead
