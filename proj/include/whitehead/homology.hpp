#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "whitehead/essential.hpp"
#include "whitehead/graph.hpp"
#include "whitehead/parallel.hpp"
#include "whitehead/poset.hpp"
#include "whitehead/smith.hpp"

namespace whitehead {

/// Graded free abelian groups C_k with boundaries d_k : C_k → C_{k-1}.
/// Position k of `dims` is degree lowest_degree + k; boundary[0] is unused.
struct IntegerChainComplex {
  int lowest_degree = 0;
  std::vector<std::size_t> dims;
  std::vector<IntegerMatrix> boundary;
  std::vector<std::vector<std::string>> labels;  // optional, per position

  std::size_t length() const { return dims.size(); }
  int top_degree() const { return lowest_degree + static_cast<int>(dims.size()) - 1; }
};

struct BettiReport {
  int lowest_degree = 0;
  std::vector<std::size_t> betti;
  std::vector<std::vector<BigInt>> torsion;  // invariant factors > 1, per degree

  std::size_t at(int degree) const {
    const int k = degree - lowest_degree;
    if (k < 0 || k >= static_cast<int>(betti.size())) return 0;
    return betti[static_cast<std::size_t>(k)];
  }

  bool torsion_free() const {
    for (const auto& t : torsion)
      if (!t.empty()) return false;
    return true;
  }

  bool vanishes() const {
    for (auto b : betti)
      if (b != 0) return false;
    return torsion_free();
  }
};

inline void validate_dimensions(const IntegerChainComplex& c) {
  if (c.boundary.size() != c.dims.size())
    throw domain_error("chain complex: " + std::to_string(c.boundary.size()) + " boundary maps for " +
                       std::to_string(c.dims.size()) + " groups");
  for (std::size_t k = 1; k < c.dims.size(); ++k) {
    const auto& d = c.boundary[k];
    if (d.cols() != c.dims[k] || d.rows() != c.dims[k - 1])
      throw domain_error("chain complex: boundary in degree " + std::to_string(c.lowest_degree + static_cast<int>(k)) +
                         " is " + std::to_string(d.rows()) + "x" + std::to_string(d.cols()) + ", expected " +
                         std::to_string(c.dims[k - 1]) + "x" + std::to_string(c.dims[k]));
  }
}

/// Exact check that every composite d_{k-1} ∘ d_k vanishes.
inline bool boundary_squares_to_zero(const IntegerChainComplex& c) {
  validate_dimensions(c);
  for (std::size_t k = 2; k < c.dims.size(); ++k)
    if (!(c.boundary[k - 1] * c.boundary[k]).is_zero()) return false;
  return true;
}

/// Homology via Smith normal form of each boundary. With betti_only the
/// ranks come from rational elimination and no torsion is reported.
inline BettiReport homology(const IntegerChainComplex& c, bool betti_only = false, unsigned jobs = 1) {
  validate_dimensions(c);
  const std::size_t len = c.dims.size();
  std::vector<std::size_t> rank(len + 1, 0);
  std::vector<std::vector<BigInt>> factors(len + 1);
  parallel_for(len, jobs, [&](std::size_t k) {
    if (k == 0 || c.boundary[k].is_zero()) return;
    if (betti_only) {
      rank[k] = rational_rank(c.boundary[k]);
    } else {
      factors[k] = invariant_factors(c.boundary[k]);
      rank[k] = factors[k].size();
    }
  });
  BettiReport r;
  r.lowest_degree = c.lowest_degree;
  for (std::size_t k = 0; k < len; ++k) {
    r.betti.push_back(c.dims[k] - rank[k] - rank[k + 1]);
    std::vector<BigInt> tors;
    for (const auto& f : factors[k + 1])
      if (f > 1) tors.push_back(f);
    r.torsion.push_back(std::move(tors));
  }
  return r;
}

inline std::string chain_label(const Chain& c) {
  std::string s = "(";
  for (std::size_t i = 0; i < c.elements.size(); ++i) s += (i ? "<" : "") + std::to_string(c.elements[i]);
  return s + ")";
}

/// Reduced simplicial homology of a set of order-complex cells. The set must
/// be closed under faces unless `close` is true, in which case the missing
/// faces are added first.
inline BettiReport subcomplex_homology(std::vector<Chain> cells, bool close = false, bool betti_only = false) {
  std::sort(cells.begin(), cells.end());
  cells.erase(std::unique(cells.begin(), cells.end()), cells.end());
  std::map<Chain, std::size_t> present;
  for (const auto& c : cells) present.emplace(c, 0);
  std::vector<Chain> pending = cells;
  while (!pending.empty()) {
    Chain c = std::move(pending.back());
    pending.pop_back();
    if (c.elements.size() < 2) continue;
    for (std::size_t i = 0; i < c.elements.size(); ++i) {
      Chain f = c;
      f.elements.erase(f.elements.begin() + static_cast<std::ptrdiff_t>(i));
      if (present.count(f)) continue;
      if (!close) throw domain_error("cell set is not closed under faces: " + chain_label(c) + " lacks " + chain_label(f));
      present.emplace(f, 0);
      pending.push_back(std::move(f));
    }
  }
  int top = -1;
  for (const auto& [c, _] : present) top = std::max(top, c.dim());
  IntegerChainComplex cx;
  cx.lowest_degree = -1;
  cx.dims.assign(static_cast<std::size_t>(top) + 2, 0);
  cx.dims[0] = 1;
  for (auto& [c, idx] : present) idx = cx.dims[static_cast<std::size_t>(c.dim()) + 1]++;
  cx.boundary.emplace_back(0, 1);
  for (int d = 0; d <= top; ++d) cx.boundary.emplace_back(cx.dims[static_cast<std::size_t>(d)], cx.dims[static_cast<std::size_t>(d) + 1]);
  for (const auto& [c, idx] : present) {
    auto& m = cx.boundary[static_cast<std::size_t>(c.dim()) + 1];
    if (c.dim() == 0) {
      m.add(0, idx, 1);
      continue;
    }
    for (std::size_t i = 0; i < c.elements.size(); ++i) {
      Chain f = c;
      f.elements.erase(f.elements.begin() + static_cast<std::ptrdiff_t>(i));
      m.add(present.at(f), idx, (i % 2) ? -1 : 1);
    }
  }
  return homology(cx, betti_only);
}

inline std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  std::uint64_t r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

/// D[p][q] = Σ over p-chains σ of binom(rank τ⁰(σ), q).
inline std::vector<std::vector<std::uint64_t>> e1_dimensions(const WhiteheadPoset& poset) {
  std::vector<std::vector<std::uint64_t>> table;
  const auto width = static_cast<std::size_t>(poset.height()) + 1;
  for (const auto& layer : all_chains(poset)) {
    std::vector<std::uint64_t> row(width, 0);
    for (const auto& c : layer) {
      const auto r = static_cast<std::uint64_t>(poset.rank(c.bottom()));
      for (std::size_t q = 0; q < width; ++q) row[q] += binomial(r, q);
    }
    table.push_back(std::move(row));
  }
  return table;
}

namespace detail {

// q-subsets of {0..r-1} as bitmasks in lexicographic order of index lists.
inline const std::vector<std::uint64_t>& subsets_of_size(std::size_t r, std::size_t q) {
  thread_local std::map<std::pair<std::size_t, std::size_t>, std::vector<std::uint64_t>> memo;
  auto [it, fresh] = memo.try_emplace({r, q});
  if (fresh) {
    std::vector<std::size_t> idx(q);
    for (std::size_t i = 0; i < q; ++i) idx[i] = i;
    if (q <= r) {
      for (;;) {
        std::uint64_t mask = 0;
        for (auto i : idx) mask |= std::uint64_t{1} << i;
        it->second.push_back(mask);
        std::size_t k = q;
        while (k > 0 && idx[k - 1] == r - q + k - 1) --k;
        if (k == 0) break;
        ++idx[k - 1];
        for (std::size_t j = k; j < q; ++j) idx[j] = idx[j - 1] + 1;
      }
    }
  }
  return it->second;
}

struct ChainHash {
  std::size_t operator()(const std::vector<std::uint32_t>& v) const noexcept {
    std::size_t h = 1469598103934665603ULL;
    for (auto x : v) h = (h ^ x) * 1099511628211ULL;
    return h;
  }
};

}  // namespace detail

/// Row q of the E¹ page: in degree p one basis element per (p-chain σ,
/// q-subset of B(τ⁰)). Face i ≥ 1 relabels onto the face chain with sign
/// (-1)^i; face 0 applies the q-th exterior power of the map sending each
/// (j, I) of B(τ⁰) to the sum of the petals of τ¹_j inside I.
inline IntegerChainComplex build_e1_row(const WhiteheadPoset& poset, std::size_t q, bool with_labels = false) {
  const Graph& g = poset.graph();
  const auto layers = all_chains(poset);
  std::vector<GeneratorSet> basis(poset.size());
  for (std::size_t i = 0; i < poset.size(); ++i) basis[i] = canonical_basis(g, poset[i]);

  IntegerChainComplex cx;
  std::vector<std::vector<std::size_t>> offset(layers.size());
  std::vector<std::unordered_map<std::vector<std::uint32_t>, std::size_t, detail::ChainHash>> where(layers.size());
  for (std::size_t p = 0; p < layers.size(); ++p) {
    std::size_t dim = 0;
    for (std::size_t k = 0; k < layers[p].size(); ++k) {
      const Chain& c = layers[p][k];
      offset[p].push_back(dim);
      where[p].emplace(c.elements, k);
      dim += detail::subsets_of_size(basis[c.bottom()].size(), q).size();
    }
    cx.dims.push_back(dim);
  }
  // Trailing zero groups carry no homology information.
  while (cx.dims.size() > 1 && cx.dims.back() == 0) cx.dims.pop_back();
  const std::size_t len = cx.dims.size();

  auto position = [&](std::size_t p, std::size_t chain, std::uint64_t mask) {
    const auto& subs = detail::subsets_of_size(basis[layers[p][chain].bottom()].size(), q);
    auto it = std::lower_bound(subs.begin(), subs.end(), mask, [](std::uint64_t a, std::uint64_t b) {
      // Lexicographic order of index lists equals descending order of the
      // reversed bit pattern; compare by the index lists directly.
      while (a && b) {
        int la = __builtin_ctzll(a);
        int lb = __builtin_ctzll(b);
        if (la != lb) return la < lb;
        a &= a - 1;
        b &= b - 1;
      }
      return a == 0 && b != 0;
    });
    if (it == subs.end() || *it != mask) throw internal_error("E1: subset not found in face basis");
    return offset[p][chain] + static_cast<std::size_t>(it - subs.begin());
  };

  cx.boundary.emplace_back(0, cx.dims[0]);
  for (std::size_t p = 1; p < len; ++p) cx.boundary.emplace_back(cx.dims[p - 1], cx.dims[p]);

  for (std::size_t p = 1; p < len; ++p) {
    IntegerMatrix& d = cx.boundary[p];
    for (std::size_t k = 0; k < layers[p].size(); ++k) {
      const Chain& c = layers[p][k];
      const GeneratorSet& b0 = basis[c.bottom()];
      const auto& subs = detail::subsets_of_size(b0.size(), q);

      // Faces i ≥ 1 keep the bottom element.
      for (std::size_t i = 1; i < c.elements.size(); ++i) {
        std::vector<std::uint32_t> f = c.elements;
        f.erase(f.begin() + static_cast<std::ptrdiff_t>(i));
        const std::size_t fk = where[p - 1].at(f);
        const std::int64_t sign = (i % 2) ? -1 : 1;
        for (std::size_t s = 0; s < subs.size(); ++s) d.add(offset[p - 1][fk] + s, offset[p][k] + s, sign);
      }

      // Face 0 moves to τ¹ and changes the generator basis.
      std::vector<std::uint32_t> f(c.elements.begin() + 1, c.elements.end());
      const std::size_t fk = where[p - 1].at(f);
      const std::uint32_t t1 = c.elements[1];
      const GeneratorSet& b1 = basis[t1];
      std::vector<std::vector<std::size_t>> image(b0.size());
      for (std::size_t a = 0; a < b0.size(); ++a) {
        for (std::size_t b = 0; b < b1.size(); ++b)
          if (b1[b].vertex == b0[a].vertex && b1[b].petal.is_subset_of(b0[a].petal)) image[a].push_back(b);
        if (image[a].empty()) throw internal_error("E1: " + b0[a].to_string() + " has no refinement in the next type");
      }
      for (std::size_t s = 0; s < subs.size(); ++s) {
        std::vector<std::size_t> members;
        for (std::uint64_t m = subs[s]; m; m &= m - 1) members.push_back(static_cast<std::size_t>(__builtin_ctzll(m)));
        // Expand the wedge of sums term by term.
        std::vector<std::size_t> pick(members.size(), 0);
        for (;;) {
          std::vector<std::size_t> word;
          for (std::size_t t = 0; t < members.size(); ++t) word.push_back(image[members[t]][pick[t]]);
          std::uint64_t mask = 0;
          bool repeated = false;
          for (auto w : word) {
            if (mask & (std::uint64_t{1} << w)) repeated = true;
            mask |= std::uint64_t{1} << w;
          }
          if (!repeated) {
            int inversions = 0;
            for (std::size_t x = 0; x < word.size(); ++x)
              for (std::size_t y = x + 1; y < word.size(); ++y)
                if (word[x] > word[y]) ++inversions;
            d.add(position(p - 1, fk, mask), offset[p][k] + s, (inversions % 2) ? -1 : 1);
          }
          std::size_t t = members.size();
          while (t > 0) {
            --t;
            if (++pick[t] < image[members[t]].size()) break;
            pick[t] = 0;
            if (t == 0) {
              t = members.size() + 1;
              break;
            }
          }
          if (members.empty() || t == members.size() + 1) break;
        }
      }
    }
  }

  if (with_labels) {
    cx.labels.resize(len);
    for (std::size_t p = 0; p < len; ++p)
      for (const auto& c : layers[p]) {
        const GeneratorSet& b0 = basis[c.bottom()];
        for (std::uint64_t mask : detail::subsets_of_size(b0.size(), q)) {
          std::string s = chain_label(c) + "{";
          bool first = true;
          for (std::uint64_t m = mask; m; m &= m - 1) {
            s += (first ? "" : ",") + b0[static_cast<std::size_t>(__builtin_ctzll(m))].to_string();
            first = false;
          }
          cx.labels[p].push_back(s + "}");
        }
      }
  }
  return cx;
}

/// Betti numbers of ΣPOut: the essential counts of the reduced graph.
inline std::vector<std::uint64_t> betti_psout(const Graph& g, PosetOptions options = {}) {
  auto k = essential_counts(reduce_dominating(g), options);
  return {k.begin(), k.end()};
}

/// Σ_{i+j=q} K_i·N_j by accumulating every product into its degree.
inline std::vector<std::uint64_t> psaut_by_convolution(const std::vector<std::uint64_t>& k,
                                                       const std::vector<std::uint64_t>& n) {
  if (k.empty() || n.empty()) return {};
  std::vector<std::uint64_t> out(k.size() + n.size() - 1, 0);
  for (std::size_t i = 0; i < k.size(); ++i)
    for (std::size_t j = 0; j < n.size(); ++j) out[i + j] += k[i] * n[j];
  return out;
}

/// The same coefficients, one degree at a time.
inline std::vector<std::uint64_t> psaut_by_direct_sum(const std::vector<std::uint64_t>& k,
                                                      const std::vector<std::uint64_t>& n) {
  std::vector<std::uint64_t> out;
  const std::size_t top = k.size() + n.size() - 2;
  for (std::size_t q = 0; q <= top; ++q) {
    std::uint64_t total = 0;
    for (std::size_t i = 0; i <= q; ++i) {
      if (i >= k.size() || q - i >= n.size()) continue;
      total += k[i] * n[q - i];
    }
    out.push_back(total);
  }
  return out;
}

/// Betti numbers of ΣPAut, from K and the clique counts of the reduced graph.
inline std::vector<std::uint64_t> betti_psaut(const Graph& g, PosetOptions options = {}) {
  const Graph r = reduce_dominating(g);
  std::vector<std::uint64_t> k;
  for (auto x : essential_counts(r, options)) k.push_back(x);
  const auto n = clique_counts(r);
  auto a = psaut_by_convolution(k, n);
  auto b = psaut_by_direct_sum(k, n);
  if (a != b) throw internal_error("ΣPAut Betti: convolution and direct sum disagree");
  return a;
}

}  // namespace whitehead
