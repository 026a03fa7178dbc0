// Apache License, Version 2.0, refer to LICENSE.txt

#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "uclean/rng.hpp"

namespace uclean {

// Weighted undirected word graph. No self-loops, weights nonnegative,
// immutable once built (construction is not thread-safe, reads are).
class VariantGraph {
 public:
  std::size_t add_node(const std::string& word) {
    auto it = index_.find(word);
    if (it != index_.end()) return it->second;
    std::size_t id = nodes_.size();
    index_.emplace(word, id);
    nodes_.push_back(word);
    adj_.emplace_back();
    return id;
  }

  void add_edge(const std::string& u, const std::string& v, double w) {
    if (u == v) throw std::invalid_argument("graph: self-loop on " + u);
    if (w < 0.0) throw std::invalid_argument("graph: negative edge weight");
    std::size_t a = add_node(u);
    std::size_t b = add_node(v);
    for (const auto& [n, _] : adj_[a])
      if (n == b) throw std::invalid_argument("graph: duplicate edge");
    adj_[a].emplace_back(b, w);
    adj_[b].emplace_back(a, w);
    total_weight_ += w;
    ++edge_count_;
  }

  std::size_t node_count() const { return nodes_.size(); }
  std::size_t edge_count() const { return edge_count_; }
  double total_weight() const { return total_weight_; }
  const std::vector<std::string>& nodes() const { return nodes_; }
  const std::string& word(std::size_t i) const { return nodes_[i]; }

  bool has_node(const std::string& w) const { return index_.count(w) > 0; }

  std::size_t node_index(const std::string& w) const {
    auto it = index_.find(w);
    if (it == index_.end())
      throw std::out_of_range("graph: unknown node: " + w);
    return it->second;
  }

  const std::vector<std::pair<std::size_t, double>>& neighbors(
      std::size_t i) const {
    return adj_[i];
  }

  double weight(const std::string& u, const std::string& v) const {
    auto iu = index_.find(u);
    auto iv = index_.find(v);
    if (iu == index_.end() || iv == index_.end()) return 0.0;
    for (const auto& [n, w] : adj_[iu->second])
      if (n == iv->second) return w;
    return 0.0;
  }

  double max_edge_weight() const {
    double m = 0.0;
    for (std::size_t i = 0; i < adj_.size(); ++i)
      for (const auto& [j, w] : adj_[i])
        if (i < j) m = std::max(m, w);
    return m;
  }

  // "u v weight" per line, nodes in insertion order, u before v.
  void write_edge_list(std::ostream& os) const {
    for (std::size_t i = 0; i < adj_.size(); ++i)
      for (const auto& [j, w] : adj_[i])
        if (i < j) os << nodes_[i] << ' ' << nodes_[j] << ' ' << w << '\n';
  }

 private:
  std::vector<std::string> nodes_;
  std::unordered_map<std::string, std::size_t> index_;
  std::vector<std::vector<std::pair<std::size_t, double>>> adj_;
  double total_weight_ = 0.0;
  std::size_t edge_count_ = 0;
};

// Community assignment aligned with the graph's node indices; ids are
// contiguous from 0.
struct Partition {
  std::vector<int> community;

  int count() const {
    int m = -1;
    for (int c : community) m = std::max(m, c);
    return m + 1;
  }

  std::vector<std::vector<std::size_t>> groups() const {
    std::vector<std::vector<std::size_t>> g(count());
    for (std::size_t i = 0; i < community.size(); ++i)
      g[community[i]].push_back(i);
    return g;
  }

  static Partition singletons(std::size_t n) {
    Partition p;
    p.community.resize(n);
    std::iota(p.community.begin(), p.community.end(), 0);
    return p;
  }
};

namespace detail {

inline void relabel_contiguous(std::vector<int>& community) {
  std::unordered_map<int, int> remap;
  for (int& c : community) {
    auto [it, fresh] = remap.emplace(c, static_cast<int>(remap.size()));
    c = it->second;
  }
}

}  // namespace detail

// Newman weighted modularity. Zero-weight graphs score 0.
inline double modularity(const VariantGraph& g, const Partition& p) {
  if (p.community.size() != g.node_count())
    throw std::invalid_argument("modularity: partition does not cover graph");
  double two_m = 2.0 * g.total_weight();
  if (two_m == 0.0) return 0.0;
  std::unordered_map<int, double> intra;  // 2 * internal edge weight
  std::unordered_map<int, double> tot;    // summed degrees
  for (std::size_t i = 0; i < g.node_count(); ++i) {
    double k = 0.0;
    for (const auto& [j, w] : g.neighbors(i)) {
      k += w;
      if (p.community[i] == p.community[j]) intra[p.community[i]] += w;
    }
    tot[p.community[i]] += k;
  }
  double q = 0.0;
  for (const auto& [c, t] : tot) {
    double in = 0.0;
    auto it = intra.find(c);
    if (it != intra.end()) in = it->second;
    q += in / two_m - (t / two_m) * (t / two_m);
  }
  return q;
}

namespace detail {

// Index-level graph used across Louvain aggregation levels. Self-loops
// (intra-community weight) are kept separate; a loop of weight w counts
// 2w toward its node's degree.
struct LevelGraph {
  std::vector<std::vector<std::pair<std::size_t, double>>> adj;
  std::vector<double> loop;
  double two_m = 0.0;

  std::size_t size() const { return adj.size(); }

  void finish() {
    two_m = 0.0;
    for (std::size_t i = 0; i < adj.size(); ++i) {
      for (const auto& [j, w] : adj[i]) two_m += w;
      two_m += 2.0 * loop[i];
    }
  }

  double degree(std::size_t i) const {
    double k = 2.0 * loop[i];
    for (const auto& [j, w] : adj[i]) k += w;
    return k;
  }
};

// One pass of greedy local moving; returns true if any node moved.
inline bool louvain_local(const LevelGraph& g, std::vector<int>& comm,
                          Rng& rng) {
  std::size_t n = g.size();
  std::vector<double> tot(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) tot[comm[i]] += g.degree(i);
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  rng.shuffle(order);

  bool any_move = false;
  bool improved = true;
  std::unordered_map<int, double> w_to;
  while (improved) {
    improved = false;
    for (std::size_t i : order) {
      int old_c = comm[i];
      double k_i = g.degree(i);
      w_to.clear();
      for (const auto& [j, w] : g.adj[i])
        if (j != i) w_to[comm[j]] += w;
      tot[old_c] -= k_i;
      // gain of inserting i into c, up to a 1/m factor
      auto gain = [&](int c) {
        auto it = w_to.find(c);
        double link = it == w_to.end() ? 0.0 : it->second;
        return link - tot[c] * k_i / g.two_m;
      };
      // Move only on strict improvement over staying; among equal best
      // gains pick the smallest community id.
      int best_c = old_c;
      double best = gain(old_c);
      for (const auto& [c, link] : w_to) {
        if (c == old_c) continue;
        double gn = gain(c);
        if (gn > best + 1e-12) {
          best = gn;
          best_c = c;
        } else if (best_c != old_c && gn > best - 1e-12 && c < best_c) {
          best_c = c;
        }
      }
      tot[best_c] += k_i;
      comm[i] = best_c;
      if (best_c != old_c) {
        improved = true;
        any_move = true;
      }
    }
  }
  return any_move;
}

}  // namespace detail

// Two-phase Louvain: local moving to convergence, then community
// aggregation, repeated to a fixed point. Node visit order is shuffled
// once per level from the seed, making runs reproducible.
inline Partition louvain(const VariantGraph& g, std::uint64_t seed) {
  std::size_t n = g.node_count();
  Partition result = Partition::singletons(n);
  if (n == 0) return result;
  if (g.total_weight() == 0.0) return result;  // all singletons

  detail::LevelGraph level;
  level.adj.resize(n);
  level.loop.assign(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) level.adj[i] = g.neighbors(i);
  level.finish();

  Rng rng(derive_seed(seed, "louvain"));
  std::vector<int> node_to_final(n);
  std::iota(node_to_final.begin(), node_to_final.end(), 0);

  for (;;) {
    std::vector<int> comm(level.size());
    std::iota(comm.begin(), comm.end(), 0);
    bool moved = detail::louvain_local(level, comm, rng);
    if (!moved) break;
    detail::relabel_contiguous(comm);
    int k = 0;
    for (int c : comm) k = std::max(k, c + 1);

    for (std::size_t i = 0; i < n; ++i)
      node_to_final[i] = comm[node_to_final[i]];

    // Aggregate communities into supernodes.
    detail::LevelGraph next;
    next.adj.resize(k);
    next.loop.assign(k, 0.0);
    std::map<std::pair<int, int>, double> between;
    for (std::size_t i = 0; i < level.size(); ++i) {
      next.loop[comm[i]] += level.loop[i];
      for (const auto& [j, w] : level.adj[i]) {
        if (j < i) continue;  // each undirected edge once
        int ci = comm[i], cj = comm[j];
        if (ci == cj) {
          next.loop[ci] += w;
        } else {
          between[{std::min(ci, cj), std::max(ci, cj)}] += w;
        }
      }
    }
    for (const auto& [key, w] : between) {
      next.adj[key.first].emplace_back(key.second, w);
      next.adj[key.second].emplace_back(key.first, w);
    }
    next.finish();
    if (next.size() == level.size()) break;  // no further contraction
    level = std::move(next);
  }

  result.community = node_to_final;
  detail::relabel_contiguous(result.community);
  return result;
}

// Drop edges below beta_fraction * max weight, but only when the
// maximum edge weight exceeds gamma.
inline VariantGraph ghosh_prune(const VariantGraph& g, double beta_fraction,
                                double gamma) {
  if (beta_fraction <= 0.0 || beta_fraction >= 1.0)
    throw std::invalid_argument("ghosh_prune: beta_fraction outside (0,1)");
  VariantGraph out;
  for (const std::string& w : g.nodes()) out.add_node(w);
  double maxw = g.max_edge_weight();
  double cutoff = maxw > gamma ? beta_fraction * maxw : 0.0;
  for (std::size_t i = 0; i < g.node_count(); ++i)
    for (const auto& [j, w] : g.neighbors(i))
      if (i < j && w >= cutoff) out.add_edge(g.word(i), g.word(j), w);
  return out;
}

// Union-find closure of the strongest-neighbor relation: nodes join the
// same community when either is the other's maximum-weight neighbor.
// Ties break toward the lexicographically smaller word.
inline Partition ghosh_congregate(const VariantGraph& g) {
  std::size_t n = g.node_count();
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&parent](std::size_t x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  };
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t best = n;
    double best_w = 0.0;
    for (const auto& [j, w] : g.neighbors(i)) {
      if (w <= 0.0) continue;
      if (best == n || w > best_w ||
          (w == best_w && g.word(j) < g.word(best))) {
        best = j;
        best_w = w;
      }
    }
    if (best != n) parent[find(i)] = find(best);
  }
  Partition p;
  p.community.resize(n);
  for (std::size_t i = 0; i < n; ++i)
    p.community[i] = static_cast<int>(find(i));
  detail::relabel_contiguous(p.community);
  return p;
}

}  // namespace uclean
