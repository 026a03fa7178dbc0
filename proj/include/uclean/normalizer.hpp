// Apache License, Version 2.0, refer to LICENSE.txt

#pragma once

#include <algorithm>
#include <fstream>
#include <map>
#include <mutex>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <unordered_map>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "uclean/corpus.hpp"
#include "uclean/embeddings.hpp"
#include "uclean/graph.hpp"
#include "uclean/simstring.hpp"

namespace uclean {

enum class LexiconSource { CorpusFrequency, ExternalList, QueryList };

struct NormalizerConfig {
  double alpha = 0.56;
  LexiconSource source = LexiconSource::CorpusFrequency;
  long long frequency_threshold = 100;
  std::vector<std::string> word_list;  // ExternalList / QueryList input
  // When every admitted edge has zero co-occurrence (short documents),
  // fall back to plain cosine weights instead of an all-zero graph.
  bool cooccurrence_epsilon_fallback = true;
  // Experimental: attach candidates that lack embeddings to the chosen
  // cluster when they sit at edit distance <= 1 from the clean word.
  bool adopt_unembedded = false;
  std::uint64_t seed = 1;
  int workers = 1;
};

struct VariantCluster {
  std::string canonical;
  std::vector<std::string> members;
};

// Total, non-overlapping rewrite relation: every clustered word maps to
// its cluster's canonical; everything else is identity.
class NormalizationMap {
 public:
  NormalizationMap() = default;

  // Clusters must be pairwise disjoint; canonicals map to themselves.
  static NormalizationMap from_clusters(std::vector<VariantCluster> clusters) {
    NormalizationMap m;
    std::sort(clusters.begin(), clusters.end(),
              [](const VariantCluster& a, const VariantCluster& b) {
                return a.canonical < b.canonical;
              });
    for (VariantCluster& c : clusters) {
      std::set<std::string> members(c.members.begin(), c.members.end());
      members.insert(c.canonical);
      if (members.size() < 2) continue;  // identity-only cluster, drop
      VariantCluster out;
      out.canonical = c.canonical;
      for (const std::string& w : members) {
        if (!m.rewrite_.emplace(w, c.canonical).second)
          throw std::logic_error("normalization map: overlapping clusters at " +
                                 w);
        out.members.push_back(w);
      }
      m.clusters_.push_back(std::move(out));
    }
    return m;
  }

  const std::string& apply(const std::string& w) const {
    auto it = rewrite_.find(w);
    return it == rewrite_.end() ? w : it->second;
  }

  bool has(const std::string& w) const { return rewrite_.count(w) > 0; }
  std::size_t size() const { return rewrite_.size(); }
  const std::map<std::string, std::string>& rewrite() const { return rewrite_; }
  const std::vector<VariantCluster>& clusters() const { return clusters_; }

  // Two columns, noisy TAB canonical, sorted by noisy word.
  void save_tsv(const std::string& path) const {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw parse_error("cannot open for writing: " + path);
    write_tsv(out);
    if (!out) throw parse_error("write failed: " + path);
  }

  void write_tsv(std::ostream& out) const {
    for (const auto& [noisy, canonical] : rewrite_)
      out << noisy << '\t' << canonical << '\n';
  }

  std::string to_tsv() const {
    std::ostringstream os;
    write_tsv(os);
    return os.str();
  }

  static NormalizationMap load_tsv(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw parse_error("cannot open: " + path);
    std::map<std::string, std::vector<std::string>> by_canonical;
    std::string line;
    long long lineno = 0;
    std::set<std::string> seen;
    while (std::getline(in, line)) {
      ++lineno;
      if (line.empty()) continue;
      auto tab = line.find('\t');
      if (tab == std::string::npos)
        throw parse_error(path + ":" + std::to_string(lineno) +
                          ": expected two tab-separated columns");
      std::string noisy = line.substr(0, tab);
      std::string canonical = line.substr(tab + 1);
      if (!canonical.empty() && canonical.back() == '\r') canonical.pop_back();
      if (noisy.empty() || canonical.empty())
        throw parse_error(path + ":" + std::to_string(lineno) +
                          ": empty column");
      if (!seen.insert(noisy).second)
        throw parse_error(path + ":" + std::to_string(lineno) +
                          ": duplicate key: " + noisy);
      by_canonical[canonical].push_back(noisy);
    }
    std::vector<VariantCluster> clusters;
    for (auto& [canonical, members] : by_canonical)
      clusters.push_back({canonical, std::move(members)});
    return from_clusters(std::move(clusters));
  }

  nlohmann::json clusters_json() const {
    nlohmann::json arr = nlohmann::json::array();
    for (const VariantCluster& c : clusters_) {
      nlohmann::json members = nlohmann::json::array();
      for (const std::string& m : c.members) members.push_back(m);
      arr.push_back({{"canonical", c.canonical}, {"members", members}});
    }
    return arr;
  }

  void save_clusters_json(const std::string& path) const {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw parse_error("cannot open for writing: " + path);
    out << clusters_json().dump(2) << '\n';
  }

 private:
  std::map<std::string, std::string> rewrite_;
  std::vector<VariantCluster> clusters_;
};

// All lexicon words whose BLCSR with w strictly exceeds alpha, with w
// itself removed. Result is sorted.
inline std::vector<std::string> candidate_set(
    const std::string& w, const std::map<std::string, long long>& lexicon,
    double alpha) {
  std::vector<std::string> out;
  for (const auto& [word, count] : lexicon) {
    if (word == w) continue;
    if (blcsr(word, w) > alpha) out.push_back(word);
  }
  return out;
}

// BLCSR-weighted average of pairwise embedding cosines over the
// candidate set. Candidates without embeddings are dropped first;
// fewer than two embedded candidates is a degenerate set (nullopt).
inline std::optional<double> beta_threshold(
    const std::vector<std::string>& candidates, const EmbeddingModel& model) {
  std::vector<std::string> embedded;
  for (const std::string& c : candidates)
    if (model.contains(c)) embedded.push_back(c);
  if (embedded.size() < 2) return std::nullopt;
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < embedded.size(); ++i) {
    for (std::size_t j = i + 1; j < embedded.size(); ++j) {
      double w = blcsr(embedded[i], embedded[j]);
      num += w * model.cosine(embedded[i], embedded[j]);
      den += w;
    }
  }
  return den == 0.0 ? 0.0 : num / den;
}

// Nodes are the embedded candidates; an edge joins two candidates whose
// cosine exceeds beta, weighted cosine * averaged co-occurrence. If
// every admitted edge carries zero co-occurrence and the fallback is
// enabled, weights degrade to the cosine alone.
inline VariantGraph build_variant_graph(
    const std::vector<std::string>& candidates, const EmbeddingModel& model,
    const Corpus& corpus, double beta, bool cooccurrence_fallback = true) {
  std::vector<std::string> embedded;
  for (const std::string& c : candidates)
    if (model.contains(c)) embedded.push_back(c);
  VariantGraph g;
  for (const std::string& c : embedded) g.add_node(c);
  CooccurrenceIndex cooc =
      CooccurrenceIndex::build(corpus, embedded, /*averaged=*/true);
  struct Edge {
    std::size_t i, j;
    double cos;
  };
  std::vector<Edge> admitted;
  bool any_positive = false;
  for (std::size_t i = 0; i < embedded.size(); ++i) {
    for (std::size_t j = i + 1; j < embedded.size(); ++j) {
      double cos = model.cosine(embedded[i], embedded[j]);
      if (cos > beta) {
        admitted.push_back({i, j, cos});
        if (cos * cooc.at(embedded[i], embedded[j]) > 0.0) any_positive = true;
      }
    }
  }
  bool fallback = cooccurrence_fallback && !admitted.empty() && !any_positive;
  for (const Edge& e : admitted) {
    double w = fallback ? e.cos
                        : e.cos * cooc.at(embedded[e.i], embedded[e.j]);
    g.add_edge(embedded[e.i], embedded[e.j], std::max(w, 0.0));
  }
  return g;
}

// The community holding the member closest to w by edit distance wins;
// ties break toward the smaller community id.
inline VariantCluster select_cluster(const VariantGraph& g, const Partition& p,
                                     const std::string& w) {
  VariantCluster cluster;
  cluster.canonical = w;
  if (g.node_count() == 0) return cluster;
  auto groups = p.groups();
  int best_ed = -1;
  int best_community = -1;
  for (std::size_t c = 0; c < groups.size(); ++c) {
    for (std::size_t node : groups[c]) {
      int ed = edit_distance(g.word(node), w);
      if (best_community < 0 || ed < best_ed) {
        best_ed = ed;
        best_community = static_cast<int>(c);
      }
    }
  }
  for (std::size_t node : groups[best_community])
    cluster.members.push_back(g.word(node));
  std::sort(cluster.members.begin(), cluster.members.end());
  return cluster;
}

namespace detail {

// Per-run, per-worker memo for BLCSR over unordered word pairs; the
// beta stage revisits the same pairs across overlapping candidate sets.
class BlcsrCache {
 public:
  double get(const std::string& a, const std::string& b) {
    auto k = a <= b ? std::make_pair(a, b) : std::make_pair(b, a);
    auto it = cache_.find(k);
    if (it != cache_.end()) return it->second;
    double v = blcsr(k.first, k.second);
    cache_.emplace(std::move(k), v);
    return v;
  }

 private:
  std::map<std::pair<std::string, std::string>, double> cache_;
};

inline std::optional<double> beta_threshold_cached(
    const std::vector<std::string>& embedded, const EmbeddingModel& model,
    BlcsrCache& cache) {
  if (embedded.size() < 2) return std::nullopt;
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < embedded.size(); ++i) {
    for (std::size_t j = i + 1; j < embedded.size(); ++j) {
      double w = cache.get(embedded[i], embedded[j]);
      num += w * model.cosine(embedded[i], embedded[j]);
      den += w;
    }
  }
  return den == 0.0 ? 0.0 : num / den;
}

// Clean lexicon resolution: returns words ordered by descending corpus
// frequency, ties lexicographic.
inline std::vector<std::string> clean_lexicon(const Corpus& corpus,
                                              const NormalizerConfig& cfg) {
  std::vector<std::string> words;
  if (cfg.source == LexiconSource::CorpusFrequency) {
    for (const auto& [w, c] : corpus.lexicon())
      if (c >= cfg.frequency_threshold) words.push_back(w);
  } else {
    std::set<std::string> uniq(cfg.word_list.begin(), cfg.word_list.end());
    words.assign(uniq.begin(), uniq.end());
  }
  if (words.empty())
    throw std::runtime_error(
        "normalize: clean lexicon is empty; lower --freq-threshold or provide "
        "a word list");
  std::sort(words.begin(), words.end(),
            [&corpus](const std::string& a, const std::string& b) {
              long long fa = corpus.frequency(a), fb = corpus.frequency(b);
              if (fa != fb) return fa > fb;
              return a < b;
            });
  return words;
}

// Transitive clubbing of overlapping per-word clusters. Each input
// cluster is treated as {canonical} + members; overlapping sets merge,
// and each merged cluster adopts its highest-frequency clean word as
// canonical (ties lexicographic).
inline std::vector<VariantCluster> club_clusters(
    const std::vector<VariantCluster>& raw,
    const std::vector<std::string>& clean_words, const Corpus& corpus) {
  std::set<std::string> clean_set(clean_words.begin(), clean_words.end());
  std::map<std::string, std::string> parent;
  auto find = [&parent](std::string x) {
    while (parent.at(x) != x) x = parent.at(x);
    return x;
  };
  auto ensure = [&parent](const std::string& x) {
    parent.emplace(x, x);
  };
  auto unite = [&](const std::string& a, const std::string& b) {
    std::string ra = find(a), rb = find(b);
    if (ra != rb) parent[std::max(ra, rb)] = std::min(ra, rb);
  };
  for (const VariantCluster& c : raw) {
    ensure(c.canonical);
    for (const std::string& m : c.members) {
      ensure(m);
      unite(c.canonical, m);
    }
  }
  std::map<std::string, std::vector<std::string>> merged;
  for (const auto& [w, p] : parent) merged[find(w)].push_back(w);

  std::vector<VariantCluster> out;
  for (auto& [root, members] : merged) {
    if (members.size() < 2) continue;
    std::string canonical;
    long long best_freq = -1;
    for (const std::string& m : members) {
      if (!clean_set.count(m)) continue;
      long long f = corpus.frequency(m);
      if (f > best_freq || (f == best_freq && m < canonical)) {
        best_freq = f;
        canonical = m;
      }
    }
    std::sort(members.begin(), members.end());
    out.push_back({canonical, std::move(members)});
  }
  return out;
}

// fn(index, worker) with each worker id used by exactly one thread.
template <typename Fn>
inline void parallel_for(std::size_t n, int workers, Fn&& fn) {
  std::size_t nthreads =
      std::min<std::size_t>(std::max(workers, 1), std::max<std::size_t>(n, 1));
  if (nthreads <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i, 0);
    return;
  }
  std::vector<std::thread> pool;
  std::exception_ptr error;
  std::mutex error_mu;
  for (std::size_t t = 0; t < nthreads; ++t) {
    pool.emplace_back([t, n, nthreads, &fn, &error, &error_mu]() {
      try {
        for (std::size_t i = t; i < n; i += nthreads) fn(i, t);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mu);
        if (!error) error = std::current_exception();
      }
    });
  }
  for (std::thread& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace detail

// The full pipeline: per clean word, candidate generation, beta, graph
// construction, Louvain fragmentation and cluster selection; then the
// per-word clusters are clubbed into a disjoint map. Deterministic for
// a fixed seed regardless of worker count.
inline NormalizationMap build_normalization_map(const Corpus& corpus,
                                                const EmbeddingModel& model,
                                                const NormalizerConfig& cfg) {
  if (cfg.alpha <= 0.0 || cfg.alpha >= 1.0)
    throw std::invalid_argument("normalize: alpha must lie in (0,1)");
  if (corpus.doc_count() == 0)
    throw std::invalid_argument("normalize: empty corpus");
  std::vector<std::string> clean = detail::clean_lexicon(corpus, cfg);

  std::vector<VariantCluster> raw(clean.size());
  std::vector<detail::BlcsrCache> caches(std::max(cfg.workers, 1));
  detail::parallel_for(
      clean.size(), cfg.workers, [&](std::size_t i, std::size_t worker) {
        const std::string& w = clean[i];
        detail::BlcsrCache& cache = caches[worker];
        std::vector<std::string> cands =
            candidate_set(w, corpus.lexicon(), cfg.alpha);
        std::vector<std::string> embedded;
        std::vector<std::string> unembedded;
        for (const std::string& c : cands)
          (model.contains(c) ? embedded : unembedded).push_back(c);
        VariantCluster cl;
        cl.canonical = w;
        if (embedded.size() >= 2) {
          std::optional<double> beta =
              detail::beta_threshold_cached(embedded, model, cache);
          VariantGraph g =
              build_variant_graph(embedded, model, corpus, *beta,
                                  cfg.cooccurrence_epsilon_fallback);
          Partition p = louvain(g, derive_seed(cfg.seed, w));
          cl = select_cluster(g, p, w);
        }
        if (cfg.adopt_unembedded) {
          for (const std::string& u : unembedded)
            if (edit_distance(u, w) <= 1) cl.members.push_back(u);
        }
        raw[i] = std::move(cl);
      });

  return NormalizationMap::from_clusters(
      detail::club_clusters(raw, clean, corpus));
}

inline std::vector<std::string> normalize_tokens(
    const std::vector<std::string>& tokens, const NormalizationMap& map) {
  std::vector<std::string> out;
  out.reserve(tokens.size());
  for (const std::string& t : tokens) out.push_back(map.apply(t));
  return out;
}

// Token-wise substitution; document and token counts are preserved.
inline Corpus normalize_corpus(const Corpus& corpus,
                               const NormalizationMap& map) {
  std::vector<std::vector<std::string>> docs;
  docs.reserve(corpus.doc_count());
  for (const Document& d : corpus.documents())
    docs.push_back(normalize_tokens(d.tokens, map));
  return Corpus::from_tokens(std::move(docs));
}

}  // namespace uclean
