// Apache License, Version 2.0, refer to LICENSE.txt

#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "uclean/corpus.hpp"
#include "uclean/embeddings.hpp"
#include "uclean/graph.hpp"
#include "uclean/normalizer.hpp"
#include "uclean/simstring.hpp"

namespace uclean {

struct BaselineConfig {
  int k = 25;                            // kNN size (Sridhar, Enelvo)
  double n = 0.8;                        // Enelvo mixing weight
  double alpha = 0.7;                    // Ghosh segregation threshold
  double beta_fraction = 0.6;            // Ghosh pruning fraction
  double gamma = 50.0;                   // Ghosh pruning guard
  long long frequency_threshold = 100;   // Enelvo clean-lexicon rule
};

namespace detail {

// For each clean word with an embedding, its k nearest noisy corpus
// words by cosine. Noisy means: in the corpus lexicon, not in the clean
// set, and embedded. Returns noisy word -> clean candidates.
inline std::map<std::string, std::vector<std::string>> knn_candidates(
    const Corpus& corpus, const EmbeddingModel& model,
    const std::set<std::string>& clean_set, int k) {
  std::vector<std::string> noisy;
  for (const auto& [w, c] : corpus.lexicon())
    if (!clean_set.count(w) && model.contains(w)) noisy.push_back(w);

  std::map<std::string, std::vector<std::string>> candidates_of;
  std::vector<std::pair<std::string, double>> scored;
  for (const std::string& wc : clean_set) {
    if (!model.contains(wc)) continue;
    scored.clear();
    const double* vc = model.vector(wc);
    for (const std::string& wl : noisy) {
      scored.emplace_back(wl, EmbeddingModel::cosine_raw_n(
                                  vc, model.vector(wl),
                                  static_cast<std::size_t>(model.dim())));
    }
    std::sort(scored.begin(), scored.end(),
              [](const auto& a, const auto& b) {
                if (a.second != b.second) return a.second > b.second;
                return a.first < b.first;
              });
    std::size_t take = std::min<std::size_t>(k, scored.size());
    for (std::size_t i = 0; i < take; ++i)
      candidates_of[scored[i].first].push_back(wc);
  }
  return candidates_of;
}

inline NormalizationMap map_from_winners(
    const std::map<std::string, std::string>& winner) {
  std::map<std::string, std::vector<std::string>> groups;
  for (const auto& [noisy, canonical] : winner)
    groups[canonical].push_back(noisy);
  std::vector<VariantCluster> clusters;
  for (auto& [canonical, members] : groups)
    clusters.push_back({canonical, std::move(members)});
  return NormalizationMap::from_clusters(std::move(clusters));
}

}  // namespace detail

// Sridhar: contextual kNN proposes candidates, lexical score
// LCSR/ED picks the winner. Identical strings (ED = 0) can slip in when
// only lexicon membership separates clean from noisy, so they score
// with a large finite multiplier and always win.
inline NormalizationMap sridhar_normalize(
    const Corpus& corpus, const EmbeddingModel& model,
    const std::vector<std::string>& clean_lexicon, int k = 25) {
  if (clean_lexicon.empty())
    throw std::runtime_error("sridhar: clean lexicon is empty");
  if (k < 1) throw std::invalid_argument("sridhar: k must be >= 1");
  std::set<std::string> clean_set(clean_lexicon.begin(), clean_lexicon.end());
  auto candidates_of = detail::knn_candidates(corpus, model, clean_set, k);

  constexpr double kExactMatchBoost = 1e9;
  std::map<std::string, std::string> winner;
  for (const auto& [wl, candidates] : candidates_of) {
    std::string best;
    double best_score = -1.0;
    for (const std::string& wc : candidates) {
      int ed = edit_distance(wl, wc);
      double score = ed == 0 ? lcsr(wl, wc) * kExactMatchBoost
                             : lcsr(wl, wc) / ed;
      if (score > best_score || (score == best_score && wc < best)) {
        best_score = score;
        best = wc;
      }
    }
    winner[wl] = best;
  }
  return detail::map_from_winners(winner);
}

// Enelvo: same kNN candidate structure, scored by a weighted mix of
// lexical similarity (LCSR with diacritical credit over MED) and cosine.
inline NormalizationMap enelvo_normalize(const Corpus& corpus,
                                         const EmbeddingModel& model,
                                         int k = 25, double n = 0.8,
                                         long long frequency_threshold = 100) {
  if (k < 1) throw std::invalid_argument("enelvo: k must be >= 1");
  if (n <= 0.0 || n >= 1.0)
    throw std::invalid_argument("enelvo: n must lie in (0,1)");
  std::set<std::string> clean_set;
  for (const auto& [w, c] : corpus.lexicon())
    if (c >= frequency_threshold) clean_set.insert(w);
  if (clean_set.empty())
    throw std::runtime_error(
        "enelvo: no corpus word reaches frequency " +
        std::to_string(frequency_threshold) + "; lower the threshold");
  auto candidates_of = detail::knn_candidates(corpus, model, clean_set, k);

  std::map<std::string, std::string> winner;
  for (const auto& [wl, candidates] : candidates_of) {
    std::string best;
    double best_score = -2.0;
    for (const std::string& wc : candidates) {
      double med = modified_edit_distance(wl, wc);
      double lexical =
          med > 0.0 ? enelvo_lcsr(wl, wc) / med : enelvo_lcsr(wl, wc);
      double score = n * lexical + (1.0 - n) * model.cosine(wl, wc);
      if (score > best_score || (score == best_score && wc < best)) {
        best_score = score;
        best = wc;
      }
    }
    winner[wl] = best;
  }
  return detail::map_from_winners(winner);
}

// Ghosh: segregation by edit similarity, graph over raw (summed)
// co-occurrence counts, pruning guarded by gamma, strongest-neighbor
// congregation, and melding by maximum edit similarity.
inline NormalizationMap ghosh_normalize(const Corpus& corpus,
                                        const std::vector<std::string>& clean_words,
                                        double alpha = 0.7,
                                        double beta_fraction = 0.6,
                                        double gamma = 50.0) {
  if (clean_words.empty())
    throw std::runtime_error("ghosh: clean word list is empty");
  if (alpha <= 0.0 || alpha > 1.0)
    throw std::invalid_argument("ghosh: alpha must lie in (0,1]");
  if (beta_fraction <= 0.0 || beta_fraction >= 1.0)
    throw std::invalid_argument("ghosh: beta must lie in (0,1)");
  if (gamma <= 0.0) throw std::invalid_argument("ghosh: gamma must be > 0");

  std::vector<std::string> ordered(clean_words.begin(), clean_words.end());
  std::sort(ordered.begin(), ordered.end());
  ordered.erase(std::unique(ordered.begin(), ordered.end()), ordered.end());

  std::vector<VariantCluster> raw;
  for (const std::string& w : ordered) {
    std::vector<std::string> segregated;
    for (const auto& [word, count] : corpus.lexicon())
      if (edit_similarity(word, w) > alpha) segregated.push_back(word);
    VariantCluster cl;
    cl.canonical = w;
    if (!segregated.empty()) {
      VariantGraph g;
      for (const std::string& s : segregated) g.add_node(s);
      CooccurrenceIndex cooc =
          CooccurrenceIndex::build(corpus, segregated, /*averaged=*/false);
      for (std::size_t i = 0; i < segregated.size(); ++i) {
        for (std::size_t j = i + 1; j < segregated.size(); ++j) {
          double c = cooc.at(segregated[i], segregated[j]);
          if (c > 0.0) g.add_edge(segregated[i], segregated[j], c);
        }
      }
      VariantGraph pruned = ghosh_prune(g, beta_fraction, gamma);
      Partition p = ghosh_congregate(pruned);
      auto groups = p.groups();
      double best_es = -1.0;
      int best_community = -1;
      for (std::size_t c = 0; c < groups.size(); ++c) {
        for (std::size_t node : groups[c]) {
          double es = edit_similarity(pruned.word(node), w);
          if (best_community < 0 || es > best_es) {
            best_es = es;
            best_community = static_cast<int>(c);
          }
        }
      }
      for (std::size_t node : groups[best_community])
        cl.members.push_back(pruned.word(node));
      std::sort(cl.members.begin(), cl.members.end());
    }
    raw.push_back(std::move(cl));
  }
  return NormalizationMap::from_clusters(
      detail::club_clusters(raw, ordered, corpus));
}

}  // namespace uclean
