// Apache License, Version 2.0, refer to LICENSE.txt

#pragma once

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "uclean/corpus.hpp"
#include "uclean/normalizer.hpp"
#include "uclean/rng.hpp"
#include "uclean/unicode.hpp"

namespace uclean {

enum class NoiseKind { Ocr, Social };

struct NoiseModel {
  NoiseKind kind = NoiseKind::Social;
  double rate = 0.1;  // per-token corruption probability
  std::uint64_t seed = 1;
};

// Oracle produced by noise injection: noisy surface form -> source word.
struct GoldMap {
  std::map<std::string, std::string> variants;

  void save_tsv(const std::string& path) const {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw parse_error("cannot open for writing: " + path);
    for (const auto& [noisy, clean] : variants)
      out << noisy << '\t' << clean << '\n';
  }

  static GoldMap load_tsv(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw parse_error("cannot open: " + path);
    GoldMap g;
    std::string line;
    long long lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      if (line.empty()) continue;
      auto tab = line.find('\t');
      if (tab == std::string::npos)
        throw parse_error(path + ":" + std::to_string(lineno) +
                          ": expected two tab-separated columns");
      std::string value = line.substr(tab + 1);
      if (!value.empty() && value.back() == '\r') value.pop_back();
      g.variants.emplace(line.substr(0, tab), value);
    }
    return g;
  }
};

namespace detail {

inline bool is_vowel(char32_t c) {
  return c == U'a' || c == U'e' || c == U'i' || c == U'o' || c == U'u';
}

// Social noise never touches the first character: repeat a character,
// drop a vowel, or truncate up to three trailing characters.
inline std::u32string corrupt_social(const std::u32string& w, Rng& rng) {
  const std::size_t len = w.size();
  std::vector<std::size_t> vowels;
  for (std::size_t i = 1; i < len; ++i)
    if (is_vowel(w[i])) vowels.push_back(i);

  for (;;) {
    double pick = rng.next_double();
    if (pick < 0.35) {  // character repetition
      std::size_t pos = 1 + static_cast<std::size_t>(rng.below(len - 1));
      std::size_t repeats = 1 + static_cast<std::size_t>(rng.below(2));
      std::u32string out = w;
      out.insert(pos, repeats, w[pos]);
      return out;
    }
    if (pick < 0.70) {  // vowel drop
      if (vowels.empty()) continue;
      std::size_t pos = vowels[rng.below(vowels.size())];
      std::u32string out = w;
      out.erase(pos, 1);
      return out;
    }
    // suffix truncation
    if (len < 3) continue;
    std::size_t drop =
        1 + static_cast<std::size_t>(rng.below(std::min<std::size_t>(3, len - 2)));
    return w.substr(0, len - drop);
  }
}

struct OcrConfusion {
  std::u32string from;
  std::vector<std::u32string> to;
};

inline const std::vector<OcrConfusion>& ocr_confusions() {
  static const std::vector<OcrConfusion> table = {
      {U"o", {U"0"}}, {U"0", {U"o"}},       {U"l", {U"1", U"i"}},
      {U"i", {U"1", U"l"}}, {U"1", {U"l", U"i"}}, {U"e", {U"c"}},
      {U"c", {U"e"}}, {U"rn", {U"m"}},      {U"m", {U"rn"}},
  };
  return table;
}

// OCR noise can hit any position: confusion-pair substitution, with a
// 20% share of uniform random substitutions.
inline std::u32string corrupt_ocr(const std::u32string& w, Rng& rng) {
  auto uniform_substitution = [&]() {
    std::size_t pos = static_cast<std::size_t>(rng.below(w.size()));
    char32_t old = w[pos];
    char32_t repl;
    do {
      repl = U'a' + static_cast<char32_t>(rng.below(26));
    } while (repl == old);
    std::u32string out = w;
    out[pos] = repl;
    return out;
  };
  if (rng.next_double() < 0.20) return uniform_substitution();

  // All (position, table entry) occurrences in the word.
  std::vector<std::pair<std::size_t, const OcrConfusion*>> hits;
  for (const OcrConfusion& conf : ocr_confusions()) {
    for (std::size_t pos = 0; pos + conf.from.size() <= w.size(); ++pos)
      if (w.compare(pos, conf.from.size(), conf.from) == 0)
        hits.emplace_back(pos, &conf);
  }
  if (hits.empty()) return uniform_substitution();
  const auto& [pos, conf] = hits[rng.below(hits.size())];
  const std::u32string& repl = conf->to[rng.below(conf->to.size())];
  std::u32string out = w;
  out.replace(pos, conf->from.size(), repl);
  return out;
}

}  // namespace detail

// Corrupt each token independently with probability rate. Deterministic
// for a fixed seed via per-document sub-seeds; the gold map records the
// first source word seen for each produced surface form.
inline std::pair<Corpus, GoldMap> inject_noise(const Corpus& corpus,
                                               const NoiseModel& model) {
  if (model.rate < 0.0 || model.rate > 1.0)
    throw std::invalid_argument("inject: rate must lie in [0,1]");
  if (corpus.doc_count() == 0)
    throw std::invalid_argument("inject: empty corpus");
  GoldMap gold;
  std::vector<std::vector<std::string>> docs;
  docs.reserve(corpus.doc_count());
  for (const Document& doc : corpus.documents()) {
    Rng rng(derive_seed(model.seed, static_cast<std::uint64_t>(doc.id)));
    std::vector<std::string> tokens;
    tokens.reserve(doc.tokens.size());
    for (const std::string& tok : doc.tokens) {
      bool corrupt = rng.next_double() < model.rate;
      std::u32string w = utf8_decode(tok);
      bool eligible = model.kind == NoiseKind::Ocr ? !w.empty() : w.size() >= 2;
      if (!corrupt || !eligible) {
        tokens.push_back(tok);
        continue;
      }
      std::u32string noisy = model.kind == NoiseKind::Ocr
                                 ? detail::corrupt_ocr(w, rng)
                                 : detail::corrupt_social(w, rng);
      std::string encoded = utf8_encode(noisy);
      if (encoded != tok) gold.variants.emplace(encoded, tok);
      tokens.push_back(std::move(encoded));
    }
    docs.push_back(std::move(tokens));
  }
  return {Corpus::from_tokens(std::move(docs)), std::move(gold)};
}

struct BcubedReport {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  double purity = 0.0;
  std::size_t n_words = 0;

  nlohmann::json to_json() const {
    return {{"precision", precision},
            {"recall", recall},
            {"f1", f1},
            {"purity", purity},
            {"n_words", n_words}};
  }
};

// Element-wise B-cubed over the word partitions induced by the two
// maps, restricted to words the gold or predicted map mentions. Words
// not mentioned by a map are their own class under it.
inline BcubedReport bcubed(const NormalizationMap& predicted,
                           const GoldMap& gold) {
  std::set<std::string> universe;
  for (const auto& [noisy, clean] : gold.variants) {
    universe.insert(noisy);
    universe.insert(clean);
  }
  for (const auto& [noisy, canonical] : predicted.rewrite())
    universe.insert(noisy);

  BcubedReport report;
  report.n_words = universe.size();
  if (universe.empty()) return report;

  auto gold_class = [&gold](const std::string& w) -> const std::string& {
    auto it = gold.variants.find(w);
    return it == gold.variants.end() ? w : it->second;
  };
  std::map<std::string, std::vector<std::string>> gold_groups;
  std::map<std::string, std::vector<std::string>> pred_groups;
  for (const std::string& w : universe) {
    gold_groups[gold_class(w)].push_back(w);
    pred_groups[predicted.apply(w)].push_back(w);
  }

  double precision = 0.0, recall = 0.0;
  for (const std::string& w : universe) {
    const auto& g = gold_groups.at(gold_class(w));
    const auto& p = pred_groups.at(predicted.apply(w));
    std::vector<std::string> inter;
    std::set_intersection(g.begin(), g.end(), p.begin(), p.end(),
                          std::back_inserter(inter));
    precision += static_cast<double>(inter.size()) / p.size();
    recall += static_cast<double>(inter.size()) / g.size();
  }
  report.precision = precision / universe.size();
  report.recall = recall / universe.size();
  report.f1 = (report.precision + report.recall) > 0.0
                  ? 2.0 * report.precision * report.recall /
                        (report.precision + report.recall)
                  : 0.0;

  double pure = 0.0;
  for (const auto& [label, members] : pred_groups) {
    std::map<std::string, std::size_t> overlap;
    std::size_t best = 0;
    for (const std::string& w : members)
      best = std::max(best, ++overlap[gold_class(w)]);
    pure += static_cast<double>(best);
  }
  report.purity = pure / universe.size();
  return report;
}

}  // namespace uclean
