// Apache License, Version 2.0, refer to LICENSE.txt

#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "uclean/unicode.hpp"

namespace uclean {

struct TokenizeConfig {
  // When set, a leading '#' / '@' stays glued to the following word
  // instead of being stripped like other punctuation.
  bool keep_hash_prefix = false;
  bool keep_mention_prefix = false;
};

// Lowercase, split on whitespace and punctuation, keep word-internal
// apostrophes. Empty input yields an empty sequence.
inline std::vector<std::string> tokenize(std::string_view text,
                                         const TokenizeConfig& cfg = {}) {
  std::vector<std::string> tokens;
  std::u32string s = utf8_decode(text);
  std::u32string cur;
  auto is_word = [](char32_t c) {
    return !is_separator(c) && !is_apostrophe(c);
  };
  auto flush = [&]() {
    if (!cur.empty()) {
      tokens.push_back(utf8_encode(cur));
      cur.clear();
    }
  };
  for (std::size_t i = 0; i < s.size(); ++i) {
    char32_t c = s[i];
    bool next_is_word = i + 1 < s.size() && is_word(s[i + 1]);
    if (is_apostrophe(c)) {
      if (!cur.empty() && next_is_word) {
        cur.push_back(c);
      } else {
        flush();
      }
    } else if ((c == U'#' && cfg.keep_hash_prefix) ||
               (c == U'@' && cfg.keep_mention_prefix)) {
      if (cur.empty() && next_is_word) {
        cur.push_back(c);
      } else {
        flush();
      }
    } else if (is_word(c)) {
      cur.push_back(to_lower(c));
    } else {
      flush();
    }
  }
  flush();
  return tokens;
}

struct Document {
  int id = 0;
  std::vector<std::string> tokens;
};

// An immutable tokenized corpus with its frequency lexicon and per-word
// postings used for co-occurrence queries. Safe for concurrent reads.
class Corpus {
 public:
  Corpus() = default;

  static Corpus build(const std::vector<std::string>& raw_documents,
                      const TokenizeConfig& cfg = {}) {
    if (raw_documents.empty())
      throw std::invalid_argument("corpus: no documents given");
    std::vector<std::vector<std::string>> docs;
    docs.reserve(raw_documents.size());
    for (const std::string& raw : raw_documents)
      docs.push_back(tokenize(raw, cfg));
    return from_tokens(std::move(docs));
  }

  static Corpus from_tokens(std::vector<std::vector<std::string>> docs) {
    if (docs.empty()) throw std::invalid_argument("corpus: no documents given");
    Corpus c;
    c.docs_.reserve(docs.size());
    for (std::size_t d = 0; d < docs.size(); ++d) {
      Document doc;
      doc.id = static_cast<int>(d);
      doc.tokens = std::move(docs[d]);
      std::map<std::string, std::uint32_t> per_doc;
      for (const std::string& t : doc.tokens) {
        ++c.lexicon_[t];
        ++per_doc[t];
        ++c.token_count_;
      }
      for (const auto& [word, count] : per_doc)
        c.postings_[word].emplace_back(static_cast<std::uint32_t>(d), count);
      c.docs_.push_back(std::move(doc));
    }
    return c;
  }

  const std::vector<Document>& documents() const { return docs_; }
  std::size_t doc_count() const { return docs_.size(); }
  long long token_count() const { return token_count_; }
  const std::map<std::string, long long>& lexicon() const { return lexicon_; }

  bool contains(const std::string& w) const { return lexicon_.count(w) > 0; }

  long long frequency(const std::string& w) const {
    auto it = lexicon_.find(w);
    return it == lexicon_.end() ? 0 : it->second;
  }

  // Per-document co-occurrence (min of the two per-document counts),
  // averaged over all documents in the corpus.
  double cooccurrence(const std::string& w1, const std::string& w2) const {
    return cooccurrence_total(w1, w2) / static_cast<double>(docs_.size());
  }

  // Same contribution rule, summed instead of averaged.
  double cooccurrence_total(const std::string& w1,
                            const std::string& w2) const {
    const auto* p1 = find_postings(w1);
    const auto* p2 = find_postings(w2);
    double total = 0.0;
    std::size_t i = 0, j = 0;
    while (i < p1->size() && j < p2->size()) {
      if ((*p1)[i].first < (*p2)[j].first) {
        ++i;
      } else if ((*p1)[i].first > (*p2)[j].first) {
        ++j;
      } else {
        total += std::min((*p1)[i].second, (*p2)[j].second);
        ++i;
        ++j;
      }
    }
    return total;
  }

 private:
  const std::vector<std::pair<std::uint32_t, std::uint32_t>>* find_postings(
      const std::string& w) const {
    auto it = postings_.find(w);
    if (it == postings_.end())
      throw std::out_of_range("corpus: word not in lexicon: " + w);
    return &it->second;
  }

  std::vector<Document> docs_;
  std::map<std::string, long long> lexicon_;
  // word -> sorted (document id, in-document count)
  std::unordered_map<std::string,
                     std::vector<std::pair<std::uint32_t, std::uint32_t>>>
      postings_;
  long long token_count_ = 0;
};

// Materialized pair counts for a fixed word set, so graph construction
// does not re-merge postings per edge. Full |L|^2 is never built.
class CooccurrenceIndex {
 public:
  static CooccurrenceIndex build(const Corpus& corpus,
                                 const std::vector<std::string>& words,
                                 bool averaged) {
    CooccurrenceIndex idx;
    idx.doc_count_ = corpus.doc_count();
    std::unordered_map<std::string, int> member;
    for (const std::string& w : words)
      if (corpus.contains(w)) member.emplace(w, 0);
    for (const Document& doc : corpus.documents()) {
      std::map<std::string, std::uint32_t> counts;
      for (const std::string& t : doc.tokens)
        if (member.count(t)) ++counts[t];
      if (counts.size() < 2) continue;
      for (auto i = counts.begin(); i != counts.end(); ++i) {
        for (auto j = std::next(i); j != counts.end(); ++j) {
          idx.pairs_[key(i->first, j->first)] +=
              std::min(i->second, j->second);
        }
      }
    }
    if (averaged && idx.doc_count_ > 0) {
      for (auto& [k, v] : idx.pairs_) v /= static_cast<double>(idx.doc_count_);
    }
    return idx;
  }

  double at(const std::string& a, const std::string& b) const {
    auto it = pairs_.find(key(a, b));
    return it == pairs_.end() ? 0.0 : it->second;
  }

  std::size_t doc_count() const { return doc_count_; }

 private:
  static std::pair<std::string, std::string> key(const std::string& a,
                                                 const std::string& b) {
    return a <= b ? std::make_pair(a, b) : std::make_pair(b, a);
  }

  std::map<std::pair<std::string, std::string>, double> pairs_;
  std::size_t doc_count_ = 0;
};

}  // namespace uclean
