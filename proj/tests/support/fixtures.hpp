// Apache License, Version 2.0, refer to LICENSE.txt

#pragma once

#include <string>
#include <vector>

#include "uclean/corpus.hpp"
#include "uclean/rng.hpp"
#include "uclean/simstring.hpp"
#include "uclean/unicode.hpp"

// Deterministic synthetic corpora shared by the unit and acceptance
// suites.

namespace fixtures {

// Pronounceable random words (consonant-vowel alternation) that are
// pairwise dissimilar under both BLCSR and edit similarity, so distinct
// clean words never land in each other's candidate sets.
inline std::vector<std::string> clean_vocabulary(std::size_t count,
                                                 uclean::Rng& rng) {
  static const char32_t consonants[] = {U'b', U'd', U'f', U'g', U'k', U'l',
                                        U'm', U'n', U'p', U'r', U's', U't',
                                        U'v', U'z'};
  static const char32_t vowels[] = {U'a', U'e', U'i', U'o', U'u'};
  std::vector<std::string> words;
  while (words.size() < count) {
    std::size_t len = 8 + rng.below(3);
    std::u32string w;
    for (std::size_t i = 0; i < len; ++i) {
      if (i % 2 == 0)
        w.push_back(consonants[rng.below(14)]);
      else
        w.push_back(vowels[rng.below(5)]);
    }
    std::string word = uclean::utf8_encode(w);
    bool ok = true;
    for (const std::string& prev : words) {
      if (uclean::blcsr(word, prev) > 0.5 ||
          uclean::edit_similarity(word, prev) > 0.6) {
        ok = false;
        break;
      }
    }
    if (ok) words.push_back(word);
  }
  return words;
}

// Short topic documents: vocabulary is split into topics of ten words;
// every document samples eight to ten of its topic's words without
// replacement, so two instances of one word never share a document.
inline std::vector<std::string> topic_documents(
    const std::vector<std::string>& vocabulary, std::size_t n_docs,
    std::uint64_t seed) {
  const std::size_t topic_size = 10;
  const std::size_t n_topics = vocabulary.size() / topic_size;
  uclean::Rng rng(uclean::derive_seed(seed, "topic-docs"));
  std::vector<std::string> docs;
  docs.reserve(n_docs);
  for (std::size_t d = 0; d < n_docs; ++d) {
    std::size_t topic = d % n_topics;
    std::vector<std::string> pool(
        vocabulary.begin() + topic * topic_size,
        vocabulary.begin() + (topic + 1) * topic_size);
    rng.shuffle(pool);
    std::size_t len = 8 + rng.below(3);
    std::string line;
    for (std::size_t i = 0; i < len; ++i) {
      if (i) line += ' ';
      line += pool[i];
    }
    docs.push_back(std::move(line));
  }
  return docs;
}

// The 2,000-document / 200-word corpus used by the end-to-end tests.
inline uclean::Corpus recovery_corpus(std::uint64_t seed) {
  uclean::Rng vocab_rng(uclean::derive_seed(seed, "vocab"));
  std::vector<std::string> vocab = clean_vocabulary(200, vocab_rng);
  return uclean::Corpus::build(topic_documents(vocab, 2000, seed));
}

// A corpus embedding the release-family variants in shared contexts.
// Context templates are identical across the family, so the trained
// embeddings put the variants close together.
inline uclean::Corpus release_family_corpus() {
  const std::vector<std::string> family = {"release", "released", "releases",
                                           "relea", "realease"};
  const std::vector<std::string> templates = {
      "the new album X went out on friday",
      "they X the update for all users today",
      "a press X about the merger was published",
      "fans waited for the X all week long",
      "the label will X two records this year",
      "an early X of the software broke things",
  };
  std::vector<std::string> docs;
  for (int round = 0; round < 40; ++round) {
    for (const std::string& word : family) {
      for (const std::string& tpl : templates) {
        std::string doc = tpl;
        doc.replace(doc.find('X'), 1, word);
        docs.push_back(doc);
      }
    }
  }
  // background documents so the filler words have stable vectors
  for (int i = 0; i < 100; ++i) {
    docs.push_back("the quick brown fox jumps over the lazy dog");
    docs.push_back("music industry news travels fast around here");
  }
  return uclean::Corpus::build(docs);
}

}  // namespace fixtures
