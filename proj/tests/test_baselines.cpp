// Apache License, Version 2.0, refer to LICENSE.txt

#include <catch2/catch_amalgamated.hpp>

#include "uclean/baselines.hpp"
#include "support/fixtures.hpp"

using namespace uclean;

namespace {

// Corpus whose lexicon contains the words the kNN structure needs;
// vectors are hand-built so the candidate lists are fully controlled.
// Frequencies: release 3, relate 2, relea/stray/word 1.
struct SridharFixture {
  Corpus corpus = Corpus::build(
      {"release relate relea", "release relate", "release stray word"});
  EmbeddingModel model = EmbeddingModel(
      {"release", "relate", "relea", "stray", "word"},
      {{1.0, 0.0, 0.0},
       {0.0, 1.0, 0.0},
       {0.7, 0.7, 0.0},  // close to both clean words
       {0.0, 0.0, 1.0},
       {0.0, 0.1, 0.9}});
};

}  // namespace

TEST_CASE("sridhar picks the lexically best clean word") {
  SridharFixture f;
  NormalizationMap map =
      sridhar_normalize(f.corpus, f.model, {"release", "relate"}, 25);
  // score(release) = LCSR(5/7)/ED(2) = 0.357 beats
  // score(relate) = LCSR(4/6)/ED(3) = 0.222   (oracle-confirmed values)
  CHECK(map.apply("relea") == "release");

  SECTION("noisy words outside every kNN list stay put") {
    CHECK(map.apply("stray") == "stray");
    CHECK(map.apply("word") == "word");
  }
}

TEST_CASE("sridhar with the whole lexicon clean is the identity") {
  SridharFixture f;
  NormalizationMap map = sridhar_normalize(
      f.corpus, f.model, {"release", "relate", "relea", "stray", "word"}, 25);
  CHECK(map.size() == 0);
}

TEST_CASE("sridhar rejects an empty clean lexicon") {
  SridharFixture f;
  CHECK_THROWS_AS(sridhar_normalize(f.corpus, f.model, {}, 25),
                  std::runtime_error);
}

TEST_CASE("sridhar prefers the closest clean word among several") {
  Corpus corpus = Corpus::build({"release releaze", "release releaze"});
  EmbeddingModel model({"release", "releaze", "releasing"},
                       {{1.0, 0.0}, {0.9, 0.1}, {0.8, 0.2}});
  NormalizationMap map =
      sridhar_normalize(corpus, model, {"release", "releasing"}, 25);
  // ED 1 against "release", ED 3 against "releasing"
  CHECK(map.apply("releaze") == "release");
}

TEST_CASE("enelvo scores mix lexical and contextual similarity") {
  // Clean rule at threshold 2 admits release and relate only.
  // Hand-evaluated for "relea":
  //   lexical(release) = enelvo_lcsr(5/7)/MED(2) = 0.35714...
  //   lexical(relate)  = enelvo_lcsr(4/6)/MED(3) = 0.22222...
  //   cos(relea, release) = cos(relea, relate) = 0.70711
  //   n = 0.8: score(release) = 0.8*0.35714 + 0.2*0.70711 = 0.42714
  //            score(relate)  = 0.8*0.22222 + 0.2*0.70711 = 0.31920
  SridharFixture f;
  NormalizationMap map = enelvo_normalize(f.corpus, f.model, 25, 0.8, 2);
  CHECK(map.apply("relea") == "release");
}

TEST_CASE("enelvo lexical similarity uses the MED guard") {
  // Diacritic-only difference: MED = 0, so the guard branch returns the
  // LCSR-with-credit value alone.
  CHECK(modified_edit_distance("cafe", "café") == 0.0);
  Corpus corpus = Corpus::build({"café cafe café cafe",
                                 "café men cafe", "men café"});
  EmbeddingModel model({"café", "cafe", "men"},
                       {{1.0, 0.0}, {0.95, 0.3122}, {0.0, 1.0}});
  // threshold 4 keeps only café (freq 4) clean; cafe (freq 3) is noisy
  NormalizationMap map = enelvo_normalize(corpus, model, 25, 0.8, 4);
  CHECK(map.apply("cafe") == "café");
}

TEST_CASE("enelvo near n=1 approaches the pure lexical ranking") {
  SridharFixture f;
  NormalizationMap near_lexical =
      enelvo_normalize(f.corpus, f.model, 25, 0.999, 2);
  CHECK(near_lexical.apply("relea") == "release");  // lexical winner
}

TEST_CASE("enelvo score is monotone in n toward the lexical component") {
  // For a fixed pair, d(score)/dn = lexical - cosine; evaluate the score
  // by hand at two n values and check the sign.
  auto score = [](double n, double lexical, double cosine) {
    return n * lexical + (1.0 - n) * cosine;
  };
  double lexical = enelvo_lcsr("relea", "release") /
                   modified_edit_distance("relea", "release");
  double cosine = 0.2;
  CHECK(score(0.9, lexical, cosine) - score(0.5, lexical, cosine) ==
        Catch::Approx(0.4 * (lexical - cosine)));
  CHECK(score(0.9, lexical, cosine) > score(0.5, lexical, cosine));
}

TEST_CASE("enelvo validates its inputs") {
  SridharFixture f;
  CHECK_THROWS_AS(enelvo_normalize(f.corpus, f.model, 25, 1.5, 2),
                  std::invalid_argument);
  CHECK_THROWS_WITH(enelvo_normalize(f.corpus, f.model, 25, 0.8, 1000),
                    Catch::Matchers::ContainsSubstring("threshold"));
}

TEST_CASE("kNN candidate structure is honored") {
  // every rewritten noisy word appears in some clean word's kNN list
  SridharFixture f;
  std::vector<std::string> clean = {"release", "relate"};
  for (int k : {1, 2, 25}) {
    NormalizationMap map = sridhar_normalize(f.corpus, f.model, clean, k);
    std::set<std::string> in_lists;
    std::set<std::string> clean_set(clean.begin(), clean.end());
    for (const std::string& wc : clean) {
      auto nn = f.model.knn(wc, 4 * k);
      std::size_t taken = 0;
      for (const auto& [w, cos] : nn) {
        if (clean_set.count(w) || !f.corpus.contains(w)) continue;
        if (taken++ < static_cast<std::size_t>(k)) in_lists.insert(w);
      }
    }
    for (const auto& [noisy, canonical] : map.rewrite())
      if (noisy != canonical) CHECK(in_lists.count(noisy) == 1);
  }
}

TEST_CASE("ghosh clusters co-occurring variants in long documents") {
  // Long documents repeat the variants together, so co-occurrence
  // counts carry the signal.
  std::vector<std::string> docs;
  for (int i = 0; i < 8; ++i) {
    docs.push_back(
        "program program1 programs program program1 programs program "
        "program1 programs other tokens entirely distinct");
    docs.push_back("program programs program1 program programs");
  }
  Corpus corpus = Corpus::build(docs);
  NormalizationMap map =
      ghosh_normalize(corpus, {"program"}, 0.6, 0.6, 5.0);
  CHECK(map.apply("program1") == "program");
  CHECK(map.apply("programs") == "program");
}

TEST_CASE("ghosh degrades to singletons when variants never co-occur") {
  // Microblog regime: short documents, one variant per document.
  std::vector<std::string> docs;
  for (int i = 0; i < 30; ++i) {
    docs.push_back("program runs fine");
    docs.push_back("programs run fine");
    docs.push_back("program1 crashed badly");
  }
  Corpus corpus = Corpus::build(docs);
  NormalizationMap map = ghosh_normalize(corpus, {"program"}, 0.6, 0.6, 50.0);
  // the documented failure mode: nothing gets clustered
  CHECK(map.apply("programs") == "programs");
  CHECK(map.apply("program1") == "program1");
  CHECK(map.size() == 0);
}

TEST_CASE("ghosh pruning guard keeps weak graphs intact") {
  std::vector<std::string> docs;
  for (int i = 0; i < 3; ++i)
    docs.push_back("program programs program1 filler");
  docs.push_back("program programs");
  docs.push_back("program programs");
  Corpus corpus = Corpus::build(docs);
  // Summed weights: (program,programs)=5, rest 3. Max 5 stays below
  // gamma=50, so the beta=0.9 cutoff (4.5) is never applied and the
  // weight-3 edges keep program1 attached.
  NormalizationMap with_guard =
      ghosh_normalize(corpus, {"program"}, 0.6, 0.9, 50.0);
  CHECK(with_guard.apply("program1") == "program");
  // with gamma below the max weight, the same run prunes program1 away
  NormalizationMap pruned =
      ghosh_normalize(corpus, {"program"}, 0.6, 0.9, 4.0);
  CHECK(pruned.apply("program1") == "program1");
}

TEST_CASE("ghosh segregation shrinks as alpha rises") {
  Corpus corpus = Corpus::build({"program programs program1 prog pro"});
  for (double alpha : {0.3, 0.5, 0.7, 0.9}) {
    std::size_t wide = 0, narrow = 0;
    for (const auto& [w, c] : corpus.lexicon()) {
      if (edit_similarity(w, "program") > alpha) ++wide;
      if (edit_similarity(w, "program") > alpha + 0.05) ++narrow;
    }
    CHECK(narrow <= wide);
  }
}

TEST_CASE("baseline maps satisfy the shared invariants") {
  SridharFixture f;
  std::vector<NormalizationMap> maps;
  maps.push_back(sridhar_normalize(f.corpus, f.model, {"release", "relate"}));
  maps.push_back(enelvo_normalize(f.corpus, f.model, 25, 0.8, 2));
  maps.push_back(ghosh_normalize(f.corpus, {"release"}, 0.5, 0.6, 50.0));
  for (const NormalizationMap& map : maps) {
    std::set<std::string> seen;
    for (const VariantCluster& c : map.clusters())
      for (const std::string& m : c.members) CHECK(seen.insert(m).second);
    for (const auto& [noisy, canonical] : map.rewrite()) {
      CHECK(map.apply(canonical) == canonical);
      CHECK(map.apply(map.apply(noisy)) == map.apply(noisy));
    }
  }
}

TEST_CASE("ghosh validates parameters") {
  SridharFixture f;
  CHECK_THROWS_AS(ghosh_normalize(f.corpus, {}, 0.7, 0.6, 50.0),
                  std::runtime_error);
  CHECK_THROWS_AS(ghosh_normalize(f.corpus, {"w"}, -0.1, 0.6, 50.0),
                  std::invalid_argument);
  CHECK_THROWS_AS(ghosh_normalize(f.corpus, {"w"}, 0.7, 1.2, 50.0),
                  std::invalid_argument);
  CHECK_THROWS_AS(ghosh_normalize(f.corpus, {"w"}, 0.7, 0.6, -3.0),
                  std::invalid_argument);
}
