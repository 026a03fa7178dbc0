// Apache License, Version 2.0, refer to LICENSE.txt

#include <catch2/catch_amalgamated.hpp>

#include "uclean/simstring.hpp"
#include "uclean/rng.hpp"
#include "support/oracles.hpp"

using namespace uclean;

TEST_CASE("lcs_len basics") {
  CHECK(lcs_len("abcd", "acd") == 3);  // frozen from brute-force oracle
  CHECK(lcs_len("abc", "abc") == 3);
  CHECK(lcs_len("abc", "xyz") == 0);
  CHECK(lcs_len("", "abc") == 0);
}

TEST_CASE("blcs matches the worked bigram example") {
  CHECK(blcs("ABCD", "ACD") == 1);
  CHECK(blcs("abc", "abc") == 2);
  CHECK(blcs("ab", "cd") == 0);
  CHECK(blcs("a", "abc") == 0);  // no bigrams in a one-letter word
}

TEST_CASE("blcsr") {
  CHECK(blcsr("ABCD", "ACD") == Catch::Approx(1.0 / 3.0));
  CHECK(blcsr("abcd", "abcd") == 1.0);
  CHECK(blcsr("ab", "cd") == 0.0);
  SECTION("degenerate single-character denominators") {
    CHECK(blcsr("a", "a") == 1.0);
    CHECK(blcsr("a", "b") == 0.0);
    CHECK(blcsr("", "") == 1.0);
  }
}

TEST_CASE("lcsr") {
  CHECK(lcsr("abcd", "acd") == Catch::Approx(0.75));
  CHECK(lcsr("a", "a") == 1.0);
  CHECK(lcsr("a", "b") == 0.0);
  CHECK_THROWS_AS(lcsr("", "abc"), std::invalid_argument);
}

TEST_CASE("edit distance") {
  CHECK(edit_distance("w", "w") == 0);
  CHECK(edit_distance("release", "released") == 1);  // oracle-confirmed
  CHECK(edit_distance("kitten", "sitting") == 3);    // oracle-confirmed
  CHECK(edit_distance("", "abc") == 3);
}

TEST_CASE("edit similarity") {
  CHECK(edit_similarity("abc", "abc") == 1.0);
  CHECK(edit_similarity("abcd", "acd") == Catch::Approx(0.75));
  CHECK(edit_similarity("ab", "xy") == 0.0);
  CHECK(edit_similarity("", "") == 1.0);
}

TEST_CASE("diacritical symmetry and modified edit distance") {
  CHECK(diacritical_symmetry("cafe", "café") == 1);
  CHECK(diacritical_symmetry("abc", "abc") == 0);
  CHECK(diacritical_symmetry("abc", "xyz") == 0);
  CHECK(modified_edit_distance("café", "cafe") == 0.0);
  CHECK(modified_edit_distance("abc", "abc") == 0.0);
  CHECK(modified_edit_distance("abcd", "acd") == 1.0);
  CHECK(enelvo_lcsr("abcd", "acd") == Catch::Approx(0.75));
  // combining-mark spelling of e-acute behaves like the precomposed one
  CHECK(diacritical_symmetry("cafe", "café") == 1);
}

TEST_CASE("metrics operate on scalars, not bytes") {
  // Bengali: each letter is multi-byte; one substituted letter is one edit.
  CHECK(edit_distance("কাজ", "কাল") == 1);
  CHECK(lcs_len("café", "cafe") == 3);
}

TEST_CASE("DP implementations equal brute-force oracles up to length 8") {
  Rng rng(2024);
  for (int trial = 0; trial < 150; ++trial) {
    std::string a = oracle::random_word(rng, 8, trial % 2 == 1);
    std::string b = oracle::random_word(rng, 8, trial % 2 == 1);
    INFO("a=" << a << " b=" << b);
    CHECK(lcs_len(a, b) == oracle::lcs_brute(a, b));
    CHECK(blcs(a, b) == oracle::blcs_brute(a, b));
    CHECK(edit_distance(a, b) == oracle::edit_distance_brute(a, b));
  }
}

TEST_CASE("edit distance satisfies the metric axioms") {
  Rng rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    std::string a = oracle::random_word(rng, 6, false);
    std::string b = oracle::random_word(rng, 6, false);
    std::string c = oracle::random_word(rng, 6, false);
    INFO("a=" << a << " b=" << b << " c=" << c);
    CHECK((edit_distance(a, b) == 0) == (a == b));
    CHECK(edit_distance(a, b) == edit_distance(b, a));
    CHECK(edit_distance(a, c) <= edit_distance(a, b) + edit_distance(b, c));
  }
}

TEST_CASE("ratio metrics are symmetric and maximal exactly at identity") {
  Rng rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    std::string a = oracle::random_word(rng, 8, true);
    std::string b = oracle::random_word(rng, 8, true);
    INFO("a=" << a << " b=" << b);
    CHECK(blcsr(a, b) == blcsr(b, a));
    CHECK(edit_similarity(a, b) == edit_similarity(b, a));
    if (!a.empty() && !b.empty()) CHECK(lcsr(a, b) == lcsr(b, a));
    if (utf8_decode(a).size() >= 2) {
      if (a == b)
        CHECK(blcsr(a, b) == 1.0);
      else
        CHECK(blcsr(a, b) < 1.0);
    }
    CHECK((edit_similarity(a, b) == 1.0) == (a == b));
  }
}

TEST_CASE("MED never exceeds ED, equality without combining marks") {
  Rng rng(13);
  for (int trial = 0; trial < 200; ++trial) {
    bool marked = trial % 3 == 0;
    std::string a = oracle::random_word(rng, 8, marked);
    std::string b = oracle::random_word(rng, 8, marked);
    double med = modified_edit_distance(a, b);
    int ed = edit_distance(a, b);
    INFO("a=" << a << " b=" << b);
    CHECK(med >= 0.0);
    CHECK(med <= static_cast<double>(ed));
    if (!marked) CHECK(med == static_cast<double>(ed));
  }
}
