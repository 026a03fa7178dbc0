// Apache License, Version 2.0, refer to LICENSE.txt

#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "uclean/unicode.hpp"

// Lexical similarity kernels. Every metric is defined over Unicode
// scalar sequences; byte-level comparison would miscount multi-byte
// scripts. All functions are pure and thread-safe.

namespace uclean {

namespace detail {

// Generic LCS length over two sequences, rolling single-row DP.
template <typename T>
int lcs_length(const std::vector<T>& a, const std::vector<T>& b) {
  if (a.empty() || b.empty()) return 0;
  std::vector<int> row(b.size() + 1, 0);
  for (std::size_t i = 1; i <= a.size(); ++i) {
    int diag = 0;  // row[j-1] from the previous iteration of i
    for (std::size_t j = 1; j <= b.size(); ++j) {
      int up = row[j];
      row[j] = (a[i - 1] == b[j - 1]) ? diag + 1 : std::max(row[j], row[j - 1]);
      diag = up;
    }
  }
  return row[b.size()];
}

inline std::vector<char32_t> scalars(std::string_view s) {
  std::u32string u = utf8_decode(s);
  return std::vector<char32_t>(u.begin(), u.end());
}

// Adjacent character bigrams, packed into one integer per bigram.
inline std::vector<std::uint64_t> bigrams(const std::vector<char32_t>& s) {
  std::vector<std::uint64_t> out;
  if (s.size() < 2) return out;
  out.reserve(s.size() - 1);
  for (std::size_t i = 0; i + 1 < s.size(); ++i) {
    out.push_back((static_cast<std::uint64_t>(s[i]) << 32) |
                  static_cast<std::uint64_t>(s[i + 1]));
  }
  return out;
}

inline int edit_distance_scalars(const std::vector<char32_t>& a,
                                 const std::vector<char32_t>& b) {
  if (a.empty()) return static_cast<int>(b.size());
  if (b.empty()) return static_cast<int>(a.size());
  std::vector<int> row(b.size() + 1);
  for (std::size_t j = 0; j <= b.size(); ++j) row[j] = static_cast<int>(j);
  for (std::size_t i = 1; i <= a.size(); ++i) {
    int diag = row[0];
    row[0] = static_cast<int>(i);
    for (std::size_t j = 1; j <= b.size(); ++j) {
      int up = row[j];
      int sub = diag + (a[i - 1] == b[j - 1] ? 0 : 1);
      row[j] = std::min({row[j] + 1, row[j - 1] + 1, sub});
      diag = up;
    }
  }
  return row[b.size()];
}

}  // namespace detail

inline int lcs_len(std::string_view a, std::string_view b) {
  return detail::lcs_length(detail::scalars(a), detail::scalars(b));
}

// LCS over the bigram sequences of both words. Words shorter than two
// characters have no bigrams and yield 0.
inline int blcs(std::string_view a, std::string_view b) {
  return detail::lcs_length(detail::bigrams(detail::scalars(a)),
                            detail::bigrams(detail::scalars(b)));
}

// BLCS(a,b) / (max length - 1). The denominator degenerates when the
// longer word has fewer than two characters; equality then scores 1.
inline double blcsr(std::string_view a, std::string_view b) {
  std::vector<char32_t> sa = detail::scalars(a);
  std::vector<char32_t> sb = detail::scalars(b);
  std::size_t maxlen = std::max(sa.size(), sb.size());
  if (maxlen < 2) return sa == sb ? 1.0 : 0.0;
  int bl = detail::lcs_length(detail::bigrams(sa), detail::bigrams(sb));
  return static_cast<double>(bl) / (static_cast<double>(maxlen) - 1.0);
}

inline double lcsr(std::string_view a, std::string_view b) {
  std::vector<char32_t> sa = detail::scalars(a);
  std::vector<char32_t> sb = detail::scalars(b);
  if (sa.empty() || sb.empty())
    throw std::invalid_argument("lcsr: empty word");
  return static_cast<double>(detail::lcs_length(sa, sb)) /
         static_cast<double>(std::max(sa.size(), sb.size()));
}

inline int edit_distance(std::string_view a, std::string_view b) {
  return detail::edit_distance_scalars(detail::scalars(a),
                                       detail::scalars(b));
}

// ES(a,b) = 1 - ED / max length; two empty words count as identical.
inline double edit_similarity(std::string_view a, std::string_view b) {
  std::vector<char32_t> sa = detail::scalars(a);
  std::vector<char32_t> sb = detail::scalars(b);
  std::size_t maxlen = std::max(sa.size(), sb.size());
  if (maxlen == 0) return 1.0;
  return 1.0 - static_cast<double>(detail::edit_distance_scalars(sa, sb)) /
                   static_cast<double>(maxlen);
}

// Edit-distance mass attributable to diacritics: how much closer the
// words become once combining marks and precomposed accents are removed.
inline int diacritical_symmetry(std::string_view a, std::string_view b) {
  std::u32string ua = utf8_decode(a);
  std::u32string ub = utf8_decode(b);
  std::u32string pa = strip_marks(ua);
  std::u32string pb = strip_marks(ub);
  std::vector<char32_t> sa(ua.begin(), ua.end());
  std::vector<char32_t> sb(ub.begin(), ub.end());
  std::vector<char32_t> ta(pa.begin(), pa.end());
  std::vector<char32_t> tb(pb.begin(), pb.end());
  int full = detail::edit_distance_scalars(sa, sb);
  int stripped = detail::edit_distance_scalars(ta, tb);
  return std::max(0, full - stripped);
}

// MED = ED - DS; nonnegative since DS never exceeds ED.
inline double modified_edit_distance(std::string_view a, std::string_view b) {
  return static_cast<double>(edit_distance(a, b) -
                             diacritical_symmetry(a, b));
}

// (LCS + DS) / max length, clamped to 1.
inline double enelvo_lcsr(std::string_view a, std::string_view b) {
  std::vector<char32_t> sa = detail::scalars(a);
  std::vector<char32_t> sb = detail::scalars(b);
  std::size_t maxlen = std::max(sa.size(), sb.size());
  if (maxlen == 0) return 1.0;
  double v = (detail::lcs_length(sa, sb) + diacritical_symmetry(a, b)) /
             static_cast<double>(maxlen);
  return std::min(v, 1.0);
}

}  // namespace uclean
