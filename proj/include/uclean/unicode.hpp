// Apache License, Version 2.0, refer to LICENSE.txt

#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <string>
#include <string_view>

// Minimal Unicode support: UTF-8 transcoding, case folding for Latin
// ranges, combining-mark stripping, and character classes used by the
// tokenizer. All metrics in this library operate on Unicode scalar
// values, never on raw bytes.

namespace uclean {

inline void utf8_append(std::string& out, char32_t c) {
  if (c < 0x80) {
    out.push_back(static_cast<char>(c));
  } else if (c < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (c >> 6)));
    out.push_back(static_cast<char>(0x80 | (c & 0x3F)));
  } else if (c < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (c >> 12)));
    out.push_back(static_cast<char>(0x80 | ((c >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (c & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (c >> 18)));
    out.push_back(static_cast<char>(0x80 | ((c >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((c >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (c & 0x3F)));
  }
}

inline std::string utf8_encode(const std::u32string& s) {
  std::string out;
  out.reserve(s.size());
  for (char32_t c : s) utf8_append(out, c);
  return out;
}

// Lenient decoder: malformed byte sequences become U+FFFD.
inline std::u32string utf8_decode(std::string_view s) {
  std::u32string out;
  out.reserve(s.size());
  std::size_t i = 0;
  while (i < s.size()) {
    unsigned char b0 = static_cast<unsigned char>(s[i]);
    char32_t c = 0xFFFD;
    std::size_t len = 1;
    if (b0 < 0x80) {
      c = b0;
    } else if ((b0 >> 5) == 0x6) {
      len = 2;
      c = b0 & 0x1F;
    } else if ((b0 >> 4) == 0xE) {
      len = 3;
      c = b0 & 0x0F;
    } else if ((b0 >> 3) == 0x1E) {
      len = 4;
      c = b0 & 0x07;
    } else {
      out.push_back(0xFFFD);
      ++i;
      continue;
    }
    if (i + len > s.size()) {
      out.push_back(0xFFFD);
      break;
    }
    bool ok = true;
    for (std::size_t k = 1; k < len; ++k) {
      unsigned char bk = static_cast<unsigned char>(s[i + k]);
      if ((bk >> 6) != 0x2) {
        ok = false;
        break;
      }
      c = (c << 6) | (bk & 0x3F);
    }
    if (!ok || (len == 2 && c < 0x80) || (len == 3 && c < 0x800) ||
        (len == 4 && c < 0x10000) || c > 0x10FFFF) {
      out.push_back(0xFFFD);
      ++i;
      continue;
    }
    out.push_back(c);
    i += len;
  }
  return out;
}

// Case folding for ASCII, Latin-1 Supplement and Latin Extended-A.
// Other scripts (Bengali has no case) pass through unchanged.
inline char32_t to_lower(char32_t c) {
  if (c >= U'A' && c <= U'Z') return c + 0x20;
  if (c >= 0xC0 && c <= 0xDE && c != 0xD7) return c + 0x20;
  if (c == 0x130) return U'i';  // dotted capital I
  if (c == 0x178) return 0xFF;  // Y with diaeresis
  if (c >= 0x100 && c <= 0x137) return (c % 2 == 0) ? c + 1 : c;
  if (c >= 0x139 && c <= 0x148) return (c % 2 == 1) ? c + 1 : c;
  if (c >= 0x14A && c <= 0x177) return (c % 2 == 0) ? c + 1 : c;
  if (c >= 0x179 && c <= 0x17E) return (c % 2 == 1) ? c + 1 : c;
  return c;
}

inline std::u32string to_lower(std::u32string s) {
  for (char32_t& c : s) c = to_lower(c);
  return s;
}

inline bool is_combining_mark(char32_t c) {
  return (c >= 0x0300 && c <= 0x036F) || (c >= 0x0483 && c <= 0x0489) ||
         (c >= 0x1AB0 && c <= 0x1AFF) || (c >= 0x1DC0 && c <= 0x1DFF) ||
         (c >= 0x20D0 && c <= 0x20FF) || (c >= 0xFE20 && c <= 0xFE2F);
}

namespace detail {

struct BasePair {
  char32_t cp;
  char32_t base;
};

// Precomposed Latin letters with a canonical base + combining-mark
// decomposition (Latin-1 Supplement and Latin Extended-A).
inline constexpr std::array<BasePair, 161> kLatinBase = {{
    {0xC0, U'A'},  {0xC1, U'A'},  {0xC2, U'A'},  {0xC3, U'A'},  {0xC4, U'A'},
    {0xC5, U'A'},  {0xC7, U'C'},  {0xC8, U'E'},  {0xC9, U'E'},  {0xCA, U'E'},
    {0xCB, U'E'},  {0xCC, U'I'},  {0xCD, U'I'},  {0xCE, U'I'},  {0xCF, U'I'},
    {0xD1, U'N'},  {0xD2, U'O'},  {0xD3, U'O'},  {0xD4, U'O'},  {0xD5, U'O'},
    {0xD6, U'O'},  {0xD9, U'U'},  {0xDA, U'U'},  {0xDB, U'U'},  {0xDC, U'U'},
    {0xDD, U'Y'},  {0xE0, U'a'},  {0xE1, U'a'},  {0xE2, U'a'},  {0xE3, U'a'},
    {0xE4, U'a'},  {0xE5, U'a'},  {0xE7, U'c'},  {0xE8, U'e'},  {0xE9, U'e'},
    {0xEA, U'e'},  {0xEB, U'e'},  {0xEC, U'i'},  {0xED, U'i'},  {0xEE, U'i'},
    {0xEF, U'i'},  {0xF1, U'n'},  {0xF2, U'o'},  {0xF3, U'o'},  {0xF4, U'o'},
    {0xF5, U'o'},  {0xF6, U'o'},  {0xF9, U'u'},  {0xFA, U'u'},  {0xFB, U'u'},
    {0xFC, U'u'},  {0xFD, U'y'},  {0xFF, U'y'},  {0x100, U'A'}, {0x101, U'a'},
    {0x102, U'A'}, {0x103, U'a'}, {0x104, U'A'}, {0x105, U'a'}, {0x106, U'C'},
    {0x107, U'c'}, {0x108, U'C'}, {0x109, U'c'}, {0x10A, U'C'}, {0x10B, U'c'},
    {0x10C, U'C'}, {0x10D, U'c'}, {0x10E, U'D'}, {0x10F, U'd'}, {0x112, U'E'},
    {0x113, U'e'}, {0x114, U'E'}, {0x115, U'e'}, {0x116, U'E'}, {0x117, U'e'},
    {0x118, U'E'}, {0x119, U'e'}, {0x11A, U'E'}, {0x11B, U'e'}, {0x11C, U'G'},
    {0x11D, U'g'}, {0x11E, U'G'}, {0x11F, U'g'}, {0x120, U'G'}, {0x121, U'g'},
    {0x122, U'G'}, {0x123, U'g'}, {0x124, U'H'}, {0x125, U'h'}, {0x128, U'I'},
    {0x129, U'i'}, {0x12A, U'I'}, {0x12B, U'i'}, {0x12C, U'I'}, {0x12D, U'i'},
    {0x12E, U'I'}, {0x12F, U'i'}, {0x130, U'I'}, {0x134, U'J'}, {0x135, U'j'},
    {0x136, U'K'}, {0x137, U'k'}, {0x139, U'L'}, {0x13A, U'l'}, {0x13B, U'L'},
    {0x13C, U'l'}, {0x13D, U'L'}, {0x13E, U'l'}, {0x143, U'N'}, {0x144, U'n'},
    {0x145, U'N'}, {0x146, U'n'}, {0x147, U'N'}, {0x148, U'n'}, {0x14C, U'O'},
    {0x14D, U'o'}, {0x14E, U'O'}, {0x14F, U'o'}, {0x150, U'O'}, {0x151, U'o'},
    {0x154, U'R'}, {0x155, U'r'}, {0x156, U'R'}, {0x157, U'r'}, {0x158, U'R'},
    {0x159, U'r'}, {0x15A, U'S'}, {0x15B, U's'}, {0x15C, U'S'}, {0x15D, U's'},
    {0x15E, U'S'}, {0x15F, U's'}, {0x160, U'S'}, {0x161, U's'}, {0x162, U'T'},
    {0x163, U't'}, {0x164, U'T'}, {0x165, U't'}, {0x168, U'U'}, {0x169, U'u'},
    {0x16A, U'U'}, {0x16B, U'u'}, {0x16C, U'U'}, {0x16D, U'u'}, {0x16E, U'U'},
    {0x16F, U'u'}, {0x170, U'U'}, {0x171, U'u'}, {0x172, U'U'}, {0x173, U'u'},
    {0x174, U'W'}, {0x175, U'w'}, {0x176, U'Y'}, {0x177, U'y'}, {0x178, U'Y'},
    {0x179, U'Z'}, {0x17A, U'z'}, {0x17B, U'Z'}, {0x17C, U'z'}, {0x17D, U'Z'},
    {0x17E, U'z'},
}};

}  // namespace detail

// Base letter of a precomposed Latin character; identity elsewhere.
inline char32_t base_letter(char32_t c) {
  if (c < 0xC0 || c > 0x17E) return c;
  auto cmp = [](const detail::BasePair& p, char32_t v) { return p.cp < v; };
  auto it = std::lower_bound(detail::kLatinBase.begin(),
                             detail::kLatinBase.end(), c, cmp);
  if (it != detail::kLatinBase.end() && it->cp == c) return it->base;
  return c;
}

// Canonical-ish decomposition followed by combining-mark removal.
inline std::u32string strip_marks(const std::u32string& s) {
  std::u32string out;
  out.reserve(s.size());
  for (char32_t c : s) {
    if (is_combining_mark(c)) continue;
    out.push_back(base_letter(c));
  }
  return out;
}

inline bool is_apostrophe(char32_t c) { return c == 0x27 || c == 0x2019; }

// Separators for tokenization: whitespace, controls, and common
// punctuation blocks. Everything else counts as a word character, so
// letters of all scripts, digits and combining marks stay inside tokens.
inline bool is_separator(char32_t c) {
  if (c <= 0x20 || c == 0x7F) return true;
  if (c >= 0x21 && c <= 0x7E) {
    return (c >= 0x21 && c <= 0x2F) || (c >= 0x3A && c <= 0x40) ||
           (c >= 0x5B && c <= 0x60) || (c >= 0x7B && c <= 0x7E);
  }
  if (c == 0x85 || c == 0xA0) return true;
  if (c >= 0xA1 && c <= 0xBF) return true;  // inverted marks, guillemets
  if (c == 0xD7 || c == 0xF7) return true;
  if (c == 0x964 || c == 0x965) return true;  // danda, double danda
  if (c == 0x1680 || (c >= 0x2000 && c <= 0x200B)) return true;
  if (c >= 0x2010 && c <= 0x2027) return true;
  if (c >= 0x2028 && c <= 0x205E) return true;
  if (c == 0x3000 || (c >= 0x3001 && c <= 0x303F)) return true;
  if (c >= 0xFF01 && c <= 0xFF0F) return true;
  if ((c >= 0xFF1A && c <= 0xFF20) || (c >= 0xFF3B && c <= 0xFF40)) return true;
  if (c >= 0xFF5B && c <= 0xFF65) return true;
  if (c == 0xFEFF) return true;
  return false;
}

}  // namespace uclean
