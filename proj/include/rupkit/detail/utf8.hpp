// Copyright 2026 The rupkit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//
// Minimal UTF-8 / Unicode utilities.  The toolkit works with Latin-script
// corpora (plus stray Greek/Cyrillic in noisy scans), so instead of pulling
// in ICU we carry exactly what the pipeline needs: codepoint iteration,
// letter classification and case mapping for the Latin blocks, a combining
// mark composition pass covering the Latin repertoire, and the Unicode
// whitespace set.
//
// Invalid UTF-8 bytes are passed through as single codepoints rather than
// rejected; the corpus readers operate on scans and OCR output and must not
// die mid-file.

#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <unordered_map>

namespace rupkit::detail {

// ---------------------------------------------------------------------------
// Encoding / decoding
// ---------------------------------------------------------------------------

// Decodes the codepoint starting at byte offset i and advances i past it.
// Truncated or invalid sequences yield the raw lead byte value and advance
// by one byte.
inline char32_t decode_utf8_at(std::string_view s, std::size_t& i) {
  const unsigned char b0 = static_cast<unsigned char>(s[i]);
  if (b0 < 0x80) {
    i += 1;
    return b0;
  }
  auto cont = [&](std::size_t k) {
    return k < s.size() && (static_cast<unsigned char>(s[k]) & 0xC0) == 0x80;
  };
  auto tail = [&](std::size_t k) {
    return static_cast<char32_t>(static_cast<unsigned char>(s[k]) & 0x3F);
  };
  if ((b0 & 0xE0) == 0xC0 && cont(i + 1)) {
    char32_t c = ((b0 & 0x1Fu) << 6) | tail(i + 1);
    i += 2;
    return c;
  }
  if ((b0 & 0xF0) == 0xE0 && cont(i + 1) && cont(i + 2)) {
    char32_t c = ((b0 & 0x0Fu) << 12) | (tail(i + 1) << 6) | tail(i + 2);
    i += 3;
    return c;
  }
  if ((b0 & 0xF8) == 0xF0 && cont(i + 1) && cont(i + 2) && cont(i + 3)) {
    char32_t c = ((b0 & 0x07u) << 18) | (tail(i + 1) << 12) |
                 (tail(i + 2) << 6) | tail(i + 3);
    i += 4;
    return c;
  }
  i += 1;
  return b0;
}

inline void append_utf8(std::string& out, char32_t c) {
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

inline std::u32string decode_utf8(std::string_view s) {
  std::u32string out;
  out.reserve(s.size());
  std::size_t i = 0;
  while (i < s.size()) out.push_back(decode_utf8_at(s, i));
  return out;
}

inline std::string encode_utf8(std::u32string_view s) {
  std::string out;
  out.reserve(s.size());
  for (char32_t c : s) append_utf8(out, c);
  return out;
}

// ---------------------------------------------------------------------------
// Classification
// ---------------------------------------------------------------------------

inline bool is_ascii_digit(char32_t c) { return c >= U'0' && c <= U'9'; }

// Unicode whitespace as Python's str.split() sees it.  Keeping the two
// tokenizers (ours and the reference metric tooling) in agreement on what a
// space is matters more than full property-table fidelity.
inline bool is_space(char32_t c) {
  switch (c) {
    case 0x20: case 0x85: case 0xA0: case 0x1680:
    case 0x2028: case 0x2029: case 0x202F: case 0x205F: case 0x3000:
      return true;
    default:
      return (c >= 0x09 && c <= 0x0D) || (c >= 0x1C && c <= 0x1F) ||
             (c >= 0x2000 && c <= 0x200A);
  }
}

inline bool is_combining_mark(char32_t c) { return c >= 0x300 && c <= 0x36F; }

// Letter test over the blocks that actually occur in the corpus: Basic
// Latin, Latin-1, Latin Extended-A/B, IPA extensions, spacing modifiers,
// Latin Extended Additional, Greek, Cyrillic.
inline bool is_letter(char32_t c) {
  if (c < 0x80) {
    const char32_t l = c | 0x20;
    return l >= U'a' && l <= U'z';
  }
  if (c >= 0xC0 && c <= 0x24F) return c != 0xD7 && c != 0xF7;
  if (c == 0xAA || c == 0xB5 || c == 0xBA) return true;
  if (c >= 0x250 && c <= 0x2C1) return true;
  if (c >= 0x370 && c <= 0x3FF) {
    switch (c) {
      case 0x375: case 0x378: case 0x379: case 0x37E: case 0x380:
      case 0x381: case 0x382: case 0x383: case 0x384: case 0x385:
      case 0x387: case 0x38B: case 0x38D: case 0x3A2:
        return false;
      default:
        return true;
    }
  }
  if (c >= 0x400 && c <= 0x4FF) return c < 0x482 || c > 0x489;
  if (c >= 0x1E00 && c <= 0x1EFF) return true;
  return false;
}

// ---------------------------------------------------------------------------
// Case mapping
// ---------------------------------------------------------------------------

inline char32_t to_lower(char32_t c) {
  if (c < 0x80) return (c >= U'A' && c <= U'Z') ? c + 0x20 : c;
  if (c >= 0xC0 && c <= 0xDE) return c == 0xD7 ? c : c + 0x20;
  if (c == 0x178) return 0xFF;
  if (c >= 0x100 && c <= 0x137) return (c & 1) ? c : c + 1;
  if (c >= 0x139 && c <= 0x148) return (c & 1) ? c + 1 : c;
  if (c >= 0x14A && c <= 0x177) return (c & 1) ? c : c + 1;
  if (c >= 0x179 && c <= 0x17E) return (c & 1) ? c + 1 : c;
  if (c >= 0x1CD && c <= 0x1DC) return (c & 1) ? c + 1 : c;
  if (c >= 0x1DE && c <= 0x1EF) return (c & 1) ? c : c + 1;
  if (c >= 0x1F8 && c <= 0x21F) return (c & 1) ? c : c + 1;
  if (c >= 0x222 && c <= 0x233) return (c & 1) ? c : c + 1;
  if ((c >= 0x1E00 && c <= 0x1E95) || (c >= 0x1EA0 && c <= 0x1EFF))
    return (c & 1) ? c : c + 1;
  if (c == 0x386) return 0x3AC;
  if (c >= 0x388 && c <= 0x38A) return c + 0x25;
  if (c == 0x38C) return 0x3CC;
  if (c == 0x38E || c == 0x38F) return c + 0x3F;
  if (c >= 0x391 && c <= 0x3A9 && c != 0x3A2) return c + 0x20;
  if (c >= 0x400 && c <= 0x40F) return c + 0x50;
  if (c >= 0x410 && c <= 0x42F) return c + 0x20;
  if (c >= 0x460 && c <= 0x481) return (c & 1) ? c : c + 1;
  if (c >= 0x48A && c <= 0x4BF) return (c & 1) ? c : c + 1;
  if (c >= 0x4C1 && c <= 0x4CE) return (c & 1) ? c + 1 : c;
  if (c >= 0x4D0 && c <= 0x4FF) return (c & 1) ? c : c + 1;
  return c;
}

inline char32_t to_upper(char32_t c) {
  if (c < 0x80) return (c >= U'a' && c <= U'z') ? c - 0x20 : c;
  if (c >= 0xE0 && c <= 0xFE) return c == 0xF7 ? c : c - 0x20;
  if (c == 0xFF) return 0x178;
  if (c >= 0x101 && c <= 0x138) return (c & 1) ? c - 1 : c;
  if (c >= 0x13A && c <= 0x149) return (c & 1) ? c : c - 1;
  if (c >= 0x14B && c <= 0x177) return (c & 1) ? c - 1 : c;
  if (c == 0x17F) return U'S';
  if (c >= 0x17A && c <= 0x17E) return (c & 1) ? c : c - 1;
  if (c >= 0x1CE && c <= 0x1DC) return (c & 1) ? c : c - 1;
  if (c >= 0x1DF && c <= 0x1EF) return (c & 1) ? c - 1 : c;
  if (c >= 0x1F9 && c <= 0x220) return (c & 1) ? c - 1 : c;
  if (c >= 0x223 && c <= 0x233) return (c & 1) ? c - 1 : c;
  if ((c >= 0x1E01 && c <= 0x1E95) || (c >= 0x1EA1 && c <= 0x1EFF))
    return (c & 1) ? c - 1 : c;
  if (c == 0x3AC) return 0x386;
  if (c >= 0x3AD && c <= 0x3AF) return c - 0x25;
  if (c == 0x3C2) return 0x3A3;
  if (c >= 0x3B1 && c <= 0x3C9 && c != 0x3C2) return c - 0x20;
  if (c == 0x3CC) return 0x38C;
  if (c == 0x3CD || c == 0x3CE) return c - 0x3F;
  if (c >= 0x430 && c <= 0x44F) return c - 0x20;
  if (c >= 0x450 && c <= 0x45F) return c - 0x50;
  if (c >= 0x461 && c <= 0x481) return (c & 1) ? c - 1 : c;
  if (c >= 0x48B && c <= 0x4BF) return (c & 1) ? c - 1 : c;
  if (c >= 0x4C2 && c <= 0x4CE) return (c & 1) ? c : c - 1;
  if (c >= 0x4D1 && c <= 0x4FF) return (c & 1) ? c - 1 : c;
  return c;
}

inline bool is_upper_letter(char32_t c) {
  return is_letter(c) && to_lower(c) != c;
}

inline bool is_lower_letter(char32_t c) {
  return is_letter(c) && to_upper(c) != c;
}

inline std::string to_lower_utf8(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  std::size_t i = 0;
  while (i < s.size()) {
    const unsigned char b = static_cast<unsigned char>(s[i]);
    if (b < 0x80) {
      out.push_back(static_cast<char>(
          (b >= 'A' && b <= 'Z') ? b + 0x20 : b));
      ++i;
    } else {
      append_utf8(out, to_lower(decode_utf8_at(s, i)));
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Composition (NFC over the Latin repertoire)
// ---------------------------------------------------------------------------

// (base << 32 | combining mark) -> precomposed codepoint.  Covers the pairs
// that occur in Romance-language text plus the usual European extras; pairs
// outside the table are left decomposed.
inline const std::unordered_map<std::uint64_t, char32_t>& composition_table() {
  static const auto* table = [] {
    auto* m = new std::unordered_map<std::uint64_t, char32_t>();
    auto put = [&](char32_t base, char32_t mark, char32_t composed) {
      (*m)[(static_cast<std::uint64_t>(base) << 32) | mark] = composed;
    };
    struct Row {
      char32_t mark;
      const char32_t* bases;    // upper/lower interleaved, 0-terminated pairs
      const char32_t* composed;
    };
    // Grave
    {
      static const char32_t b[] = {U'A', U'a', U'E', U'e', U'I', U'i',
                                   U'O', U'o', U'U', U'u', 0};
      static const char32_t k[] = {0xC0, 0xE0, 0xC8, 0xE8, 0xCC, 0xEC,
                                   0xD2, 0xF2, 0xD9, 0xF9};
      for (int i = 0; b[i]; ++i) put(b[i], 0x300, k[i]);
    }
    // Acute
    {
      static const char32_t b[] = {U'A', U'a', U'E', U'e', U'I', U'i', U'O',
                                   U'o', U'U', U'u', U'Y', U'y', U'C', U'c',
                                   U'L', U'l', U'N', U'n', U'R', U'r', U'S',
                                   U's', U'Z', U'z', 0};
      static const char32_t k[] = {0xC1,  0xE1,  0xC9,  0xE9,  0xCD,  0xED,
                                   0xD3,  0xF3,  0xDA,  0xFA,  0xDD,  0xFD,
                                   0x106, 0x107, 0x139, 0x13A, 0x143, 0x144,
                                   0x154, 0x155, 0x15A, 0x15B, 0x179, 0x17A};
      for (int i = 0; b[i]; ++i) put(b[i], 0x301, k[i]);
    }
    // Circumflex
    {
      static const char32_t b[] = {U'A', U'a', U'E', U'e', U'I', U'i', U'O',
                                   U'o', U'U', U'u', U'G', U'g', U'H', U'h',
                                   U'J', U'j', U'S', U's', U'W', U'w', U'Y',
                                   U'y', 0};
      static const char32_t k[] = {0xC2,  0xE2,  0xCA,  0xEA,  0xCE,  0xEE,
                                   0xD4,  0xF4,  0xDB,  0xFB,  0x11C, 0x11D,
                                   0x124, 0x125, 0x134, 0x135, 0x15C, 0x15D,
                                   0x174, 0x175, 0x176, 0x177};
      for (int i = 0; b[i]; ++i) put(b[i], 0x302, k[i]);
    }
    // Tilde
    {
      static const char32_t b[] = {U'A', U'a', U'N', U'n', U'O', U'o',
                                   U'I', U'i', U'U', U'u', 0};
      static const char32_t k[] = {0xC3,  0xE3,  0xD1,  0xF1,  0xD5,
                                   0xF5,  0x128, 0x129, 0x168, 0x169};
      for (int i = 0; b[i]; ++i) put(b[i], 0x303, k[i]);
    }
    // Macron
    {
      static const char32_t b[] = {U'A', U'a', U'E', U'e', U'I', U'i',
                                   U'O', U'o', U'U', U'u', 0};
      static const char32_t k[] = {0x100, 0x101, 0x112, 0x113, 0x12A,
                                   0x12B, 0x14C, 0x14D, 0x16A, 0x16B};
      for (int i = 0; b[i]; ++i) put(b[i], 0x304, k[i]);
    }
    // Breve
    {
      static const char32_t b[] = {U'A', U'a', U'E', U'e', U'G', U'g',
                                   U'I', U'i', U'O', U'o', U'U', U'u', 0};
      static const char32_t k[] = {0x102, 0x103, 0x114, 0x115, 0x11E, 0x11F,
                                   0x12C, 0x12D, 0x14E, 0x14F, 0x16C, 0x16D};
      for (int i = 0; b[i]; ++i) put(b[i], 0x306, k[i]);
    }
    // Dot above
    {
      static const char32_t b[] = {U'C', U'c', U'E', U'e', U'G', U'g',
                                   U'Z', U'z', U'I', 0};
      static const char32_t k[] = {0x10A, 0x10B, 0x116, 0x117, 0x120,
                                   0x121, 0x17B, 0x17C, 0x130};
      for (int i = 0; b[i]; ++i) put(b[i], 0x307, k[i]);
    }
    // Diaeresis
    {
      static const char32_t b[] = {U'A', U'a', U'E', U'e', U'I', U'i',
                                   U'O', U'o', U'U', U'u', U'Y', U'y', 0};
      static const char32_t k[] = {0xC4, 0xE4, 0xCB, 0xEB, 0xCF,  0xEF,
                                   0xD6, 0xF6, 0xDC, 0xFC, 0x178, 0xFF};
      for (int i = 0; b[i]; ++i) put(b[i], 0x308, k[i]);
    }
    // Ring above
    {
      static const char32_t b[] = {U'A', U'a', U'U', U'u', 0};
      static const char32_t k[] = {0xC5, 0xE5, 0x16E, 0x16F};
      for (int i = 0; b[i]; ++i) put(b[i], 0x30A, k[i]);
    }
    // Double acute
    {
      static const char32_t b[] = {U'O', U'o', U'U', U'u', 0};
      static const char32_t k[] = {0x150, 0x151, 0x170, 0x171};
      for (int i = 0; b[i]; ++i) put(b[i], 0x30B, k[i]);
    }
    // Caron
    {
      static const char32_t b[] = {U'C', U'c', U'D', U'd', U'E', U'e', U'L',
                                   U'l', U'N', U'n', U'R', U'r', U'S', U's',
                                   U'T', U't', U'Z', U'z', U'A', U'a', U'I',
                                   U'i', U'O', U'o', U'U', U'u', U'G', U'g',
                                   0};
      static const char32_t k[] = {0x10C, 0x10D, 0x10E, 0x10F, 0x11A, 0x11B,
                                   0x13D, 0x13E, 0x147, 0x148, 0x158, 0x159,
                                   0x160, 0x161, 0x164, 0x165, 0x17D, 0x17E,
                                   0x1CD, 0x1CE, 0x1CF, 0x1D0, 0x1D1, 0x1D2,
                                   0x1D3, 0x1D4, 0x1E6, 0x1E7};
      for (int i = 0; b[i]; ++i) put(b[i], 0x30C, k[i]);
    }
    // Comma below
    {
      static const char32_t b[] = {U'S', U's', U'T', U't', 0};
      static const char32_t k[] = {0x218, 0x219, 0x21A, 0x21B};
      for (int i = 0; b[i]; ++i) put(b[i], 0x326, k[i]);
    }
    // Cedilla
    {
      static const char32_t b[] = {U'C', U'c', U'G', U'g', U'K', U'k',
                                   U'L', U'l', U'N', U'n', U'R', U'r',
                                   U'S', U's', U'T', U't', 0};
      static const char32_t k[] = {0xC7,  0xE7,  0x122, 0x123, 0x136, 0x137,
                                   0x13B, 0x13C, 0x145, 0x146, 0x156, 0x157,
                                   0x15E, 0x15F, 0x162, 0x163};
      for (int i = 0; b[i]; ++i) put(b[i], 0x327, k[i]);
    }
    // Ogonek
    {
      static const char32_t b[] = {U'A', U'a', U'E', U'e',
                                   U'I', U'i', U'U', U'u', 0};
      static const char32_t k[] = {0x104, 0x105, 0x118, 0x119,
                                   0x12E, 0x12F, 0x172, 0x173};
      for (int i = 0; b[i]; ++i) put(b[i], 0x328, k[i]);
    }
    return m;
  }();
  return *table;
}

// Composes base + combining mark sequences into precomposed codepoints where
// the table allows.  Marks with no composition stay in place, so the pass is
// idempotent and total.
inline std::u32string nfc_compose(std::u32string_view s) {
  std::u32string out;
  out.reserve(s.size());
  const auto& table = composition_table();
  std::size_t i = 0;
  while (i < s.size()) {
    char32_t base = s[i++];
    while (i < s.size() && is_combining_mark(s[i])) {
      const auto it =
          table.find((static_cast<std::uint64_t>(base) << 32) | s[i]);
      if (it == table.end()) break;
      base = it->second;
      ++i;
    }
    out.push_back(base);
    // Flush marks that did not compose so nothing is dropped.
    while (i < s.size() && is_combining_mark(s[i])) out.push_back(s[i++]);
  }
  return out;
}

inline std::string nfc_compose_utf8(std::string_view s) {
  // Fast path: pure ASCII composes to itself.
  bool ascii = true;
  for (char ch : s) {
    if (static_cast<unsigned char>(ch) >= 0x80) {
      ascii = false;
      break;
    }
  }
  if (ascii) return std::string(s);
  return encode_utf8(nfc_compose(decode_utf8(s)));
}

}  // namespace rupkit::detail
