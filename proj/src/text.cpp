// Copyright (c) 2026 The docpair Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "docpair/text.hpp"

#include <algorithm>
#include <cstdint>
#include <limits>

namespace docpair {

std::u32string utf8_decode(std::string_view text) {
  std::u32string out;
  out.reserve(text.size());
  std::size_t i = 0;
  const std::size_t n = text.size();
  while (i < n) {
    const auto c = static_cast<unsigned char>(text[i]);
    if (c < 0x80) {
      out.push_back(c);
      ++i;
      continue;
    }
    int extra = 0;
    char32_t cp = 0;
    if ((c & 0xE0) == 0xC0) {
      extra = 1;
      cp = c & 0x1F;
    } else if ((c & 0xF0) == 0xE0) {
      extra = 2;
      cp = c & 0x0F;
    } else if ((c & 0xF8) == 0xF0) {
      extra = 3;
      cp = c & 0x07;
    } else {
      out.push_back(0xFFFD);
      ++i;
      continue;
    }
    bool ok = true;
    for (int k = 1; k <= extra; ++k) {
      if (i + k >= n) {
        ok = false;
        break;
      }
      const auto cc = static_cast<unsigned char>(text[i + k]);
      if ((cc & 0xC0) != 0x80) {
        ok = false;
        break;
      }
      cp = (cp << 6) | (cc & 0x3F);
    }
    if (!ok) {
      out.push_back(0xFFFD);
      ++i;
      continue;
    }
    out.push_back(cp);
    i += extra + 1;
  }
  return out;
}

void utf8_append(std::string& out, char32_t cp) {
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x110000) {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    utf8_append(out, 0xFFFD);
  }
}

std::string utf8_encode(std::u32string_view text) {
  std::string out;
  out.reserve(text.size());
  for (char32_t cp : text) utf8_append(out, cp);
  return out;
}

namespace {
bool is_space(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' ||
         c == '\v';
}
}  // namespace

std::string normalize_whitespace(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  bool pending_space = false;
  for (char c : text) {
    if (is_space(c)) {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) out.push_back(' ');
    pending_space = false;
    out.push_back(c);
  }
  return out;
}

std::vector<std::string> split_whitespace(std::string_view text) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && is_space(text[i])) ++i;
    std::size_t j = i;
    while (j < text.size() && !is_space(text[j])) ++j;
    if (j > i) out.emplace_back(text.substr(i, j - i));
    i = j;
  }
  return out;
}

std::size_t levenshtein(std::u32string_view a, std::u32string_view b) {
  if (a.size() < b.size()) std::swap(a, b);
  std::vector<std::size_t> row(b.size() + 1);
  for (std::size_t j = 0; j <= b.size(); ++j) row[j] = j;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    std::size_t diag = row[0];
    row[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      const std::size_t up = row[j];
      const std::size_t sub = diag + (a[i - 1] == b[j - 1] ? 0 : 1);
      row[j] = std::min({up + 1, row[j - 1] + 1, sub});
      diag = up;
    }
  }
  return row[b.size()];
}

double normalized_levenshtein(std::u32string_view a, std::u32string_view b) {
  const std::size_t longest = std::max(a.size(), b.size());
  if (longest == 0) return 0.0;
  return static_cast<double>(levenshtein(a, b)) /
         static_cast<double>(longest);
}

std::optional<FuzzyMatch> fuzzy_find(std::u32string_view haystack,
                                     std::u32string_view pattern,
                                     std::size_t max_distance,
                                     MatchAnchor anchor, std::size_t target) {
  const std::size_t m = pattern.size();
  if (m == 0) return std::nullopt;

  // Column DP over the haystack with a free starting point; start[i]
  // remembers where the alignment ending in cell i began.
  std::vector<std::size_t> dist(m + 1), next_dist(m + 1);
  std::vector<std::size_t> start(m + 1), next_start(m + 1);
  for (std::size_t i = 0; i <= m; ++i) {
    dist[i] = i;
    start[i] = 0;
  }

  std::optional<FuzzyMatch> best;
  auto offer = [&](std::size_t begin, std::size_t end, std::size_t d) {
    if (d > max_distance) return;
    const FuzzyMatch cand{begin, end, d};
    if (!best) {
      best = cand;
      return;
    }
    if (cand.distance != best->distance) {
      if (cand.distance < best->distance) best = cand;
      return;
    }
    auto gap = [&](const FuzzyMatch& f) {
      const std::size_t pos = anchor == MatchAnchor::kBegin ? f.begin : f.end;
      return pos > target ? pos - target : target - pos;
    };
    const std::size_t g_new = gap(cand), g_old = gap(*best);
    if (g_new < g_old || (g_new == g_old && cand.begin < best->begin))
      best = cand;
  };

  offer(0, 0, dist[m]);
  for (std::size_t j = 1; j <= haystack.size(); ++j) {
    next_dist[0] = 0;
    next_start[0] = j;
    for (std::size_t i = 1; i <= m; ++i) {
      const std::size_t sub =
          dist[i - 1] + (pattern[i - 1] == haystack[j - 1] ? 0 : 1);
      const std::size_t del = dist[i] + 1;           // skip haystack char
      const std::size_t ins = next_dist[i - 1] + 1;  // skip pattern char
      if (sub <= del && sub <= ins) {
        next_dist[i] = sub;
        next_start[i] = start[i - 1];
      } else if (del <= ins) {
        next_dist[i] = del;
        next_start[i] = start[i];
      } else {
        next_dist[i] = ins;
        next_start[i] = next_start[i - 1];
      }
    }
    std::swap(dist, next_dist);
    std::swap(start, next_start);
    offer(start[m], j, dist[m]);
  }
  return best;
}

}  // namespace docpair
