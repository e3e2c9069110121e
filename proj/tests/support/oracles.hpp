/* Brute-force reference implementations the tests compare the library
 * against.  Deliberately naive and independent of the library code. */

#pragma once

#include <algorithm>
#include <set>
#include <vector>

namespace oracles {

/* Admissibility straight from the definition: first entry 0, every
 * prefix set contiguous on the n-cycle. */
inline bool admissible_by_definition(const std::vector<int>& seq) {
  int n = static_cast<int>(seq.size());
  if (n == 0 || seq[0] != 0) return false;
  std::set<int> got;
  for (int t = 0; t < n; ++t) {
    if (seq[t] < 0 || seq[t] >= n || !got.insert(seq[t]).second) return false;
    int gaps = 0;
    for (int p : got)
      if (!got.count((p + 1) % n)) ++gaps;
    int want = static_cast<int>(got.size()) == n ? 0 : 1;
    if (gaps != want) return false;
  }
  return true;
}

/* All reduced words of the permutation img (1-based one-line notation),
 * by peeling right descents.  Exponential; fine for S_4. */
inline void all_reduced_words(std::vector<int> img, std::vector<int>& cur,
                              std::vector<std::vector<int>>& out) {
  int n = static_cast<int>(img.size());
  bool descent = false;
  for (int k = 1; k < n; ++k) {
    if (img[k - 1] > img[k]) {
      descent = true;
      std::swap(img[k - 1], img[k]);
      cur.push_back(k);
      all_reduced_words(img, cur, out);
      cur.pop_back();
      std::swap(img[k - 1], img[k]);
    }
  }
  if (!descent) {
    std::vector<int> word(cur.rbegin(), cur.rend());
    out.push_back(std::move(word));
  }
}

inline std::vector<int> lex_min_word_by_search(const std::vector<int>& img) {
  std::vector<std::vector<int>> words;
  std::vector<int> cur;
  all_reduced_words(img, cur, words);
  return *std::min_element(words.begin(), words.end());
}

inline void count_tableaux_rec(const std::vector<int>& parts, std::vector<int>& fill,
                               int placed, int total, long long& count) {
  if (placed == total) {
    ++count;
    return;
  }
  for (std::size_t row = 0; row < parts.size(); ++row) {
    if (fill[row] >= parts[row]) continue;
    if (row > 0 && fill[row - 1] <= fill[row]) continue;
    ++fill[row];
    count_tableaux_rec(parts, fill, placed + 1, total, count);
    --fill[row];
  }
}

/* Standard Young tableaux of the given shape, counted by placing
 * 1..r cell by cell. */
inline long long count_standard_tableaux(const std::vector<int>& parts) {
  int total = 0;
  for (int p : parts) total += p;
  std::vector<int> fill(parts.size(), 0);
  long long count = 0;
  count_tableaux_rec(parts, fill, 0, total, count);
  return count;
}

/* All partitions of r, each weakly decreasing. */
inline void partitions_rec(int rest, int maxpart, std::vector<int>& cur,
                           std::vector<std::vector<int>>& out) {
  if (rest == 0) {
    out.push_back(cur);
    return;
  }
  for (int p = std::min(rest, maxpart); p >= 1; --p) {
    cur.push_back(p);
    partitions_rec(rest - p, p, cur, out);
    cur.pop_back();
  }
}

inline std::vector<std::vector<int>> partitions_of(int r) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  partitions_rec(r, r, cur, out);
  return out;
}

inline long long binom(int a, int b) {
  if (b < 0 || b > a) return 0;
  long long r = 1;
  for (int t = 1; t <= b; ++t) r = r * (a - b + t) / t;
  return r;
}

}  // namespace oracles
