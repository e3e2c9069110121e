#include "klr/perm.hpp"

#include <algorithm>
#include <numeric>

namespace klr {

Permutation Permutation::identity(int n) {
  std::vector<int> img(n);
  std::iota(img.begin(), img.end(), 1);
  return Permutation(std::move(img));
}

Permutation Permutation::transposition(int n, int k) {
  return identity(n).times_transposition(k);
}

Permutation Permutation::from_word(int n, const std::vector<int>& word) {
  Permutation w = identity(n);
  for (int k : word) w = w.times_transposition(k);
  return w;
}

Permutation::Permutation(std::vector<int> img) : img_(std::move(img)) {
  int n = static_cast<int>(img_.size());
  if (n < 1 || n > 16) throw invalid_parameter("permutation rank out of range");
  std::vector<bool> seen(n + 1, false);
  for (int v : img_) {
    if (v < 1 || v > n || seen[v])
      throw invalid_input("not a permutation of 1.." + std::to_string(n));
    seen[v] = true;
  }
}

bool Permutation::is_identity() const {
  for (int t = 1; t <= n(); ++t)
    if (img_[t - 1] != t) return false;
  return true;
}

Permutation Permutation::inverse() const {
  std::vector<int> inv(n());
  for (int t = 1; t <= n(); ++t) inv[img_[t - 1] - 1] = t;
  return Permutation(std::move(inv));
}

Permutation Permutation::operator*(const Permutation& v) const {
  if (n() != v.n()) throw invalid_input("rank mismatch in permutation product");
  std::vector<int> img(n());
  for (int t = 1; t <= n(); ++t) img[t - 1] = img_[v.img_[t - 1] - 1];
  return Permutation(std::move(img));
}

Permutation Permutation::times_transposition(int k) const {
  if (k < 1 || k >= n()) throw invalid_parameter("transposition index out of range");
  Permutation out(*this);
  std::swap(out.img_[k - 1], out.img_[k]);
  return out;
}

int Permutation::length() const {
  int inv = 0;
  for (int a = 0; a < n(); ++a)
    for (int b = a + 1; b < n(); ++b)
      if (img_[a] > img_[b]) ++inv;
  return inv;
}

std::vector<int> Permutation::lex_min_reduced_word() const {
  /* Peel off the smallest left descent each round: k is one when the value
     k appears to the right of k+1.  Left-multiplying by s_k exchanges the
     values k and k+1 in the one-line form. */
  std::vector<int> word;
  std::vector<int> img = img_;
  std::vector<int> pos(n() + 1);
  for (int t = 1; t <= n(); ++t) pos[img[t - 1]] = t;
  for (;;) {
    int k = 0;
    for (int c = 1; c < n(); ++c)
      if (pos[c] > pos[c + 1]) { k = c; break; }
    if (k == 0) break;
    word.push_back(k);
    std::swap(img[pos[k] - 1], img[pos[k + 1] - 1]);
    std::swap(pos[k], pos[k + 1]);
  }
  return word;
}

ResidueSeq Permutation::act(const ResidueSeq& i) const {
  if (i.n() != n()) throw invalid_input("rank mismatch in permutation action");
  std::vector<int> out(n());
  for (int t = 1; t <= n(); ++t) out[img_[t - 1] - 1] = i.entry(t);
  return ResidueSeq(std::move(out));
}

ResidueSeq Permutation::act_inverse(const ResidueSeq& i) const {
  if (i.n() != n()) throw invalid_input("rank mismatch in permutation action");
  std::vector<int> out(n());
  for (int t = 1; t <= n(); ++t) out[t - 1] = i.entry(img_[t - 1]);
  return ResidueSeq(std::move(out));
}

std::uint64_t Permutation::pack() const {
  std::uint64_t code = 0;
  for (int v : img_) code = (code << 4) | static_cast<std::uint64_t>(v - 1);
  return code;
}

std::string Permutation::to_string() const {
  std::string s = "[";
  for (int t = 1; t <= n(); ++t) {
    if (t > 1) s += ",";
    s += std::to_string(img_[t - 1]);
  }
  return s + "]";
}

}  // namespace klr
