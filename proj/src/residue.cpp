#include "klr/residue.hpp"

#include <algorithm>

namespace klr {

ResidueSeq::ResidueSeq(std::vector<int> entries) : v_(std::move(entries)) {
  int n = static_cast<int>(v_.size());
  if (n < 2 || n > 16)
    throw invalid_parameter("residue sequence length must be in [2, 16]");
  std::vector<bool> seen(n, false);
  for (int r : v_) {
    if (r < 0 || r >= n || seen[r])
      throw invalid_input("entries must form a permutation of 0.." +
                          std::to_string(n - 1));
    seen[r] = true;
  }
}

int ResidueSeq::entry(int k) const {
  if (k < 1 || k > n()) throw invalid_parameter("position out of range");
  return v_[k - 1];
}

ResidueSeq ResidueSeq::swapped(int k) const {
  if (k < 1 || k >= n()) throw invalid_parameter("swap position out of range");
  ResidueSeq out(*this);
  std::swap(out.v_[k - 1], out.v_[k]);
  return out;
}

std::uint64_t ResidueSeq::pack() const {
  std::uint64_t code = 0;
  for (int r : v_) code = (code << 4) | static_cast<std::uint64_t>(r);
  return code;
}

std::string ResidueSeq::to_string() const {
  std::string s = "(";
  for (int k = 0; k < n(); ++k) {
    if (k) s += ",";
    s += std::to_string(v_[k]);
  }
  return s + ")";
}

bool is_admissible(const ResidueSeq& i) {
  int n = i.n();
  if (i.entry(1) != 0) return false;
  /* Track the prefix arc by its two ends; the prefix {0} has both at 0. */
  int lo = 0, hi = 0;
  for (int k = 2; k <= n - 1; ++k) {
    int r = i.entry(k);
    if (r == (lo + n - 1) % n) {
      lo = r;
    } else if (r == (hi + 1) % n) {
      hi = r;
    } else {
      return false;
    }
  }
  /* The final entry is the unique residue completing the cycle. */
  return true;
}

namespace {

/* First `upto` entries grow an arc endwise from 0?  Only used to report
   the failing position in diagnostics. */
bool prefix_ok(const ResidueSeq& i, int upto) {
  int n = i.n();
  if (i.entry(1) != 0) return false;
  int lo = 0, hi = 0;
  for (int k = 2; k <= std::min(upto, n - 1); ++k) {
    int r = i.entry(k);
    if (r == (lo + n - 1) % n)
      lo = r;
    else if (r == (hi + 1) % n)
      hi = r;
    else
      return false;
  }
  return true;
}

int first_violation(const ResidueSeq& i) {
  for (int k = 1; k <= i.n(); ++k)
    if (!prefix_ok(i, k)) return k;
  return i.n();
}

[[noreturn]] void throw_inadmissible(const ResidueSeq& i) {
  throw invalid_input("sequence " + i.to_string() +
                      " is not admissible (position " +
                      std::to_string(first_violation(i)) + ")");
}

void extend(std::vector<int>& prefix, int lo, int hi, int n,
            std::vector<ResidueSeq>& out) {
  int k = static_cast<int>(prefix.size());
  if (k == n - 1) {
    /* one residue left; both candidate extensions coincide with it */
    std::vector<int> full = prefix;
    full.push_back((hi + 1) % n);
    out.emplace_back(std::move(full));
    return;
  }
  int down = (lo + n - 1) % n, up = (hi + 1) % n;
  for (int r : {std::min(down, up), std::max(down, up)}) {
    prefix.push_back(r);
    if (r == down)
      extend(prefix, r, hi, n, out);
    else
      extend(prefix, lo, r, n, out);
    prefix.pop_back();
  }
}

}  // namespace

std::vector<ResidueSeq> enumerate_admissible(int n) {
  if (n < 2 || n > 16) throw invalid_parameter("rank must be in [2, 16]");
  std::vector<ResidueSeq> out;
  if (n == 2) {
    out.emplace_back(std::vector<int>{0, 1});
    return out;
  }
  std::vector<int> prefix{0};
  extend(prefix, 0, 0, n, out);
  std::sort(out.begin(), out.end());
  return out;
}

ResidueSeq level_shift(const ResidueSeq& i, ShiftDirection dir) {
  int n = i.n();
  if (dir == ShiftDirection::up) {
    if (n > 15) throw invalid_parameter("shifted sequence would exceed rank 16");
    if (!is_admissible(i)) throw_inadmissible(i);
    std::vector<int> out{0, 1};
    for (int k = 2; k <= n; ++k) out.push_back(i.entry(k) + 1);
    return ResidueSeq(std::move(out));
  }
  if (n < 3) throw invalid_parameter("downward shift needs rank >= 3");
  if (i.entry(1) != 0) throw invalid_input("first entry must be 0 (position 1)");
  if (i.entry(2) != 1) throw invalid_input("second entry must be 1 (position 2)");
  if (!is_admissible(i)) throw_inadmissible(i);
  std::vector<int> out{0};
  for (int k = 3; k <= n; ++k) out.push_back(i.entry(k) - 1);
  return ResidueSeq(std::move(out));
}

int morita_class(const ResidueSeq& i) {
  if (!is_admissible(i))
    throw invalid_input("Morita class of an inadmissible sequence");
  return i.last();
}

ResidueSeq class_representative(int n, int k) {
  if (n < 2 || n > 16) throw invalid_parameter("rank must be in [2, 16]");
  if (k < 1 || k > n - 1)
    throw invalid_parameter("class index must be in [1, n-1]");
  std::vector<int> v;
  for (int r = 0; r < k; ++r) v.push_back(r);
  for (int r = n - 1; r > k; --r) v.push_back(r);
  v.push_back(k);
  return ResidueSeq(std::move(v));
}

std::vector<int> admissible_swaps(const ResidueSeq& i) {
  if (!is_admissible(i))
    throw invalid_input("swap positions of an inadmissible sequence");
  Quiver q(i.n());
  std::vector<int> out;
  for (int t = 2; t <= i.n() - 2; ++t)
    if (!q.adjacent(i.entry(t), i.entry(t + 1))) out.push_back(t);
  return out;
}

std::map<int, std::vector<ResidueSeq>> morita_partition(int n) {
  std::map<int, std::vector<ResidueSeq>> classes;
  for (const ResidueSeq& i : enumerate_admissible(n))
    classes[i.last()].push_back(i);
  return classes;
}

}  // namespace klr
