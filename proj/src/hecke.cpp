#include "klr/hecke.hpp"

#include <algorithm>
#include <map>

#include "klr/engine.hpp"
#include "klr/residue.hpp"

namespace klr {

namespace {

long long binom(int a, int b) {
  if (b < 0 || b > a) return 0;
  long long r = 1;
  for (int t = 1; t <= b; ++t) r = r * (a - b + t) / t;
  return r;
}

}  // namespace

Partition::Partition(std::vector<int> parts) : parts_(std::move(parts)) {
  if (parts_.empty()) throw invalid_parameter("partition needs at least one part");
  for (std::size_t t = 0; t < parts_.size(); ++t) {
    if (parts_[t] < 1)
      throw invalid_parameter("partition part " + std::to_string(t + 1) + " is not positive");
    if (t > 0 && parts_[t] > parts_[t - 1])
      throw invalid_parameter("partition parts increase at position " + std::to_string(t + 1));
  }
}

int Partition::size() const {
  int r = 0;
  for (int p : parts_) r += p;
  return r;
}

std::string Partition::to_string() const {
  std::string s = "(";
  for (std::size_t t = 0; t < parts_.size(); ++t) {
    if (t) s += ",";
    s += std::to_string(parts_[t]);
  }
  return s + ")";
}

Partition hook_partition(int n, int k) {
  if (n < 1 || k < 0 || k > n - 1)
    throw invalid_parameter("hook partition needs 0 <= k <= n-1");
  std::vector<int> parts{n - k};
  parts.insert(parts.end(), k, 1);
  return Partition(std::move(parts));
}

long long hook_dim(const Partition& la) {
  int r = la.size();
  if (r > 20) throw invalid_parameter("hook length dimension supported up to size 20");
  const std::vector<int>& p = la.parts();
  long long fact = 1;
  for (int t = 2; t <= r; ++t) fact *= t;
  long long hooks = 1;
  for (std::size_t i = 0; i < p.size(); ++i)
    for (int j = 0; j < p[i]; ++j) {
      int leg = 0;
      for (std::size_t i2 = i + 1; i2 < p.size(); ++i2)
        if (p[i2] > j) ++leg;
      hooks *= (p[i] - j) + leg;
    }
  return fact / hooks;
}

bool is_n_regular(const Partition& la, int n) {
  if (n < 2) throw invalid_parameter("regularity needs n >= 2");
  const std::vector<int>& p = la.parts();
  int run = 1;
  for (std::size_t t = 1; t < p.size(); ++t) {
    run = p[t] == p[t - 1] ? run + 1 : 1;
    if (run >= n) return false;
  }
  return run < n;
}

std::vector<long long> simple_dims_hooks(int n) {
  if (n < 2) throw invalid_parameter("simple dimensions need n >= 2");
  std::vector<long long> d(n - 1);
  d[0] = 1;
  for (int k = 1; k <= n - 2; ++k) d[k] = binom(n - 1, k) - d[k - 1];
  return d;
}

bool BlockDimReport::pass() const {
  if (identities.empty()) return false;
  return std::all_of(identities.begin(), identities.end(),
                     [](const DimIdentity& i) { return i.pass; });
}

BlockDimReport verify_identities(int n, const Algebra* engine) {
  if (n < 2) throw invalid_parameter("block dimensions need n >= 2");
  BlockDimReport rep;
  rep.n = n;
  auto check = [&](std::string name, long long lhs, long long rhs) {
    rep.identities.push_back({std::move(name), lhs, rhs, lhs == rhs});
  };

  for (int k = 0; k <= n - 1; ++k) {
    rep.specht_dims.push_back(hook_dim(hook_partition(n, k)));
    check("specht dim of " + hook_partition(n, k).to_string() + " is C(n-1," +
              std::to_string(k) + ")",
          rep.specht_dims.back(), binom(n - 1, k));
  }

  rep.simple_dims = simple_dims_hooks(n);
  for (int k = 0; k <= n - 2; ++k)
    check("simple dim recursion at k=" + std::to_string(k) + " matches C(n-2,k)",
          rep.simple_dims[k], binom(n - 2, k));

  int regular = 0;
  for (int k = 0; k <= n - 1; ++k)
    if (is_n_regular(hook_partition(n, k), n)) ++regular;
  check("n-regular hooks of size n", regular, n - 1);
  check("morita classes of admissible sequences",
        static_cast<long long>(morita_partition(n).size()), n - 1);

  long long dsum = 0;
  for (long long d : rep.simple_dims) dsum += d;
  long long half = 1LL << (n - 2);
  check("sum of simple dims is 2^(n-2)", dsum, half);

  /* The recursion telescopes to one parity class of binomials: the even
   * C(n-1, *) when n is odd, the odd ones when n is even. */
  long long parity = 0;
  for (int j = n % 2 ? 0 : 1; j <= n - 1; j += 2) parity += binom(n - 1, j);
  check("parity split of binomials is 2^(n-2)", parity, half);
  check("simple dims sum to the parity split", dsum, parity);

  for (int k = 0; k <= n - 2; ++k) {
    rep.projective_dims.push_back(rep.specht_dims[k] + rep.specht_dims[k + 1]);
    check("projective dim at k=" + std::to_string(k) + " is C(n," + std::to_string(k + 1) + ")",
          rep.projective_dims.back(), binom(n, k + 1));
  }

  long long weighted = 0;
  for (int k = 0; k <= n - 2; ++k) weighted += rep.simple_dims[k] * rep.projective_dims[k];
  check("sum of simple*projective dims is C(2(n-1),n-1)", weighted, binom(2 * (n - 1), n - 1));

  if (engine && engine->n() == n) {
    rep.engine_checked = true;
    std::map<int, std::vector<ResidueSeq>> classes = morita_partition(n);
    for (int k = 1; k <= n - 1; ++k)
      check("morita class " + std::to_string(k) + " size equals simple dim",
            static_cast<long long>(classes.at(k).size()), rep.simple_dims[k - 1]);
    for (int k = 1; k <= n - 1; ++k) {
      ResidueSeq rep_k = class_representative(n, k);
      long long cols = 0;
      for (const NormalWord& b : engine->basis())
        if (b.target() == rep_k) ++cols;
      check("basis words ending at class " + std::to_string(k) + " count C(n," +
                std::to_string(k) + ")",
            cols, binom(n, k));
    }
  }

  return rep;
}

}  // namespace klr
