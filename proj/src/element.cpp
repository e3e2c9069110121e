#include "klr/element.hpp"

namespace klr {

Generator Generator::idem(ResidueSeq i) {
  Generator g;
  g.kind = Kind::idem;
  g.n = i.n();
  g.index = 0;
  g.sequence = std::move(i);
  return g;
}

Generator Generator::dot(int n, int l) {
  if (l < 1 || l > n) throw invalid_parameter("dot index out of range");
  Generator g;
  g.kind = Kind::dot;
  g.n = n;
  g.index = l;
  return g;
}

Generator Generator::cross(int n, int k) {
  if (k < 1 || k >= n) throw invalid_parameter("crossing index out of range");
  Generator g;
  g.kind = Kind::cross;
  g.n = n;
  g.index = k;
  return g;
}

std::string Generator::to_string() const {
  switch (kind) {
    case Kind::idem:
      return "e" + sequence.to_string();
    case Kind::dot:
      return "y" + std::to_string(index);
    case Kind::cross:
      return "p" + std::to_string(index);
  }
  throw internal_error("unreachable generator kind");
}

std::string word_to_string(const Word& w) {
  if (w.empty()) return "1";
  std::string s;
  for (std::size_t t = 0; t < w.size(); ++t) {
    if (t > 0) s += "*";
    s += w[t].to_string();
  }
  return s;
}

AlgebraElement::AlgebraElement(int n) : n_(n) {
  if (n < 2 || n > 16) throw invalid_parameter("rank out of range");
}

AlgebraElement::AlgebraElement(int n, Word w) : AlgebraElement(n, std::move(w), Rational(1)) {}

AlgebraElement::AlgebraElement(int n, Word w, Rational c) : AlgebraElement(n) {
  check_word(w);
  if (!c.is_zero()) terms_.emplace(std::move(w), std::move(c));
}

AlgebraElement AlgebraElement::zero(int n) { return AlgebraElement(n); }

AlgebraElement AlgebraElement::unit(int n) { return AlgebraElement(n, Word{}); }

Rational AlgebraElement::coefficient(const Word& w) const {
  auto it = terms_.find(w);
  return it == terms_.end() ? Rational(0) : it->second;
}

void AlgebraElement::add_term(const Word& w, const Rational& c) {
  if (c.is_zero()) return;
  check_word(w);
  auto [it, fresh] = terms_.emplace(w, c);
  if (!fresh) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

AlgebraElement AlgebraElement::operator+(const AlgebraElement& o) const {
  AlgebraElement out(*this);
  out += o;
  return out;
}

AlgebraElement AlgebraElement::operator-(const AlgebraElement& o) const {
  AlgebraElement out(*this);
  out -= o;
  return out;
}

AlgebraElement AlgebraElement::operator-() const {
  AlgebraElement out(n_);
  for (const auto& [w, c] : terms_) out.terms_.emplace(w, -c);
  return out;
}

AlgebraElement AlgebraElement::operator*(const AlgebraElement& o) const {
  check_rank(o);
  AlgebraElement out(n_);
  for (const auto& [wa, ca] : terms_)
    for (const auto& [wb, cb] : o.terms_) {
      Word w = wa;
      w.insert(w.end(), wb.begin(), wb.end());
      out.add_term(w, ca * cb);
    }
  return out;
}

AlgebraElement AlgebraElement::scaled(const Rational& c) const {
  AlgebraElement out(n_);
  if (c.is_zero()) return out;
  for (const auto& [w, t] : terms_) out.terms_.emplace(w, t * c);
  return out;
}

AlgebraElement& AlgebraElement::operator+=(const AlgebraElement& o) {
  check_rank(o);
  for (const auto& [w, c] : o.terms_) add_term(w, c);
  return *this;
}

AlgebraElement& AlgebraElement::operator-=(const AlgebraElement& o) {
  check_rank(o);
  for (const auto& [w, c] : o.terms_) add_term(w, -c);
  return *this;
}

bool AlgebraElement::operator==(const AlgebraElement& o) const {
  return n_ == o.n_ && terms_ == o.terms_;
}

std::string AlgebraElement::to_string() const {
  if (terms_.empty()) return "0";
  std::string s;
  bool first = true;
  for (const auto& [w, c] : terms_) {
    std::string cs = c.to_string();
    bool neg = cs[0] == '-';
    if (first) {
      if (neg) s += "-";
      first = false;
    } else {
      s += neg ? " - " : " + ";
    }
    std::string mag = neg ? cs.substr(1) : cs;
    if (mag == "1" && !w.empty())
      s += word_to_string(w);
    else if (w.empty())
      s += mag;
    else
      s += mag + "*" + word_to_string(w);
  }
  return s;
}

void AlgebraElement::check_rank(const AlgebraElement& o) const {
  if (n_ != o.n_) throw invalid_input("rank mismatch between elements");
}

void AlgebraElement::check_word(const Word& w) const {
  for (const Generator& g : w)
    if (g.n != n_) throw invalid_input("generator rank mismatch");
}

}  // namespace klr
