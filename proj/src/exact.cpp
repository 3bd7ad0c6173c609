#include "superloc/exact.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace superloc {

std::string to_string(const Rational& r) { return r.get_str(); }

Rational rational_from_string(const std::string& s) {
  if (s.empty()) fail(ErrorCode::Parse, "empty rational literal");
  for (char c : s) {
    if (!(std::isdigit(static_cast<unsigned char>(c)) || c == '/' || c == '-' || c == '+'))
      fail(ErrorCode::Parse, "malformed rational literal: " + s);
  }
  Rational r;
  if (r.set_str(s, 10) != 0) fail(ErrorCode::Parse, "malformed rational literal: " + s);
  if (sgn(r.get_den()) == 0) fail(ErrorCode::Parse, "zero denominator in rational literal: " + s);
  r.canonicalize();
  return r;
}

ComplexRational ComplexRational::i_power(long k) {
  long m = ((k % 4) + 4) % 4;
  switch (m) {
    case 0: return ComplexRational(1);
    case 1: return unit_i();
    case 2: return ComplexRational(-1);
    default: return -unit_i();
  }
}

std::string ComplexRational::str() const {
  if (is_zero()) return "0";
  std::ostringstream out;
  bool have_re = sgn(re) != 0;
  if (have_re) out << re.get_str();
  if (sgn(im) != 0) {
    if (have_re && sgn(im) > 0) out << "+";
    if (im == -1)
      out << "-";
    else if (im != 1)
      out << im.get_str();
    out << "i";
  }
  return out.str();
}

ComplexRational complex_rational_from_string(const std::string& raw) {
  std::string s;
  for (char c : raw)
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  if (s.empty()) fail(ErrorCode::Parse, "empty complex literal");

  auto parse_part = [](const std::string& p) -> Rational {
    if (p.empty() || p == "+") return Rational(1);
    if (p == "-") return Rational(-1);
    std::string body = (p[0] == '+') ? p.substr(1) : p;
    return rational_from_string(body);
  };

  if (s.back() != 'i') return ComplexRational(parse_part(s));

  std::string head = s.substr(0, s.size() - 1);
  // Scan backwards over the imaginary literal to find the separating sign.
  size_t split = 0;
  for (size_t pos = head.size(); pos > 0; --pos) {
    char c = head[pos - 1];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '/') continue;
    if (c == '+' || c == '-') split = pos - 1;
    break;
  }
  std::string im_part = head.substr(split);
  std::string re_part = head.substr(0, split);
  ComplexRational out;
  out.im = parse_part(im_part);
  out.re = re_part.empty() ? Rational(0) : parse_part(re_part);
  return out;
}

ExactScalar ExactScalar::operator-() const {
  ExactScalar out;
  for (const auto& [k, c] : terms_) out.terms_.emplace(k, -c);
  return out;
}

ExactScalar ExactScalar::operator+(const ExactScalar& o) const {
  ExactScalar out = *this;
  for (const auto& [k, c] : o.terms_) out.add_term(k, c);
  return out;
}

ExactScalar ExactScalar::operator-(const ExactScalar& o) const { return *this + (-o); }

ExactScalar ExactScalar::operator*(const ExactScalar& o) const {
  ExactScalar out;
  for (const auto& [ka, ca] : terms_)
    for (const auto& [kb, cb] : o.terms_) out.add_term(ka + kb, ca * cb);
  return out;
}

ExactScalar ExactScalar::scaled(const ComplexRational& c) const {
  ExactScalar out;
  if (c.is_zero()) return out;
  for (const auto& [k, t] : terms_) out.terms_.emplace(k, t * c);
  return out;
}

ExactScalar ExactScalar::inverse() const {
  if (terms_.size() != 1)
    fail(ErrorCode::Divergence, "reciprocal defined only for nonzero pi-monomials");
  const auto& [k, c] = *terms_.begin();
  return pi_power(c.inverse(), -k);
}

std::complex<double> ExactScalar::to_complex() const {
  std::complex<double> acc(0.0, 0.0);
  for (const auto& [k, c] : terms_)
    acc += c.to_complex() * std::pow(std::numbers::pi, static_cast<double>(k));
  return acc;
}

std::string ExactScalar::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [k, c] = *it;
    if (!first) out << " + ";
    first = false;
    bool needs_parens = sgn(c.re) != 0 && sgn(c.im) != 0;
    if (k == 0) {
      out << c.str();
      continue;
    }
    if (c == ComplexRational(1)) {
    } else if (c == ComplexRational(-1)) {
      out << "-";
    } else if (needs_parens) {
      out << "(" << c.str() << ")*";
    } else {
      out << c.str() << "*";
    }
    out << "pi";
    if (k != 1) out << "^" << k;
  }
  return out.str();
}

}  // namespace superloc
