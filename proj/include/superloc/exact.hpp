#pragma once

#include <gmpxx.h>

#include <complex>
#include <map>
#include <string>
#include <utility>

#include "superloc/error.hpp"

namespace superloc {

using Rational = mpq_class;

std::string to_string(const Rational& r);

/// Parses "p" or "p/q" (q != 0). Throws Error(Parse) on malformed input.
Rational rational_from_string(const std::string& s);

/// Element of Q(i): exact complex number with rational real and imaginary parts.
struct ComplexRational {
  Rational re{0};
  Rational im{0};

  ComplexRational() = default;
  ComplexRational(long n) : re(n) {}
  ComplexRational(Rational r) : re(std::move(r)) {}
  ComplexRational(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}

  static ComplexRational unit_i() { return ComplexRational(Rational(0), Rational(1)); }
  /// i^k for any integer k (k may be negative).
  static ComplexRational i_power(long k);

  bool is_zero() const { return sgn(re) == 0 && sgn(im) == 0; }

  ComplexRational operator-() const { return ComplexRational(-re, -im); }
  ComplexRational operator+(const ComplexRational& o) const { return {re + o.re, im + o.im}; }
  ComplexRational operator-(const ComplexRational& o) const { return {re - o.re, im - o.im}; }
  ComplexRational operator*(const ComplexRational& o) const {
    return {re * o.re - im * o.im, re * o.im + im * o.re};
  }
  ComplexRational& operator+=(const ComplexRational& o) { re += o.re; im += o.im; return *this; }
  ComplexRational& operator-=(const ComplexRational& o) { re -= o.re; im -= o.im; return *this; }
  ComplexRational& operator*=(const ComplexRational& o) { *this = *this * o; return *this; }

  ComplexRational conj() const { return {re, -im}; }
  Rational norm2() const { return re * re + im * im; }

  ComplexRational inverse() const {
    if (is_zero()) fail(ErrorCode::Divergence, "division by zero in Q(i)");
    Rational n = norm2();
    return {re / n, -im / n};
  }
  ComplexRational operator/(const ComplexRational& o) const { return *this * o.inverse(); }

  bool operator==(const ComplexRational& o) const { return re == o.re && im == o.im; }
  bool operator!=(const ComplexRational& o) const { return !(*this == o); }

  std::complex<double> to_complex() const { return {re.get_d(), im.get_d()}; }

  /// "2", "3i", "1+2i", "2/3-1/2i".
  std::string str() const;
};

/// Parses strings like "2", "-3i", "1+2i", "2/3-1/2i", "i".
ComplexRational complex_rational_from_string(const std::string& s);

/// Exact scalar: a finite sum  sum_k c_k * pi^k  with c_k in Q(i) and integer k.
/// Closed under ring operations; every value the library produces lives here.
class ExactScalar {
 public:
  ExactScalar() = default;
  ExactScalar(ComplexRational c) { set_term(0, std::move(c)); }
  ExactScalar(long n) : ExactScalar(ComplexRational(n)) {}

  static ExactScalar pi_power(ComplexRational c, long k) {
    ExactScalar s;
    s.set_term(k, std::move(c));
    return s;
  }

  bool is_zero() const { return terms_.empty(); }
  bool is_monomial() const { return terms_.size() == 1; }

  /// Coefficient of pi^k (zero if absent).
  ComplexRational coefficient(long k) const {
    auto it = terms_.find(k);
    return it == terms_.end() ? ComplexRational() : it->second;
  }

  const std::map<long, ComplexRational>& terms() const { return terms_; }

  ExactScalar operator-() const;
  ExactScalar operator+(const ExactScalar& o) const;
  ExactScalar operator-(const ExactScalar& o) const;
  ExactScalar operator*(const ExactScalar& o) const;
  ExactScalar& operator+=(const ExactScalar& o) { *this = *this + o; return *this; }
  ExactScalar& operator*=(const ExactScalar& o) { *this = *this * o; return *this; }

  ExactScalar scaled(const ComplexRational& c) const;

  /// Reciprocal; defined only for monomials c*pi^k with c != 0.
  ExactScalar inverse() const;

  bool operator==(const ExactScalar& o) const { return terms_ == o.terms_; }
  bool operator!=(const ExactScalar& o) const { return !(*this == o); }

  std::complex<double> to_complex() const;

  std::string str() const;

 private:
  void set_term(long k, ComplexRational c) {
    if (!c.is_zero()) terms_[k] = std::move(c);
  }
  void add_term(long k, const ComplexRational& c) {
    auto it = terms_.find(k);
    if (it == terms_.end()) {
      if (!c.is_zero()) terms_.emplace(k, c);
    } else {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  std::map<long, ComplexRational> terms_;  // pi exponent -> coefficient, no zeros
};

}  // namespace superloc
