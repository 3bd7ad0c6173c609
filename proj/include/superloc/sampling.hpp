#pragma once

#include <random>
#include <vector>

#include "superloc/locverify.hpp"

namespace superloc::sampling {

/// Nonzero lambdas used by the randomized verification runs.
inline const std::vector<ComplexRational>& lambda_palette() {
  static const std::vector<ComplexRational> palette = [] {
    std::vector<ComplexRational> p;
    for (long re : {1, -1})
      for (long im : {2, -2}) p.emplace_back(Rational(re), Rational(im));
    p.emplace_back(Rational(0), Rational(3));
    p.emplace_back(Rational(0), Rational(-3));
    p.emplace_back(Rational(2), Rational(0));
    p.emplace_back(Rational(0), Rational(5));
    return p;
  }();
  return palette;
}

inline unsigned long pick(std::mt19937_64& rng, unsigned long n) { return rng() % n; }

inline ComplexRational sample_lambda(std::mt19937_64& rng) {
  const auto& p = lambda_palette();
  return p[pick(rng, p.size())];
}

inline std::vector<ComplexRational> sample_lambdas(std::mt19937_64& rng, int blocks) {
  std::vector<ComplexRational> out;
  out.reserve(static_cast<size_t>(blocks));
  for (int i = 0; i < blocks; ++i) out.push_back(sample_lambda(rng));
  return out;
}

inline Rational sample_envelope(std::mt19937_64& rng) {
  switch (pick(rng, 3)) {
    case 0: return Rational(1, 2);
    case 1: return Rational(1);
    default: return Rational(2);
  }
}

inline long sample_int(std::mt19937_64& rng, long lo, long hi) {
  return lo + static_cast<long>(pick(rng, static_cast<unsigned long>(hi - lo + 1)));
}

/// Random per-block polynomials of degree <= max_degree with a nonzero
/// leading coefficient, and envelopes from {1/2, 1, 2}.
inline locverify::FormProfile sample_profile(std::mt19937_64& rng, int blocks, int max_degree) {
  locverify::FormProfile profile;
  for (int i = 0; i < blocks; ++i) {
    int degree = static_cast<int>(pick(rng, static_cast<unsigned long>(max_degree + 1)));
    std::vector<ComplexRational> coeffs;
    for (int d = 0; d < degree; ++d)
      coeffs.emplace_back(Rational(sample_int(rng, -3, 3)), Rational(sample_int(rng, -3, 3)));
    long lead = sample_int(rng, 1, 3) * (pick(rng, 2) ? 1 : -1);
    coeffs.emplace_back(Rational(lead), Rational(sample_int(rng, -3, 3)));
    profile.poly.push_back(std::move(coeffs));
    profile.envelope.push_back(sample_envelope(rng));
  }
  return profile;
}

/// Random integrable function: positive envelope, even powers <= 3, random
/// odd monomials, small Gaussian-integer coefficients.
inline superalg::SuperFunction sample_function(std::mt19937_64& rng, int blocks, int max_terms = 6) {
  std::vector<Rational> env;
  for (int i = 0; i < blocks; ++i) env.push_back(sample_envelope(rng));
  superalg::SuperFunction f(blocks, std::move(env));
  int terms = 1 + static_cast<int>(pick(rng, static_cast<unsigned long>(max_terms)));
  for (int t = 0; t < terms; ++t) {
    superalg::EvenMonomial e = superalg::EvenMonomial::one(blocks);
    for (int i = 0; i < blocks; ++i)
      e.powers[static_cast<size_t>(i)] = {static_cast<unsigned>(pick(rng, 4)),
                                          static_cast<unsigned>(pick(rng, 4))};
    superalg::OddMonomial o{rng() & ((std::uint64_t{1} << (2 * blocks)) - 1)};
    ComplexRational c(Rational(sample_int(rng, -3, 3)), Rational(sample_int(rng, -3, 3)));
    f.add_term(e, o, ExactScalar(c));
  }
  return f;
}

}  // namespace superloc::sampling
