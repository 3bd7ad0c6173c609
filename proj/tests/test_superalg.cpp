#include <doctest.h>

#include <random>

#include "superloc/convention.hpp"
#include "superloc/quadrature.hpp"
#include "test_support.hpp"

using namespace superloc;
using namespace superloc::superalg;
using testsup::cr;
using testsup::tb;
using testsup::th;
using testsup::z;
using testsup::zb;

namespace {

SuperFunction random_function(std::mt19937_64& rng, int m, bool with_envelope) {
  std::vector<Rational> env(static_cast<size_t>(m), Rational(0));
  if (with_envelope)
    for (auto& s : env) s = Rational(1 + static_cast<long>(rng() % 3), 2);
  SuperFunction f(m, env);
  int terms = 1 + static_cast<int>(rng() % 5);
  for (int t = 0; t < terms; ++t) {
    EvenMonomial e = EvenMonomial::one(m);
    for (int i = 0; i < m; ++i)
      e.powers[static_cast<size_t>(i)] = {static_cast<unsigned>(rng() % 3),
                                          static_cast<unsigned>(rng() % 3)};
    OddMonomial o{rng() & ((std::uint64_t{1} << (2 * m)) - 1)};
    f.add_term(e, o, ExactScalar(cr(static_cast<long>(rng() % 7) - 3,
                                    static_cast<long>(rng() % 7) - 3)));
  }
  return f;
}

SuperFunction random_homogeneous(std::mt19937_64& rng, int m, int parity) {
  SuperFunction f = SuperFunction::zero(m);
  int terms = 1 + static_cast<int>(rng() % 4);
  for (int t = 0; t < terms; ++t) {
    EvenMonomial e = EvenMonomial::one(m);
    for (int i = 0; i < m; ++i)
      e.powers[static_cast<size_t>(i)] = {static_cast<unsigned>(rng() % 2),
                                          static_cast<unsigned>(rng() % 2)};
    OddMonomial o;
    do {
      o.mask = rng() & ((std::uint64_t{1} << (2 * m)) - 1);
    } while (o.degree() % 2 != parity);
    f.add_term(e, o, ExactScalar(cr(static_cast<long>(rng() % 5) - 2,
                                    static_cast<long>(rng() % 5) - 2)));
  }
  return f;
}

}  // namespace

TEST_CASE("odd generator products carry transposition parity") {
  // theta_1 * thetabar_1 is already canonical
  auto p = multiply(th(1, 0), tb(1, 0));
  CHECK(p.coefficient(EvenMonomial::one(1), OddMonomial{0b11}) == ExactScalar(1));
  // thetabar_1 * theta_1 needs one transposition
  auto q = multiply(tb(1, 0), th(1, 0));
  CHECK(q.coefficient(EvenMonomial::one(1), OddMonomial{0b11}) == ExactScalar(-1));
  // theta_1 * theta_1 = 0
  CHECK(multiply(th(1, 0), th(1, 0)).is_zero());
}

TEST_CASE("multiply rejects block mismatch and adds envelopes") {
  CHECK_THROWS_AS(multiply(th(1, 0), th(2, 0)), Error);
  auto f = SuperFunction::gaussian({Rational(1, 2)});
  auto g = SuperFunction::gaussian({Rational(2)});
  CHECK(multiply(f, g).envelope()[0] == Rational(5, 2));
}

TEST_CASE("derivations act with graded Leibniz signs") {
  int m = 1;
  auto thtb = multiply(th(m, 0), tb(m, 0));
  // d/dtheta (theta thetabar) = thetabar
  auto d1 = apply_derivation(Derivation::partial(m, {CoordKind::Theta, 0}), thtb);
  CHECK(d1.coefficient(EvenMonomial::one(m), OddMonomial{0b10}) == ExactScalar(1));
  CHECK(d1.term_count() == 1);
  // d/dthetabar (theta thetabar) = -theta
  auto d2 = apply_derivation(Derivation::partial(m, {CoordKind::ThetaBar, 0}), thtb);
  CHECK(d2.coefficient(EvenMonomial::one(m), OddMonomial{0b01}) == ExactScalar(-1));
  // d/dz (z e^{-z zbar}) = (1 - z zbar) e^{-z zbar}
  auto zg = multiply(z(m, 0), SuperFunction::gaussian({Rational(1)}));
  auto d3 = apply_derivation(Derivation::partial(m, {CoordKind::Z, 0}), zg);
  CHECK(d3.coefficient(EvenMonomial::one(m), OddMonomial{}) == ExactScalar(1));
  EvenMonomial zzb = EvenMonomial::one(m);
  zzb.powers[0] = {1, 1};
  CHECK(d3.coefficient(zzb, OddMonomial{}) == ExactScalar(-1));
  CHECK(d3.envelope()[0] == Rational(1));
}

TEST_CASE("gaussian moments against the quadrature oracle") {
  // (0,0,1) -> pi and (2,2,1) -> 2 pi, both checked against 2-D adaptive
  // quadrature of the literal integrand to 10 digits.
  auto quad_moment = [](unsigned a, unsigned b, double s) {
    quad::Options opt;
    opt.abs_tol = 1e-12;
    return quad::annulus_integral(
        [&](std::complex<double> zz) {
          std::complex<double> v = std::exp(-s * std::norm(zz));
          for (unsigned k = 0; k < a; ++k) v *= zz;
          for (unsigned k = 0; k < b; ++k) v *= std::conj(zz);
          return v;
        },
        0.0, 9.0, opt);
  };
  ExactScalar m00 = gaussian_moment(0, 0, Rational(1));
  CHECK(m00 == ExactScalar::pi_power(cr(1), 1));
  CHECK(std::abs(m00.to_complex() - quad_moment(0, 0, 1.0)) < 1e-10);

  CHECK(gaussian_moment(1, 0, Rational(7, 3)).is_zero());
  CHECK(std::abs(quad_moment(1, 0, 7.0 / 3.0)) < 1e-10);

  ExactScalar m22 = gaussian_moment(2, 2, Rational(1));
  CHECK(m22 == ExactScalar::pi_power(cr(2), 1));
  CHECK(std::abs(m22.to_complex() - quad_moment(2, 2, 1.0)) < 1e-9);

  CHECK_THROWS_AS(gaussian_moment(1, 1, Rational(0)), Error);
  CHECK_THROWS_AS(gaussian_moment(0, 0, Rational(-1)), Error);
}

TEST_CASE("moment normalization identity up to a = 6") {
  for (unsigned a = 0; a <= 6; ++a) {
    for (const Rational& s : {Rational(1, 2), Rational(1), Rational(3)}) {
      mpz_class fac;
      mpz_fac_ui(fac.get_mpz_t(), a);
      Rational s_pow(1);
      for (unsigned k = 0; k <= a; ++k) s_pow *= s;
      ExactScalar lhs = gaussian_moment(a, a, s) * ExactScalar(ComplexRational(s_pow / Rational(fac)));
      CHECK(lhs == ExactScalar::pi_power(cr(1), 1));
    }
  }
}

TEST_CASE("berezin integral extracts the top odd monomial with measure") {
  // no odd part -> 0
  CHECK(berezin_integral(SuperFunction::gaussian({Rational(1)})).is_zero());
  // theta thetabar e^{-s z zbar} -> kappa pi / s
  Rational s(1, 2);
  auto f = multiply(multiply(th(1, 0), tb(1, 0)), SuperFunction::gaussian({s}));
  ExactScalar expected = convention::kappa() * ExactScalar::pi_power(ComplexRational(Rational(2)), 1);
  CHECK(berezin_integral(f) == expected);
  // cross-check against real-coordinate quadrature of the even factor
  {
    quad::Options opt;
    opt.abs_tol = 1e-12;
    auto even_mass = quad::annulus_integral(
        [&](std::complex<double> w) { return std::exp(-0.5 * std::norm(w)); }, 0.0, 12.0, opt);
    auto numeric = convention::kappa().to_complex() * even_mass;
    CHECK(std::abs(berezin_integral(f).to_complex() - numeric) < 1e-9);
  }
  // z zbar theta thetabar e^{-z zbar} -> kappa pi
  auto g = multiply(multiply(z(1, 0), zb(1, 0)),
                    multiply(multiply(th(1, 0), tb(1, 0)), SuperFunction::gaussian({Rational(1)})));
  CHECK(berezin_integral(g) == convention::kappa() * ExactScalar::pi_power(cr(1), 1));
  // integrability precondition
  auto flat = multiply(th(1, 0), tb(1, 0));
  CHECK_THROWS_AS(berezin_integral(flat), Error);
}

TEST_CASE("eval_origin reads the constant coefficient") {
  auto f = SuperFunction::gaussian({Rational(1)});
  EvenMonomial zzb = EvenMonomial::one(1);
  zzb.powers[0] = {1, 1};
  f.add_term(zzb, OddMonomial{}, ExactScalar(1));  // e^{-u}-style (1 + z zbar) envelope
  CHECK(eval_origin(f) == ExactScalar(1));
  CHECK(eval_origin(multiply(th(1, 0), tb(1, 0))).is_zero());
  auto h = SuperFunction::constant(1, ExactScalar(cr(3)));
  h.add_term([] {
    EvenMonomial e = EvenMonomial::one(1);
    e.powers[0].first = 1;
    return e;
  }(), OddMonomial{}, ExactScalar(cr(2)));
  CHECK(eval_origin(h) == ExactScalar(cr(3)));
}

TEST_CASE("nilpotence: repeated odd generators vanish") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    int m = 1 + static_cast<int>(rng() % 3);
    auto f = random_function(rng, m, false);
    for (int i = 0; i < m; ++i) {
      // every term of f * theta_i carries theta_i, so theta_i * (f * theta_i) = 0
      CHECK(multiply(th(m, i), multiply(f, th(m, i))).is_zero());
    }
    int i = static_cast<int>(rng() % static_cast<unsigned>(m));
    CHECK(multiply(th(m, i), th(m, i)).is_zero());
    CHECK(multiply(tb(m, i), tb(m, i)).is_zero());
  }
}

TEST_CASE("associativity and supercommutativity on random terms") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 60; ++trial) {
    int m = 1 + static_cast<int>(rng() % 3);
    auto f = random_function(rng, m, false);
    auto g = random_function(rng, m, false);
    auto h = random_function(rng, m, false);
    CHECK((multiply(multiply(f, g), h) - multiply(f, multiply(g, h))).is_zero());

    int pf = static_cast<int>(rng() % 2), pg = static_cast<int>(rng() % 2);
    auto fh = random_homogeneous(rng, m, pf);
    auto gh = random_homogeneous(rng, m, pg);
    auto fg = multiply(fh, gh);
    auto gf = multiply(gh, fh);
    if (pf * pg == 1)
      CHECK((fg + gf).is_zero());
    else
      CHECK((fg - gf).is_zero());
  }
}

TEST_CASE("graded Leibniz rule for coordinate derivations") {
  std::mt19937_64 rng(37);
  for (int trial = 0; trial < 60; ++trial) {
    int m = 1 + static_cast<int>(rng() % 2);
    int pf = static_cast<int>(rng() % 2);
    auto f = random_homogeneous(rng, m, pf);
    auto g = random_function(rng, m, false);
    CoordKind kinds[] = {CoordKind::Z, CoordKind::ZBar, CoordKind::Theta, CoordKind::ThetaBar};
    Coord target{kinds[rng() % 4], static_cast<int>(rng() % static_cast<unsigned>(m))};
    auto d = Derivation::partial(m, target);
    auto lhs = apply_derivation(d, multiply(f, g));
    auto rhs = multiply(apply_derivation(d, f), g);
    auto second = multiply(f, apply_derivation(d, g));
    if (!is_even(target.kind) && pf == 1)
      rhs = rhs - second;
    else
      rhs = rhs + second;
    CHECK((lhs - rhs).is_zero());
  }
}

TEST_CASE("graded Leibniz rule for vector fields with monomial prefactors") {
  std::mt19937_64 rng(53);
  for (int trial = 0; trial < 60; ++trial) {
    int m = 1 + static_cast<int>(rng() % 2);
    CoordKind kinds[] = {CoordKind::Z, CoordKind::ZBar, CoordKind::Theta, CoordKind::ThetaBar};
    Coord target{kinds[rng() % 4], static_cast<int>(rng() % static_cast<unsigned>(m))};
    EvenMonomial pre_even = EvenMonomial::one(m);
    for (int i = 0; i < m; ++i)
      pre_even.powers[static_cast<size_t>(i)] = {static_cast<unsigned>(rng() % 2),
                                                 static_cast<unsigned>(rng() % 2)};
    OddMonomial pre_odd{rng() & ((std::uint64_t{1} << (2 * m)) - 1)};
    Derivation d(m);
    d.add_term(ExactScalar(cr(static_cast<long>(rng() % 5) - 2, 1)), pre_even, pre_odd, target);
    // operator parity = prefactor parity + 1 for odd targets
    int d_parity = (pre_odd.degree() + (is_even(target.kind) ? 0 : 1)) % 2;

    int pf = static_cast<int>(rng() % 2);
    auto f = random_homogeneous(rng, m, pf);
    auto g = random_function(rng, m, false);
    auto lhs = apply_derivation(d, multiply(f, g));
    auto rhs = multiply(apply_derivation(d, f), g);
    auto second = multiply(f, apply_derivation(d, g));
    if (d_parity == 1 && pf == 1)
      rhs = rhs - second;
    else
      rhs = rhs + second;
    CHECK((lhs - rhs).is_zero());
  }
}

TEST_CASE("the point model integrates to evaluation") {
  // zero blocks: the Berezin integral of a constant is the constant itself
  auto c = SuperFunction::constant(0, ExactScalar(cr(5, -1)));
  CHECK(berezin_integral(c) == ExactScalar(cr(5, -1)));
  CHECK(eval_origin(c) == ExactScalar(cr(5, -1)));
}

TEST_CASE("total derivatives have zero Berezin integral") {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 40; ++trial) {
    int m = 1 + static_cast<int>(rng() % 2);
    auto f = random_function(rng, m, true);
    for (CoordKind kind : {CoordKind::Z, CoordKind::ZBar, CoordKind::Theta, CoordKind::ThetaBar}) {
      for (int i = 0; i < m; ++i) {
        auto df = apply_derivation(Derivation::partial(m, {kind, i}), f);
        CHECK(berezin_integral(df).is_zero());
      }
    }
  }
}

TEST_CASE("parity bookkeeping") {
  CHECK(th(1, 0).parity() == std::optional<int>(1));
  CHECK(multiply(th(1, 0), tb(1, 0)).parity() == std::optional<int>(0));
  auto mixed = th(1, 0) + SuperFunction::constant(1, ExactScalar(1));
  CHECK(!mixed.parity().has_value());
  CHECK(SuperFunction::zero(2).parity() == std::optional<int>(0));
}

TEST_CASE("sums require a common envelope") {
  auto f = SuperFunction::gaussian({Rational(1)});
  auto g = SuperFunction::gaussian({Rational(2)});
  CHECK_THROWS_AS(f + g, Error);
  CHECK((f + f).coefficient(EvenMonomial::one(1), OddMonomial{}) == ExactScalar(2));
}
