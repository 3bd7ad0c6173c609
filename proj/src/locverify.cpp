#include "superloc/locverify.hpp"

#include <cmath>

#include "superloc/convention.hpp"
#include "superloc/error.hpp"
#include "superloc/quadrature.hpp"

namespace superloc::locverify {

using superalg::Coord;
using superalg::CoordKind;
using superalg::Derivation;
using superalg::EvenMonomial;
using superalg::OddMonomial;
using superalg::SuperFunction;

namespace {

EvenMonomial even_coord(int blocks, int block, bool bar) {
  EvenMonomial e = EvenMonomial::one(blocks);
  if (bar)
    e.powers[block].second = 1;
  else
    e.powers[block].first = 1;
  return e;
}

OddMonomial odd_coord(int block, bool bar) {
  return OddMonomial{std::uint64_t{1} << (2 * block + (bar ? 1 : 0))};
}

}  // namespace

LinearModel build_model(const qrep::CSRep& rep) {
  const int m = rep.blocks();
  Derivation q(m);
  Derivation torus(m);
  const EvenMonomial one = EvenMonomial::one(m);
  for (int i = 0; i < m; ++i) {
    ExactScalar il{ComplexRational::unit_i() * rep.lambda(i)};
    q.add_term(ExactScalar(1), one, odd_coord(i, false), Coord{CoordKind::Z, i});
    q.add_term(ExactScalar(1), one, odd_coord(i, true), Coord{CoordKind::ZBar, i});
    q.add_term(il, even_coord(m, i, false), OddMonomial{}, Coord{CoordKind::Theta, i});
    q.add_term(-il, even_coord(m, i, true), OddMonomial{}, Coord{CoordKind::ThetaBar, i});

    torus.add_term(il, even_coord(m, i, false), OddMonomial{}, Coord{CoordKind::Z, i});
    torus.add_term(-il, even_coord(m, i, true), OddMonomial{}, Coord{CoordKind::ZBar, i});
    torus.add_term(il, one, odd_coord(i, false), Coord{CoordKind::Theta, i});
    torus.add_term(-il, one, odd_coord(i, true), Coord{CoordKind::ThetaBar, i});
  }
  return LinearModel{rep, std::move(q), std::move(torus)};
}

SuperFunction invariant_u(const LinearModel& model, int block) {
  const int m = model.blocks();
  if (block < 0 || block >= m) fail(ErrorCode::Dimension, "block index out of range");
  SuperFunction u = SuperFunction::zero(m);
  EvenMonomial zz = EvenMonomial::one(m);
  zz.powers[block] = {1, 1};
  u.add_term(zz, OddMonomial{}, ExactScalar(1));
  // - theta thetabar / (i lambda)
  ComplexRational inv_il = (ComplexRational::unit_i() * model.rep.lambda(block)).inverse();
  OddMonomial tt{std::uint64_t{0b11} << (2 * block)};
  u.add_term(EvenMonomial::one(m), tt, ExactScalar(-inv_il));
  return u;
}

SuperFunction make_equivariant_form(const LinearModel& model, const FormProfile& profile) {
  const int m = model.blocks();
  if (profile.poly.size() != static_cast<size_t>(m) ||
      profile.envelope.size() != static_cast<size_t>(m))
    fail(ErrorCode::Dimension, "profile block count mismatch");
  for (const Rational& s : profile.envelope)
    if (sgn(s) <= 0) fail(ErrorCode::Divergence, "envelope rates must be positive");

  SuperFunction f = SuperFunction::constant(m, ExactScalar(1));
  for (int i = 0; i < m; ++i) {
    SuperFunction u = invariant_u(model, i);
    // Horner evaluation of P_i(u_i).
    SuperFunction p = SuperFunction::zero(m);
    const auto& coeffs = profile.poly[static_cast<size_t>(i)];
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) {
      p = multiply(p, u);
      p.add_term(EvenMonomial::one(m), OddMonomial{}, ExactScalar(*it));
    }
    if (coeffs.empty()) p.add_term(EvenMonomial::one(m), OddMonomial{}, ExactScalar(1));

    // e^{-s u} = e^{-s z zbar} (1 + s theta thetabar / (i lambda)).
    std::vector<Rational> env(static_cast<size_t>(m), Rational(0));
    env[static_cast<size_t>(i)] = profile.envelope[static_cast<size_t>(i)];
    SuperFunction gauss(m, env);
    gauss.add_term(EvenMonomial::one(m), OddMonomial{}, ExactScalar(1));
    ComplexRational inv_il = (ComplexRational::unit_i() * model.rep.lambda(i)).inverse();
    gauss.add_term(EvenMonomial::one(m), OddMonomial{std::uint64_t{0b11} << (2 * i)},
                   ExactScalar(inv_il * ComplexRational(profile.envelope[static_cast<size_t>(i)])));

    f = multiply(f, multiply(p, gauss));
  }

  if (!apply_derivation(model.q_field, f).is_zero())
    fail(ErrorCode::Internal, "generated form is not Q-closed");
  return f;
}

bool is_equivariant(const LinearModel& model, const SuperFunction& f) {
  return apply_derivation(model.q_field, f).is_zero();
}

VerificationReport verify_localization(const LinearModel& model, const SuperFunction& f) {
  if (f.blocks() != model.blocks()) fail(ErrorCode::Dimension, "form block count mismatch");
  if (!is_equivariant(model, f))
    fail(ErrorCode::Equivariance, "form is not Q-equivariant; the identity is not claimed for it");
  VerificationReport r;
  r.lhs = superalg::berezin_integral(f);
  r.rhs = qrep::loc_scalar(model.rep) * superalg::eval_origin(f);
  r.residual = r.lhs - r.rhs;
  r.equal = r.residual.is_zero();
  return r;
}

ExactScalar verify_total_derivative(const LinearModel& model, const SuperFunction& g) {
  return superalg::berezin_integral(apply_derivation(model.q_field, g));
}

namespace {

double cutoff_radius(const SuperFunction& f) {
  double s_min = std::numeric_limits<double>::infinity();
  for (const Rational& s : f.envelope()) s_min = std::min(s_min, s.get_d());
  if (!(s_min > 0.0)) fail(ErrorCode::Divergence, "quadrature needs a positive envelope");
  return std::sqrt((50.0 + 8.0 * f.max_even_degree()) / s_min);
}

void check_eps_list(const std::vector<double>& eps_list) {
  if (eps_list.size() < 3)
    fail(ErrorCode::Dimension, "need at least three epsilon values for extrapolation");
  for (size_t i = 0; i < eps_list.size(); ++i) {
    if (!(eps_list[i] > 0.0)) fail(ErrorCode::Dimension, "epsilon values must be positive");
    if (i > 0 && !(eps_list[i] < eps_list[i - 1]))
      fail(ErrorCode::Dimension, "epsilon values must be strictly decreasing");
  }
}

DistReport finish_report(std::vector<EpsSample> trace, std::complex<double> target,
                         double tolerance) {
  std::vector<std::pair<double, std::complex<double>>> t;
  t.reserve(trace.size());
  for (const auto& s : trace) t.emplace_back(s.eps, s.value);
  DistReport r;
  r.trace = std::move(trace);
  r.extrapolated = quad::richardson(t);
  r.target = target;
  r.abs_error = std::abs(r.extrapolated - target);
  r.tolerance = tolerance;
  r.pass = r.abs_error <= tolerance && std::isfinite(r.abs_error);
  return r;
}

}  // namespace

DistReport cauchy_pompeiu_check(const SuperFunction& g, const std::vector<double>& eps_list,
                                double tolerance) {
  if (g.blocks() != 1) fail(ErrorCode::Dimension, "the pole identity lives on one block");
  if (g.parity() != std::optional<int>(0) || g.term_count() != g.even_part().term_count())
    fail(ErrorCode::Dimension, "test function must be even with no odd generators");
  check_eps_list(eps_list);

  SuperFunction dg = apply_derivation(
      Derivation::partial(1, Coord{CoordKind::ZBar, 0}), g);
  const double radius = cutoff_radius(g);
  const std::complex<double> measure(0.0, -2.0);  // dz dzbar = -2i dx dy

  std::vector<EpsSample> trace;
  for (double eps : eps_list) {
    auto integrand = [&](std::complex<double> z) {
      std::complex<double> zs[1] = {z};
      return measure * dg.eval_even(zs) / z;
    };
    trace.push_back(EpsSample{eps, quad::annulus_integral(integrand, eps, radius)});
  }

  std::complex<double> g0 = superalg::eval_origin(g).to_complex();
  std::complex<double> target = std::complex<double>(0.0, 2.0 * M_PI) * g0;
  return finish_report(std::move(trace), target, tolerance);
}

DistReport sigma_pairing_check(const LinearModel& model, const SuperFunction& f,
                               const std::vector<double>& eps_list, double tolerance) {
  if (model.blocks() != 1 || f.blocks() != 1)
    fail(ErrorCode::Dimension, "the sigma identity lives on one block");
  if (!is_equivariant(model, f)) fail(ErrorCode::Equivariance, "form is not Q-equivariant");
  check_eps_list(eps_list);

  // Away from the origin Q(sigma f) = A - (dbar A)/(i lambda z) theta thetabar
  // for A the even scalar part of f, so the annulus Berezin integral reduces
  // to a plane integral of -(dbar A)/(i lambda z) against the block measure.
  SuperFunction a = f.even_part();
  SuperFunction da = apply_derivation(Derivation::partial(1, Coord{CoordKind::ZBar, 0}), a);
  const std::complex<double> inv_il =
      1.0 / (ComplexRational::unit_i() * model.rep.lambda(0)).to_complex();
  const std::complex<double> kappa = convention::kappa().to_complex();
  const double radius = cutoff_radius(f);

  const std::complex<double> loc = qrep::loc_scalar(model.rep).to_complex();
  const std::complex<double> f0 = superalg::eval_origin(f).to_complex();

  std::vector<EpsSample> trace;
  for (double eps : eps_list) {
    auto integrand = [&](std::complex<double> z) {
      std::complex<double> zs[1] = {z};
      return -kappa * inv_il * da.eval_even(zs) / z;
    };
    std::complex<double> annulus = quad::annulus_integral(integrand, eps, radius);
    trace.push_back(EpsSample{eps, annulus - loc * f0});
  }

  std::complex<double> target = superalg::berezin_integral(f).to_complex() - loc * f0;
  return finish_report(std::move(trace), target, tolerance);
}

ExactScalar calibrate_kappa() {
  // Witness: one block, lambda = 3i, f = e^{-u}. The pairing fixes the
  // measure constant uniquely; lambda cancels, so any nonzero value works.
  qrep::CSRep rep = qrep::CSRep::from_lambdas({ComplexRational(Rational(0), Rational(3))});
  LinearModel model = build_model(rep);
  FormProfile profile;
  profile.poly = {{ComplexRational(1)}};
  profile.envelope = {Rational(1)};
  SuperFunction witness = make_equivariant_form(model, profile);

  ExactScalar raw = superalg::berezin_integral(witness, ExactScalar(1));
  ExactScalar want = qrep::loc_scalar(rep) * superalg::eval_origin(witness);
  return want * raw.inverse();
}

}  // namespace superloc::locverify
