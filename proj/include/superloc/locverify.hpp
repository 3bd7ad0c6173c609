#pragma once

#include <complex>
#include <vector>

#include "superloc/exact.hpp"
#include "superloc/qrep.hpp"
#include "superloc/superalg.hpp"

namespace superloc::locverify {

/// Linear model of a representation: one block per summand, with the odd
/// vector field Q = sum_i [theta_i d/dz_i + thetabar_i d/dzbar_i
///                         + i lambda_i (z_i d/dtheta_i - zbar_i d/dthetabar_i)]
/// and the induced torus field Q^2.
struct LinearModel {
  qrep::CSRep rep;
  superalg::Derivation q_field;
  superalg::Derivation torus_field;

  int blocks() const { return rep.blocks(); }
};

LinearModel build_model(const qrep::CSRep& rep);

/// Q-closed block invariant u_i = z_i zbar_i - theta_i thetabar_i / (i lambda_i),
/// with empty envelope.
superalg::SuperFunction invariant_u(const LinearModel& model, int block);

struct FormProfile {
  // Coefficients of P_i, ascending degree, one polynomial per block.
  std::vector<std::vector<ComplexRational>> poly;
  // Envelope rates s_i > 0.
  std::vector<Rational> envelope;
};

/// f = prod_i P_i(u_i) e^{-s_i u_i}, expanded by nilpotence; Q f = 0 exactly.
superalg::SuperFunction make_equivariant_form(const LinearModel& model, const FormProfile& profile);

bool is_equivariant(const LinearModel& model, const superalg::SuperFunction& f);

struct VerificationReport {
  ExactScalar lhs;       // Berezin integral of f
  ExactScalar rhs;       // loc_scalar(rep) * f(0)
  ExactScalar residual;  // lhs - rhs
  bool equal = false;
};

/// Compares the integral of a Q-equivariant form with the single fixed-point
/// contribution at the origin; all arithmetic exact.
VerificationReport verify_localization(const LinearModel& model, const superalg::SuperFunction& f);

/// Berezin integral of Q g; the contract is that this is always exactly zero.
ExactScalar verify_total_derivative(const LinearModel& model, const superalg::SuperFunction& g);

struct EpsSample {
  double eps;
  std::complex<double> value;
};

struct DistReport {
  std::complex<double> extrapolated{};
  std::complex<double> target{};
  double abs_error = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  std::vector<EpsSample> trace;
};

/// Regularized pairing of dbar(1/z) against a Gaussian-polynomial even g on
/// one block: integrates (1/z) dbar(g) over |z| > eps with the classical
/// measure dz dzbar = -2i dx dy, extrapolates eps -> 0 and compares with
/// 2 pi i g(0) (the delta constant after one integration by parts).
DistReport cauchy_pompeiu_check(const superalg::SuperFunction& g,
                                const std::vector<double>& eps_list, double tolerance = 1e-4);

/// Weak form of the interpolation identity for sigma = theta / (i lambda z)
/// on a one-block model: the annulus integral of Q(sigma f), minus the
/// fixed-point contribution (2 pi / lambda) f(0), must converge to
/// integral(f) - (2 pi / lambda) f(0) as eps -> 0.
DistReport sigma_pairing_check(const LinearModel& model, const superalg::SuperFunction& f,
                               const std::vector<double>& eps_list, double tolerance = 1e-4);

/// Recomputes the per-block measure constant from the e^{-u} witness.
/// Returns the value that makes the witness integral equal 2 pi / lambda.
ExactScalar calibrate_kappa();

}  // namespace superloc::locverify
