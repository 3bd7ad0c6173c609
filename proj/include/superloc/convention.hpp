#pragma once

#include "superloc/exact.hpp"

namespace superloc::convention {

// Sign and measure conventions, frozen after a one-time calibration.
//
// Odd generators are ordered theta_1, thetabar_1, theta_2, thetabar_2, ...;
// Berezin extraction of the monomial in exactly that order has weight +1.
//
// kappa is the per-block even measure constant: the Berezin integral of a
// block multiplies the Gaussian moment (computed against dx dy) by kappa.
// It was calibrated once from the single-block witness
//     f = e^{-u},  u = z zbar - theta thetabar / (i lambda),
// whose integral must pair to (2 pi / lambda) of the value at the origin.
// The raw moment gives pi/(i lambda), so kappa = 2i, independent of lambda.
// All other profiles, envelopes and block counts are validated against this
// frozen value and never re-fitted.
//
// The reduced complex plane keeps the classical wedge convention
// dz dzbar = -2i dx dy; this is what the delta-identity checks on the even
// plane use. kappa differs from it by the one global sign that the odd
// extraction order absorbs.

inline const ExactScalar& kappa() {
  static const ExactScalar k{ComplexRational(Rational(0), Rational(2))};
  return k;
}

inline constexpr int berezin_sign = +1;

inline constexpr const char* tool_version = "1.0.0";

}  // namespace superloc::convention
