#pragma once

#include <string>
#include <vector>

#include "superloc/detail/matrix.hpp"
#include "superloc/exact.hpp"

namespace superloc::qrep {

/// Point of the character lattice of the torus T.
struct Character {
  std::vector<long> coords;

  bool is_zero() const {
    for (long c : coords)
      if (c != 0) return false;
    return true;
  }
  Character negated() const {
    Character n = *this;
    for (long& c : n.coords) c = -c;
    return n;
  }
  /// First nonzero coordinate positive.
  bool lex_positive() const {
    for (long c : coords) {
      if (c > 0) return true;
      if (c < 0) return false;
    }
    return false;
  }
  auto operator<=>(const Character&) const = default;
  std::string str() const;
};

struct QGroupSpec {
  std::vector<ComplexRational> q_square;  // coordinates of Q^2 in the complexified torus algebra

  int torus_rank() const { return static_cast<int>(q_square.size()); }
  bool operator==(const QGroupSpec&) const = default;
};

/// chi(Q^2) = sum_k chi_k * (q_square)_k.
ComplexRational lambda_of(const Character& chi, const QGroupSpec& q);

struct Summand {
  Character chi;
  bool flipped = false;  // orientation of this block reversed: chi replaced by -chi
};

/// Oriented nondegenerate representation given as an ordered list of
/// character blocks. Each block contributes a (2,2)-dimensional summand with
/// lambda = chi(Q^2) (sign-adjusted when flipped); nondegeneracy (every
/// lambda nonzero) is enforced at construction.
class CSRep {
 public:
  CSRep(QGroupSpec qgroup, std::vector<Summand> summands);

  /// One block per lambda over the torus with q_square = (lambda_1, ...)
  /// and chi_i the i-th unit character, so lambda(i) is exactly lambdas[i].
  static CSRep from_lambdas(const std::vector<ComplexRational>& lambdas);

  const QGroupSpec& qgroup() const { return qgroup_; }
  const std::vector<Summand>& summands() const { return summands_; }
  int blocks() const { return static_cast<int>(summands_.size()); }

  /// Flip-adjusted lambda of block i; never zero.
  const ComplexRational& lambda(int i) const { return lambdas_[static_cast<size_t>(i)]; }
  const std::vector<ComplexRational>& lambdas() const { return lambdas_; }

  CSRep with_flipped(int i) const;

 private:
  QGroupSpec qgroup_;
  std::vector<Summand> summands_;
  std::vector<ComplexRational> lambdas_;
};

/// Pf(W) = prod_i lambda_i over the oriented blocks.
ComplexRational pfaffian(const CSRep& rep);

/// Scalar L with Loc_W(omega|_0) = L * c for omega|_0 = c times the canonical
/// basis fiber (z_1 ^ zbar_1 ^ ...)/(theta_1 ^ thetabar_1 ^ ...):
/// L = prod_i 2 pi / lambda_i.
ExactScalar loc_scalar(const CSRep& rep);

/// Coordinate of a Berezinian fiber element in the canonical basis of a rep.
struct BerFiber {
  ExactScalar coeff;

  /// Coordinate change under Q -> cQ (odd basis vectors rescale by c, so the
  /// fiber basis element shrinks by c^{2m} and coordinates grow by c^{2m}).
  BerFiber rescaled_for_q_scaling(const ComplexRational& c, int blocks) const;
};

ExactScalar loc_pairing(const CSRep& rep, const BerFiber& fiber);

/// Fiber coordinate of the canonical volume element of W = V + V*:
/// coeff = prod_i (lambda_i / i). Pairs with loc_scalar to (2 pi / i)^m.
BerFiber canonical_fiber(const CSRep& rep);

/// Concatenation of summand lists; requires identical torus data.
CSRep direct_sum(const CSRep& a, const CSRep& b);

struct DecomposeResult {
  CSRep rep;
  // Canonical basis in input coordinates: even columns z_1, zbar_1, z_2, ...
  // and odd columns theta_1, thetabar_1, ... with theta_i = Q z_i exactly.
  detail::Matrix even_basis;
  detail::Matrix odd_basis;
};

/// Reduces a torus-diagonalized nondegenerate representation to character
/// blocks. `weights` lists the character of each even basis vector; `q` is
/// the matrix of Q on the full space in basis (even 0..2m-1, odd 2m..4m-1)
/// and must exchange the even and odd subspaces. Positive representatives
/// are chosen lex-first-nonzero-positive; Q^2 must act on each weight space
/// as the scalar i*chi(Q^2).
DecomposeResult decompose(const QGroupSpec& qgroup, const std::vector<Character>& weights,
                          const detail::Matrix& q);

}  // namespace superloc::qrep
