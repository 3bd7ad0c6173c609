#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "superloc/exact.hpp"

namespace superloc::superalg {

// Linear model R^{2m|2m} with m blocks. Block i carries the even coordinates
// z_i, zbar_i and the odd coordinates theta_i = Q z_i, thetabar_i = Q zbar_i.

inline constexpr int kMaxBlocks = 30;

enum class CoordKind { Z, ZBar, Theta, ThetaBar };

struct Coord {
  CoordKind kind;
  int block;
};

inline bool is_even(CoordKind k) { return k == CoordKind::Z || k == CoordKind::ZBar; }

/// Powers of z_i and zbar_i per block; entry count always equals the block count.
struct EvenMonomial {
  std::vector<std::pair<unsigned, unsigned>> powers;

  static EvenMonomial one(int blocks) {
    EvenMonomial m;
    m.powers.assign(static_cast<size_t>(blocks), {0u, 0u});
    return m;
  }
  unsigned total_degree() const {
    unsigned d = 0;
    for (auto [a, b] : powers) d += a + b;
    return d;
  }
  bool is_one() const { return total_degree() == 0; }
  bool operator==(const EvenMonomial&) const = default;
};

/// Product of odd generators in canonical ascending order:
/// bit 2i = theta_i, bit 2i+1 = thetabar_i.
struct OddMonomial {
  std::uint64_t mask = 0;

  int degree() const { return __builtin_popcountll(mask); }
  bool empty() const { return mask == 0; }
  bool operator==(const OddMonomial&) const = default;
};

/// Canonical-order product m1 * m2. Returns the merged mask and the
/// transposition-parity sign, or nullopt when a generator repeats.
std::optional<std::pair<OddMonomial, int>> odd_product(OddMonomial m1, OddMonomial m2);

/// Sign collected by an odd derivation reaching the generator at `bit`:
/// (-1)^{number of generators before it in canonical order}.
int odd_removal_sign(std::uint64_t mask, int bit);

struct Term {
  ExactScalar coeff;
  EvenMonomial even;
  OddMonomial odd;
};

/// Finite sum of Gaussian-enveloped even monomials times odd monomials:
///   (sum_t c_t z^a zbar^b theta...) * prod_i exp(-s_i z_i zbar_i).
/// The envelope is shared by all terms; values are immutable after
/// construction and normalization keeps term keys unique with no zeros.
class SuperFunction {
 public:
  SuperFunction(int blocks, std::vector<Rational> envelope);
  static SuperFunction zero(int blocks);
  static SuperFunction constant(int blocks, ExactScalar c);
  static SuperFunction coordinate(int blocks, Coord c);
  /// exp(-sum_i s_i z_i zbar_i)
  static SuperFunction gaussian(std::vector<Rational> envelope);

  int blocks() const { return blocks_; }
  const std::vector<Rational>& envelope() const { return envelope_; }
  bool envelope_positive() const;

  void add_term(const EvenMonomial& even, OddMonomial odd, const ExactScalar& coeff);
  size_t term_count() const { return terms_.size(); }
  std::vector<Term> terms() const;
  ExactScalar coefficient(const EvenMonomial& even, OddMonomial odd) const;

  bool is_zero() const { return terms_.empty(); }
  /// 0 or 1 when all terms have the same odd-degree parity, nullopt otherwise.
  std::optional<int> parity() const;

  SuperFunction operator+(const SuperFunction& o) const;
  SuperFunction operator-(const SuperFunction& o) const;
  SuperFunction operator-() const;
  SuperFunction scaled(const ExactScalar& c) const;

  /// Terms with empty odd monomial, same envelope.
  SuperFunction even_part() const;
  /// Terms whose odd monomial equals `odd`, with that factor stripped.
  SuperFunction odd_coefficient(OddMonomial odd) const;

  unsigned max_even_degree() const;

  /// Numeric value of the even part (odd terms ignored) at the given point.
  std::complex<double> eval_even(std::span<const std::complex<double>> z) const;

  std::string str() const;

 private:
  friend SuperFunction multiply(const SuperFunction&, const SuperFunction&);
  friend class Derivation;

  struct TermKey {
    std::vector<unsigned> even;  // flattened (a_0, b_0, a_1, b_1, ...)
    std::uint64_t odd;
    auto operator<=>(const TermKey&) const = default;
  };
  static TermKey key_of(const EvenMonomial& e, OddMonomial o);
  static EvenMonomial even_of(const TermKey& k);

  int blocks_;
  std::vector<Rational> envelope_;
  std::map<TermKey, ExactScalar> terms_;
};

/// Pointwise product; envelopes add.
SuperFunction multiply(const SuperFunction& f, const SuperFunction& g);

/// Finite complex-linear combination of (monomial prefactor) * (coordinate
/// derivation). Odd prefactors and odd derivations carry parity signs.
class Derivation {
 public:
  explicit Derivation(int blocks) : blocks_(blocks) {}

  static Derivation partial(int blocks, Coord target);

  void add_term(ExactScalar coeff, EvenMonomial pre_even, OddMonomial pre_odd, Coord target);
  int blocks() const { return blocks_; }

  SuperFunction apply(const SuperFunction& f) const;

 private:
  struct DTerm {
    ExactScalar coeff;
    EvenMonomial pre_even;
    OddMonomial pre_odd;
    Coord target;
  };
  int blocks_;
  std::vector<DTerm> terms_;
};

/// Graded Leibniz application of D to f.
SuperFunction apply_derivation(const Derivation& d, const SuperFunction& f);

/// Exact value of the even integral of z^a zbar^b e^{-s z zbar} over the
/// plane with measure dx dy: zero unless a == b, else pi * a! / s^{a+1}.
ExactScalar gaussian_moment(unsigned a, unsigned b, const Rational& s);

/// Extracts the coefficient of theta_1 thetabar_1 ... theta_m thetabar_m,
/// integrates each block's even factor as a Gaussian moment, and applies the
/// calibrated per-block measure constant.
ExactScalar berezin_integral(const SuperFunction& f);
ExactScalar berezin_integral(const SuperFunction& f, const ExactScalar& kappa_per_block);

/// Coefficient of the constant term: the value of the reduced even part at 0.
ExactScalar eval_origin(const SuperFunction& f);

}  // namespace superloc::superalg
