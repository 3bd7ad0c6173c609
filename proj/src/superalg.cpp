#include "superloc/superalg.hpp"

#include <sstream>

#include "superloc/convention.hpp"
#include "superloc/error.hpp"

namespace superloc::superalg {

std::optional<std::pair<OddMonomial, int>> odd_product(OddMonomial m1, OddMonomial m2) {
  if (m1.mask & m2.mask) return std::nullopt;
  // Each generator of m2 moves left past the generators of m1 above it.
  int transpositions = 0;
  std::uint64_t rest = m2.mask;
  while (rest) {
    int bit = __builtin_ctzll(rest);
    rest &= rest - 1;
    transpositions += __builtin_popcountll(m1.mask >> (bit + 1));
  }
  int sign = (transpositions % 2 == 0) ? +1 : -1;
  return std::make_pair(OddMonomial{m1.mask | m2.mask}, sign);
}

int odd_removal_sign(std::uint64_t mask, int bit) {
  std::uint64_t below = mask & ((std::uint64_t{1} << bit) - 1);
  return (__builtin_popcountll(below) % 2 == 0) ? +1 : -1;
}

SuperFunction::SuperFunction(int blocks, std::vector<Rational> envelope)
    : blocks_(blocks), envelope_(std::move(envelope)) {
  if (blocks < 0 || blocks > kMaxBlocks) fail(ErrorCode::Dimension, "unsupported block count");
  if (envelope_.size() != static_cast<size_t>(blocks))
    fail(ErrorCode::Dimension, "envelope length must equal block count");
  for (const Rational& s : envelope_)
    if (sgn(s) < 0) fail(ErrorCode::Divergence, "negative Gaussian envelope");
}

SuperFunction SuperFunction::zero(int blocks) {
  return SuperFunction(blocks, std::vector<Rational>(static_cast<size_t>(blocks), Rational(0)));
}

SuperFunction SuperFunction::constant(int blocks, ExactScalar c) {
  SuperFunction f = zero(blocks);
  f.add_term(EvenMonomial::one(blocks), OddMonomial{}, c);
  return f;
}

SuperFunction SuperFunction::coordinate(int blocks, Coord c) {
  if (c.block < 0 || c.block >= blocks) fail(ErrorCode::Dimension, "coordinate block out of range");
  SuperFunction f = zero(blocks);
  EvenMonomial e = EvenMonomial::one(blocks);
  OddMonomial o;
  switch (c.kind) {
    case CoordKind::Z: e.powers[c.block].first = 1; break;
    case CoordKind::ZBar: e.powers[c.block].second = 1; break;
    case CoordKind::Theta: o.mask = std::uint64_t{1} << (2 * c.block); break;
    case CoordKind::ThetaBar: o.mask = std::uint64_t{1} << (2 * c.block + 1); break;
  }
  f.add_term(e, o, ExactScalar(1));
  return f;
}

SuperFunction SuperFunction::gaussian(std::vector<Rational> envelope) {
  int blocks = static_cast<int>(envelope.size());
  SuperFunction f(blocks, std::move(envelope));
  f.add_term(EvenMonomial::one(blocks), OddMonomial{}, ExactScalar(1));
  return f;
}

bool SuperFunction::envelope_positive() const {
  for (const Rational& s : envelope_)
    if (sgn(s) <= 0) return false;
  return true;
}

SuperFunction::TermKey SuperFunction::key_of(const EvenMonomial& e, OddMonomial o) {
  TermKey k;
  k.even.reserve(e.powers.size() * 2);
  for (auto [a, b] : e.powers) {
    k.even.push_back(a);
    k.even.push_back(b);
  }
  k.odd = o.mask;
  return k;
}

EvenMonomial SuperFunction::even_of(const TermKey& k) {
  EvenMonomial e;
  e.powers.reserve(k.even.size() / 2);
  for (size_t i = 0; i + 1 < k.even.size(); i += 2) e.powers.emplace_back(k.even[i], k.even[i + 1]);
  return e;
}

void SuperFunction::add_term(const EvenMonomial& even, OddMonomial odd, const ExactScalar& coeff) {
  if (even.powers.size() != static_cast<size_t>(blocks_))
    fail(ErrorCode::Dimension, "even monomial block count mismatch");
  if (odd.mask >> (2 * blocks_)) fail(ErrorCode::Dimension, "odd monomial block count mismatch");
  if (coeff.is_zero()) return;
  TermKey k = key_of(even, odd);
  auto it = terms_.find(k);
  if (it == terms_.end()) {
    terms_.emplace(std::move(k), coeff);
  } else {
    it->second += coeff;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

std::vector<Term> SuperFunction::terms() const {
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (const auto& [k, c] : terms_) out.push_back(Term{c, even_of(k), OddMonomial{k.odd}});
  return out;
}

ExactScalar SuperFunction::coefficient(const EvenMonomial& even, OddMonomial odd) const {
  auto it = terms_.find(key_of(even, odd));
  return it == terms_.end() ? ExactScalar() : it->second;
}

std::optional<int> SuperFunction::parity() const {
  std::optional<int> p;
  for (const auto& [k, c] : terms_) {
    int tp = __builtin_popcountll(k.odd) % 2;
    if (!p)
      p = tp;
    else if (*p != tp)
      return std::nullopt;
  }
  return p ? p : std::optional<int>(0);
}

SuperFunction SuperFunction::operator+(const SuperFunction& o) const {
  if (blocks_ != o.blocks_) fail(ErrorCode::Dimension, "block count mismatch in sum");
  if (envelope_ != o.envelope_)
    fail(ErrorCode::Dimension, "envelope mismatch in sum; sums live in one Gaussian class");
  SuperFunction out = *this;
  for (const auto& [k, c] : o.terms_) {
    auto it = out.terms_.find(k);
    if (it == out.terms_.end()) {
      out.terms_.emplace(k, c);
    } else {
      it->second += c;
      if (it->second.is_zero()) out.terms_.erase(it);
    }
  }
  return out;
}

SuperFunction SuperFunction::operator-() const { return scaled(ExactScalar(-1)); }

SuperFunction SuperFunction::operator-(const SuperFunction& o) const { return *this + (-o); }

SuperFunction SuperFunction::scaled(const ExactScalar& c) const {
  SuperFunction out(blocks_, envelope_);
  if (c.is_zero()) return out;
  for (const auto& [k, t] : terms_) out.terms_.emplace(k, t * c);
  return out;
}

SuperFunction SuperFunction::even_part() const { return odd_coefficient(OddMonomial{}); }

SuperFunction SuperFunction::odd_coefficient(OddMonomial odd) const {
  SuperFunction out(blocks_, envelope_);
  for (const auto& [k, c] : terms_)
    if (k.odd == odd.mask) out.terms_.emplace(TermKey{k.even, 0}, c);
  return out;
}

unsigned SuperFunction::max_even_degree() const {
  unsigned d = 0;
  for (const auto& [k, c] : terms_) {
    unsigned t = 0;
    for (unsigned p : k.even) t += p;
    d = std::max(d, t);
  }
  return d;
}

std::complex<double> SuperFunction::eval_even(std::span<const std::complex<double>> z) const {
  if (z.size() != static_cast<size_t>(blocks_))
    fail(ErrorCode::Dimension, "evaluation point block count mismatch");
  std::complex<double> acc(0.0, 0.0);
  for (const auto& [k, c] : terms_) {
    if (k.odd != 0) continue;
    std::complex<double> v = c.to_complex();
    for (int i = 0; i < blocks_; ++i) {
      for (unsigned p = 0; p < k.even[2 * i]; ++p) v *= z[i];
      for (unsigned p = 0; p < k.even[2 * i + 1]; ++p) v *= std::conj(z[i]);
    }
    acc += v;
  }
  double arg = 0.0;
  for (int i = 0; i < blocks_; ++i) arg -= envelope_[i].get_d() * std::norm(z[i]);
  return acc * std::exp(arg);
}

std::string SuperFunction::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [k, c] : terms_) {
    if (!first) out << " + ";
    first = false;
    out << "(" << c.str() << ")";
    for (size_t i = 0; 2 * i + 1 < k.even.size(); ++i) {
      if (k.even[2 * i]) {
        out << " z" << i + 1;
        if (k.even[2 * i] > 1) out << "^" << k.even[2 * i];
      }
      if (k.even[2 * i + 1]) {
        out << " zb" << i + 1;
        if (k.even[2 * i + 1] > 1) out << "^" << k.even[2 * i + 1];
      }
    }
    std::uint64_t rest = k.odd;
    while (rest) {
      int bit = __builtin_ctzll(rest);
      rest &= rest - 1;
      out << " " << ((bit % 2 == 0) ? "th" : "tb") << bit / 2 + 1;
    }
  }
  bool any_env = false;
  for (const Rational& s : envelope_)
    if (sgn(s) != 0) any_env = true;
  if (any_env) {
    out << " * exp(";
    bool f2 = true;
    for (size_t i = 0; i < envelope_.size(); ++i) {
      if (sgn(envelope_[i]) == 0) continue;
      if (!f2) out << " ";
      f2 = false;
      out << "-" << envelope_[i].get_str() << " z" << i + 1 << " zb" << i + 1;
    }
    out << ")";
  }
  return out.str();
}

SuperFunction multiply(const SuperFunction& f, const SuperFunction& g) {
  if (f.blocks_ != g.blocks_) fail(ErrorCode::Dimension, "block count mismatch in product");
  std::vector<Rational> env(f.envelope_);
  for (size_t i = 0; i < env.size(); ++i) env[i] += g.envelope_[i];
  SuperFunction out(f.blocks_, std::move(env));
  for (const auto& [kf, cf] : f.terms_) {
    for (const auto& [kg, cg] : g.terms_) {
      auto merged = odd_product(OddMonomial{kf.odd}, OddMonomial{kg.odd});
      if (!merged) continue;
      SuperFunction::TermKey k;
      k.even.resize(kf.even.size());
      for (size_t i = 0; i < k.even.size(); ++i) k.even[i] = kf.even[i] + kg.even[i];
      k.odd = merged->first.mask;
      ExactScalar c = cf * cg;
      if (merged->second < 0) c = -c;
      auto it = out.terms_.find(k);
      if (it == out.terms_.end()) {
        if (!c.is_zero()) out.terms_.emplace(std::move(k), std::move(c));
      } else {
        it->second += c;
        if (it->second.is_zero()) out.terms_.erase(it);
      }
    }
  }
  return out;
}

Derivation Derivation::partial(int blocks, Coord target) {
  Derivation d(blocks);
  d.add_term(ExactScalar(1), EvenMonomial::one(blocks), OddMonomial{}, target);
  return d;
}

void Derivation::add_term(ExactScalar coeff, EvenMonomial pre_even, OddMonomial pre_odd,
                          Coord target) {
  if (pre_even.powers.size() != static_cast<size_t>(blocks_))
    fail(ErrorCode::Dimension, "prefactor block count mismatch");
  if (target.block < 0 || target.block >= blocks_)
    fail(ErrorCode::Dimension, "derivation target out of range");
  if (coeff.is_zero()) return;
  terms_.push_back(DTerm{std::move(coeff), std::move(pre_even), pre_odd, target});
}

SuperFunction Derivation::apply(const SuperFunction& f) const {
  if (blocks_ != f.blocks()) fail(ErrorCode::Dimension, "block count mismatch in derivation");
  SuperFunction out(f.blocks(), f.envelope());

  auto emit = [&](const ExactScalar& coeff, const EvenMonomial& even, OddMonomial odd,
                  const DTerm& dt) {
    // Left-multiply by the prefactor of the derivation term.
    auto merged = odd_product(dt.pre_odd, odd);
    if (!merged) return;
    EvenMonomial e = even;
    for (size_t i = 0; i < e.powers.size(); ++i) {
      e.powers[i].first += dt.pre_even.powers[i].first;
      e.powers[i].second += dt.pre_even.powers[i].second;
    }
    ExactScalar c = coeff * dt.coeff;
    if (merged->second < 0) c = -c;
    out.add_term(e, merged->first, c);
  };

  for (const auto& dt : terms_) {
    int blk = dt.target.block;
    for (const auto& t : f.terms()) {
      switch (dt.target.kind) {
        case CoordKind::Z: {
          unsigned a = t.even.powers[blk].first;
          if (a > 0) {
            EvenMonomial e = t.even;
            e.powers[blk].first = a - 1;
            emit(t.coeff.scaled(ComplexRational(static_cast<long>(a))), e, t.odd, dt);
          }
          if (sgn(f.envelope()[blk]) != 0) {
            EvenMonomial e = t.even;
            e.powers[blk].second += 1;
            emit(t.coeff.scaled(ComplexRational(-f.envelope()[blk])), e, t.odd, dt);
          }
          break;
        }
        case CoordKind::ZBar: {
          unsigned b = t.even.powers[blk].second;
          if (b > 0) {
            EvenMonomial e = t.even;
            e.powers[blk].second = b - 1;
            emit(t.coeff.scaled(ComplexRational(static_cast<long>(b))), e, t.odd, dt);
          }
          if (sgn(f.envelope()[blk]) != 0) {
            EvenMonomial e = t.even;
            e.powers[blk].first += 1;
            emit(t.coeff.scaled(ComplexRational(-f.envelope()[blk])), e, t.odd, dt);
          }
          break;
        }
        case CoordKind::Theta:
        case CoordKind::ThetaBar: {
          int bit = 2 * blk + (dt.target.kind == CoordKind::ThetaBar ? 1 : 0);
          std::uint64_t b = std::uint64_t{1} << bit;
          if (!(t.odd.mask & b)) break;
          int sign = odd_removal_sign(t.odd.mask, bit);
          ExactScalar c = (sign < 0) ? -t.coeff : t.coeff;
          emit(c, t.even, OddMonomial{t.odd.mask & ~b}, dt);
          break;
        }
      }
    }
  }
  return out;
}

SuperFunction apply_derivation(const Derivation& d, const SuperFunction& f) { return d.apply(f); }

ExactScalar gaussian_moment(unsigned a, unsigned b, const Rational& s) {
  if (sgn(s) <= 0) fail(ErrorCode::Divergence, "Gaussian moment needs a positive envelope");
  if (a != b) return ExactScalar();
  mpz_class fac;
  mpz_fac_ui(fac.get_mpz_t(), a);
  Rational denom(1);
  for (unsigned k = 0; k <= a; ++k) denom *= s;
  return ExactScalar::pi_power(ComplexRational(Rational(fac) / denom), 1);
}

ExactScalar berezin_integral(const SuperFunction& f) {
  return berezin_integral(f, convention::kappa());
}

ExactScalar berezin_integral(const SuperFunction& f, const ExactScalar& kappa_per_block) {
  int m = f.blocks();
  if (f.is_zero()) return ExactScalar();
  if (!f.envelope_positive())
    fail(ErrorCode::Divergence, "Berezin integral needs a strictly positive envelope");
  std::uint64_t full = (m == 0) ? 0 : ((std::uint64_t{1} << (2 * m)) - 1);
  ExactScalar measure(1);
  for (int i = 0; i < m; ++i) measure *= kappa_per_block;
  ExactScalar acc;
  for (const auto& t : f.terms()) {
    if (t.odd.mask != full) continue;
    ExactScalar factor = t.coeff;
    for (int i = 0; i < m && !factor.is_zero(); ++i)
      factor *= gaussian_moment(t.even.powers[i].first, t.even.powers[i].second, f.envelope()[i]);
    acc += factor;
  }
  return acc * measure;
}

ExactScalar eval_origin(const SuperFunction& f) {
  return f.coefficient(EvenMonomial::one(f.blocks()), OddMonomial{});
}

}  // namespace superloc::superalg
