#include "superloc/qrep.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "superloc/error.hpp"

namespace superloc::qrep {

std::string Character::str() const {
  std::ostringstream out;
  out << "(";
  for (size_t i = 0; i < coords.size(); ++i) {
    if (i) out << ",";
    out << coords[i];
  }
  out << ")";
  return out.str();
}

ComplexRational lambda_of(const Character& chi, const QGroupSpec& q) {
  if (chi.coords.size() != q.q_square.size())
    fail(ErrorCode::Dimension, "character rank does not match torus rank");
  ComplexRational acc;
  for (size_t k = 0; k < chi.coords.size(); ++k)
    acc += q.q_square[k] * ComplexRational(chi.coords[k]);
  return acc;
}

CSRep::CSRep(QGroupSpec qgroup, std::vector<Summand> summands)
    : qgroup_(std::move(qgroup)), summands_(std::move(summands)) {
  if (qgroup_.torus_rank() < 1) fail(ErrorCode::Dimension, "torus rank must be at least 1");
  lambdas_.reserve(summands_.size());
  for (const Summand& s : summands_) {
    ComplexRational l = lambda_of(s.chi, qgroup_);
    if (s.flipped) l = -l;
    if (l.is_zero())
      fail(ErrorCode::Nondegeneracy,
           "character " + s.chi.str() + " pairs to zero against Q^2");
    lambdas_.push_back(std::move(l));
  }
}

CSRep CSRep::from_lambdas(const std::vector<ComplexRational>& lambdas) {
  size_t m = lambdas.size();
  QGroupSpec q;
  q.q_square = lambdas.empty() ? std::vector<ComplexRational>{ComplexRational(1)} : lambdas;
  std::vector<Summand> summands;
  summands.reserve(m);
  for (size_t i = 0; i < m; ++i) {
    Character chi;
    chi.coords.assign(m, 0);
    chi.coords[i] = 1;
    summands.push_back(Summand{std::move(chi), false});
  }
  return CSRep(std::move(q), std::move(summands));
}

CSRep CSRep::with_flipped(int i) const {
  std::vector<Summand> s = summands_;
  s.at(static_cast<size_t>(i)).flipped = !s[static_cast<size_t>(i)].flipped;
  return CSRep(qgroup_, std::move(s));
}

ComplexRational pfaffian(const CSRep& rep) {
  ComplexRational p(1);
  for (const ComplexRational& l : rep.lambdas()) p *= l;
  return p;
}

ExactScalar loc_scalar(const CSRep& rep) {
  ComplexRational c(1);
  for (const ComplexRational& l : rep.lambdas()) c *= ComplexRational(2) * l.inverse();
  return ExactScalar::pi_power(c, rep.blocks());
}

BerFiber BerFiber::rescaled_for_q_scaling(const ComplexRational& c, int blocks) const {
  if (c.is_zero()) fail(ErrorCode::Nondegeneracy, "Q rescaling by zero");
  ComplexRational factor(1);
  for (int i = 0; i < 2 * blocks; ++i) factor *= c;
  return BerFiber{coeff.scaled(factor)};
}

ExactScalar loc_pairing(const CSRep& rep, const BerFiber& fiber) {
  return loc_scalar(rep) * fiber.coeff;
}

BerFiber canonical_fiber(const CSRep& rep) {
  ComplexRational c(1);
  for (const ComplexRational& l : rep.lambdas()) c *= l / ComplexRational::unit_i();
  return BerFiber{ExactScalar(c)};
}

CSRep direct_sum(const CSRep& a, const CSRep& b) {
  if (!(a.qgroup() == b.qgroup()))
    fail(ErrorCode::Dimension, "direct sum needs matching torus data");
  std::vector<Summand> s = a.summands();
  s.insert(s.end(), b.summands().begin(), b.summands().end());
  return CSRep(a.qgroup(), std::move(s));
}

DecomposeResult decompose(const QGroupSpec& qgroup, const std::vector<Character>& weights,
                          const detail::Matrix& q) {
  const size_t even_dim = weights.size();
  const size_t total = q.rows;
  if (q.rows != q.cols) fail(ErrorCode::Dimension, "Q matrix must be square");
  if (even_dim == 0 || even_dim % 2 != 0)
    fail(ErrorCode::CSStructure, "even dimension must be a positive even number");
  if (total != 2 * even_dim)
    fail(ErrorCode::CSStructure, "odd dimension must equal even dimension");
  for (const Character& chi : weights)
    if (chi.coords.size() != qgroup.q_square.size())
      fail(ErrorCode::Dimension, "weight rank does not match torus rank");

  // Q must exchange the even and odd subspaces.
  for (size_t r = 0; r < total; ++r)
    for (size_t c = 0; c < total; ++c) {
      bool re = r < even_dim, ce = c < even_dim;
      if (re == ce && !q.at(r, c).is_zero())
        fail(ErrorCode::CSStructure, "Q matrix has a nonzero even-even or odd-odd block");
    }

  for (const Character& chi : weights)
    if (chi.is_zero())
      fail(ErrorCode::Nondegeneracy, "zero character present among the weights");

  // Conjugate pairing of weight multiplicities.
  std::map<Character, long> mult;
  for (const Character& chi : weights) mult[chi]++;
  for (const auto& [chi, n] : mult) {
    auto it = mult.find(chi.negated());
    long n_neg = (it == mult.end()) ? 0 : it->second;
    if (n != n_neg)
      fail(ErrorCode::CSStructure,
           "characters are not conjugate-paired: " + chi.str() + " has unmatched multiplicity");
  }

  // lambda and the scalar action of Q^2 on each even basis vector.
  detail::Matrix q2 = q * q;
  for (size_t j = 0; j < even_dim; ++j) {
    ComplexRational expected = ComplexRational::unit_i() * lambda_of(weights[j], qgroup);
    if (expected.is_zero())
      fail(ErrorCode::Nondegeneracy,
           "character " + weights[j].str() + " pairs to zero against Q^2");
    for (size_t r = 0; r < even_dim; ++r) {
      const ComplexRational& got = q2.at(r, j);
      const ComplexRational want = (r == j) ? expected : ComplexRational();
      if (!(got == want))
        fail(ErrorCode::Nondegeneracy,
             "Q^2 does not act as the lambda-scalar on weight " + weights[j].str());
    }
  }

  // Pair each positive-character vector with a negative partner, in input order.
  std::map<Character, std::vector<size_t>> slots;
  for (size_t j = 0; j < even_dim; ++j) slots[weights[j]].push_back(j);

  std::vector<Summand> summands;
  std::vector<std::pair<size_t, size_t>> pairs;  // (z index, zbar index)
  std::vector<bool> used(even_dim, false);
  for (size_t j = 0; j < even_dim; ++j) {
    if (used[j] || !weights[j].lex_positive()) continue;
    auto& partners = slots[weights[j].negated()];
    size_t partner = even_dim;
    for (size_t cand : partners) {
      if (!used[cand]) {
        partner = cand;
        break;
      }
    }
    if (partner == even_dim) fail(ErrorCode::CSStructure, "unpaired character");
    used[j] = used[partner] = true;
    pairs.emplace_back(j, partner);
    summands.push_back(Summand{weights[j], false});
  }

  CSRep rep(qgroup, summands);

  const size_t m = pairs.size();
  detail::Matrix even_basis(even_dim, 2 * m);
  detail::Matrix odd_basis(even_dim, 2 * m);
  auto q_even_to_odd = [&](size_t col) {  // theta = Q z in odd coordinates
    std::vector<ComplexRational> out(even_dim);
    for (size_t r = 0; r < even_dim; ++r) out[r] = q.at(even_dim + r, col);
    return out;
  };
  for (size_t i = 0; i < m; ++i) {
    auto [zj, zbj] = pairs[i];
    even_basis.at(zj, 2 * i) = ComplexRational(1);
    even_basis.at(zbj, 2 * i + 1) = ComplexRational(1);
    auto theta = q_even_to_odd(zj);
    auto thetabar = q_even_to_odd(zbj);
    for (size_t r = 0; r < even_dim; ++r) {
      odd_basis.at(r, 2 * i) = theta[r];
      odd_basis.at(r, 2 * i + 1) = thetabar[r];
    }
    // Q theta_i = Q^2 z_i = i lambda_i z_i, already verified via the even block;
    // check the odd-to-even block agrees so a singular Q cannot slip through.
    std::vector<ComplexRational> back(even_dim);
    for (size_t r = 0; r < even_dim; ++r)
      for (size_t k = 0; k < even_dim; ++k)
        if (!theta[k].is_zero()) back[r] += q.at(r, even_dim + k) * theta[k];
    ComplexRational want = ComplexRational::unit_i() * rep.lambda(static_cast<int>(i));
    for (size_t r = 0; r < even_dim; ++r) {
      ComplexRational expect = (r == zj) ? want : ComplexRational();
      if (!(back[r] == expect))
        fail(ErrorCode::Nondegeneracy, "odd block of Q is inconsistent (singular Q block)");
    }
  }

  return DecomposeResult{std::move(rep), std::move(even_basis), std::move(odd_basis)};
}

}  // namespace superloc::qrep
