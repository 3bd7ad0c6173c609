#include <doctest.h>

#include <random>

#include "superloc/json_io.hpp"
#include "superloc/qrep.hpp"
#include "test_support.hpp"

using namespace superloc;
using namespace superloc::qrep;
using testsup::cr;

namespace {

QGroupSpec rank2_spec() { return QGroupSpec{{cr(0, 1), cr(0, 1)}}; }

Character chi(std::vector<long> c) { return Character{std::move(c)}; }

// Canonical 4m x 4m matrix of Q for blocks with the given i*lambda scalars:
// Q z_i = theta_i, Q zbar_i = thetabar_i, Q theta_i = i lambda_i z_i,
// Q thetabar_i = -i lambda_i zbar_i.
detail::Matrix canonical_q(const std::vector<ComplexRational>& lambdas) {
  size_t m = lambdas.size();
  detail::Matrix q(4 * m, 4 * m);
  for (size_t i = 0; i < m; ++i) {
    ComplexRational il = ComplexRational::unit_i() * lambdas[i];
    q.at(2 * m + 2 * i, 2 * i) = ComplexRational(1);          // theta = Q z
    q.at(2 * m + 2 * i + 1, 2 * i + 1) = ComplexRational(1);  // thetabar = Q zbar
    q.at(2 * i, 2 * m + 2 * i) = il;                          // Q theta = i lambda z
    q.at(2 * i + 1, 2 * m + 2 * i + 1) = -il;                 // Q thetabar = -i lambda zbar
  }
  return q;
}

std::mt19937_64& rng() {
  static std::mt19937_64 gen(2024);
  return gen;
}

ComplexRational random_nonzero() {
  while (true) {
    ComplexRational c = cr(static_cast<long>(rng()() % 7) - 3, static_cast<long>(rng()() % 7) - 3);
    if (!c.is_zero()) return c;
  }
}

CSRep random_rep(const QGroupSpec& q, int blocks) {
  std::vector<Summand> summands;
  for (int i = 0; i < blocks; ++i) {
    while (true) {
      Character c = chi({static_cast<long>(rng()() % 9) - 4, static_cast<long>(rng()() % 9) - 4});
      if (lambda_of(c, q).is_zero()) continue;
      summands.push_back(Summand{std::move(c), rng()() % 2 == 0});
      break;
    }
  }
  return CSRep(q, std::move(summands));
}

}  // namespace

TEST_CASE("lambda_of is the lattice pairing") {
  CHECK(lambda_of(chi({1}), QGroupSpec{{cr(0, 3)}}) == cr(0, 3));
  CHECK(lambda_of(chi({0, 0}), rank2_spec()) == cr(0));
  CHECK(lambda_of(chi({1, -2}), rank2_spec()) == cr(0, -1));
  CHECK_THROWS_AS(lambda_of(chi({1}), rank2_spec()), Error);
}

TEST_CASE("nondegeneracy is enforced at construction") {
  QGroupSpec q{{cr(1), cr(-1)}};
  CHECK_THROWS_AS(CSRep(q, {Summand{chi({0, 0}), false}}), Error);
  CHECK_THROWS_AS(CSRep(q, {Summand{chi({1, 1}), false}}), Error);  // pairs to zero
  CHECK_NOTHROW(CSRep(q, {Summand{chi({1, 0}), false}}));
}

TEST_CASE("pfaffian is the product of block lambdas with orientation signs") {
  auto rep1 = CSRep::from_lambdas({cr(2)});
  CHECK(pfaffian(rep1) == cr(2));
  auto rep2 = CSRep::from_lambdas({cr(2), cr(3)});
  CHECK(pfaffian(rep2) == cr(6));
  CHECK(pfaffian(rep2.with_flipped(1)) == cr(-6));
}

TEST_CASE("flip parity moves the pfaffian sign, exhaustively for m <= 3") {
  for (int m = 1; m <= 3; ++m) {
    auto base = random_rep(rank2_spec(), m);
    ComplexRational pf0 = pfaffian(base);
    ExactScalar loc0 = loc_scalar(base);
    for (unsigned mask = 0; mask < (1u << m); ++mask) {
      CSRep flipped = base;
      int flips = 0;
      for (int i = 0; i < m; ++i)
        if (mask & (1u << i)) {
          flipped = flipped.with_flipped(i);
          ++flips;
        }
      ComplexRational expect_pf = (flips % 2 == 0) ? pf0 : -pf0;
      CHECK(pfaffian(flipped) == expect_pf);
      if (flips % 2 == 0) {
        CHECK(loc_scalar(flipped) == loc0);
      } else {
        CHECK(loc_scalar(flipped) == -loc0);
      }
    }
  }
}

TEST_CASE("loc_scalar closed forms") {
  // single block, lambda = 3i: 2 pi / (3i) = -(2/3) i pi
  auto rep = CSRep::from_lambdas({cr(0, 3)});
  CHECK(loc_scalar(rep) == testsup::pi_term(0, 1, -2, 3, 1));
  // canonical pairing gives (2 pi / i)^m for any block lambdas
  std::vector<ComplexRational> lambdas = {cr(0, 1), cr(0, 2), cr(1, -1)};
  auto rep3 = CSRep::from_lambdas(lambdas);
  ExactScalar paired = loc_pairing(rep3, canonical_fiber(rep3));
  ExactScalar expect = ExactScalar::pi_power(cr(8) * ComplexRational::i_power(-3), 3);
  CHECK(paired == expect);
}

TEST_CASE("loc pairing is invariant under Q -> cQ") {
  for (const ComplexRational& c : {cr(2), cr(0, 1), cr(1, 1)}) {
    ComplexRational c2 = c * c;
    for (int m = 1; m <= 3; ++m) {
      auto rep = random_rep(rank2_spec(), m);
      QGroupSpec scaled_q = rep.qgroup();
      for (auto& v : scaled_q.q_square) v *= c2;
      CSRep scaled(scaled_q, rep.summands());
      for (int i = 0; i < m; ++i) CHECK(scaled.lambda(i) == c2 * rep.lambda(i));

      BerFiber fiber{ExactScalar(random_nonzero())};
      BerFiber rescaled = fiber.rescaled_for_q_scaling(c, m);
      CHECK(loc_pairing(scaled, rescaled) == loc_pairing(rep, fiber));
      // the canonical pairing is (2 pi / i)^m before and after
      CHECK(loc_pairing(scaled, canonical_fiber(scaled)) ==
            loc_pairing(rep, canonical_fiber(rep)));
    }
  }
}

TEST_CASE("direct sums concatenate and loc is multiplicative") {
  QGroupSpec q = rank2_spec();
  auto a = random_rep(q, 2);
  auto b = random_rep(q, 1);
  auto sum = direct_sum(a, b);
  CHECK(sum.blocks() == 3);
  CHECK(sum.summands()[2].chi == b.summands()[0].chi);
  CHECK(loc_scalar(sum) == loc_scalar(a) * loc_scalar(b));
  CHECK(pfaffian(sum) == pfaffian(a) * pfaffian(b));

  // 2 pi / lambda times 2 pi / lambda' = (2 pi)^2 / (lambda lambda')
  auto single_a = CSRep::from_lambdas({cr(0, 3)});
  auto single_b = CSRep(single_a.qgroup(), {Summand{chi({2}), false}});
  auto both = direct_sum(single_a, single_b);
  CHECK(loc_scalar(both) == loc_scalar(single_a) * loc_scalar(single_b));

  // empty summand list is the unit
  CSRep empty(q, {});
  CHECK(loc_scalar(empty) == ExactScalar(1));
  auto same = direct_sum(empty, a);
  CHECK(same.blocks() == a.blocks());
  CHECK(loc_scalar(same) == loc_scalar(a));

  CHECK_THROWS_AS(direct_sum(a, CSRep::from_lambdas({cr(2)})), Error);
}

TEST_CASE("loc multiplicativity on random pairs") {
  QGroupSpec q{{cr(1, 1), cr(0, 2), cr(-1)}};
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<Summand> sa, sb;
    auto draw = [&] {
      while (true) {
        Character c =
            chi({static_cast<long>(rng()() % 5) - 2, static_cast<long>(rng()() % 5) - 2,
                 static_cast<long>(rng()() % 5) - 2});
        if (!lambda_of(c, q).is_zero()) return Summand{c, rng()() % 2 == 0};
      }
    };
    for (unsigned i = 0; i <= rng()() % 3; ++i) sa.push_back(draw());
    for (unsigned i = 0; i <= rng()() % 3; ++i) sb.push_back(draw());
    CSRep a(q, sa), b(q, sb);
    CHECK(loc_scalar(direct_sum(a, b)) == loc_scalar(a) * loc_scalar(b));
  }
}

TEST_CASE("decompose recognizes the canonical block form") {
  QGroupSpec q{{cr(0, 3)}};
  auto result = decompose(q, {chi({1}), chi({-1})}, canonical_q({cr(0, 3)}));
  CHECK(result.rep.blocks() == 1);
  CHECK(result.rep.summands()[0].chi == chi({1}));
  CHECK(result.rep.lambda(0) == cr(0, 3));
  CHECK(result.even_basis.at(0, 0) == cr(1));
  CHECK(result.even_basis.at(1, 1) == cr(1));
}

TEST_CASE("decompose rejects degenerate and malformed input") {
  QGroupSpec q{{cr(0, 3)}};
  // singular Q block: zero odd-to-even block makes Q^2 = 0
  detail::Matrix singular(4, 4);
  singular.at(2, 0) = cr(1);
  singular.at(3, 1) = cr(1);
  CHECK_THROWS_AS(decompose(q, {chi({1}), chi({-1})}, singular), Error);
  // zero character
  CHECK_THROWS_AS(decompose(q, {chi({0}), chi({0})}, canonical_q({cr(0, 3)})), Error);
  // unpaired characters
  CHECK_THROWS_AS(decompose(q, {chi({1}), chi({2})}, canonical_q({cr(0, 3)})), Error);
  // even-even block present
  detail::Matrix bad = canonical_q({cr(0, 3)});
  bad.at(0, 1) = cr(1);
  CHECK_THROWS_AS(decompose(q, {chi({1}), chi({-1})}, bad), Error);
  // lambda = 0: q_square = 0
  CHECK_THROWS_AS(decompose(QGroupSpec{{cr(0)}}, {chi({1}), chi({-1})}, canonical_q({cr(0)})),
                  Error);
}

TEST_CASE("decompose recovers lambdas after a block-diagonal basis change") {
  QGroupSpec q{{cr(2, 1), cr(0, -1)}};
  std::vector<Character> weights = {chi({1, 0}), chi({0, 1}), chi({-1, 0}), chi({0, -1})};
  std::vector<ComplexRational> lambdas = {lambda_of(weights[0], q), lambda_of(weights[1], q)};

  // canonical matrix in the basis order z1 z2 zbar1 zbar2 / th1 th2 tb1 tb2
  detail::Matrix qm(8, 8);
  auto set_block = [&](size_t zi, size_t zbi, const ComplexRational& l) {
    ComplexRational il = ComplexRational::unit_i() * l;
    qm.at(4 + zi, zi) = cr(1);
    qm.at(4 + zbi, zbi) = cr(1);
    qm.at(zi, 4 + zi) = il;
    qm.at(zbi, 4 + zbi) = -il;
  };
  set_block(0, 2, lambdas[0]);
  set_block(1, 3, lambdas[1]);

  for (int trial = 0; trial < 20; ++trial) {
    // weight spaces are one-dimensional here, so a block-diagonal basis
    // change is a nonzero scaling per basis vector
    detail::Matrix s(8, 8);
    for (size_t i = 0; i < 8; ++i) s.at(i, i) = random_nonzero();
    detail::Matrix conj = detail::inverse(s) * qm * s;
    auto result = decompose(q, weights, conj);
    REQUIRE(result.rep.blocks() == 2);
    std::vector<ComplexRational> got = {result.rep.lambda(0), result.rep.lambda(1)};
    bool direct = got[0] == lambdas[0] && got[1] == lambdas[1];
    bool swapped = got[0] == lambdas[1] && got[1] == lambdas[0];
    CHECK((direct || swapped));

    // Q z_i = theta_i exactly, as matrices
    for (int i = 0; i < 2; ++i) {
      auto zvec = result.even_basis.column(static_cast<size_t>(2 * i));
      std::vector<ComplexRational> full(8);
      for (size_t r = 0; r < 4; ++r) full[r] = zvec[r];
      auto image = conj * full;
      auto theta = result.odd_basis.column(static_cast<size_t>(2 * i));
      for (size_t r = 0; r < 4; ++r) {
        CHECK(image[r] == cr(0));
        CHECK(image[4 + r] == theta[r]);
      }
    }
  }
}

TEST_CASE("decompose with multiplicity two weight spaces") {
  QGroupSpec q{{cr(0, 2)}};
  std::vector<Character> weights = {chi({1}), chi({1}), chi({-1}), chi({-1})};
  ComplexRational l = lambda_of(weights[0], q);
  detail::Matrix qm(8, 8);
  ComplexRational il = ComplexRational::unit_i() * l;
  for (size_t i = 0; i < 4; ++i) {
    qm.at(4 + i, i) = cr(1);
    qm.at(i, 4 + i) = (i < 2) ? il : -il;
  }
  // mix inside each eigenspace, even and odd
  detail::Matrix s = detail::Matrix::identity(8);
  s.at(0, 1) = cr(1, 2);
  s.at(2, 3) = cr(-1);
  s.at(4, 5) = cr(3);
  detail::Matrix conj = detail::inverse(s) * qm * s;
  auto result = decompose(q, weights, conj);
  CHECK(result.rep.blocks() == 2);
  CHECK(result.rep.lambda(0) == l);
  CHECK(result.rep.lambda(1) == l);
}

TEST_CASE("representation JSON round-trip") {
  QGroupSpec q{{testsup::crq(1, 2, -3, 1), cr(0, 2)}};
  CSRep rep(q, {Summand{chi({1, 0}), false}, Summand{chi({0, -1}), true}});
  auto j = io::to_json(rep);
  CSRep back = io::csrep_from_json(j);
  CHECK(back.qgroup() == rep.qgroup());
  CHECK(back.blocks() == rep.blocks());
  for (int i = 0; i < rep.blocks(); ++i) {
    CHECK(back.summands()[static_cast<size_t>(i)].chi == rep.summands()[static_cast<size_t>(i)].chi);
    CHECK(back.summands()[static_cast<size_t>(i)].flipped ==
          rep.summands()[static_cast<size_t>(i)].flipped);
    CHECK(back.lambda(i) == rep.lambda(i));
  }
}

TEST_CASE("random representation JSON round-trip preserves loc and pfaffian") {
  for (int trial = 0; trial < 25; ++trial) {
    auto rep = random_rep(rank2_spec(), 1 + static_cast<int>(rng()() % 3));
    CSRep back = io::csrep_from_json(io::to_json(rep));
    CHECK(pfaffian(back) == pfaffian(rep));
    CHECK(loc_scalar(back) == loc_scalar(rep));
  }
}
