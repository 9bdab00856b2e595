#include <doctest.h>

#include "sseala/sampling.hpp"
#include "sseala/t_filtration.hpp"

using namespace sseala;

namespace {

std::size_t binom(std::size_t n, std::size_t k) {
  std::size_t c = 1;
  for (std::size_t i = 1; i <= k; ++i) c = c * (n - k + i) / i;
  return c;
}

TElement random_t(SampleRng& rng, std::size_t n, std::int64_t radius, std::size_t terms) {
  TElement x(n);
  for (std::size_t i = 0; i < terms; ++i) x.add_term(rng.nonzero_lattice(n, radius), rng.rational(3, 3));
  return x;
}

TqSpec random_spec(SampleRng& rng, std::size_t n, unsigned q, std::int64_t radius) {
  TqSpec spec{rng.lattice(n, radius), {}};
  for (unsigned i = 0; i < q; ++i) spec.rs.push_back(rng.nonzero_lattice(n, radius));
  return spec;
}

}  // namespace

TEST_CASE("T bracket on basis elements") {
  SkewFormContext ctx(standard_J(1));
  const LatticeVector r{1, 2}, s{-1, 1};
  TElement lhs = t_bracket(ctx, TElement::basis(r), TElement::basis(s));
  const Rational c = ctx.pairing(r, s);
  TElement expect = c * (TElement::basis(r + s) - TElement::basis(r) - TElement::basis(s));
  CHECK(lhs == expect);
  // r + s = 0 drops T(0)
  TElement opp = t_bracket(ctx, TElement::basis(r), TElement::basis(-r));
  CHECK(opp.is_zero());
}

TEST_CASE("T bracket is a Lie bracket") {
  SkewFormContext ctx(standard_J(1));
  SampleStream stream(21, "test.tlie");
  for (std::size_t i = 0; i < 80; ++i) {
    SampleRng rng = stream.at(i);
    TElement x = random_t(rng, 2, 3, 2), y = random_t(rng, 2, 3, 2), z = random_t(rng, 2, 3, 2);
    CHECK(t_bracket(ctx, x, y) == -t_bracket(ctx, y, x));
    TElement jac = t_bracket(ctx, x, t_bracket(ctx, y, z)) + t_bracket(ctx, y, t_bracket(ctx, z, x)) +
                   t_bracket(ctx, z, t_bracket(ctx, x, y));
    CHECK(jac.is_zero());
  }
}

TEST_CASE("quotient dimensions match the monomial count") {
  // T/I_q is dual to the derivatives of order 1..q-1 at 1: binom(N+q-1, N) - 1 of them
  for (std::size_t n : {1, 2, 3, 4})
    for (unsigned q = 1; q <= (n <= 2 ? 4u : 3u); ++q) {
      std::size_t expect = binom(n + q - 1, n) - 1;
      CHECK(quotient_dim(n, q, std::max<std::int64_t>(q - 1, 1)) == expect);
      CHECK(quotient_dim(n, q, q) == expect);
    }
  CHECK(quotient_dim(2, 2, 1) == 2);
  CHECK(quotient_dim(4, 2, 1) == 4);
  CHECK(quotient_dim(2, 3, 2) == 5);
}

TEST_CASE("T_q lies in I_q and the two membership tests agree") {
  SampleStream stream(22, "test.iq");
  std::size_t outside = 0;
  for (std::size_t i = 0; i < 120; ++i) {
    SampleRng rng = stream.at(i);
    const std::size_t n = 1 + i % 3;
    const unsigned q = 1 + i % 4;
    TElement t = expand_Tq(random_spec(rng, n, q, 2));
    CHECK(in_ideal(t, q));
    CHECK(in_ideal_via_eta(t, q));
    TElement x = random_t(rng, n, 2, 3);
    CHECK(in_ideal(x, q) == in_ideal_via_eta(x, q));
    outside += !in_ideal(x, 2);
  }
  CHECK(outside > 0);
}

TEST_CASE("eta of T(r) is t^r - 1") {
  LaurentPoly e = eta(TElement::basis(LatticeVector{2, -1}, rat(3)));
  CHECK(e.coefficient(LatticeVector{2, -1}) == 3);
  CHECK(e.coefficient(LatticeVector{0, 0}) == -3);
  CHECK(e.terms().size() == 2);
}

TEST_CASE("oracle agrees with brute-force span membership") {
  CHECK(oracle_cross_validation(2, 3, 1, 20, 1).ok());
}

TEST_CASE("psi is a homomorphism onto sp") {
  for (std::size_t m : {1, 2}) {
    SkewFormContext ctx(standard_J(m));
    const std::size_t n = 2 * m;
    SampleStream stream(23, "test.psi");
    for (std::size_t i = 0; i < 40; ++i) {
      SampleRng rng = stream.at(i);
      TElement x = random_t(rng, n, 2, 2), y = random_t(rng, n, 2, 2);
      CHECK(psi(ctx, t_bracket(ctx, x, y)) == commutator(psi(ctx, x), psi(ctx, y)));
      CHECK(in_g_b(ctx, psi(ctx, x)));
    }
    const LatticeVector r = LatticeVector::unit(n, 0);
    CHECK(psi_basis(ctx, r) == outer(r, ctx.image(r)));
    CHECK(psi_image_dim(ctx, 2) == 2 * m * m + m);
  }
}

TEST_CASE("kernel of psi is spanned inside the kernel") {
  SkewFormContext ctx(standard_J(1));
  auto ker = psi_kernel_basis(ctx, 1);
  // 8 nonzero points, image of dimension 3
  CHECK(ker.size() == 5);
  for (const auto& k : ker) CHECK(psi(ctx, k).is_zero());
  CHECK(kernel_central_check(ctx, 1).ok());
}

TEST_CASE("the quotient report carries the printed count as a discrepancy") {
  auto rep = quotient_dims_report(2, {3});
  const CheckRecord* rec = rep.find("t-filtration", "dims.quotient[N=2,q=3]");
  REQUIRE(rec);
  CHECK(rec->status == Status::Pass);
  CHECK(rec->payload["oracle"] == 5);
  CHECK(rec->payload["paper"] == 6);
  CHECK(rec->payload["agree"] == false);
}
