#include <doctest.h>

#include "sseala/ealgebras.hpp"
#include "sseala/errors.hpp"
#include "sseala/jet.hpp"
#include "sseala/roots.hpp"

using namespace sseala;

namespace {

RationalMatrix random_square(SampleRng& rng, std::size_t n) {
  RationalMatrix a(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a.at(i, j) = rng.uniform(-2, 2);
  return a;
}

RationalVector random_vec(SampleRng& rng, std::size_t n) {
  RationalVector v(n);
  for (auto& x : v) x = rng.rational(3, 2);
  return v;
}

}  // namespace

TEST_CASE("symmetric powers are gl_n representations") {
  CHECK(SymmetricPower(2, 0).dim() == 1);
  CHECK(SymmetricPower(2, 2).dim() == 3);
  CHECK(SymmetricPower(4, 2).dim() == 10);
  CHECK(SymmetricPower(3, 3).dim() == 10);
  SampleStream stream(31, "test.sym");
  for (std::size_t i = 0; i < 30; ++i) {
    SampleRng rng = stream.at(i);
    const std::size_t n = 2 + i % 2;
    SymmetricPower rep(n, 1 + i % 3);
    RationalMatrix x = random_square(rng, n), y = random_square(rng, n);
    CHECK(rep.act(commutator(x, y)) == commutator(rep.act(x), rep.act(y)));
  }
  // S^1 is the natural module
  SampleRng rng = stream.at(99);
  RationalMatrix x = random_square(rng, 3);
  CHECK(SymmetricPower(3, 1).act(x) == x);
}

TEST_CASE("sl2 irreducibles") {
  for (unsigned mu = 0; mu <= 4; ++mu) {
    FiniteModule v = sl2_irrep(mu);
    REQUIRE(v.dim == mu + 1);
    const auto &e = v["e"], &h = v["h"], &f = v["f"];
    CHECK(commutator(e, f) == h);
    CHECK(commutator(h, e) == rat(2) * e);
    CHECK(commutator(h, f) == rat(-2) * f);
    for (unsigned i = 0; i <= mu; ++i) CHECK(h.at(i, i) == static_cast<long>(mu) - 2 * static_cast<long>(i));
  }
}

TEST_CASE("sp symmetric powers") {
  CHECK(sp_irrep(1, 2).dim == 3);
  CHECK(sp_irrep(2, 1).dim == 4);
  CHECK(sp_irrep(2, 2).dim == 10);
  FiniteModule v = sp_irrep(1, 1);
  CHECK(v.labels.size() == 3);
  CHECK(v.relations_checked > 0);
}

TEST_CASE("T-module relations by direct computation") {
  for (std::size_t m : {1, 2}) {
    SkewFormContext ctx(standard_J(m));
    TModule v(ctx, 2);
    SampleStream stream(32, "test.tmod");
    for (std::size_t i = 0; i < 25; ++i) {
      SampleRng rng = stream.at(i);
      LatticeVector r = rng.nonzero_lattice(2 * m, 2), s = rng.nonzero_lattice(2 * m, 2);
      RationalMatrix expect = ctx.pairing(r, s) * (v.act(r + s) - v.act(r) - v.act(s));
      CHECK(commutator(v.act(r), v.act(s)) == expect);
    }
    CHECK(v.act(LatticeVector(2 * m)).is_zero());
  }
  CHECK_THROWS_AS(TModule(SkewFormContext(standard_J1(1)), 1), PreconditionError);
  CHECK_THROWS_AS(TModule(SkewFormContext(standard_J(1)), 1, rat(1)), UnsupportedOperation);
}

TEST_CASE("jet module action formulas") {
  SkewFormContext ctx(standard_J(1));
  const RationalVector beta{rat(1, 3), rat(-2, 5)};
  JetModule jm(TModule(ctx, 1), beta);
  const LatticeVector k{1, -1}, r{2, 1};
  const RationalVector v{rat(1), rat(-3, 2)};
  JetVector w = JetVector::single(k, v);

  RationalVector kb{Rational(k[0]) + beta[0], Rational(k[1]) + beta[1]};
  Rational scalar = dot(ctx.image(r), kb);
  RationalVector tv = jm.base().act(r).apply(v);
  JetVector expect(2);
  for (std::size_t i = 0; i < 2; ++i) tv[i] += scalar * v[i];
  expect.add(k + r, tv);
  CHECK(jm.h(r, w) == expect);
  CHECK(jm.t(r, w) == JetVector::single(k + r, v));
  const RationalVector u{rat(2), rat(1, 2)};
  CHECK(jm.d(u, w) == dot(u, kb) * w);
}

TEST_CASE("jet and level zero module suites") {
  SkewFormContext ctx(standard_J(1));
  const RationalVector beta{rat(1, 3), rat(-2, 5)};
  CHECK(jet_suite(JetModule(TModule(ctx, 1), beta), 60, 4).ok());
  auto alg = AlgebraSpec::tau_b(ctx, "tauJ");
  Thm52Module mod(alg, 2, 1, beta);
  CHECK(mod.fiber() == 6);
  auto dims = mod.weight_dims_at(LatticeVector{1, 0});
  CHECK(dims == std::map<Rational, std::size_t>{{rat(-2), 2}, {rat(0), 2}, {rat(2), 2}});
  CHECK(thm52_suite(mod, 60, 4).ok());
}

TEST_CASE("coroots and reflections") {
  RealRoot g = parse_real_root("-alpha+delta[1]", 2);
  Coroot c = coroot(g);
  CHECK(c.h == -1);
  CHECK(c.k == RationalVector{rat(1), rat(0)});
  CHECK(parse_real_root("alpha-2delta[2]", 2).m == LatticeVector{0, -2});
  CHECK_THROWS_AS(parse_real_root("alpha+delta[3]", 2), ParseError);
  CHECK_THROWS_AS(parse_real_root("beta", 2), ParseError);
  // a real root evaluates to 2 on its own coroot
  CHECK(evaluate(g.weight(), c) == 2);
  SampleStream stream(33, "test.reflect");
  for (std::size_t i = 0; i < 50; ++i) {
    SampleRng rng = stream.at(i);
    ExtendedWeight x(2), y(2);
    x.a = rng.rational(3, 2);
    y.a = rng.rational(3, 2);
    x.delta = random_vec(rng, 2);
    x.omega = random_vec(rng, 2);
    y.delta = random_vec(rng, 2);
    y.omega = random_vec(rng, 2);
    RealRoot r{i % 2 ? 1 : -1, rng.lattice(2, 2)};
    CHECK(reflect(r, reflect(r, x)) == x);
    CHECK(weight_pairing(reflect(r, x), reflect(r, y)) == weight_pairing(x, y));
  }
}

TEST_CASE("KEALA pieces") {
  CHECK(underline(LatticeVector{1, 2, 3}) == standard_J1(1).apply(LatticeVector{1, 2, 3}));
  CHECK(keala_suite(1, 80, 6).ok());
  auto [u, r] = der_bracket({rat(1), rat(0)}, LatticeVector{0, 1}, {rat(0), rat(1)}, LatticeVector{1, 0});
  // (u|s) v - (v|r) u with u = e1, v = e2, r = e2, s = e1
  CHECK(u == RationalVector{rat(-1), rat(1)});
  CHECK(r == LatticeVector{1, 1});
}
