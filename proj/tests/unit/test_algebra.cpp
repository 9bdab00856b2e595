#include <doctest.h>

#include "sseala/ealgebras.hpp"
#include "sseala/errors.hpp"
#include "sseala/lie.hpp"
#include "sseala/linalg.hpp"

using namespace sseala;

namespace {

std::shared_ptr<const AlgebraSpec> tau_j(std::size_t m) { return AlgebraSpec::tau_b(SkewFormContext(standard_J(m)), "tauJ"); }

constexpr int E = 0, H = 1, F = 2;

}  // namespace

TEST_CASE("sl2 structure constants") {
  auto g = SimpleLieAlgebra::sl2();
  REQUIRE(g.dim() == 3);
  auto coeff = [&](int a, int b, int c) {
    for (const auto& [k, v] : g.bracket[a][b])
      if (k == c) return v;
    return Rational(0);
  };
  CHECK(coeff(E, F, H) == 1);
  CHECK(coeff(H, E, E) == 2);
  CHECK(coeff(H, F, F) == -2);
  CHECK(g.form[E][F] == g.form[F][E]);
  CHECK(g.root_norm == 2);
}

TEST_CASE("loop brackets and derivation eigenvalues") {
  for (auto alg : {AlgebraSpec::toroidal(2), AlgebraSpec::tau_s(2), tau_j(1)}) {
    const LatticeVector r{1, -2}, s{0, 1};
    GradedElement ef = alg->bracket(alg->x(E, r), alg->x(F, s));
    CHECK(ef.coefficient({SymbolKind::X, H, r + s}) == 1);
    GradedElement he = alg->bracket(alg->x(H, r), alg->x(E, s));
    CHECK(he == 2 * alg->x(E, r + s));
    // [d_i, x(r)] = r_i x(r)
    for (std::size_t i = 0; i < 2; ++i) CHECK(alg->bracket(alg->d_coord(i), alg->x(E, r)) == Rational(r[i]) * alg->x(E, r));
  }
}

TEST_CASE("antisymmetry and Jacobi on random elements") {
  for (auto alg : {AlgebraSpec::toroidal(2), AlgebraSpec::full_toroidal(2), AlgebraSpec::tau_s(2), tau_j(1),
                   AlgebraSpec::tau_b(SkewFormContext(standard_J1(1)), "keala")}) {
    SampleStream stream(11, "test.jacobi/" + alg->name());
    for (std::size_t i = 0; i < 60; ++i) {
      SampleRng rng = stream.at(i);
      auto x = random_element(*alg, rng, 2, 2), y = random_element(*alg, rng, 2, 2), z = random_element(*alg, rng, 2, 2);
      CHECK(alg->bracket(x, y) == -alg->bracket(y, x));
      CHECK(jacobi_check(x, y, z).holds);
    }
  }
}

TEST_CASE("invariant form") {
  for (auto alg : {AlgebraSpec::tau_s(2), tau_j(1), tau_j(2)}) {
    SampleStream stream(12, "test.form/" + alg->name());
    for (std::size_t i = 0; i < 40; ++i) {
      SampleRng rng = stream.at(i);
      auto x = random_element(*alg, rng, 2, 2), y = random_element(*alg, rng, 2, 2), z = random_element(*alg, rng, 2, 2);
      auto lhs = alg->form(x, alg->bracket(y, z)), rhs = alg->form(alg->bracket(x, y), z);
      REQUIRE(lhs);
      REQUIRE(rhs);
      CHECK(*lhs == *rhs);
      CHECK(*alg->form(x, y) == *alg->form(y, x));
    }
  }
}

TEST_CASE("exhaustive scan agrees with the reference") {
  for (auto alg : {AlgebraSpec::toroidal(2), tau_j(1), AlgebraSpec::tau_b(SkewFormContext(standard_J1(1)), "keala")}) {
    JacobiScan fast = jacobi_exhaustive(*alg, 1, true), serial = jacobi_exhaustive(*alg, 1, false);
    JacobiScan ref = jacobi_exhaustive_reference(*alg, 1);
    CHECK(fast.triples == ref.triples);
    CHECK(serial.triples == ref.triples);
    CHECK(fast.failures == 0);
    CHECK(ref.failures == 0);
    CHECK(fast.pair_failures == 0);
  }
}

TEST_CASE("a corrupted bracket is caught") {
  auto base = tau_j(1);
  // flip the sign of the derivation action on loops only; [d, [d', x]] stays consistent, mixed triples do not
  auto bad = base->with_bracket_rule(
      [](const AlgebraSpec& alg, const BasisSymbol& a, const BasisSymbol& b) {
        GradedElement v = builtin_bracket(alg, a, b);
        if (a.kind == SymbolKind::D && b.kind == SymbolKind::X && !a.degree.is_zero()) return -v;
        if (b.kind == SymbolKind::D && a.kind == SymbolKind::X && !b.degree.is_zero()) return -v;
        return v;
      },
      "tauJ-corrupt");
  JacobiScan scan = jacobi_exhaustive(*bad, 1);
  CHECK(scan.failures > 0);
  CHECK_FALSE(scan.first_counterexample.empty());
}

TEST_CASE("graded dimensions of the centre part") {
  SkewFormContext j1(standard_J1(1));
  auto keala = AlgebraSpec::tau_b(j1, "keala");
  auto dims = graded_dims(*keala, GradedPart::Ztilde, 2);
  for (const auto& r : box_points(3, 2)) {
    const bool radical = standard_J1(1).apply(r) == RationalVector(3);
    std::size_t expect = r.is_zero() ? 3 : radical ? 0 : 1;
    CHECK(dims[r] == expect);
  }
  auto jd = graded_dims(*tau_j(1), GradedPart::Ztilde, 2);
  CHECK(jd[LatticeVector{0, 0}] == 2);
  CHECK(jd[LatticeVector{1, 2}] == 1);
  CHECK(graded_dims_check(*keala, 2).ok());
}

TEST_CASE("EALA axioms and congruence suites pass") {
  auto inst = build_tauB(SkewFormContext(standard_J(1)));
  CHECK(inst.cartan.size() == 5);
  CHECK(eala_axiom_suite(inst, {1, 100, 5}).ok());
  CHECK(congruence_suite(100, 5).ok());
}

TEST_CASE("the automorphism of a congruence intertwines brackets") {
  auto a = RationalMatrix::from_int({{1, 0, 0}, {0, 1, 0}, {1, -1, 1}});
  // A J1 A^T = J', so J1 = F^T J' F with F = A^{-T}
  AutomorphismF f(inverse(a.transpose()));
  auto from = AlgebraSpec::tau_b(SkewFormContext(standard_J1(1)), "J1");
  auto to = AlgebraSpec::tau_b(SkewFormContext(standard_Jprime(1)), "Jprime");
  CHECK(phi_isomorphism_check(f, *from, *to, 80, 2).ok());
}

TEST_CASE("random skew matrices are nondegenerate and skew") {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    auto b = random_nondegenerate_skew(2, seed);
    CHECK(b.is_skew());
    CHECK(SkewFormContext(b).nondegenerate());
  }
}
