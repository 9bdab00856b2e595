#include <doctest.h>

#include "sseala/errors.hpp"
#include "sseala/laurent.hpp"
#include "sseala/lattice.hpp"
#include "sseala/linalg.hpp"
#include "sseala/rational.hpp"
#include "sseala/sampling.hpp"

using namespace sseala;

namespace {

RationalMatrix random_int_matrix(SampleRng& rng, std::size_t r, std::size_t c, std::int64_t bound) {
  RationalMatrix a(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) a.at(i, j) = rng.uniform(-bound, bound);
  return a;
}

// Leibniz expansion, independent of the elimination code.
Rational leibniz(const RationalMatrix& a) {
  const std::size_t n = a.rows();
  std::vector<std::size_t> p(n);
  for (std::size_t i = 0; i < n; ++i) p[i] = i;
  Rational total = 0;
  do {
    int inv = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) inv += p[i] > p[j];
    Rational term = inv % 2 ? -1 : 1;
    for (std::size_t i = 0; i < n; ++i) term *= a.at(i, p[i]);
    total += term;
  } while (std::next_permutation(p.begin(), p.end()));
  return total;
}

}  // namespace

TEST_CASE("rationals are canonical") {
  CHECK(rat(4, -6) == rat(-2, 3));
  CHECK(to_string(rat(4, -6)) == "-2/3");
  CHECK(to_string(rat(6, 3)) == "2");
  CHECK(parse_rational("-10/4") == rat(-5, 2));
  CHECK(parse_rational("7") == rat(7));
  CHECK_THROWS_AS(parse_rational("1/0"), ParseError);
  CHECK_THROWS_AS(parse_rational("abc"), ParseError);
  CHECK(to_string(RationalVector{rat(1, 2), rat(0)}) == "(1/2,0)");
}

TEST_CASE("lattice boxes") {
  auto pts = box_points(2, 2);
  CHECK(pts.size() == 25);
  CHECK(pts.front() == LatticeVector{-2, -2});
  CHECK(std::is_sorted(pts.begin(), pts.end()));
  CHECK(box_points(3, 1, false).size() == 26);
  CHECK(in_box(LatticeVector{2, -2}, 2));
  CHECK_FALSE(in_box(LatticeVector{3, 0}, 2));
}

TEST_CASE("skew pairings and radicals") {
  SkewFormContext j(standard_J(1));
  // (J e2 | e1) = e1^T J e2 = 1
  CHECK(j.pairing(LatticeVector{0, 1}, LatticeVector{1, 0}) == 1);
  CHECK(j.pairing(LatticeVector{1, 0}, LatticeVector{0, 1}) == -1);
  CHECK(j.nondegenerate());
  SkewFormContext j1(standard_J1(1));
  REQUIRE(j1.radical().size() == 1);
  LatticeVector g = j1.radical()[0];
  CHECK((g == LatticeVector{1, -1, 1} || g == LatticeVector{-1, 1, -1}));
  for (const auto& r : box_points(3, 2))
    for (const auto& s : box_points(3, 1)) CHECK(j1.pairing(r, s) == -j1.pairing(s, r));
}

TEST_CASE("congruence of J1 with diag(J, 0)") {
  auto a = RationalMatrix::from_int({{1, 0, 0}, {0, 1, 0}, {1, -1, 1}});
  CHECK(congruence_check(a, standard_J1(1), standard_Jprime(1)));
  CHECK_FALSE(congruence_check(RationalMatrix::identity(3), standard_J1(1), standard_Jprime(1)));
  auto found = search_congruence(standard_J1(2), standard_Jprime(2));
  REQUIRE(found);
  CHECK(congruence_check(*found, standard_J1(2), standard_Jprime(2)));
}

TEST_CASE("matrix JSON round trip") {
  auto b = standard_J(2);
  CHECK(parse_matrix_json(matrix_to_json(b)) == b);
  CHECK_THROWS(parse_matrix_json(R"({"n": 2, "entries": [["0","1"],["1","0"]]})"));
  CHECK_THROWS(parse_matrix_json("not json"));
}

TEST_CASE("dense linear algebra properties") {
  SampleStream stream(3, "test.linalg");
  for (std::size_t i = 0; i < 60; ++i) {
    SampleRng rng = stream.at(i);
    const std::size_t n = 1 + i % 4, c = 1 + (i / 4) % 5;
    RationalMatrix a = random_int_matrix(rng, n, n, 3);
    CHECK(determinant(a) == leibniz(a));
    if (determinant(a) != 0) CHECK(inverse(a) * a == RationalMatrix::identity(n));
    RationalMatrix m = random_int_matrix(rng, n, c, 2);
    auto ker = nullspace(m);
    CHECK(rank(m) + ker.size() == c);
    for (const auto& v : ker)
      for (const auto& x : m.apply(v)) CHECK(x == 0);
  }
}

TEST_CASE("sparse eliminator agrees with dense rank") {
  SampleStream stream(4, "test.sparse");
  for (std::size_t i = 0; i < 40; ++i) {
    SampleRng rng = stream.at(i);
    const std::size_t r = 1 + i % 6, c = 2 + i % 5;
    RationalMatrix m = random_int_matrix(rng, r, c, 1);
    SparseEliminator el(c);
    for (std::size_t k = 0; k < r; ++k) {
      SparseRow row;
      for (std::size_t j = 0; j < c; ++j)
        if (m.at(k, j) != 0) row[j] = m.at(k, j);
      el.insert(row);
    }
    CHECK(el.rank() == rank(m));
    auto ker = el.nullspace();
    CHECK(ker.size() == c - rank(m));
    for (const auto& v : ker) {
      RationalVector dense(c);
      for (const auto& [j, x] : v) dense[j] = x;
      for (const auto& x : m.apply(dense)) CHECK(x == 0);
    }
  }
}

TEST_CASE("integer kernel of J1 is the radical") {
  auto k = integer_kernel(standard_J1(1));
  REQUIRE(k.size() == 1);
  CHECK(standard_J1(1).apply(k[0]) == RationalVector(3));
}

TEST_CASE("sampler constants and golden streams") {
  // published values for splitmix64 and 64-bit FNV-1a
  CHECK(splitmix64(0) == 0xe220a8397b1dcdafULL);
  CHECK(fnv1a("") == 0xcbf29ce484222325ULL);
  CHECK(fnv1a("a") == 0xaf63dc4c8601ec8cULL);

  SampleStream s0(0, "golden"), s1(1, "golden");
  SampleRng g0 = s0.at(0), g1 = s1.at(0);
  CHECK(g0.lattice(2, 3) == LatticeVector{0, 2});
  CHECK(g0.nonzero_lattice(3, 2) == LatticeVector{-2, 2, -2});
  CHECK(g0.rational(3, 3) == 1);
  CHECK(g0.uniform(-5, 5) == 1);
  CHECK(s0.at(7).next() == 15373821760389325342ULL);
  CHECK(g1.lattice(2, 3) == LatticeVector{0, -3});
  CHECK(g1.nonzero_lattice(3, 2) == LatticeVector{2, -1, 0});
  CHECK(s1.at(7).next() == 2660738508319370379ULL);

  // same index, same numbers; independent of call order
  CHECK(s0.at(5).next() == SampleStream(0, "golden").at(5).next());
  CHECK(SampleStream(0, "a").at(0).next() != SampleStream(0, "b").at(0).next());
}

TEST_CASE("sampler bounds") {
  SampleStream s(9, "bounds");
  for (std::size_t i = 0; i < 500; ++i) {
    SampleRng g = s.at(i);
    auto x = g.uniform(-2, 3);
    CHECK((x >= -2 && x <= 3));
    CHECK(in_box(g.lattice(3, 2), 2));
    CHECK_FALSE(g.nonzero_lattice(2, 1).is_zero());
    Rational q = g.rational(3, 3);
    CHECK(abs(q.get_num()) <= 3);
    CHECK(q.get_den() <= 3);
  }
}

TEST_CASE("Laurent polynomials") {
  CHECK(falling_factorial(5, 2) == 20);
  CHECK(falling_factorial(-2, 3) == -24);
  auto f = LaurentPoly::monomial(LatticeVector{3, -2});
  CHECK(f.derivative_at_one(MultiIndex{{1, 0}}) == 3);
  CHECK(f.derivative_at_one(MultiIndex{{1, 1}}) == -6);
  CHECK(f.derivative_at_one(MultiIndex{{0, 2}}) == 6);
  auto g = LaurentPoly::monomial(LatticeVector{-3, 2}) + LaurentPoly::constant(2, -1);
  auto fg = f * g;
  CHECK(fg.coefficient(LatticeVector{0, 0}) == 1);
  CHECK(fg.coefficient(LatticeVector{3, -2}) == -1);
  CHECK(LaurentPoly::from_json(2, fg.to_json()) == fg);
  // (t1 - 1)^2 vanishes to order 2 at one
  auto t1 = LaurentPoly::monomial(LatticeVector{1, 0}) - LaurentPoly::constant(2, 1);
  auto vo = vanishing_order_at_one(t1 * t1, 5);
  CHECK(vo.order == 2);
  CHECK_FALSE(vo.saturated);
  CHECK(multi_indices(2, 1, 2).size() == 5);
}
