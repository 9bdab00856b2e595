#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "sseala/jet.hpp"
#include "sseala/lie.hpp"
#include "sseala/report.hpp"

namespace sseala {

// lambda = a*alpha + sum g_i delta_i + sum s_i omega_i, for g = sl2.
struct ExtendedWeight {
  Rational a;
  RationalVector delta, omega;

  explicit ExtendedWeight(std::size_t n = 0) : delta(n), omega(n) {}
  std::size_t rank() const { return delta.size(); }
  ExtendedWeight& operator+=(const ExtendedWeight& o);
  ExtendedWeight& operator-=(const ExtendedWeight& o);
  friend ExtendedWeight operator+(ExtendedWeight x, const ExtendedWeight& y) { return x += y; }
  friend ExtendedWeight operator-(ExtendedWeight x, const ExtendedWeight& y) { return x -= y; }
  friend ExtendedWeight operator*(const Rational& c, ExtendedWeight x);
  bool operator==(const ExtendedWeight& o) const { return a == o.a && delta == o.delta && omega == o.omega; }
  bool operator<(const ExtendedWeight& o) const;
  std::string str() const;
};

// Gram matrix on alpha, delta_1..delta_N, omega_1..omega_N.
RationalMatrix gram_table(std::size_t n);
Rational weight_pairing(const ExtendedWeight& x, const ExtendedWeight& y);

// sign*alpha + delta_m.
struct RealRoot {
  int sign = 1;
  LatticeVector m;
  ExtendedWeight weight() const;
  std::string str() const;
};

// "alpha+delta[1]", "-alpha+delta[1]-2delta[2]", "alpha"; indices are 1-based.
RealRoot parse_real_root(const std::string& text, std::size_t n);

// c*alpha^vee + sum k_i K_i.
struct Coroot {
  Rational h;
  RationalVector k;
};
Coroot coroot(const RealRoot& g);
Rational evaluate(const ExtendedWeight& x, const Coroot& c);
ExtendedWeight reflect(const RealRoot& g, const ExtendedWeight& x);

// All weights reached by words of length <= max_len in the given reflections.
std::vector<ExtendedWeight> orbit_walk(const ExtendedWeight& x, const std::vector<RealRoot>& refl, unsigned max_len);

VerificationReport reflection_suite(std::size_t n, std::size_t samples, std::uint64_t seed);

// Weights of the level-zero module at degrees in the box, by eigenspace enumeration.
std::map<ExtendedWeight, std::size_t> module_weights(const Thm52Module& mod, std::int64_t box);

VerificationReport lemma21_checks(const Thm52Module& mod, const std::vector<RealRoot>& refl, std::int64_t box,
                                  unsigned word_length = 2);

enum class Triangle { Minus, Zero, Plus };
enum class Decomposition { TauB, Keala };
std::string to_string(Triangle t);

Triangle triangular_classify(Decomposition dec, const AlgebraSpec& alg, const BasisSymbol& s);
VerificationReport triangular_closure_check(Decomposition dec, const AlgebraSpec& alg, std::size_t samples,
                                            std::uint64_t seed, std::int64_t box = 2);

// r -> J_1 r, and the componentwise display with r_M read as r_N.
RationalVector underline(const LatticeVector& r);
RationalVector underline_display(const LatticeVector& r);

// Bracket in Der A: [D(u,r), D(v,s)] = D((u|s)v - (v|r)u, r+s).
std::pair<RationalVector, LatticeVector> der_bracket(const RationalVector& u, const LatticeVector& r,
                                                     const RationalVector& v, const LatticeVector& s);

VerificationReport keala_S_isomorphism_check(std::size_t m, std::size_t samples, std::uint64_t seed);
// Radical of J_1, the displayed bracket on D(r_,r) and K(e_N, s), and the vanishing of K(e_N, r).
VerificationReport keala_suite(std::size_t m, std::size_t samples, std::uint64_t seed, std::int64_t box = 2);

}  // namespace sseala
