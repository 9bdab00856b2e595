#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "sseala/lattice.hpp"
#include "sseala/rational.hpp"

namespace sseala {

// Differential order alpha in N^N, |alpha| = sum of entries.
struct MultiIndex {
  std::vector<unsigned> orders;
  unsigned total() const;
  std::string str() const;
  auto operator<=>(const MultiIndex&) const = default;
};

// All multi-indices in n variables with lo <= |alpha| <= hi, by total then lexicographic.
std::vector<MultiIndex> multi_indices(std::size_t n, unsigned lo, unsigned hi);

// x (x-1) ... (x-k+1)
std::int64_t falling_factorial(std::int64_t x, unsigned k);
// prod_j falling(r_j, alpha_j): the alpha-th derivative of t^r at t = (1,...,1).
std::int64_t monomial_derivative_at_one(const LatticeVector& r, const MultiIndex& alpha);

class LaurentPoly {
 public:
  explicit LaurentPoly(std::size_t n) : n_(n) {}
  static LaurentPoly monomial(const LatticeVector& r, Rational c = 1);
  static LaurentPoly constant(std::size_t n, Rational c);

  std::size_t rank() const { return n_; }
  const std::map<LatticeVector, Rational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  Rational coefficient(const LatticeVector& r) const;
  void add_term(const LatticeVector& r, const Rational& c);

  LaurentPoly& operator+=(const LaurentPoly& o);
  LaurentPoly& operator-=(const LaurentPoly& o);
  friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
  friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b);
  friend LaurentPoly operator*(const Rational& k, LaurentPoly a);
  bool operator==(const LaurentPoly& o) const { return n_ == o.n_ && terms_ == o.terms_; }

  Rational derivative_at_one(const MultiIndex& alpha) const;
  Rational value_at_one() const { return derivative_at_one(MultiIndex{std::vector<unsigned>(n_, 0)}); }

  // [{"exp": [...], "coef": "p/q"}] sorted by exponent.
  nlohmann::ordered_json to_json() const;
  static LaurentPoly from_json(std::size_t n, const nlohmann::ordered_json& j);

 private:
  void check_rank(const LaurentPoly& o) const;
  std::size_t n_;
  std::map<LatticeVector, Rational> terms_;
};

struct VanishingOrder {
  unsigned order;    // smallest |alpha| with a nonzero derivative at 1
  bool saturated;    // true when every order below the cap vanished; order == cap
};

VanishingOrder vanishing_order_at_one(const LaurentPoly& f, unsigned cap);

}  // namespace sseala
