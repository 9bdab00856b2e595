#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <string>
#include <vector>

#include "sseala/rational.hpp"

namespace sseala {

inline constexpr std::size_t kMaxRank = 8;

// Element of Z^N, N <= kMaxRank. Stored inline so symbols stay cheap to copy.
class LatticeVector {
 public:
  LatticeVector() = default;
  explicit LatticeVector(std::size_t n);
  LatticeVector(std::initializer_list<std::int64_t> xs);
  explicit LatticeVector(const std::vector<std::int64_t>& xs);

  static LatticeVector unit(std::size_t n, std::size_t i);

  std::size_t size() const { return n_; }
  std::int64_t operator[](std::size_t i) const { return c_[i]; }
  std::int64_t& operator[](std::size_t i) { return c_[i]; }
  const std::int64_t* begin() const { return c_.data(); }
  const std::int64_t* end() const { return c_.data() + n_; }

  bool is_zero() const;
  std::int64_t linf() const;
  std::int64_t l1() const;
  // Index of the first nonzero coordinate, or size() for the zero vector.
  std::size_t first_nonzero() const;

  LatticeVector& operator+=(const LatticeVector& o);
  LatticeVector& operator-=(const LatticeVector& o);
  friend LatticeVector operator+(LatticeVector a, const LatticeVector& b) { return a += b; }
  friend LatticeVector operator-(LatticeVector a, const LatticeVector& b) { return a -= b; }
  friend LatticeVector operator-(LatticeVector a);
  friend LatticeVector operator*(std::int64_t k, LatticeVector a);

  auto operator<=>(const LatticeVector&) const = default;
  bool operator==(const LatticeVector&) const = default;

  RationalVector to_rational() const;
  std::string str() const;

 private:
  std::uint8_t n_ = 0;
  std::array<std::int64_t, kMaxRank> c_{};
};

// All points of [-radius, radius]^n in lexicographic order.
std::vector<LatticeVector> box_points(std::size_t n, std::int64_t radius, bool include_zero = true);
bool in_box(const LatticeVector& r, std::int64_t radius);

Rational dot(const RationalVector& u, const RationalVector& v);
Rational dot(const RationalVector& u, const LatticeVector& r);
std::int64_t dot(const LatticeVector& a, const LatticeVector& b);

class RationalMatrix {
 public:
  RationalMatrix() = default;
  RationalMatrix(std::size_t rows, std::size_t cols);
  RationalMatrix(std::initializer_list<std::initializer_list<Rational>> rows);
  static RationalMatrix identity(std::size_t n);
  static RationalMatrix from_int(const std::vector<std::vector<std::int64_t>>& rows);

  std::size_t rows() const { return r_; }
  std::size_t cols() const { return c_; }
  Rational& at(std::size_t i, std::size_t j) { return a_[i * c_ + j]; }
  const Rational& at(std::size_t i, std::size_t j) const { return a_[i * c_ + j]; }

  RationalMatrix transpose() const;
  RationalVector apply(const RationalVector& v) const;
  RationalVector apply(const LatticeVector& v) const;
  RationalVector row(std::size_t i) const;
  RationalVector col(std::size_t j) const;
  bool is_zero() const;
  bool is_integral() const;
  bool is_skew() const;
  // Integer entries as a lattice map; requires is_integral().
  LatticeVector apply_integral(const LatticeVector& v) const;

  friend RationalMatrix operator*(const RationalMatrix& a, const RationalMatrix& b);
  friend RationalMatrix operator+(const RationalMatrix& a, const RationalMatrix& b);
  friend RationalMatrix operator-(const RationalMatrix& a, const RationalMatrix& b);
  friend RationalMatrix operator*(const Rational& k, RationalMatrix a);
  bool operator==(const RationalMatrix& o) const = default;

  std::string str() const;

 private:
  std::size_t r_ = 0, c_ = 0;
  std::vector<Rational> a_;
};

RationalMatrix commutator(const RationalMatrix& a, const RationalMatrix& b);
RationalMatrix outer(const LatticeVector& r, const RationalVector& s);
// Block-diagonal sum.
RationalMatrix direct_sum(const RationalMatrix& a, const RationalMatrix& b);
RationalMatrix kron(const RationalMatrix& a, const RationalMatrix& b);

// Skew-symmetric B together with its pairing (Br|s) = s^T B r and radical.
class SkewFormContext {
 public:
  explicit SkewFormContext(RationalMatrix b);

  std::size_t rank() const { return n_; }
  const RationalMatrix& matrix() const { return b_; }
  Rational pairing(const LatticeVector& r, const LatticeVector& s) const;
  RationalVector image(const LatticeVector& r) const { return b_.apply(r); }
  bool in_radical(const LatticeVector& r) const;
  // Z-basis of {r : Br = 0}.
  const std::vector<LatticeVector>& radical() const { return radical_; }
  bool nondegenerate() const { return radical_.empty(); }
  bool operator==(const SkewFormContext& o) const { return b_ == o.b_; }

 private:
  std::size_t n_;
  RationalMatrix b_;
  std::vector<LatticeVector> radical_;
};

// J = [[0, I_m], [-I_m, 0]] and the degenerate J_1 of size 2m+1.
RationalMatrix standard_J(std::size_t m);
RationalMatrix standard_J1(std::size_t m);
// diag(J, 0), the normal form of J_1.
RationalMatrix standard_Jprime(std::size_t m);

std::vector<LatticeVector> radical_basis(const RationalMatrix& b);

// A B_from A^T == B_to with A integral and det A = +-1.
bool congruence_check(const RationalMatrix& a, const RationalMatrix& b_from,
                      const RationalMatrix& b_to);

// Backtracking search for A with entries in {-1,0,1}, A B_from A^T = B_to, det A = +-1.
std::optional<RationalMatrix> search_congruence(const RationalMatrix& b_from,
                                                const RationalMatrix& b_to);

// Invertible A with A^T J A = B for nondegenerate B over Q.
RationalMatrix symplectic_basis(const SkewFormContext& ctx);

// {"n": N, "entries": [["p/q", ...], ...]}
RationalMatrix parse_matrix_json(const std::string& text);
std::string matrix_to_json(const RationalMatrix& b);

}  // namespace sseala
