#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "sseala/lattice.hpp"
#include "sseala/laurent.hpp"
#include "sseala/linalg.hpp"
#include "sseala/rational.hpp"
#include "sseala/report.hpp"

namespace sseala {

// Element of T = span{T(r) : r != 0}.  T(0) = 0 is never stored.
class TElement {
 public:
  TElement() = default;
  explicit TElement(std::size_t n) : n_(n) {}
  static TElement basis(const LatticeVector& r, Rational c = 1);

  std::size_t rank() const { return n_; }
  const std::map<LatticeVector, Rational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  Rational coefficient(const LatticeVector& r) const;
  void add_term(const LatticeVector& r, const Rational& c);

  TElement& operator+=(const TElement& o);
  TElement& operator-=(const TElement& o);
  friend TElement operator+(TElement a, const TElement& b) { return a += b; }
  friend TElement operator-(TElement a, const TElement& b) { return a -= b; }
  friend TElement operator-(TElement a);
  friend TElement operator*(const Rational& k, TElement a);
  bool operator==(const TElement& o) const { return n_ == o.n_ && terms_ == o.terms_; }
  std::string str() const;

 private:
  std::size_t n_ = 0;
  std::map<LatticeVector, Rational> terms_;
};

// [T(r), T(s)] = (Br|s) (T(r+s) - T(r) - T(s))
TElement t_bracket(const SkewFormContext& ctx, const TElement& x, const TElement& y);

struct TqSpec {
  LatticeVector s;
  std::vector<LatticeVector> rs;
  unsigned q() const { return static_cast<unsigned>(rs.size()); }
  std::string str() const;
};

// sum over I subset of {1..q} of (-1)^|I| T(s + r_I); q = 0 gives T(s).
TElement expand_Tq(const TqSpec& spec);

// T(r) -> t^r - 1
LaurentPoly eta(const TElement& x);

// Values of the functionals x -> sum_r c_r prod_j falling(r_j, alpha_j), 1 <= |alpha| <= q-1.
// x lies in I_q exactly when all of them vanish.
std::vector<Rational> ideal_functionals(const TElement& x, unsigned q);
bool in_ideal(const TElement& x, unsigned q);
// Same decision made through eta and vanishing_order_at_one; used as a cross-check.
bool in_ideal_via_eta(const TElement& x, unsigned q);

// dim T/I_q as the rank of the functional matrix over the nonzero points of the box.
std::size_t quotient_dim(std::size_t n, unsigned q, std::int64_t radius);

// T(r) -> r (Br)^T
RationalMatrix psi(const SkewFormContext& ctx, const TElement& x);
RationalMatrix psi_basis(const SkewFormContext& ctx, const LatticeVector& r);
bool in_g_b(const SkewFormContext& ctx, const RationalMatrix& x);
std::size_t psi_image_dim(const SkewFormContext& ctx, std::int64_t radius);
std::vector<TElement> psi_kernel_basis(const SkewFormContext& ctx, std::int64_t radius);

// Suites.  Each check records its (suite, id) and a payload; failures carry a counterexample.
struct TSuiteOptions {
  std::size_t samples = 200;
  std::uint64_t seed = 0;
  std::int64_t radius = 3;  // sampling radius for vector tuples
  unsigned qmax = 4;
};

VerificationReport lemma44_suite(const SkewFormContext& ctx, const std::vector<int>& items, const TSuiteOptions& opt);
// Closed form of [T_p(k; s), T_q(l; r)] and its two vanishing sums, for the listed (p, q).
VerificationReport appendix_bracket_suite(const SkewFormContext& ctx, const std::vector<std::pair<unsigned, unsigned>>& pq,
                                          const TSuiteOptions& opt);
VerificationReport lemma45_46_suite(const SkewFormContext& ctx, const TSuiteOptions& opt);
VerificationReport oracle_cross_validation(std::size_t nmax, unsigned qmax, std::int64_t rmax, std::size_t samples,
                                           std::uint64_t seed);
VerificationReport quotient_dims_report(std::size_t n, const std::vector<unsigned>& qs);
VerificationReport psi_hom_check(const SkewFormContext& ctx, std::size_t samples, std::uint64_t seed,
                                 std::int64_t radius);
VerificationReport psi_table_check(std::size_t m);
VerificationReport psi_image_check(const SkewFormContext& ctx, std::int64_t radius);
VerificationReport kernel_central_check(const SkewFormContext& ctx, std::int64_t radius);
// Literal bracket plus in_ideal on every pair; the serial reference for the kernel above.
VerificationReport kernel_central_check_reference(const SkewFormContext& ctx, std::int64_t radius,
                                                  std::size_t max_pairs = 0);

// Closed-form pieces of the appendix computation, exposed for tests and the bench.
struct AppendixTerms {
  TElement lhs;          // the bracket itself
  TElement main_sum;     // sum of (B(k+s_I)|l+r_J) T(k+l+s_I+r_J) with signs
  TElement claim1;       // the T(l+r_J) double sum
  TElement claim2;       // the T(k+s_I) double sum
  TElement summand[4];   // the four pieces of main_sum, as direct sums
  TElement closed[4];    // their closed forms through T_{p+q}, T_{p+q-1}, T_{p+q-2}
  TElement printed;      // the final formula with the signs as printed
};
AppendixTerms appendix_terms(const SkewFormContext& ctx, const TqSpec& a, const TqSpec& b);

}  // namespace sseala
