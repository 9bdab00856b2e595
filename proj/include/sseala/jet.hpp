#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "sseala/lie.hpp"
#include "sseala/report.hpp"
#include "sseala/sampling.hpp"
#include "sseala/t_filtration.hpp"

namespace sseala {

// Finite-dimensional module given by the matrices of named generators.
struct FiniteModule {
  std::string name;
  std::size_t dim = 0;
  std::vector<std::string> labels;
  std::vector<RationalMatrix> action;
  std::size_t relations_checked = 0;  // generator pairs whose bracket relation was verified
  const RationalMatrix& operator[](const std::string& label) const;
};

// k-th symmetric power of Q^n as a gl_n-module, on the monomial basis in graded lex order.
class SymmetricPower {
 public:
  SymmetricPower(std::size_t n, unsigned k);
  std::size_t rank() const { return n_; }
  unsigned power() const { return k_; }
  std::size_t dim() const { return monomials_.size(); }
  // Derivation action of x (acting on column vectors of Q^n).
  RationalMatrix act(const RationalMatrix& x) const;

 private:
  std::size_t n_;
  unsigned k_;
  std::vector<std::vector<unsigned>> monomials_;
  std::map<std::vector<unsigned>, std::size_t> index_;
};

// Irreducible sl2-module of highest weight mu on v_0..v_mu: h v_i = (mu - 2i) v_i, f v_i = v_{i+1}.
FiniteModule sl2_irrep(unsigned mu);
// S^k of the natural module of sp_2m, generated by the images r s^T J^T + s r^T J^T of the basis table.
FiniteModule sp_irrep(std::size_t m, unsigned k);

// T acting on S^k(Q^N) through psi_B; ker psi_B acts by the kernel scalar, which must be 0.
class TModule {
 public:
  TModule(const SkewFormContext& ctx, unsigned sym_power, const Rational& kernel_scalar = 0);
  const SkewFormContext& context() const { return ctx_; }
  std::size_t dim() const { return rep_.dim(); }
  unsigned power() const { return rep_.power(); }
  RationalMatrix act(const LatticeVector& r) const;
  RationalMatrix act(const TElement& x) const;

 private:
  SkewFormContext ctx_;
  SymmetricPower rep_;
};

TModule t_module_from_rep(const SkewFormContext& ctx, unsigned sym_power, const Rational& kernel_scalar = 0);

// Finite sum of v (x) t^k; equal degrees merge and zero vectors are dropped.
class JetVector {
 public:
  JetVector() = default;
  explicit JetVector(std::size_t fiber) : fiber_(fiber) {}
  static JetVector single(const LatticeVector& k, RationalVector v);

  std::size_t fiber() const { return fiber_; }
  const std::map<LatticeVector, RationalVector>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  void add(const LatticeVector& k, const RationalVector& v, const Rational& c = 1);

  JetVector& operator+=(const JetVector& o);
  JetVector& operator-=(const JetVector& o);
  friend JetVector operator+(JetVector a, const JetVector& b) { return a += b; }
  friend JetVector operator-(JetVector a, const JetVector& b) { return a -= b; }
  friend JetVector operator*(const Rational& c, const JetVector& a);
  bool operator==(const JetVector& o) const { return terms_ == o.terms_; }
  std::string str() const;

 private:
  std::size_t fiber_ = 0;
  std::map<LatticeVector, RationalVector> terms_;
};

// V_0 (x) A with D(Br,r) v t^k = (Br|k+beta) v t^{k+r} + (T(r) v) t^{k+r}, t^r v t^k = v t^{k+r},
// and D(u,0) v t^k = (u|k+beta) v t^k.
class JetModule {
 public:
  JetModule(TModule v0, RationalVector beta);
  const TModule& base() const { return v0_; }
  const RationalVector& beta() const { return beta_; }
  JetVector h(const LatticeVector& r, const JetVector& w) const;
  JetVector t(const LatticeVector& r, const JetVector& w) const;
  JetVector d(const RationalVector& u, const JetVector& w) const;

 private:
  TModule v0_;
  RationalVector beta_;
};

JetVector random_jet_vector(std::size_t fiber, std::size_t n, SampleRng& rng, std::int64_t radius, std::size_t terms);

// T-module relations on sampled pairs, and the zero action of ker psi_B.
VerificationReport t_module_check(const TModule& v0, std::size_t samples, std::uint64_t seed, std::int64_t radius = 3);
// The bracket relations of H_B + D + A on V_0 (x) A, associativity of A, and the slice bijection.
// The T-module checks do not depend on beta; with_t_module = false omits them.
VerificationReport jet_suite(const JetModule& jm, std::size_t samples, std::uint64_t seed, std::int64_t radius = 3,
                             bool with_t_module = true);

// V(mu) (x) V_N (x) A for tau_B at level zero.
class Thm52Module {
 public:
  Thm52Module(std::shared_ptr<const AlgebraSpec> alg, unsigned mu, unsigned sp_power, RationalVector beta);
  const AlgebraSpec& algebra() const { return *alg_; }
  unsigned mu() const { return mu_; }
  std::size_t fiber() const { return g_.dim * jet_.base().dim(); }
  std::size_t sp_dim() const { return jet_.base().dim(); }
  const RationalVector& beta() const { return jet_.beta(); }
  JetVector act(const BasisSymbol& s, const JetVector& x) const;
  JetVector act(const GradedElement& a, const JetVector& x) const;
  // h-eigenvalues on the fiber at one degree, with multiplicities, by direct eigenspace computation.
  std::map<Rational, std::size_t> weight_dims_at(const LatticeVector& k) const;

 private:
  std::shared_ptr<const AlgebraSpec> alg_;
  unsigned mu_;
  FiniteModule g_;
  JetModule jet_;
};

VerificationReport thm52_suite(const Thm52Module& mod, std::size_t samples, std::uint64_t seed, std::int64_t box = 2);

}  // namespace sseala
