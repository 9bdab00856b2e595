#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "sseala/lie.hpp"
#include "sseala/report.hpp"
#include "sseala/sampling.hpp"

namespace sseala {

// An algebra together with its Cartan subalgebra h + span{K_i} + span{d_i}.
struct EALAInstance {
  std::shared_ptr<const AlgebraSpec> algebra;
  std::vector<GradedElement> cartan;  // h(0), K_1..K_N, d_1..d_N
};

EALAInstance make_instance(std::shared_ptr<const AlgebraSpec> alg);
EALAInstance build_tauB(const SkewFormContext& ctx, std::string name = "tauB");

// Skew B with small rational entries, redrawn until nondegenerate.
RationalMatrix random_nondegenerate_skew(std::size_t m, std::uint64_t seed);

// Random element: `terms` basis symbols at degrees in the box, coefficients p/q with |p|, q <= 3.
GradedElement random_element(const AlgebraSpec& alg, SampleRng& rng, std::int64_t radius, std::size_t terms);
BasisSymbol random_symbol(const AlgebraSpec& alg, SampleRng& rng, std::int64_t radius);

enum class GradedPart { Ztilde, Htilde };
std::map<LatticeVector, std::size_t> graded_dims(const AlgebraSpec& alg, GradedPart part, std::int64_t radius);
VerificationReport graded_dims_check(const AlgebraSpec& alg, std::int64_t radius);

// True when every term lies in g (x) A + Ztilde.
bool core_membership(const GradedElement& x);

// Exhaustive Jacobi scan over all triples of basis symbols with degrees in the box.
struct JacobiScan {
  std::size_t symbols = 0;
  std::size_t triples = 0;
  std::size_t failures = 0;
  std::size_t pair_failures = 0;  // antisymmetry, degree additivity or non-canonical output
  std::string first_counterexample;
  std::string first_pair_counterexample;
};
// Interned kernel: pair brackets are tabulated once, triples run over machine rationals.
JacobiScan jacobi_exhaustive(const AlgebraSpec& alg, std::int64_t radius, bool parallel = true);
// jacobi_check on every triple; max_triples = 0 means no limit.
JacobiScan jacobi_exhaustive_reference(const AlgebraSpec& alg, std::int64_t radius, std::size_t max_triples = 0);

struct JacobiOptions {
  std::int64_t radius = 2;
  std::size_t samples = 1000;
  std::int64_t sample_radius = 3;
  std::uint64_t seed = 0;
};
VerificationReport jacobi_suite(const AlgebraSpec& alg, const JacobiOptions& opt);

struct EALAOptions {
  std::int64_t box = 2;
  std::size_t samples = 1000;
  std::uint64_t seed = 0;
};
VerificationReport eala_axiom_suite(const EALAInstance& inst, const EALAOptions& opt);

// Phi_F: X(r) -> X(Fr), K(u,r) -> K(Fu,Fr), D(u,r) -> D(F^{-T}u, Fr).
class AutomorphismF {
 public:
  explicit AutomorphismF(RationalMatrix f);
  const RationalMatrix& matrix() const { return f_; }
  AutomorphismF inverse() const;
  GradedElement apply(const GradedElement& x, const AlgebraSpec& target) const;

 private:
  RationalMatrix f_, inv_t_;
};

GradedElement apply_phi(const AutomorphismF& f, const GradedElement& x, const AlgebraSpec& target);

// Requires B_from = F^T B_to F for tau_B algebras.
VerificationReport phi_isomorphism_check(const AutomorphismF& f, const AlgebraSpec& from, const AlgebraSpec& to,
                                         std::size_t samples, std::uint64_t seed, std::int64_t radius = 3);

// The congruence J_1 ~ diag(J, 0) for m = 1 (given matrix) and m = 2 (search), with the induced isomorphisms.
VerificationReport congruence_suite(std::size_t samples, std::uint64_t seed);

}  // namespace sseala
