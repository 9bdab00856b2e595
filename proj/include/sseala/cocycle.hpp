#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "sseala/lattice.hpp"
#include "sseala/linalg.hpp"
#include "sseala/report.hpp"

namespace sseala {

using IndexPair = std::pair<LatticeVector, LatticeVector>;

// Rows (Bl|s) x_{r,s+l} + (Bl|r) x_{s,r+l} - (Bl|r+s) x_{r,s} = 0 for nonzero l, r, s,
// in unknowns x_{r,s} over ordered pairs from the box.
struct CocycleSystem {
  SkewFormContext ctx;
  std::int64_t box = 0;
  std::vector<IndexPair> unknowns;
  std::map<IndexPair, std::size_t> column;
  std::vector<SparseRow> rows;
  std::vector<std::array<LatticeVector, 3>> row_source;  // (l, r, s)
  std::size_t zero_rows = 0;                             // admissible triples whose row vanished

  std::size_t index(const LatticeVector& r, const LatticeVector& s) const { return column.at({r, s}); }
};

// The three coefficients of a row before like terms are combined.
std::array<Rational, 3> row_coefficients(const SkewFormContext& ctx, const LatticeVector& l, const LatticeVector& r,
                                         const LatticeVector& s);

CocycleSystem build_system(const SkewFormContext& ctx, std::int64_t box, bool parallel = true);

struct ScalarFamily {
  Rational lambda, mu, c;
};
// x_{r,s} = c if r or s is 0, mu if r + s = 0, lambda otherwise.
Rational family_value(const ScalarFamily& f, const LatticeVector& r, const LatticeVector& s);

// The quadratic relation is not a consequence of the rows; `quadratic` also asserts it.
VerificationReport check_family(const CocycleSystem& sys, const ScalarFamily& fam, bool quadratic = true);

struct CocycleSolution {
  std::size_t rank = 0;
  std::vector<SparseRow> nullspace;
  bool family_in_span[3] = {false, false, false};  // lambda, mu and c indicator families
};
CocycleSolution solve(const CocycleSystem& sys);

// Linear consequences of the system on its solution space, for index pairs inside `inner`.
VerificationReport cocycle_identities(const CocycleSystem& sys, const CocycleSolution& sol, std::int64_t inner);

// Build, solve, check families and identities.
VerificationReport cocycle_suite(const SkewFormContext& ctx, std::int64_t box, std::int64_t inner);

Json solution_json(const CocycleSystem& sys, const CocycleSolution& sol);

}  // namespace sseala
