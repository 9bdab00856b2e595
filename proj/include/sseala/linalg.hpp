#pragma once

#include <cstddef>
#include <map>
#include <vector>

#include "sseala/lattice.hpp"
#include "sseala/rational.hpp"

namespace sseala {

struct Echelon {
  RationalMatrix reduced;            // reduced row echelon form
  std::vector<std::size_t> pivots;   // pivot column of each nonzero row
};

Echelon rref(RationalMatrix m);
std::size_t rank(const RationalMatrix& m);
Rational determinant(RationalMatrix m);
RationalMatrix inverse(const RationalMatrix& m);
// Basis of {x : m x = 0}, one vector per free column.
std::vector<RationalVector> nullspace(const RationalMatrix& m);
// Z-basis of {x in Z^n : m x = 0} for rational m, via unimodular column reduction.
std::vector<LatticeVector> integer_kernel(const RationalMatrix& m);

using SparseRow = std::map<std::size_t, Rational>;

// Incremental exact elimination over sparse rows. Rows are kept with a unit pivot
// at their leading column; reduce() clears every pivot column from a vector.
class SparseEliminator {
 public:
  explicit SparseEliminator(std::size_t cols) : cols_(cols) {}

  // Returns true when the row was independent of those already inserted.
  bool insert(SparseRow row);
  SparseRow reduce(SparseRow row) const;
  bool in_span(const SparseRow& row) const { return reduce(row).empty(); }
  std::size_t rank() const { return pivots_.size(); }
  std::size_t cols() const { return cols_; }
  // Fully reduced form, then one kernel vector per free column.
  std::vector<SparseRow> nullspace();
  std::vector<std::size_t> free_columns() const;

 private:
  void back_substitute();
  std::size_t cols_;
  std::map<std::size_t, SparseRow> pivots_;  // pivot column -> row
  bool reduced_ = false;
};

}  // namespace sseala
