#include "sseala/linalg.hpp"

#include <algorithm>

#include "sseala/errors.hpp"

namespace sseala {

Echelon rref(RationalMatrix m) {
  Echelon e;
  std::size_t row = 0;
  for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    std::size_t p = row;
    while (p < m.rows() && sgn(m.at(p, col)) == 0) ++p;
    if (p == m.rows()) continue;
    if (p != row)
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m.at(p, j), m.at(row, j));
    Rational inv = 1 / m.at(row, col);
    for (std::size_t j = col; j < m.cols(); ++j) m.at(row, j) *= inv;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == row || sgn(m.at(i, col)) == 0) continue;
      Rational f = m.at(i, col);
      for (std::size_t j = col; j < m.cols(); ++j)
        if (sgn(m.at(row, j)) != 0) m.at(i, j) -= f * m.at(row, j);
    }
    e.pivots.push_back(col);
    ++row;
  }
  e.reduced = std::move(m);
  return e;
}

std::size_t rank(const RationalMatrix& m) { return rref(m).pivots.size(); }

Rational determinant(RationalMatrix m) {
  if (m.rows() != m.cols()) throw ArgumentError("determinant of a non-square matrix");
  const std::size_t n = m.rows();
  Rational det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && sgn(m.at(p, c)) == 0) ++p;
    if (p == n) return 0;
    if (p != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m.at(p, j), m.at(c, j));
      det = -det;
    }
    det *= m.at(c, c);
    for (std::size_t i = c + 1; i < n; ++i) {
      if (sgn(m.at(i, c)) == 0) continue;
      Rational f = m.at(i, c) / m.at(c, c);
      for (std::size_t j = c; j < n; ++j) m.at(i, j) -= f * m.at(c, j);
    }
  }
  return det;
}

RationalMatrix inverse(const RationalMatrix& m) {
  if (m.rows() != m.cols()) throw ArgumentError("inverse of a non-square matrix");
  const std::size_t n = m.rows();
  RationalMatrix aug(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug.at(i, j) = m.at(i, j);
    aug.at(i, n + i) = 1;
  }
  Echelon e = rref(std::move(aug));
  if (e.pivots.size() < n || e.pivots[n - 1] != n - 1) throw PreconditionError("matrix is singular");
  RationalMatrix inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv.at(i, j) = e.reduced.at(i, n + j);
  return inv;
}

std::vector<RationalVector> nullspace(const RationalMatrix& m) {
  Echelon e = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : e.pivots) is_pivot[p] = true;
  std::vector<RationalVector> basis;
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    RationalVector v(m.cols());
    v[f] = 1;
    for (std::size_t r = 0; r < e.pivots.size(); ++r) v[e.pivots[r]] = -e.reduced.at(r, f);
    basis.push_back(std::move(v));
  }
  return basis;
}

namespace {

using IntMat = std::vector<std::vector<Integer>>;

// Unimodular column reduction of a (rows x n); u accumulates the column operations.
std::size_t column_reduce(IntMat& a, IntMat& u, std::size_t n) {
  std::size_t piv = 0;
  for (auto& row : a) {
    for (std::size_t c = piv + 1; c < n; ++c) {
      if (row[c] == 0) continue;
      Integer x = row[piv], y = row[c], g, s, t;
      mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t());
      Integer p = -y / g, q = x / g;
      auto combine = [&](IntMat& mat) {
        for (auto& r : mat) {
          Integer cp = r[piv], cc = r[c];
          r[piv] = s * cp + t * cc;
          r[c] = p * cp + q * cc;
        }
      };
      combine(a);
      combine(u);
    }
    if (row[piv] != 0) ++piv;
    if (piv == n) break;
  }
  return piv;
}

}  // namespace

std::vector<LatticeVector> integer_kernel(const RationalMatrix& m) {
  const std::size_t n = m.cols();
  IntMat a(m.rows(), std::vector<Integer>(n));
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Integer l = 1;
    for (std::size_t j = 0; j < n; ++j) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), m.at(i, j).get_den_mpz_t());
    for (std::size_t j = 0; j < n; ++j) {
      Rational x = m.at(i, j) * l;
      a[i][j] = x.get_num();
    }
  }
  IntMat u(n, std::vector<Integer>(n));
  for (std::size_t i = 0; i < n; ++i) u[i][i] = 1;
  std::size_t piv = column_reduce(a, u, n);

  // Kernel vectors as rows, then a row Hermite form so the basis is canonical.
  IntMat k;
  for (std::size_t c = piv; c < n; ++c) {
    std::vector<Integer> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = u[i][c];
    k.push_back(std::move(v));
  }
  std::size_t row = 0;
  for (std::size_t col = 0; col < n && row < k.size(); ++col) {
    for (std::size_t r = row + 1; r < k.size(); ++r) {
      if (k[r][col] == 0) continue;
      Integer x = k[row][col], y = k[r][col], g, s, t;
      mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t());
      Integer p = -y / g, q = x / g;
      for (std::size_t j = 0; j < n; ++j) {
        Integer a0 = k[row][j], a1 = k[r][j];
        k[row][j] = s * a0 + t * a1;
        k[r][j] = p * a0 + q * a1;
      }
    }
    if (k[row][col] == 0) continue;
    if (k[row][col] < 0)
      for (auto& x : k[row]) x = -x;
    for (std::size_t r = 0; r < row; ++r) {
      Integer f;
      mpz_fdiv_q(f.get_mpz_t(), k[r][col].get_mpz_t(), k[row][col].get_mpz_t());
      for (std::size_t j = 0; j < n; ++j) k[r][j] -= f * k[row][j];
    }
    ++row;
  }
  std::vector<LatticeVector> out;
  for (const auto& v : k) {
    LatticeVector lv(n);
    for (std::size_t i = 0; i < n; ++i) {
      if (!v[i].fits_slong_p()) throw PreconditionError("radical vector does not fit in 64 bits");
      lv[i] = v[i].get_si();
    }
    out.push_back(lv);
  }
  return out;
}

// ---- sparse elimination

SparseRow SparseEliminator::reduce(SparseRow row) const {
  auto it = row.begin();
  while (it != row.end()) {
    if (sgn(it->second) == 0) {
      it = row.erase(it);
      continue;
    }
    auto p = pivots_.find(it->first);
    if (p == pivots_.end()) {
      ++it;
      continue;
    }
    Rational f = it->second;
    std::size_t col = it->first;
    for (const auto& [c, v] : p->second) {
      Rational& dst = row[c];
      dst -= f * v;
    }
    it = row.upper_bound(col);
    // entries created at or after col are revisited by the loop; col itself is now zero
    row.erase(col);
  }
  for (auto i = row.begin(); i != row.end();) i = sgn(i->second) == 0 ? row.erase(i) : std::next(i);
  return row;
}

bool SparseEliminator::insert(SparseRow row) {
  for (const auto& [c, v] : row)
    if (c >= cols_) throw ArgumentError("sparse row column out of range");
  row = reduce(std::move(row));
  if (row.empty()) return false;
  std::size_t lead = row.begin()->first;
  Rational inv = 1 / row.begin()->second;
  for (auto& [c, v] : row) v *= inv;
  pivots_.emplace(lead, std::move(row));
  reduced_ = false;
  return true;
}

void SparseEliminator::back_substitute() {
  if (reduced_) return;
  for (auto it = pivots_.rbegin(); it != pivots_.rend(); ++it) {
    SparseRow& row = it->second;
    SparseRow out;
    for (const auto& [c, v] : row) {
      if (c == it->first) continue;
      auto p = pivots_.find(c);
      if (p == pivots_.end()) out[c] += v;
      else
        for (const auto& [c2, v2] : p->second)
          if (c2 != c) out[c2] -= v * v2;
    }
    for (auto i = out.begin(); i != out.end();) i = sgn(i->second) == 0 ? out.erase(i) : std::next(i);
    out[it->first] = 1;
    row = std::move(out);
  }
  reduced_ = true;
}

std::vector<std::size_t> SparseEliminator::free_columns() const {
  std::vector<std::size_t> f;
  for (std::size_t c = 0; c < cols_; ++c)
    if (!pivots_.count(c)) f.push_back(c);
  return f;
}

std::vector<SparseRow> SparseEliminator::nullspace() {
  back_substitute();
  std::vector<SparseRow> basis;
  for (std::size_t f : free_columns()) {
    SparseRow v;
    v[f] = 1;
    for (const auto& [p, row] : pivots_) {
      auto it = row.find(f);
      if (it != row.end()) v[p] = -it->second;
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

}  // namespace sseala
