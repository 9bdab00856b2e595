#include "sseala/lattice.hpp"

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <sstream>

#include <json.hpp>

#include "sseala/errors.hpp"
#include "sseala/linalg.hpp"

namespace sseala {

LatticeVector::LatticeVector(std::size_t n) {
  if (n > kMaxRank) throw ArgumentError("lattice rank " + std::to_string(n) + " exceeds " + std::to_string(kMaxRank));
  n_ = static_cast<std::uint8_t>(n);
}

LatticeVector::LatticeVector(std::initializer_list<std::int64_t> xs) : LatticeVector(xs.size()) {
  std::copy(xs.begin(), xs.end(), c_.begin());
}

LatticeVector::LatticeVector(const std::vector<std::int64_t>& xs) : LatticeVector(xs.size()) {
  std::copy(xs.begin(), xs.end(), c_.begin());
}

LatticeVector LatticeVector::unit(std::size_t n, std::size_t i) {
  LatticeVector v(n);
  v[i] = 1;
  return v;
}

bool LatticeVector::is_zero() const {
  return std::all_of(begin(), end(), [](std::int64_t x) { return x == 0; });
}

std::int64_t LatticeVector::linf() const {
  std::int64_t m = 0;
  for (auto x : *this) m = std::max(m, std::abs(x));
  return m;
}

std::int64_t LatticeVector::l1() const {
  std::int64_t m = 0;
  for (auto x : *this) m += std::abs(x);
  return m;
}

std::size_t LatticeVector::first_nonzero() const {
  for (std::size_t i = 0; i < n_; ++i)
    if (c_[i] != 0) return i;
  return n_;
}

LatticeVector& LatticeVector::operator+=(const LatticeVector& o) {
  if (o.n_ != n_) throw ArgumentError("lattice rank mismatch");
  for (std::size_t i = 0; i < n_; ++i) c_[i] += o.c_[i];
  return *this;
}

LatticeVector& LatticeVector::operator-=(const LatticeVector& o) {
  if (o.n_ != n_) throw ArgumentError("lattice rank mismatch");
  for (std::size_t i = 0; i < n_; ++i) c_[i] -= o.c_[i];
  return *this;
}

LatticeVector operator-(LatticeVector a) {
  for (std::size_t i = 0; i < a.n_; ++i) a.c_[i] = -a.c_[i];
  return a;
}

LatticeVector operator*(std::int64_t k, LatticeVector a) {
  for (std::size_t i = 0; i < a.n_; ++i) a.c_[i] *= k;
  return a;
}

RationalVector LatticeVector::to_rational() const {
  RationalVector v;
  v.reserve(n_);
  for (auto x : *this) v.emplace_back(static_cast<long>(x));
  return v;
}

std::string LatticeVector::str() const {
  std::string s = "(";
  for (std::size_t i = 0; i < n_; ++i) {
    if (i) s += ",";
    s += std::to_string(c_[i]);
  }
  return s + ")";
}

std::vector<LatticeVector> box_points(std::size_t n, std::int64_t radius, bool include_zero) {
  std::vector<LatticeVector> out;
  LatticeVector v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = -radius;
  while (true) {
    if (include_zero || !v.is_zero()) out.push_back(v);
    std::size_t i = n;
    while (i > 0 && v[i - 1] == radius) v[--i] = -radius;
    if (i == 0) return out;
    ++v[i - 1];
  }
}

bool in_box(const LatticeVector& r, std::int64_t radius) { return r.linf() <= radius; }

Rational dot(const RationalVector& u, const RationalVector& v) {
  if (u.size() != v.size()) throw ArgumentError("dot: length mismatch");
  Rational s = 0;
  for (std::size_t i = 0; i < u.size(); ++i) s += u[i] * v[i];
  return s;
}

Rational dot(const RationalVector& u, const LatticeVector& r) {
  if (u.size() != r.size()) throw ArgumentError("dot: length mismatch");
  Rational s = 0;
  for (std::size_t i = 0; i < u.size(); ++i)
    if (r[i] != 0) s += u[i] * static_cast<long>(r[i]);
  return s;
}

std::int64_t dot(const LatticeVector& a, const LatticeVector& b) {
  if (a.size() != b.size()) throw ArgumentError("dot: length mismatch");
  std::int64_t s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

// ---- RationalMatrix

RationalMatrix::RationalMatrix(std::size_t rows, std::size_t cols) : r_(rows), c_(cols), a_(rows * cols) {}

RationalMatrix::RationalMatrix(std::initializer_list<std::initializer_list<Rational>> rows) {
  r_ = rows.size();
  c_ = r_ ? rows.begin()->size() : 0;
  for (const auto& row : rows) {
    if (row.size() != c_) throw ArgumentError("ragged matrix literal");
    a_.insert(a_.end(), row.begin(), row.end());
  }
}

RationalMatrix RationalMatrix::identity(std::size_t n) {
  RationalMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

RationalMatrix RationalMatrix::from_int(const std::vector<std::vector<std::int64_t>>& rows) {
  RationalMatrix m(rows.size(), rows.empty() ? 0 : rows[0].size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != m.c_) throw ArgumentError("ragged integer matrix");
    for (std::size_t j = 0; j < m.c_; ++j) m.at(i, j) = static_cast<long>(rows[i][j]);
  }
  return m;
}

RationalMatrix RationalMatrix::transpose() const {
  RationalMatrix t(c_, r_);
  for (std::size_t i = 0; i < r_; ++i)
    for (std::size_t j = 0; j < c_; ++j) t.at(j, i) = at(i, j);
  return t;
}

RationalVector RationalMatrix::apply(const RationalVector& v) const {
  if (v.size() != c_) throw ArgumentError("matrix-vector shape mismatch");
  RationalVector out(r_);
  for (std::size_t i = 0; i < r_; ++i)
    for (std::size_t j = 0; j < c_; ++j)
      if (sgn(v[j]) != 0 && sgn(at(i, j)) != 0) out[i] += at(i, j) * v[j];
  return out;
}

RationalVector RationalMatrix::apply(const LatticeVector& v) const {
  if (v.size() != c_) throw ArgumentError("matrix-vector shape mismatch");
  RationalVector out(r_);
  for (std::size_t i = 0; i < r_; ++i)
    for (std::size_t j = 0; j < c_; ++j)
      if (v[j] != 0 && sgn(at(i, j)) != 0) out[i] += at(i, j) * static_cast<long>(v[j]);
  return out;
}

LatticeVector RationalMatrix::apply_integral(const LatticeVector& v) const {
  RationalVector w = apply(v);
  LatticeVector out(r_);
  for (std::size_t i = 0; i < r_; ++i) {
    if (!sseala::is_integral(w[i])) throw ArgumentError("matrix does not preserve the lattice");
    out[i] = w[i].get_num().get_si();
  }
  return out;
}

RationalVector RationalMatrix::row(std::size_t i) const {
  return RationalVector(a_.begin() + static_cast<std::ptrdiff_t>(i * c_),
                        a_.begin() + static_cast<std::ptrdiff_t>((i + 1) * c_));
}

RationalVector RationalMatrix::col(std::size_t j) const {
  RationalVector v(r_);
  for (std::size_t i = 0; i < r_; ++i) v[i] = at(i, j);
  return v;
}

bool RationalMatrix::is_zero() const {
  return std::all_of(a_.begin(), a_.end(), [](const Rational& x) { return sgn(x) == 0; });
}

bool RationalMatrix::is_integral() const {
  return std::all_of(a_.begin(), a_.end(), [](const Rational& x) { return x.get_den() == 1; });
}

bool RationalMatrix::is_skew() const {
  if (r_ != c_) return false;
  for (std::size_t i = 0; i < r_; ++i)
    for (std::size_t j = i; j < c_; ++j)
      if (at(i, j) != -at(j, i)) return false;
  return true;
}

RationalMatrix operator*(const RationalMatrix& a, const RationalMatrix& b) {
  if (a.c_ != b.r_) throw ArgumentError("matrix product shape mismatch");
  RationalMatrix m(a.r_, b.c_);
  for (std::size_t i = 0; i < a.r_; ++i)
    for (std::size_t k = 0; k < a.c_; ++k) {
      const Rational& x = a.at(i, k);
      if (sgn(x) == 0) continue;
      for (std::size_t j = 0; j < b.c_; ++j)
        if (sgn(b.at(k, j)) != 0) m.at(i, j) += x * b.at(k, j);
    }
  return m;
}

RationalMatrix operator+(const RationalMatrix& a, const RationalMatrix& b) {
  if (a.r_ != b.r_ || a.c_ != b.c_) throw ArgumentError("matrix sum shape mismatch");
  RationalMatrix m = a;
  for (std::size_t i = 0; i < m.a_.size(); ++i) m.a_[i] += b.a_[i];
  return m;
}

RationalMatrix operator-(const RationalMatrix& a, const RationalMatrix& b) {
  if (a.r_ != b.r_ || a.c_ != b.c_) throw ArgumentError("matrix difference shape mismatch");
  RationalMatrix m = a;
  for (std::size_t i = 0; i < m.a_.size(); ++i) m.a_[i] -= b.a_[i];
  return m;
}

RationalMatrix operator*(const Rational& k, RationalMatrix a) {
  for (auto& x : a.a_) x *= k;
  return a;
}

std::string RationalMatrix::str() const {
  std::string s = "[";
  for (std::size_t i = 0; i < r_; ++i) {
    if (i) s += ",";
    s += to_string(row(i));
  }
  return s + "]";
}

RationalMatrix commutator(const RationalMatrix& a, const RationalMatrix& b) { return a * b - b * a; }

RationalMatrix outer(const LatticeVector& r, const RationalVector& s) {
  RationalMatrix m(r.size(), s.size());
  for (std::size_t i = 0; i < r.size(); ++i)
    for (std::size_t j = 0; j < s.size(); ++j) m.at(i, j) = static_cast<long>(r[i]) * s[j];
  return m;
}

RationalMatrix direct_sum(const RationalMatrix& a, const RationalMatrix& b) {
  RationalMatrix m(a.rows() + b.rows(), a.cols() + b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) m.at(i, j) = a.at(i, j);
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) m.at(a.rows() + i, a.cols() + j) = b.at(i, j);
  return m;
}

RationalMatrix kron(const RationalMatrix& a, const RationalMatrix& b) {
  RationalMatrix m(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (sgn(a.at(i, j)) == 0) continue;
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l)
          m.at(i * b.rows() + k, j * b.cols() + l) = a.at(i, j) * b.at(k, l);
    }
  return m;
}

// ---- skew forms

SkewFormContext::SkewFormContext(RationalMatrix b) : n_(b.rows()), b_(std::move(b)) {
  if (b_.rows() != b_.cols()) throw ArgumentError("B must be square");
  if (n_ == 0 || n_ > kMaxRank) throw ArgumentError("B must have size 1.." + std::to_string(kMaxRank));
  if (!b_.is_skew()) throw ArgumentError("B is not skew-symmetric");
  radical_ = radical_basis(b_);
}

Rational SkewFormContext::pairing(const LatticeVector& r, const LatticeVector& s) const {
  if (r.size() != n_ || s.size() != n_) throw ArgumentError("pairing: rank mismatch");
  Rational acc = 0;
  for (std::size_t i = 0; i < n_; ++i) {
    if (s[i] == 0) continue;
    for (std::size_t j = 0; j < n_; ++j)
      if (r[j] != 0 && sgn(b_.at(i, j)) != 0) acc += b_.at(i, j) * static_cast<long>(s[i] * r[j]);
  }
  return acc;
}

bool SkewFormContext::in_radical(const LatticeVector& r) const {
  for (std::size_t i = 0; i < n_; ++i) {
    Rational acc = 0;
    for (std::size_t j = 0; j < n_; ++j)
      if (r[j] != 0) acc += b_.at(i, j) * static_cast<long>(r[j]);
    if (sgn(acc) != 0) return false;
  }
  return true;
}

RationalMatrix standard_J(std::size_t m) {
  RationalMatrix j(2 * m, 2 * m);
  for (std::size_t i = 0; i < m; ++i) {
    j.at(i, m + i) = 1;
    j.at(m + i, i) = -1;
  }
  return j;
}

RationalMatrix standard_J1(std::size_t m) {
  std::size_t n = 2 * m + 1;
  RationalMatrix j(n, n);
  for (std::size_t i = 0; i < m; ++i) {
    j.at(i, m + i) = 1;
    j.at(m + i, i) = -1;
  }
  for (std::size_t i = 0; i < 2 * m; ++i) {
    j.at(i, n - 1) = 1;
    j.at(n - 1, i) = -1;
  }
  return j;
}

RationalMatrix standard_Jprime(std::size_t m) { return direct_sum(standard_J(m), RationalMatrix(1, 1)); }

std::vector<LatticeVector> radical_basis(const RationalMatrix& b) { return integer_kernel(b); }

bool congruence_check(const RationalMatrix& a, const RationalMatrix& b_from, const RationalMatrix& b_to) {
  if (a.rows() != a.cols() || a.rows() != b_from.rows() || b_from.rows() != b_to.rows())
    throw ArgumentError("congruence_check: shape mismatch");
  if (!a.is_integral()) return false;
  Rational d = determinant(a);
  if (d != 1 && d != -1) return false;
  return a * b_from * a.transpose() == b_to;
}

std::optional<RationalMatrix> search_congruence(const RationalMatrix& b_from, const RationalMatrix& b_to) {
  const std::size_t n = b_from.rows();
  if (n != b_to.rows() || n > kMaxRank) throw ArgumentError("search_congruence: shape mismatch");
  std::vector<std::vector<long>> cands;
  std::vector<long> v(n, -1);
  while (true) {
    if (std::any_of(v.begin(), v.end(), [](long x) { return x != 0; })) cands.push_back(v);
    std::size_t i = n;
    while (i > 0 && v[i - 1] == 1) v[--i] = -1;
    if (i == 0) break;
    ++v[i - 1];
  }
  // images[c] = B_from^T applied to candidate c, so that a_i B a_j^T = a_i . (B a_j^T)
  std::vector<RationalVector> images;
  images.reserve(cands.size());
  for (const auto& c : cands) {
    RationalVector cv(c.begin(), c.end());
    images.push_back(b_from.apply(cv));
  }
  auto pair_value = [&](std::size_t ci, std::size_t cj) {
    Rational s = 0;
    for (std::size_t k = 0; k < n; ++k)
      if (cands[ci][k] != 0) s += images[cj][k] * cands[ci][k];
    return s;
  };
  std::vector<std::size_t> chosen;
  std::size_t budget = 20'000'000;
  std::function<bool()> rec = [&]() -> bool {
    std::size_t i = chosen.size();
    if (i == n) {
      RationalMatrix a(n, n);
      for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) a.at(r, c) = cands[chosen[r]][c];
      Rational d = determinant(a);
      return d == 1 || d == -1;
    }
    for (std::size_t c = 0; c < cands.size(); ++c) {
      if (budget-- == 0) return false;
      bool ok = true;
      for (std::size_t j = 0; j < i && ok; ++j) ok = pair_value(c, chosen[j]) == b_to.at(i, j);
      if (!ok) continue;
      chosen.push_back(c);
      if (rec()) return true;
      chosen.pop_back();
    }
    return false;
  };
  if (!rec()) return std::nullopt;
  RationalMatrix a(n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) a.at(r, c) = cands[chosen[r]][c];
  return a;
}

RationalMatrix symplectic_basis(const SkewFormContext& ctx) {
  const RationalMatrix& b = ctx.matrix();
  const std::size_t n = ctx.rank();
  if (!ctx.nondegenerate() || n % 2 != 0) {
    std::ostringstream msg;
    msg << "symplectic_basis: B is degenerate (radical rank " << ctx.radical().size() << ")";
    throw PreconditionError(msg.str());
  }
  auto beta = [&](const RationalVector& x, const RationalVector& y) { return dot(x, b.apply(y)); };
  std::vector<RationalVector> pool;
  for (std::size_t i = 0; i < n; ++i) {
    RationalVector e(n);
    e[i] = 1;
    pool.push_back(e);
  }
  std::vector<RationalVector> xs, ys;
  while (!pool.empty()) {
    RationalVector x = pool.front();
    std::size_t k = 1;
    while (k < pool.size() && sgn(beta(x, pool[k])) == 0) ++k;
    if (k == pool.size()) throw PreconditionError("symplectic_basis: B is degenerate");
    RationalVector y = pool[k];
    Rational s = beta(x, y);
    for (auto& c : y) c /= s;
    std::vector<RationalVector> rest;
    for (std::size_t i = 1; i < pool.size(); ++i) {
      if (i == k) continue;
      RationalVector z = pool[i];
      Rational byz = beta(y, z), bxz = beta(x, z);
      for (std::size_t t = 0; t < n; ++t) z[t] += byz * x[t] - bxz * y[t];
      rest.push_back(std::move(z));
    }
    xs.push_back(std::move(x));
    ys.push_back(std::move(y));
    pool = std::move(rest);
  }
  RationalMatrix w(n, n);
  const std::size_t m = xs.size();
  for (std::size_t k = 0; k < m; ++k)
    for (std::size_t t = 0; t < n; ++t) {
      w.at(t, k) = xs[k][t];
      w.at(t, m + k) = ys[k][t];
    }
  return inverse(w);
}

RationalMatrix parse_matrix_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("matrix file: ") + e.what());
  }
  if (!j.is_object() || !j.contains("n") || !j.contains("entries") || !j["n"].is_number_integer() ||
      !j["entries"].is_array())
    throw ParseError("matrix file: expected {\"n\": N, \"entries\": [[...], ...]}");
  auto n = j["n"].get<long>();
  if (n <= 0 || static_cast<std::size_t>(n) > kMaxRank) throw ParseError("matrix file: bad n");
  const auto& rows = j["entries"];
  if (rows.size() != static_cast<std::size_t>(n)) throw ParseError("matrix file: row count differs from n");
  RationalMatrix m(static_cast<std::size_t>(n), static_cast<std::size_t>(n));
  for (std::size_t i = 0; i < m.rows(); ++i) {
    if (!rows[i].is_array() || rows[i].size() != m.cols()) throw ParseError("matrix file: ragged row");
    for (std::size_t c = 0; c < m.cols(); ++c) {
      const auto& e = rows[i][c];
      if (e.is_string()) m.at(i, c) = parse_rational(e.get<std::string>());
      else if (e.is_number_integer()) m.at(i, c) = e.get<long>();
      else throw ParseError("matrix file: entries must be \"p/q\" strings or integers");
    }
  }
  if (!m.is_skew()) throw ParseError("matrix file: matrix is not skew-symmetric");
  return m;
}

std::string matrix_to_json(const RationalMatrix& b) {
  nlohmann::ordered_json j;
  j["n"] = b.rows();
  j["entries"] = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < b.rows(); ++i) {
    nlohmann::ordered_json row = nlohmann::ordered_json::array();
    for (std::size_t c = 0; c < b.cols(); ++c) row.push_back(to_string(b.at(i, c)));
    j["entries"].push_back(row);
  }
  return j.dump();
}

}  // namespace sseala
