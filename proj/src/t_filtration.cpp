#include "sseala/t_filtration.hpp"

#include <memory>
#include <mutex>

#include "sseala/errors.hpp"

namespace sseala {

// ---- TElement

TElement TElement::basis(const LatticeVector& r, Rational c) {
  TElement x(r.size());
  x.add_term(r, c);
  return x;
}

Rational TElement::coefficient(const LatticeVector& r) const {
  auto it = terms_.find(r);
  return it == terms_.end() ? Rational(0) : it->second;
}

void TElement::add_term(const LatticeVector& r, const Rational& c) {
  if (n_ == 0) n_ = r.size();
  if (r.size() != n_) throw ArgumentError("TElement: rank mismatch");
  if (r.is_zero() || sgn(c) == 0) return;
  auto [it, fresh] = terms_.try_emplace(r, c);
  if (!fresh) {
    it->second += c;
    if (sgn(it->second) == 0) terms_.erase(it);
  }
}

TElement& TElement::operator+=(const TElement& o) {
  for (const auto& [r, c] : o.terms_) add_term(r, c);
  if (n_ == 0) n_ = o.n_;
  return *this;
}

TElement& TElement::operator-=(const TElement& o) {
  for (const auto& [r, c] : o.terms_) add_term(r, -c);
  if (n_ == 0) n_ = o.n_;
  return *this;
}

TElement operator-(TElement a) {
  for (auto& [r, c] : a.terms_) c = -c;
  return a;
}

TElement operator*(const Rational& k, TElement a) {
  if (sgn(k) == 0) a.terms_.clear();
  for (auto& [r, c] : a.terms_) c *= k;
  return a;
}

std::string TElement::str() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (const auto& [r, c] : terms_) {
    if (!out.empty()) out += " + ";
    out += to_string(c) + "*T[" + r.str() + "]";
  }
  return out;
}

TElement t_bracket(const SkewFormContext& ctx, const TElement& x, const TElement& y) {
  TElement out(x.rank() ? x.rank() : y.rank());
  for (const auto& [r, a] : x.terms())
    for (const auto& [s, b] : y.terms()) {
      Rational c = a * b * ctx.pairing(r, s);
      if (sgn(c) == 0) continue;
      out.add_term(r + s, c);
      out.add_term(r, -c);
      out.add_term(s, -c);
    }
  return out;
}

std::string TqSpec::str() const {
  std::string out = "T_" + std::to_string(q()) + "(" + s.str();
  for (const auto& r : rs) out += ";" + r.str();
  return out + ")";
}

TElement expand_Tq(const TqSpec& spec) {
  std::size_t q = spec.rs.size();
  if (q > 20) throw ArgumentError("expand_Tq: q too large");
  TElement out(spec.s.size());
  for (std::size_t mask = 0; mask < (std::size_t{1} << q); ++mask) {
    LatticeVector v = spec.s;
    int sign = 1;
    for (std::size_t i = 0; i < q; ++i)
      if (mask >> i & 1) {
        v += spec.rs[i];
        sign = -sign;
      }
    out.add_term(v, sign);
  }
  return out;
}

LaurentPoly eta(const TElement& x) {
  LaurentPoly f(x.rank());
  for (const auto& [r, c] : x.terms()) {
    f.add_term(r, c);
    f.add_term(LatticeVector(x.rank()), -c);
  }
  return f;
}

namespace {

const std::vector<MultiIndex>& cached_indices(std::size_t n, unsigned q) {
  static std::mutex mu;
  static std::map<std::pair<std::size_t, unsigned>, std::unique_ptr<std::vector<MultiIndex>>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[{n, q}];
  if (!slot) slot = std::make_unique<std::vector<MultiIndex>>(q >= 2 ? multi_indices(n, 1, q - 1) : std::vector<MultiIndex>{});
  return *slot;
}

}  // namespace

std::vector<Rational> ideal_functionals(const TElement& x, unsigned q) {
  if (q == 0) throw ArgumentError("ideal index q must be positive");
  const auto& alphas = cached_indices(x.rank(), q);
  std::vector<Rational> out(alphas.size());
  for (std::size_t a = 0; a < alphas.size(); ++a)
    for (const auto& [r, c] : x.terms()) out[a] += c * static_cast<long>(monomial_derivative_at_one(r, alphas[a]));
  return out;
}

bool in_ideal(const TElement& x, unsigned q) {
  if (q == 0) throw ArgumentError("ideal index q must be positive");
  if (x.is_zero() || q == 1) return true;
  const auto& alphas = cached_indices(x.rank(), q);
  for (const auto& alpha : alphas) {
    Rational v;
    for (const auto& [r, c] : x.terms()) v += c * static_cast<long>(monomial_derivative_at_one(r, alpha));
    if (sgn(v) != 0) return false;
  }
  return true;
}

bool in_ideal_via_eta(const TElement& x, unsigned q) {
  if (q == 0) throw ArgumentError("ideal index q must be positive");
  LaurentPoly f = eta(x);
  if (f.is_zero()) return true;
  return vanishing_order_at_one(f, q).order >= q;
}

std::size_t quotient_dim(std::size_t n, unsigned q, std::int64_t radius) {
  if (q == 0) throw ArgumentError("ideal index q must be positive");
  if (radius < static_cast<std::int64_t>(q) - 1)
    throw PreconditionError("quotient_dim: box radius " + std::to_string(radius) + " is below q-1 = " +
                            std::to_string(q - 1));
  const auto& alphas = cached_indices(n, q);
  if (alphas.empty()) return 0;
  SparseEliminator el(alphas.size());
  for (const auto& r : box_points(n, radius, false)) {
    SparseRow row;
    for (std::size_t a = 0; a < alphas.size(); ++a)
      if (auto v = monomial_derivative_at_one(r, alphas[a]); v != 0) row[a] = Rational(static_cast<long>(v));
    el.insert(std::move(row));
    if (el.rank() == alphas.size()) break;  // the rank cannot grow past the column count
  }
  return el.rank();
}

RationalMatrix psi_basis(const SkewFormContext& ctx, const LatticeVector& r) { return outer(r, ctx.image(r)); }

RationalMatrix psi(const SkewFormContext& ctx, const TElement& x) {
  RationalMatrix out(ctx.rank(), ctx.rank());
  for (const auto& [r, c] : x.terms()) out = out + c * psi_basis(ctx, r);
  return out;
}

bool in_g_b(const SkewFormContext& ctx, const RationalMatrix& x) {
  const auto& b = ctx.matrix();
  return b * x == RationalMatrix(x.rows(), x.cols()) - x.transpose() * b;
}

namespace {

void require_nondegenerate(const SkewFormContext& ctx, const char* what) {
  if (!ctx.nondegenerate())
    throw PreconditionError(std::string(what) + " needs a nondegenerate form; radical rank is " +
                            std::to_string(ctx.radical().size()));
}

SparseRow flatten(const RationalMatrix& m) {
  SparseRow row;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (sgn(m.at(i, j)) != 0) row[i * m.cols() + j] = m.at(i, j);
  return row;
}

}  // namespace

std::size_t psi_image_dim(const SkewFormContext& ctx, std::int64_t radius) {
  require_nondegenerate(ctx, "psi");
  std::size_t n = ctx.rank();
  SparseEliminator el(n * n);
  for (const auto& r : box_points(n, radius, false)) {
    el.insert(flatten(psi_basis(ctx, r)));
    if (el.rank() == n * (n + 1) / 2) break;  // dim of the target algebra
  }
  return el.rank();
}

std::vector<TElement> psi_kernel_basis(const SkewFormContext& ctx, std::int64_t radius) {
  require_nondegenerate(ctx, "psi");
  std::size_t n = ctx.rank();
  auto pts = box_points(n, radius, false);
  RationalMatrix m(n * n, pts.size());
  for (std::size_t c = 0; c < pts.size(); ++c) {
    RationalMatrix x = psi_basis(ctx, pts[c]);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) m.at(i * n + j, c) = x.at(i, j);
  }
  std::vector<TElement> out;
  for (const auto& v : nullspace(m)) {
    TElement x(n);
    for (std::size_t c = 0; c < pts.size(); ++c) x.add_term(pts[c], v[c]);
    out.push_back(std::move(x));
  }
  return out;
}

}  // namespace sseala
