#include "sseala/lie.hpp"

#include <algorithm>

#include "sseala/errors.hpp"

namespace sseala {

int SimpleLieAlgebra::index_of(const std::string& label) const {
  for (int i = 0; i < dim(); ++i)
    if (labels[static_cast<std::size_t>(i)] == label) return i;
  throw ArgumentError("unknown basis label '" + label + "' in " + name);
}

SimpleLieAlgebra SimpleLieAlgebra::sl2() {
  SimpleLieAlgebra g;
  g.name = "sl2";
  g.labels = {"e", "h", "f"};
  g.bracket.assign(3, std::vector<std::vector<std::pair<int, Rational>>>(3));
  auto set = [&](int i, int j, int k, Rational c) {
    g.bracket[i][j].push_back({k, c});
    g.bracket[j][i].push_back({k, -c});
  };
  set(0, 2, 1, 1);   // [e,f] = h
  set(1, 0, 0, 2);   // [h,e] = 2e
  set(1, 2, 2, -2);  // [h,f] = -2f
  g.form.assign(3, std::vector<Rational>(3));
  g.form[0][2] = g.form[2][0] = 1;
  g.form[1][1] = 2;
  g.root = {1, 0, -1};
  g.root_norm = 2;
  return g;
}

// ---- GradedElement

GradedElement::GradedElement(const AlgebraSpec* alg, const BasisSymbol& s, Rational c) : alg_(alg) {
  add_term(s, c);
}

Rational GradedElement::coefficient(const BasisSymbol& s) const {
  auto it = terms_.find(s);
  return it == terms_.end() ? Rational(0) : it->second;
}

void GradedElement::add_term(const BasisSymbol& s, const Rational& c) {
  if (sgn(c) == 0) return;
  auto [it, fresh] = terms_.try_emplace(s, c);
  if (!fresh) {
    it->second += c;
    if (sgn(it->second) == 0) terms_.erase(it);
  }
}

void GradedElement::check_same(const GradedElement& o) const {
  if (alg_ && o.alg_ && alg_ != o.alg_) throw ArgumentError("elements of different algebras");
}

GradedElement& GradedElement::operator+=(const GradedElement& o) {
  check_same(o);
  if (!alg_) alg_ = o.alg_;
  for (const auto& [s, c] : o.terms_) add_term(s, c);
  return *this;
}

GradedElement& GradedElement::operator-=(const GradedElement& o) {
  check_same(o);
  if (!alg_) alg_ = o.alg_;
  for (const auto& [s, c] : o.terms_) add_term(s, -c);
  return *this;
}

GradedElement operator-(GradedElement a) {
  for (auto& [s, c] : a.terms_) c = -c;
  return a;
}

GradedElement operator*(const Rational& k, GradedElement a) {
  if (sgn(k) == 0) a.terms_.clear();
  for (auto& [s, c] : a.terms_) c *= k;
  return a;
}

std::string GradedElement::str() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (const auto& [s, c] : terms_) {
    if (!out.empty()) out += " + ";
    out += to_string(c) + "*" + (alg_ ? alg_->symbol_str(s) : std::string("?"));
  }
  return out;
}

// ---- AlgebraSpec

AlgebraSpec::AlgebraSpec(AlgebraFamily f, std::size_t n, std::string name)
    : family_(f), n_(n), name_(std::move(name)), g_(SimpleLieAlgebra::sl2()), rule_(builtin_bracket) {
  if (n == 0 || n > kMaxRank) throw ArgumentError("algebra rank must be 1.." + std::to_string(kMaxRank));
}

std::shared_ptr<const AlgebraSpec> AlgebraSpec::toroidal(std::size_t n) {
  return std::shared_ptr<const AlgebraSpec>(new AlgebraSpec(AlgebraFamily::Toroidal, n, "toroidal"));
}

std::shared_ptr<const AlgebraSpec> AlgebraSpec::full_toroidal(std::size_t n) {
  return std::shared_ptr<const AlgebraSpec>(new AlgebraSpec(AlgebraFamily::FullToroidal, n, "full-toroidal"));
}

std::shared_ptr<const AlgebraSpec> AlgebraSpec::tau_s(std::size_t n) {
  return std::shared_ptr<const AlgebraSpec>(new AlgebraSpec(AlgebraFamily::TauS, n, "tauS"));
}

std::shared_ptr<const AlgebraSpec> AlgebraSpec::tau_b(const SkewFormContext& ctx, std::string name) {
  auto* a = new AlgebraSpec(AlgebraFamily::TauB, ctx.rank(), std::move(name));
  a->ctx_ = ctx;
  return std::shared_ptr<const AlgebraSpec>(a);
}

std::shared_ptr<const AlgebraSpec> AlgebraSpec::with_bracket_rule(BracketRule rule, std::string name) const {
  auto* a = new AlgebraSpec(*this);
  a->rule_ = std::move(rule);
  a->name_ = std::move(name);
  return std::shared_ptr<const AlgebraSpec>(a);
}

GradedElement AlgebraSpec::element(const BasisSymbol& s, Rational c) const {
  if (s.degree.size() != n_) throw ArgumentError("symbol degree has the wrong rank");
  if (!is_canonical(s)) throw UnsupportedOperation("symbol " + symbol_str(s) + " is not a basis symbol of " + name_);
  return GradedElement(this, s, std::move(c));
}

GradedElement AlgebraSpec::x(int a, const LatticeVector& r) const {
  if (a < 0 || a >= g_.dim()) throw ArgumentError("simple basis index out of range");
  return element({SymbolKind::X, a, r});
}

GradedElement AlgebraSpec::k_coord(std::size_t i) const { return element({SymbolKind::K, static_cast<int>(i), LatticeVector(n_)}); }
GradedElement AlgebraSpec::d_coord(std::size_t i) const { return element({SymbolKind::D, static_cast<int>(i), LatticeVector(n_)}); }

GradedElement AlgebraSpec::k_element(const RationalVector& u, const LatticeVector& r) const {
  if (u.size() != n_ || r.size() != n_) throw ArgumentError("K(u,r): rank mismatch");
  GradedElement out(this);
  if (r.is_zero()) {
    for (std::size_t i = 0; i < n_; ++i) out.add_term({SymbolKind::K, static_cast<int>(i), r}, u[i]);
    return out;
  }
  if (family_ == AlgebraFamily::TauB) {
    RationalVector br = ctx_->image(r);
    Rational nn = dot(br, br);
    if (sgn(nn) == 0) return out;
    Rational c = -dot(ctx_->matrix().apply(u), r) / nn;
    out.add_term({SymbolKind::K, kBVector, r}, c);
    return out;
  }
  std::size_t p = r.first_nonzero();
  Rational f = u[p] / static_cast<long>(r[p]);
  for (std::size_t i = 0; i < n_; ++i) {
    if (i == p) continue;
    out.add_term({SymbolKind::K, static_cast<int>(i), r}, u[i] - f * static_cast<long>(r[i]));
  }
  return out;
}

GradedElement AlgebraSpec::d_element(const RationalVector& u, const LatticeVector& r) const {
  if (u.size() != n_ || r.size() != n_) throw ArgumentError("D(u,r): rank mismatch");
  GradedElement out(this);
  if (r.is_zero()) {
    for (std::size_t i = 0; i < n_; ++i) out.add_term({SymbolKind::D, static_cast<int>(i), r}, u[i]);
    return out;
  }
  bool u_zero = std::all_of(u.begin(), u.end(), [](const Rational& x) { return sgn(x) == 0; });
  switch (family_) {
    case AlgebraFamily::Toroidal:
      if (u_zero) return out;
      throw UnsupportedOperation("D(u,r) with r != 0 does not lie in the toroidal algebra");
    case AlgebraFamily::FullToroidal:
      for (std::size_t i = 0; i < n_; ++i) out.add_term({SymbolKind::D, static_cast<int>(i), r}, u[i]);
      return out;
    case AlgebraFamily::TauS: {
      if (sgn(dot(u, r)) != 0) throw UnsupportedOperation("D(u,r) with (u|r) != 0 is not in S_N");
      std::size_t p = r.first_nonzero();
      for (std::size_t j = 0; j < n_; ++j)
        if (j != p) out.add_term({SymbolKind::D, static_cast<int>(j), r}, u[j]);
      return out;
    }
    case AlgebraFamily::TauB: {
      RationalVector br = ctx_->image(r);
      Rational nn = dot(br, br);
      if (sgn(nn) == 0) {
        if (u_zero) return out;
        throw UnsupportedOperation("D(u,r) with r in the radical and u != 0 is not in H_B");
      }
      Rational c = dot(u, br) / nn;
      for (std::size_t i = 0; i < n_; ++i)
        if (u[i] != c * br[i]) throw UnsupportedOperation("D(u,r) with u not parallel to Br is not in H_B");
      out.add_term({SymbolKind::D, kBVector, r}, c);
      return out;
    }
  }
  return out;
}

RationalVector AlgebraSpec::vector_of(const BasisSymbol& s) const {
  if (s.kind != SymbolKind::K && s.kind != SymbolKind::D) throw ArgumentError("vector_of: not a K or D symbol");
  if (s.index == kBVector) return ctx_->image(s.degree);
  RationalVector v(n_);
  v[static_cast<std::size_t>(s.index)] = 1;
  if (family_ == AlgebraFamily::TauS && s.kind == SymbolKind::D && !s.degree.is_zero()) {
    std::size_t p = s.degree.first_nonzero();
    v[p] = Rational(-static_cast<long>(s.degree[static_cast<std::size_t>(s.index)])) /
           static_cast<long>(s.degree[p]);
  }
  return v;
}

std::vector<BasisSymbol> AlgebraSpec::basis_in_degree(const LatticeVector& r) const {
  if (r.size() != n_) throw ArgumentError("degree has the wrong rank");
  std::vector<BasisSymbol> out;
  for (int a = 0; a < g_.dim(); ++a) out.push_back({SymbolKind::X, a, r});
  const int n = static_cast<int>(n_);
  if (r.is_zero()) {
    for (int i = 0; i < n; ++i) out.push_back({SymbolKind::K, i, r});
    for (int i = 0; i < n; ++i) out.push_back({SymbolKind::D, i, r});
    return out;
  }
  const int p = static_cast<int>(r.first_nonzero());
  switch (family_) {
    case AlgebraFamily::Toroidal:
      for (int i = 0; i < n; ++i)
        if (i != p) out.push_back({SymbolKind::K, i, r});
      break;
    case AlgebraFamily::FullToroidal:
      for (int i = 0; i < n; ++i)
        if (i != p) out.push_back({SymbolKind::K, i, r});
      for (int i = 0; i < n; ++i) out.push_back({SymbolKind::D, i, r});
      break;
    case AlgebraFamily::TauS:
      for (int i = 0; i < n; ++i)
        if (i != p) out.push_back({SymbolKind::K, i, r});
      for (int i = 0; i < n; ++i)
        if (i != p) out.push_back({SymbolKind::D, i, r});
      break;
    case AlgebraFamily::TauB:
      if (!ctx_->in_radical(r)) {
        out.push_back({SymbolKind::K, kBVector, r});
        out.push_back({SymbolKind::D, kBVector, r});
      }
      break;
  }
  return out;
}

std::vector<BasisSymbol> AlgebraSpec::basis_in_box(std::int64_t radius) const {
  std::vector<BasisSymbol> out;
  for (const auto& r : box_points(n_, radius)) {
    auto b = basis_in_degree(r);
    out.insert(out.end(), b.begin(), b.end());
  }
  return out;
}

bool AlgebraSpec::is_canonical(const BasisSymbol& s) const {
  if (s.kind == SymbolKind::T || s.degree.size() != n_) return false;
  if (s.kind == SymbolKind::X) return s.index >= 0 && s.index < g_.dim();
  for (const auto& b : basis_in_degree(s.degree))
    if (b == s) return true;
  return false;
}

GradedElement AlgebraSpec::normalize(const GradedElement& x) const {
  GradedElement out(this);
  for (const auto& [s, c] : x.terms()) {
    if (s.kind == SymbolKind::X) out.add_term(s, c);
    else if (s.kind == SymbolKind::K) out += c * k_element(vector_of(s), s.degree);
    else if (s.kind == SymbolKind::D) out += c * d_element(vector_of(s), s.degree);
    else throw UnsupportedOperation("T symbols do not belong to " + name_);
  }
  return out;
}

GradedElement AlgebraSpec::bracket(const GradedElement& x, const GradedElement& y) const {
  if ((x.algebra() && x.algebra() != this) || (y.algebra() && y.algebra() != this))
    throw ArgumentError("bracket of elements from different algebras");
  GradedElement out(this);
  for (const auto& [a, ca] : x.terms())
    for (const auto& [b, cb] : y.terms()) {
      GradedElement t = rule_(*this, a, b);
      Rational k = ca * cb;
      for (const auto& [s, c] : t.terms()) out.add_term(s, k * c);
    }
  return out;
}

std::optional<Rational> AlgebraSpec::form(const BasisSymbol& a, const BasisSymbol& b) const {
  if (!has_form()) return std::nullopt;
  if (!(a.degree + b.degree).is_zero()) return Rational(0);
  if (a.kind == SymbolKind::X && b.kind == SymbolKind::X)
    return g_.form[static_cast<std::size_t>(a.index)][static_cast<std::size_t>(b.index)];
  if (a.kind == SymbolKind::D && b.kind == SymbolKind::K) return dot(vector_of(a), vector_of(b));
  if (a.kind == SymbolKind::K && b.kind == SymbolKind::D) return dot(vector_of(a), vector_of(b));
  return Rational(0);
}

std::optional<Rational> AlgebraSpec::form(const GradedElement& x, const GradedElement& y) const {
  if (!has_form()) return std::nullopt;
  Rational s = 0;
  for (const auto& [a, ca] : x.terms())
    for (const auto& [b, cb] : y.terms()) s += ca * cb * *form(a, b);
  return s;
}

std::string AlgebraSpec::symbol_str(const BasisSymbol& s) const {
  auto vec = [&]() -> std::string {
    bool valid = (s.index == kBVector && ctx_) || (s.index >= 0 && static_cast<std::size_t>(s.index) < n_);
    return valid && s.degree.size() == n_ ? to_string(vector_of(s)) : std::string("(?)");
  };
  switch (s.kind) {
    case SymbolKind::X:
      if (s.index >= 0 && s.index < g_.dim()) return g_.labels[static_cast<std::size_t>(s.index)] + "[" + s.degree.str() + "]";
      return "X?[" + s.degree.str() + "]";
    case SymbolKind::K:
      return "K[" + vec() + ";" + s.degree.str() + "]";
    case SymbolKind::D:
      return "D[" + vec() + ";" + s.degree.str() + "]";
    case SymbolKind::T:
      return "T[" + s.degree.str() + "]";
  }
  return "?";
}

// ---- brackets

namespace {

GradedElement bracket_dx(const AlgebraSpec& alg, const BasisSymbol& d, const BasisSymbol& x) {
  GradedElement out(&alg);
  Rational c = dot(alg.vector_of(d), x.degree);
  if (sgn(c) != 0) out.add_term({SymbolKind::X, x.index, d.degree + x.degree}, c);
  return out;
}

GradedElement bracket_dk(const AlgebraSpec& alg, const BasisSymbol& d, const BasisSymbol& k) {
  RationalVector u = alg.vector_of(d), v = alg.vector_of(k);
  const LatticeVector& r = d.degree;
  const LatticeVector& s = k.degree;
  GradedElement out = dot(u, s) * alg.k_element(v, r + s);
  Rational uv = dot(u, v);
  if (sgn(uv) != 0) out += uv * alg.k_element(r.to_rational(), r + s);
  return out;
}

GradedElement bracket_dd(const AlgebraSpec& alg, const BasisSymbol& a, const BasisSymbol& b) {
  RationalVector u = alg.vector_of(a), v = alg.vector_of(b);
  const LatticeVector& r = a.degree;
  const LatticeVector& s = b.degree;
  Rational us = dot(u, s), vr = dot(v, r);
  RationalVector w(u.size());
  for (std::size_t i = 0; i < w.size(); ++i) w[i] = us * v[i] - vr * u[i];
  GradedElement out = alg.d_element(w, r + s);
  Rational cocycle = -us * vr;
  if (sgn(cocycle) != 0) out += cocycle * alg.k_element(r.to_rational(), r + s);
  return out;
}

}  // namespace

GradedElement builtin_bracket(const AlgebraSpec& alg, const BasisSymbol& a, const BasisSymbol& b) {
  using K = SymbolKind;
  if (a.kind == K::T || b.kind == K::T) throw UnsupportedOperation("T symbols do not belong to " + alg.name());
  if (a.kind == K::X && b.kind == K::X) {
    GradedElement out(&alg);
    const auto& g = alg.simple();
    LatticeVector deg = a.degree + b.degree;
    for (const auto& [c, v] : g.bracket[static_cast<std::size_t>(a.index)][static_cast<std::size_t>(b.index)])
      out.add_term({K::X, c, deg}, v);
    const Rational& f = g.form[static_cast<std::size_t>(a.index)][static_cast<std::size_t>(b.index)];
    if (sgn(f) != 0 && !a.degree.is_zero()) out += f * alg.k_element(a.degree.to_rational(), deg);
    return out;
  }
  if (a.kind == K::K || b.kind == K::K) {
    if (a.kind == K::D) return bracket_dk(alg, a, b);
    if (b.kind == K::D) return -bracket_dk(alg, b, a);
    return GradedElement(&alg);
  }
  if (a.kind == K::D && b.kind == K::X) return bracket_dx(alg, a, b);
  if (a.kind == K::X && b.kind == K::D) return -bracket_dx(alg, b, a);
  return bracket_dd(alg, a, b);
}

GradedElement bracket(const GradedElement& x, const GradedElement& y) {
  const AlgebraSpec* alg = x.algebra() ? x.algebra() : y.algebra();
  if (!alg) return GradedElement();
  return alg->bracket(x, y);
}

std::optional<Rational> invariant_form(const GradedElement& x, const GradedElement& y) {
  const AlgebraSpec* alg = x.algebra() ? x.algebra() : y.algebra();
  if (!alg) return Rational(0);
  if (x.algebra() && y.algebra() && x.algebra() != y.algebra()) throw ArgumentError("form of elements from different algebras");
  return alg->form(x, y);
}

JacobiResult jacobi_check(const GradedElement& x, const GradedElement& y, const GradedElement& z) {
  GradedElement d = bracket(x, bracket(y, z));
  d += bracket(y, bracket(z, x));
  d += bracket(z, bracket(x, y));
  return {d.is_zero(), d};
}

NilpotencyResult ad_nilpotency(const GradedElement& x, const GradedElement& y, unsigned bound) {
  GradedElement cur = y;
  for (unsigned k = 0; k <= bound; ++k) {
    if (cur.is_zero()) return {true, k};
    if (k == bound) break;
    cur = bracket(x, cur);
  }
  return {false, bound};
}

std::shared_ptr<const AlgebraSpec> make_algebra(const std::string& name, const SkewFormContext& ctx, std::size_t m) {
  if (name == "toroidal") return AlgebraSpec::toroidal(ctx.rank());
  if (name == "full-toroidal") return AlgebraSpec::full_toroidal(ctx.rank());
  if (name == "tauS") return AlgebraSpec::tau_s(ctx.rank());
  if (name == "tauB") return AlgebraSpec::tau_b(ctx, "tauB");
  if (name == "heala") return AlgebraSpec::tau_b(SkewFormContext(standard_J(m)), "heala");
  if (name == "keala") return AlgebraSpec::tau_b(SkewFormContext(standard_J1(m)), "keala");
  throw ArgumentError("unknown algebra '" + name + "'");
}

}  // namespace sseala
