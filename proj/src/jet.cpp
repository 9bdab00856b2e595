#include "sseala/jet.hpp"

#include <functional>

#include "sseala/errors.hpp"
#include "sseala/linalg.hpp"
#include "sseala/parallel.hpp"

namespace sseala {

const RationalMatrix& FiniteModule::operator[](const std::string& label) const {
  for (std::size_t i = 0; i < labels.size(); ++i)
    if (labels[i] == label) return action[i];
  throw ArgumentError("module " + name + " has no generator " + label);
}

// ---- symmetric powers

namespace {

void enumerate_monomials(std::size_t n, unsigned k, std::vector<unsigned>& cur, std::size_t pos,
                         std::vector<std::vector<unsigned>>& out) {
  if (pos + 1 == n) {
    cur[pos] = k;
    out.push_back(cur);
    return;
  }
  for (unsigned a = k + 1; a-- > 0;) {
    cur[pos] = a;
    enumerate_monomials(n, k - a, cur, pos + 1, out);
  }
}

}  // namespace

SymmetricPower::SymmetricPower(std::size_t n, unsigned k) : n_(n), k_(k) {
  if (n == 0) throw ArgumentError("symmetric power of the zero space");
  std::vector<unsigned> cur(n, 0);
  enumerate_monomials(n, k, cur, 0, monomials_);
  for (std::size_t i = 0; i < monomials_.size(); ++i) index_[monomials_[i]] = i;
}

RationalMatrix SymmetricPower::act(const RationalMatrix& x) const {
  if (x.rows() != n_ || x.cols() != n_) throw ArgumentError("symmetric power: matrix has the wrong size");
  RationalMatrix out(dim(), dim());
  for (std::size_t col = 0; col < monomials_.size(); ++col) {
    const auto& m = monomials_[col];
    // x_j -> sum_i x(i,j) x_i, extended as a derivation
    for (std::size_t j = 0; j < n_; ++j) {
      if (m[j] == 0) continue;
      for (std::size_t i = 0; i < n_; ++i) {
        if (sgn(x.at(i, j)) == 0) continue;
        auto img = m;
        --img[j];
        ++img[i];
        out.at(index_.at(img), col) += static_cast<long>(m[j]) * x.at(i, j);
      }
    }
  }
  return out;
}

// ---- sl2 and sp_2m modules

FiniteModule sl2_irrep(unsigned mu) {
  const SimpleLieAlgebra g = SimpleLieAlgebra::sl2();
  const std::size_t d = mu + 1;
  RationalMatrix e(d, d), h(d, d), f(d, d);
  for (std::size_t i = 0; i < d; ++i) {
    h.at(i, i) = static_cast<long>(mu) - 2 * static_cast<long>(i);
    if (i + 1 < d) f.at(i + 1, i) = 1;
    if (i > 0) e.at(i - 1, i) = static_cast<long>(i) * (static_cast<long>(mu) - static_cast<long>(i) + 1);
  }
  FiniteModule v{"V(" + std::to_string(mu) + ")", d, g.labels, {}, 0};
  v.action.resize(3);
  v.action[static_cast<std::size_t>(g.index_of("e"))] = e;
  v.action[static_cast<std::size_t>(g.index_of("h"))] = h;
  v.action[static_cast<std::size_t>(g.index_of("f"))] = f;
  for (int a = 0; a < g.dim(); ++a)
    for (int b = 0; b < g.dim(); ++b) {
      RationalMatrix rhs(d, d);
      for (const auto& [c, k] : g.bracket[a][b]) rhs = rhs + k * v.action[static_cast<std::size_t>(c)];
      if (!(commutator(v.action[a], v.action[b]) == rhs))
        throw InternalError("sl2 module relation fails for " + g.labels[a] + "," + g.labels[b]);
      ++v.relations_checked;
    }
  return v;
}

FiniteModule sp_irrep(std::size_t m, unsigned k) {
  SkewFormContext ctx(standard_J(m));
  const std::size_t n = 2 * m;
  SymmetricPower rep(n, k);
  std::vector<RationalMatrix> gens;
  FiniteModule v{"S^" + std::to_string(k) + "(Q^" + std::to_string(n) + ")", rep.dim(), {}, {}, 0};
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      LatticeVector ei = LatticeVector::unit(n, i), ej = LatticeVector::unit(n, j);
      RationalMatrix x = i == j ? outer(ei, ctx.image(ei)) : outer(ei, ctx.image(ej)) + outer(ej, ctx.image(ei));
      if (!in_g_b(ctx, x)) throw InternalError("sp generator outside the symplectic algebra");
      v.labels.push_back("psi(e" + std::to_string(i + 1) + ",e" + std::to_string(j + 1) + ")");
      gens.push_back(x);
      v.action.push_back(rep.act(x));
    }
  for (std::size_t a = 0; a < gens.size(); ++a)
    for (std::size_t b = 0; b < gens.size(); ++b) {
      if (!(rep.act(commutator(gens[a], gens[b])) == commutator(v.action[a], v.action[b])))
        throw InternalError("sp module relation fails for " + v.labels[a] + "," + v.labels[b]);
      ++v.relations_checked;
    }
  return v;
}

// ---- T-modules

TModule::TModule(const SkewFormContext& ctx, unsigned sym_power, const Rational& kernel_scalar)
    : ctx_(ctx), rep_(ctx.rank(), sym_power) {
  if (!ctx.nondegenerate()) throw PreconditionError("T-module through psi needs a nondegenerate form");
  // TODO: a nonzero scalar needs a character of ker psi_B modulo I_3; only 0 is constructed.
  if (sgn(kernel_scalar) != 0) throw UnsupportedOperation("nonzero kernel scalar on ker psi_B");
}

RationalMatrix TModule::act(const LatticeVector& r) const {
  if (r.is_zero()) return RationalMatrix(dim(), dim());
  return rep_.act(psi_basis(ctx_, r));
}

RationalMatrix TModule::act(const TElement& x) const { return rep_.act(psi(ctx_, x)); }

TModule t_module_from_rep(const SkewFormContext& ctx, unsigned sym_power, const Rational& kernel_scalar) {
  return TModule(ctx, sym_power, kernel_scalar);
}

// ---- jet vectors

JetVector JetVector::single(const LatticeVector& k, RationalVector v) {
  JetVector out(v.size());
  out.add(k, v);
  return out;
}

void JetVector::add(const LatticeVector& k, const RationalVector& v, const Rational& c) {
  if (fiber_ == 0) fiber_ = v.size();
  if (v.size() != fiber_) throw ArgumentError("jet vector: fiber dimension mismatch");
  if (sgn(c) == 0) return;
  auto [it, fresh] = terms_.try_emplace(k, RationalVector(fiber_));
  bool zero = true;
  for (std::size_t i = 0; i < fiber_; ++i) {
    it->second[i] += c * v[i];
    if (sgn(it->second[i]) != 0) zero = false;
  }
  if (zero) terms_.erase(it);
  (void)fresh;
}

JetVector& JetVector::operator+=(const JetVector& o) {
  for (const auto& [k, v] : o.terms_) add(k, v);
  return *this;
}

JetVector& JetVector::operator-=(const JetVector& o) {
  for (const auto& [k, v] : o.terms_) add(k, v, -1);
  return *this;
}

JetVector operator*(const Rational& c, const JetVector& a) {
  JetVector out(a.fiber());
  for (const auto& [k, v] : a.terms()) out.add(k, v, c);
  return out;
}

std::string JetVector::str() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (const auto& [k, v] : terms_) {
    if (!out.empty()) out += " + ";
    out += to_string(v) + " t^" + k.str();
  }
  return out;
}

JetVector random_jet_vector(std::size_t fiber, std::size_t n, SampleRng& rng, std::int64_t radius, std::size_t terms) {
  JetVector out(fiber);
  for (std::size_t t = 0; t < terms; ++t) {
    RationalVector v(fiber);
    for (auto& x : v) x = rng.rational(3, 3);
    out.add(rng.lattice(n, radius), v);
  }
  return out;
}

// ---- jet module

namespace {

Rational shifted_pairing(const RationalVector& u, const LatticeVector& k, const RationalVector& beta) {
  Rational s = 0;
  for (std::size_t i = 0; i < u.size(); ++i) s += u[i] * (Rational(static_cast<long>(k[i])) + beta[i]);
  return s;
}

RationalVector mat_vec(const RationalMatrix& m, const RationalVector& v) { return m.apply(v); }

// (I_outer (x) m) v, with v indexed as a * m.rows() + b
RationalVector apply_right(const RationalMatrix& m, const RationalVector& v) {
  const std::size_t d = m.rows(), outer_dim = v.size() / d;
  RationalVector out(v.size());
  for (std::size_t a = 0; a < outer_dim; ++a)
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j)
        if (sgn(m.at(i, j)) != 0) out[a * d + i] += m.at(i, j) * v[a * d + j];
  return out;
}

// (m (x) I_inner) v
RationalVector apply_left(const RationalMatrix& m, const RationalVector& v, std::size_t inner) {
  RationalVector out(v.size());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (sgn(m.at(i, j)) != 0)
        for (std::size_t b = 0; b < inner; ++b) out[i * inner + b] += m.at(i, j) * v[j * inner + b];
  return out;
}

void require_beta(const RationalVector& beta, std::size_t n) {
  if (beta.size() != n) throw ArgumentError("beta has the wrong rank");
}

std::string beta_tag(const RationalVector& beta) { return to_string(beta); }

}  // namespace

JetModule::JetModule(TModule v0, RationalVector beta) : v0_(std::move(v0)), beta_(std::move(beta)) {
  require_beta(beta_, v0_.context().rank());
}

JetVector JetModule::h(const LatticeVector& r, const JetVector& w) const {
  JetVector out(v0_.dim());
  if (r.is_zero()) return out;
  RationalMatrix tr = v0_.act(r);
  RationalVector br = v0_.context().image(r);
  for (const auto& [k, v] : w.terms()) {
    out.add(k + r, v, shifted_pairing(br, k, beta_));
    out.add(k + r, mat_vec(tr, v));
  }
  return out;
}

JetVector JetModule::t(const LatticeVector& r, const JetVector& w) const {
  JetVector out(w.fiber());
  for (const auto& [k, v] : w.terms()) out.add(k + r, v);
  return out;
}

JetVector JetModule::d(const RationalVector& u, const JetVector& w) const {
  JetVector out(w.fiber());
  for (const auto& [k, v] : w.terms()) out.add(k, v, shifted_pairing(u, k, beta_));
  return out;
}

// ---- checks

namespace {

template <class F>
void sampled(VerificationReport& rep, const std::string& suite, const std::string& id, std::size_t samples,
             std::uint64_t seed, const std::string& stream_name, F&& f, Json extra = Json::object()) {
  ScopedTimer timer(rep);
  SampleStream stream(seed, stream_name);
  auto res = run_samples(samples, [&](std::size_t i) -> std::optional<std::string> {
    SampleRng rng = stream.at(i);
    return f(rng);
  });
  Json payload = {{"samples", res.total}, {"failures", res.failures}};
  for (auto& [k, v] : extra.items()) payload[k] = v;
  rep.check(suite, id, res.ok(), payload, res.first_counterexample);
}

RationalVector random_vector(std::size_t n, SampleRng& rng) {
  RationalVector u(n);
  for (auto& x : u) x = rng.rational(3, 3);
  return u;
}

}  // namespace

VerificationReport t_module_check(const TModule& v0, std::size_t samples, std::uint64_t seed, std::int64_t radius) {
  VerificationReport rep;
  const std::string suite = "jet";
  const auto& ctx = v0.context();
  const std::size_t n = ctx.rank();
  const std::string tag = "[" + ctx.matrix().str() + ",S^" + std::to_string(v0.power()) + "]";
  sampled(rep, suite, "t_module.relations" + tag, samples, seed, "t-module" + tag, [&](SampleRng& rng) -> std::optional<std::string> {
    LatticeVector r = rng.nonzero_lattice(n, radius), s = rng.nonzero_lattice(n, radius);
    TElement br = t_bracket(ctx, TElement::basis(r), TElement::basis(s));
    if (commutator(v0.act(r), v0.act(s)) == v0.act(br)) return std::nullopt;
    return "r = " + r.str() + ", s = " + s.str();
  });
  {
    ScopedTimer timer(rep);
    auto kernel = psi_kernel_basis(ctx, 1);
    std::string ce;
    for (const auto& x : kernel)
      if (!v0.act(x).is_zero()) {
        ce = x.str() + " acts nontrivially";
        break;
      }
    rep.check(suite, "t_module.kernel_scalar" + tag, ce.empty(), {{"kernel_basis_radius", 1}, {"kernel_dim", kernel.size()}, {"scalar", "0"}}, ce);
  }
  return rep;
}

VerificationReport jet_suite(const JetModule& jm, std::size_t samples, std::uint64_t seed, std::int64_t radius,
                             bool with_t_module) {
  VerificationReport rep;
  if (with_t_module) rep = t_module_check(jm.base(), samples, seed, radius);
  const std::string suite = "jet";
  const auto& ctx = jm.base().context();
  const std::size_t n = ctx.rank(), fib = jm.base().dim();
  const std::string tag = "[" + ctx.matrix().str() + ",S^" + std::to_string(jm.base().power()) + ",beta=" + beta_tag(jm.beta()) + "]";
  Json extra = {{"fiber", fib}, {"beta", beta_tag(jm.beta())}, {"radius", radius}};
  auto vec = [&](SampleRng& rng) { return random_jet_vector(fib, n, rng, radius, 2); };

  sampled(rep, suite, "jet.hh" + tag, samples, seed, "jet.hh" + tag, [&](SampleRng& rng) -> std::optional<std::string> {
    LatticeVector r = rng.nonzero_lattice(n, radius), s = rng.nonzero_lattice(n, radius);
    JetVector w = vec(rng);
    JetVector lhs = jm.h(r, jm.h(s, w)) - jm.h(s, jm.h(r, w));
    JetVector rhs = ctx.pairing(r, s) * jm.h(r + s, w);
    if (lhs == rhs) return std::nullopt;
    return "r = " + r.str() + ", s = " + s.str() + ", w = " + w.str() + ": " + lhs.str() + " vs " + rhs.str();
  }, extra);
  sampled(rep, suite, "jet.ht" + tag, samples, seed, "jet.ht" + tag, [&](SampleRng& rng) -> std::optional<std::string> {
    LatticeVector r = rng.nonzero_lattice(n, radius), s = rng.lattice(n, radius);
    JetVector w = vec(rng);
    JetVector lhs = jm.h(r, jm.t(s, w)) - jm.t(s, jm.h(r, w));
    JetVector rhs = ctx.pairing(r, s) * jm.t(r + s, w);
    if (lhs == rhs) return std::nullopt;
    return "r = " + r.str() + ", s = " + s.str() + ", w = " + w.str();
  }, extra);
  sampled(rep, suite, "jet.d" + tag, samples, seed, "jet.d" + tag, [&](SampleRng& rng) -> std::optional<std::string> {
    RationalVector u = random_vector(n, rng);
    LatticeVector r = rng.nonzero_lattice(n, radius), s = rng.lattice(n, radius);
    JetVector w = vec(rng);
    if (!(jm.d(u, jm.h(r, w)) - jm.h(r, jm.d(u, w)) == dot(u, r) * jm.h(r, w)))
      return "[D(u,0), h(" + r.str() + ")] with u = " + to_string(u);
    if (!(jm.d(u, jm.t(s, w)) - jm.t(s, jm.d(u, w)) == dot(u, s) * jm.t(s, w)))
      return "[D(u,0), t^" + s.str() + "] with u = " + to_string(u);
    return std::nullopt;
  }, extra);
  sampled(rep, suite, "jet.associativity" + tag, samples, seed, "jet.assoc" + tag, [&](SampleRng& rng) -> std::optional<std::string> {
    LatticeVector r = rng.lattice(n, radius), s = rng.lattice(n, radius);
    JetVector w = vec(rng);
    if (!(jm.t(r, jm.t(s, w)) == jm.t(r + s, w))) return "t^r t^s != t^(r+s) at r = " + r.str() + ", s = " + s.str();
    if (!(jm.t(LatticeVector(n), w) == w)) return "t^0 is not the identity on " + w.str();
    return std::nullopt;
  }, extra);
  {
    ScopedTimer timer(rep);
    // t^s maps the slice at degree k onto the slice at k + s; check on a basis of each slice.
    std::string ce;
    std::size_t maps = 0;
    for (const auto& k : box_points(n, 1))
      for (const auto& s : box_points(n, 1)) {
        RationalMatrix img(fib, fib);
        for (std::size_t j = 0; j < fib; ++j) {
          RationalVector e(fib);
          e[j] = 1;
          JetVector out = jm.t(s, JetVector::single(k, e));
          if (out.terms().size() != 1 || out.terms().begin()->first != k + s) ce = "t^" + s.str() + " leaves the slice";
          else
            for (std::size_t i = 0; i < fib; ++i) img.at(i, j) = out.terms().begin()->second[i];
        }
        if (ce.empty() && rank(img) != fib) ce = "t^" + s.str() + " is singular on the slice at " + k.str();
        ++maps;
        if (!ce.empty()) break;
      }
    rep.check(suite, "jet.slice_bijection" + tag, ce.empty(), {{"maps", maps}, {"fiber", fib}}, ce);
  }
  return rep;
}

// ---- the level-zero modules V(mu) (x) V_N (x) A

Thm52Module::Thm52Module(std::shared_ptr<const AlgebraSpec> alg, unsigned mu, unsigned sp_power, RationalVector beta)
    : alg_(std::move(alg)), mu_(mu), g_(sl2_irrep(mu)),
      jet_(TModule(*alg_->skew(), sp_power), std::move(beta)) {
  if (alg_->family() != AlgebraFamily::TauB) throw PreconditionError("the level-zero module is built over tau_B");
}

JetVector Thm52Module::act(const BasisSymbol& s, const JetVector& x) const {
  const std::size_t inner = sp_dim();
  JetVector out(fiber());
  switch (s.kind) {
    case SymbolKind::X: {
      const RationalMatrix& m = g_.action[static_cast<std::size_t>(s.index)];
      for (const auto& [k, v] : x.terms()) out.add(k + s.degree, apply_left(m, v, inner));
      return out;
    }
    case SymbolKind::K:
      return out;
    case SymbolKind::D: {
      RationalVector u = alg_->vector_of(s);
      if (s.degree.is_zero()) {
        for (const auto& [k, v] : x.terms()) out.add(k, v, shifted_pairing(u, k, beta()));
        return out;
      }
      if (u != jet_.base().context().image(s.degree))
        throw UnsupportedOperation("D symbol at nonzero degree off the B-line: " + alg_->symbol_str(s));
      RationalMatrix tr = jet_.base().act(s.degree);
      for (const auto& [k, v] : x.terms()) {
        out.add(k + s.degree, v, shifted_pairing(u, k, beta()));
        out.add(k + s.degree, apply_right(tr, v));
      }
      return out;
    }
    case SymbolKind::T:
      break;
  }
  throw UnsupportedOperation("T symbols do not act on the level-zero module");
}

JetVector Thm52Module::act(const GradedElement& a, const JetVector& x) const {
  JetVector out(fiber());
  for (const auto& [s, c] : a.terms()) out += c * act(s, x);
  return out;
}

std::map<Rational, std::size_t> Thm52Module::weight_dims_at(const LatticeVector& k) const {
  const std::size_t f = fiber();
  const BasisSymbol hs{SymbolKind::X, alg_->simple().index_of("h"), LatticeVector(alg_->rank())};
  RationalMatrix hm(f, f);
  for (std::size_t j = 0; j < f; ++j) {
    RationalVector e(f);
    e[j] = 1;
    JetVector out = act(hs, JetVector::single(k, e));
    if (out.is_zero()) continue;
    for (std::size_t i = 0; i < f; ++i) hm.at(i, j) = out.terms().begin()->second[i];
  }
  std::map<Rational, std::size_t> dims;
  for (long lam = -static_cast<long>(mu_) - 2; lam <= static_cast<long>(mu_) + 2; ++lam) {
    RationalMatrix shifted = hm - Rational(lam) * RationalMatrix::identity(f);
    std::size_t d = f - rank(shifted);
    if (d) dims[Rational(lam)] = d;
  }
  return dims;
}

VerificationReport thm52_suite(const Thm52Module& mod, std::size_t samples, std::uint64_t seed, std::int64_t box) {
  VerificationReport rep;
  const std::string suite = "thm52";
  const AlgebraSpec& alg = mod.algebra();
  const std::size_t n = alg.rank(), f = mod.fiber();
  const std::string tag = "[mu=" + std::to_string(mod.mu()) + ",dimV_N=" + std::to_string(mod.sp_dim()) +
                          ",beta=" + beta_tag(mod.beta()) + "]";
  Json extra = {{"box", box}, {"fiber", f}};
  const auto basis = alg.basis_in_box(box);
  auto pick = [&](SampleRng& rng) { return basis[static_cast<std::size_t>(rng.uniform(0, static_cast<std::int64_t>(basis.size()) - 1))]; };

  sampled(rep, suite, "thm52.relations" + tag, samples, seed, "thm52.rel" + tag, [&](SampleRng& rng) -> std::optional<std::string> {
    BasisSymbol a = pick(rng), b = pick(rng);
    JetVector x = random_jet_vector(f, n, rng, box, 2);
    JetVector lhs = mod.act(a, mod.act(b, x)) - mod.act(b, mod.act(a, x));
    JetVector rhs = mod.act(alg.bracket(a, b), x);
    if (lhs == rhs) return std::nullopt;
    return "[" + alg.symbol_str(a) + ", " + alg.symbol_str(b) + "] on " + x.str() + ": " + lhs.str() + " vs " + rhs.str();
  }, extra);

  {
    ScopedTimer timer(rep);
    SampleRng rng = SampleStream(seed, "thm52.center" + tag).at(0);
    JetVector x = random_jet_vector(f, n, rng, box, 3);
    std::string ce;
    std::size_t count = 0;
    for (const auto& s : basis)
      if (s.kind == SymbolKind::K) {
        ++count;
        if (!mod.act(s, x).is_zero()) {
          ce = alg.symbol_str(s) + " acts nontrivially";
          break;
        }
      }
    rep.check(suite, "thm52.Ztilde_zero" + tag, ce.empty(), {{"symbols", count}}, ce);
  }

  std::size_t tight = 0;
  sampled(rep, suite, "thm52.integrable" + tag, samples, seed, "thm52.int" + tag, [&](SampleRng& rng) -> std::optional<std::string> {
    BasisSymbol s{SymbolKind::X, alg.simple().index_of(rng.uniform(0, 1) ? "e" : "f"), rng.lattice(n, box)};
    JetVector x = random_jet_vector(f, n, rng, box, 2);
    for (unsigned i = 0; i <= mod.mu(); ++i) x = mod.act(s, x);
    if (x.is_zero()) return std::nullopt;
    return alg.symbol_str(s) + "^" + std::to_string(mod.mu() + 1) + " leaves " + x.str();
  }, extra);
  {
    // The bound is sharp: f(0)^mu does not kill v_0 (x) w (x) t^0.
    BasisSymbol fs{SymbolKind::X, alg.simple().index_of("f"), LatticeVector(n)};
    RationalVector e(f);
    e[0] = 1;
    JetVector x = JetVector::single(LatticeVector(n), e);
    for (unsigned i = 0; i < mod.mu(); ++i) x = mod.act(fs, x);
    tight = x.is_zero() ? 0 : 1;
    rep.records().back().payload["sharp"] = tight == 1;
  }

  {
    ScopedTimer timer(rep);
    std::string ce;
    std::size_t degrees = 0;
    for (const auto& k : box_points(n, box)) {
      auto dims = mod.weight_dims_at(k);
      std::map<Rational, std::size_t> expect;
      for (unsigned i = 0; i <= mod.mu(); ++i) expect[Rational(static_cast<long>(mod.mu()) - 2 * static_cast<long>(i))] = mod.sp_dim();
      ++degrees;
      if (dims != expect) {
        ce = "degree " + k.str() + ":";
        for (const auto& [lam, d] : dims) ce += " " + to_string(lam) + "->" + std::to_string(d);
        break;
      }
    }
    rep.check(suite, "thm52.weight_dims" + tag, ce.empty(), {{"degrees", degrees}, {"per_weight", mod.sp_dim()}}, ce);
  }

  sampled(rep, suite, "thm52.d_eigen" + tag, samples, seed, "thm52.d" + tag, [&](SampleRng& rng) -> std::optional<std::string> {
    std::size_t i = static_cast<std::size_t>(rng.uniform(0, static_cast<std::int64_t>(n) - 1));
    LatticeVector k = rng.lattice(n, box);
    RationalVector v(f);
    for (auto& c : v) c = rng.rational(3, 3);
    JetVector x = JetVector::single(k, v);
    Rational lam = Rational(static_cast<long>(k[i])) + mod.beta()[i];
    if (mod.act(alg.d_coord(i), x) == lam * x) return std::nullopt;
    return "d_" + std::to_string(i + 1) + " at degree " + k.str();
  }, extra);
  return rep;
}

}  // namespace sseala
