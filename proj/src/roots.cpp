#include "sseala/roots.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cctype>
#include <set>

#include "sseala/errors.hpp"
#include "sseala/linalg.hpp"
#include "sseala/parallel.hpp"

namespace sseala {

// ---- weights

ExtendedWeight& ExtendedWeight::operator+=(const ExtendedWeight& o) {
  if (o.rank() != rank()) throw ArgumentError("weights of different rank");
  a += o.a;
  for (std::size_t i = 0; i < rank(); ++i) {
    delta[i] += o.delta[i];
    omega[i] += o.omega[i];
  }
  return *this;
}

ExtendedWeight& ExtendedWeight::operator-=(const ExtendedWeight& o) { return *this += Rational(-1) * o; }

ExtendedWeight operator*(const Rational& c, ExtendedWeight x) {
  x.a *= c;
  for (auto& v : x.delta) v *= c;
  for (auto& v : x.omega) v *= c;
  return x;
}

bool ExtendedWeight::operator<(const ExtendedWeight& o) const {
  if (a != o.a) return a < o.a;
  if (delta != o.delta) return delta < o.delta;
  return omega < o.omega;
}

std::string ExtendedWeight::str() const {
  return to_string(a) + "*alpha + delta" + to_string(delta) + " + omega" + to_string(omega);
}

RationalMatrix gram_table(std::size_t n) {
  RationalMatrix g(2 * n + 1, 2 * n + 1);
  g.at(0, 0) = SimpleLieAlgebra::sl2().root_norm;
  for (std::size_t i = 0; i < n; ++i) {
    g.at(1 + i, 1 + n + i) = 1;
    g.at(1 + n + i, 1 + i) = 1;
  }
  return g;
}

Rational weight_pairing(const ExtendedWeight& x, const ExtendedWeight& y) {
  Rational s = SimpleLieAlgebra::sl2().root_norm * x.a * y.a;
  for (std::size_t i = 0; i < x.rank(); ++i) s += x.delta[i] * y.omega[i] + x.omega[i] * y.delta[i];
  return s;
}

ExtendedWeight RealRoot::weight() const {
  ExtendedWeight w(m.size());
  w.a = sign;
  for (std::size_t i = 0; i < m.size(); ++i) w.delta[i] = static_cast<long>(m[i]);
  return w;
}

std::string RealRoot::str() const {
  std::string out = sign > 0 ? "alpha" : "-alpha";
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (m[i] == 0) continue;
    out += m[i] > 0 ? "+" : "-";
    if (std::abs(m[i]) != 1) out += std::to_string(std::abs(m[i]));
    out += "delta[" + std::to_string(i + 1) + "]";
  }
  return out;
}

RealRoot parse_real_root(const std::string& text, std::size_t n) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  RealRoot g{0, LatticeVector(n)};
  std::size_t p = 0;
  auto fail = [&](const std::string& why) { return ParseError("real root '" + text + "': " + why); };
  if (s.empty()) throw fail("empty");
  while (p < s.size()) {
    long sign = 1;
    if (s[p] == '+' || s[p] == '-') sign = s[p++] == '-' ? -1 : 1;
    long coef = 1;
    std::size_t q = p;
    while (q < s.size() && std::isdigit(static_cast<unsigned char>(s[q]))) ++q;
    if (q > p) coef = std::stol(s.substr(p, q - p));
    p = q;
    if (s.compare(p, 5, "alpha") == 0) {
      if (g.sign != 0) throw fail("alpha appears twice");
      if (coef != 1) throw fail("the alpha coefficient must be +-1");
      g.sign = static_cast<int>(sign);
      p += 5;
    } else if (s.compare(p, 6, "delta[") == 0) {
      p += 6;
      std::size_t close = s.find(']', p);
      if (close == std::string::npos) throw fail("unclosed delta index");
      std::size_t idx = 0;
      try {
        idx = std::stoul(s.substr(p, close - p));
      } catch (const std::exception&) {
        throw fail("bad delta index");
      }
      if (idx < 1 || idx > n) throw fail("delta index out of range 1.." + std::to_string(n));
      g.m[idx - 1] += sign * coef;
      p = close + 1;
    } else {
      throw fail("expected alpha or delta[i] at position " + std::to_string(p));
    }
  }
  if (g.sign == 0) throw fail("a real root needs an alpha term");
  return g;
}

Coroot coroot(const RealRoot& g) {
  if (g.sign != 1 && g.sign != -1) throw ArgumentError("coroot of a non-real root");
  Rational norm = SimpleLieAlgebra::sl2().root_norm;
  Coroot c{Rational(g.sign), RationalVector(g.m.size())};
  for (std::size_t i = 0; i < g.m.size(); ++i) c.k[i] = Rational(2) / norm * static_cast<long>(g.m[i]);
  return c;
}

Rational evaluate(const ExtendedWeight& x, const Coroot& c) {
  // alpha(alpha^vee) = 2, delta_i(K_j) = 0, omega_i(K_j) = delta_ij
  Rational v = 2 * c.h * x.a;
  for (std::size_t i = 0; i < c.k.size(); ++i) v += c.k[i] * x.omega[i];
  return v;
}

ExtendedWeight reflect(const RealRoot& g, const ExtendedWeight& x) { return x - evaluate(x, coroot(g)) * g.weight(); }

std::vector<ExtendedWeight> orbit_walk(const ExtendedWeight& x, const std::vector<RealRoot>& refl, unsigned max_len) {
  std::set<ExtendedWeight> seen{x};
  std::vector<ExtendedWeight> frontier{x};
  for (unsigned len = 0; len < max_len; ++len) {
    std::vector<ExtendedWeight> next;
    for (const auto& w : frontier)
      for (const auto& g : refl) {
        ExtendedWeight y = reflect(g, w);
        if (seen.insert(y).second) next.push_back(y);
      }
    frontier = std::move(next);
  }
  return {seen.begin(), seen.end()};
}

// ---- reflection properties

namespace {

RationalVector random_vec(std::size_t n, SampleRng& rng) {
  RationalVector v(n);
  for (auto& x : v) x = rng.rational(3, 3);
  return v;
}

ExtendedWeight random_weight(std::size_t n, SampleRng& rng) {
  ExtendedWeight w(n);
  w.a = rng.rational(3, 3);
  w.delta = random_vec(n, rng);
  w.omega = random_vec(n, rng);
  return w;
}

RealRoot random_root(std::size_t n, SampleRng& rng) {
  return RealRoot{rng.uniform(0, 1) ? 1 : -1, rng.lattice(n, 3)};
}

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

}  // namespace

VerificationReport reflection_suite(std::size_t n, std::size_t samples, std::uint64_t seed) {
  VerificationReport rep;
  const std::string suite = "roots";
  const std::string tag = "[N=" + std::to_string(n) + "]";
  {
    ScopedTimer timer(rep);
    RationalMatrix g = gram_table(n);
    Rational det = determinant(g);
    bool ok = g == g.transpose() && sgn(det) != 0;
    // the table must agree with weight_pairing on basis vectors
    std::string ce;
    auto basis_weight = [&](std::size_t i) {
      ExtendedWeight w(n);
      if (i == 0) w.a = 1;
      else if (i <= n) w.delta[i - 1] = 1;
      else w.omega[i - 1 - n] = 1;
      return w;
    };
    for (std::size_t i = 0; i < 2 * n + 1 && ce.empty(); ++i)
      for (std::size_t j = 0; j < 2 * n + 1; ++j)
        if (weight_pairing(basis_weight(i), basis_weight(j)) != g.at(i, j)) {
          ce = "pairing disagrees with the table at (" + std::to_string(i) + "," + std::to_string(j) + ")";
          break;
        }
    rep.check(suite, "gram.nondegenerate" + tag, ok && ce.empty(), {{"dim", 2 * n + 1}, {"det", to_string(det)}},
              ok ? ce : "gram table singular or asymmetric");
  }
  {
    ScopedTimer timer(rep);
    std::string ce;
    LatticeVector e1 = LatticeVector::unit(n, 0);
    Coroot c0 = coroot({1, LatticeVector(n)}), c1 = coroot({1, e1}), c2 = coroot({-1, e1});
    RationalVector zero(n), k1(n);
    k1[0] = 1;
    if (!(c0.h == 1 && c0.k == zero)) ce = "coroot(alpha) is not alpha^vee";
    else if (!(c1.h == 1 && c1.k == k1)) ce = "coroot(alpha+delta[1]) is not alpha^vee + K_1";
    else if (!(c2.h == -1 && c2.k == k1)) ce = "coroot(-alpha+delta[1]) is not -alpha^vee + K_1";
    rep.check(suite, "coroot.examples" + tag, ce.empty(), {{"checked", 3}}, ce);
  }
  Json extra = {{"root_radius", 3}};
  sampled(rep, suite, "coroot.consistency" + tag, samples, seed, "roots.coroot" + tag, [&](SampleRng& rng) -> std::optional<std::string> {
    RealRoot g = random_root(n, rng);
    ExtendedWeight x = random_weight(n, rng);
    ExtendedWeight gw = g.weight();
    if (weight_pairing(gw, gw) != SimpleLieAlgebra::sl2().root_norm) return "<gamma,gamma> != <alpha,alpha> for " + g.str();
    if (evaluate(x, coroot(g)) * weight_pairing(gw, gw) == 2 * weight_pairing(x, gw)) return std::nullopt;
    return "lambda(gamma^vee) != 2<lambda,gamma>/<gamma,gamma> for " + g.str() + ", " + x.str();
  }, extra);
  sampled(rep, suite, "reflect.involution" + tag, samples, seed, "roots.inv" + tag, [&](SampleRng& rng) -> std::optional<std::string> {
    RealRoot g = random_root(n, rng);
    ExtendedWeight x = random_weight(n, rng);
    if (reflect(g, reflect(g, x)) == x) return std::nullopt;
    return g.str() + " on " + x.str();
  }, extra);
  sampled(rep, suite, "reflect.fixed" + tag, samples, seed, "roots.fixed" + tag, [&](SampleRng& rng) -> std::optional<std::string> {
    RealRoot g = random_root(n, rng);
    ExtendedWeight x = random_weight(n, rng);
    Coroot c = coroot(g);
    // move a so that lambda(gamma^vee) = 0
    Rational rest = 0;
    for (std::size_t i = 0; i < n; ++i) rest += c.k[i] * x.omega[i];
    x.a = -rest / (2 * c.h);
    if (sgn(evaluate(x, c)) != 0) return "failed to build a fixed weight";
    if (reflect(g, x) == x) return std::nullopt;
    return g.str() + " moves " + x.str();
  }, extra);
  sampled(rep, suite, "reflect.form_invariance" + tag, samples, seed, "roots.form" + tag, [&](SampleRng& rng) -> std::optional<std::string> {
    RealRoot g = random_root(n, rng);
    ExtendedWeight x = random_weight(n, rng), y = random_weight(n, rng);
    ExtendedWeight rx = reflect(g, x), ry = reflect(g, y);
    if (weight_pairing(rx, ry) == weight_pairing(x, y) && weight_pairing(rx, rx) == weight_pairing(x, x)) return std::nullopt;
    return g.str() + " on " + x.str() + ", " + y.str();
  }, extra);
  return rep;
}

// ---- Lemma 2.1 on the level-zero modules

std::map<ExtendedWeight, std::size_t> module_weights(const Thm52Module& mod, std::int64_t box) {
  const AlgebraSpec& alg = mod.algebra();
  const std::size_t n = alg.rank(), f = mod.fiber();
  std::map<ExtendedWeight, std::size_t> out;
  RationalVector e(f);
  e[0] = 1;
  for (const auto& k : box_points(n, box)) {
    JetVector probe = JetVector::single(k, e);
    ExtendedWeight base(n);
    for (std::size_t i = 0; i < n; ++i) {
      JetVector dv = mod.act(alg.d_coord(i), probe);
      base.delta[i] = dv.is_zero() ? Rational(0) : dv.terms().begin()->second[0];
      JetVector kv = mod.act(alg.k_coord(i), probe);
      base.omega[i] = kv.is_zero() ? Rational(0) : kv.terms().begin()->second[0];
    }
    for (const auto& [lam, d] : mod.weight_dims_at(k)) {
      ExtendedWeight w = base;
      w.a = lam / 2;  // h = alpha^vee
      out[w] += d;
    }
  }
  return out;
}

VerificationReport lemma21_checks(const Thm52Module& mod, const std::vector<RealRoot>& refl, std::int64_t box,
                                  unsigned word_length) {
  VerificationReport rep;
  const std::string suite = "lemma2.1";
  const std::size_t n = mod.algebra().rank();
  const auto& beta = mod.beta();
  std::string tag = "[mu=" + std::to_string(mod.mu()) + ",dimV_N=" + std::to_string(mod.sp_dim()) + ",beta=" +
                    to_string(beta) + ",box=" + std::to_string(box) + "]";
  ScopedTimer timer(rep);
  const auto table = module_weights(mod, box);
  // A weight is decidable when its degree part delta - beta is a lattice point in the box.
  auto decidable = [&](const ExtendedWeight& w) {
    for (std::size_t i = 0; i < n; ++i) {
      Rational k = w.delta[i] - beta[i];
      if (!is_integral(k) || abs(k) > static_cast<long>(box)) return false;
    }
    return true;
  };
  auto dim_of = [&](const ExtendedWeight& w) -> std::size_t {
    auto it = table.find(w);
    return it == table.end() ? 0 : it->second;
  };
  Json roots = Json::array();
  for (const auto& g : refl) roots.push_back(g.str());

  std::size_t images = 0, skipped = 0, string_checked = 0, string_skipped = 0;
  std::string ce_inv, ce_dim, ce_str;
  for (const auto& [lam, d] : table) {
    for (const auto& w : orbit_walk(lam, refl, word_length)) {
      if (!decidable(w)) {
        ++skipped;
        continue;
      }
      ++images;
      std::size_t dw = dim_of(w);
      if (dw == 0 && ce_inv.empty()) ce_inv = lam.str() + " maps to " + w.str() + ", not a weight";
      if (dw != 0 && dw != d && ce_dim.empty())
        ce_dim = "dim " + std::to_string(d) + " at " + lam.str() + " but " + std::to_string(dw) + " at " + w.str();
    }
    for (const auto& g : refl) {
      if (sgn(evaluate(lam, coroot(g))) <= 0) continue;
      ExtendedWeight w = lam - g.weight();
      if (!decidable(w)) {
        ++string_skipped;
        continue;
      }
      ++string_checked;
      if (dim_of(w) == 0 && ce_str.empty()) ce_str = lam.str() + " minus " + g.str() + " is not a weight";
    }
  }
  Json base = {{"weights", table.size()}, {"reflections", roots}, {"word_length", word_length}};
  Json p1 = base;
  p1["images_checked"] = images;
  p1["out_of_box_skipped"] = skipped;
  rep.check(suite, "lemma2.1(1).invariance" + tag, ce_inv.empty(), p1, ce_inv);
  rep.check(suite, "lemma2.1(2).dims" + tag, ce_dim.empty(), p1, ce_dim);
  Json p3 = base;
  p3["checked"] = string_checked;
  p3["out_of_box_skipped"] = string_skipped;
  rep.check(suite, "lemma2.1(3).string" + tag, ce_str.empty(), p3, ce_str);
  return rep;
}

// ---- triangular decompositions

std::string to_string(Triangle t) {
  switch (t) {
    case Triangle::Minus:
      return "minus";
    case Triangle::Zero:
      return "zero";
    case Triangle::Plus:
      return "plus";
  }
  return "?";
}

Triangle triangular_classify(Decomposition dec, const AlgebraSpec& alg, const BasisSymbol& s) {
  auto by_root = [&]() {
    if (s.kind != SymbolKind::X) return Triangle::Zero;
    int root = alg.simple().root[static_cast<std::size_t>(s.index)];
    return root > 0 ? Triangle::Plus : root < 0 ? Triangle::Minus : Triangle::Zero;
  };
  if (dec == Decomposition::TauB) return by_root();
  const std::int64_t last = s.degree[alg.rank() - 1];
  if (last > 0) return Triangle::Plus;
  if (last < 0) return Triangle::Minus;
  return by_root();
}

VerificationReport triangular_closure_check(Decomposition dec, const AlgebraSpec& alg, std::size_t samples,
                                            std::uint64_t seed, std::int64_t box) {
  VerificationReport rep;
  const std::string suite = "triangular";
  const std::string tag = std::string("[") + (dec == Decomposition::TauB ? "tauB" : "keala") + "," + alg.name() +
                          ",box=" + std::to_string(box) + "]";
  std::array<std::vector<BasisSymbol>, 3> part;
  for (const auto& s : alg.basis_in_box(box)) part[static_cast<std::size_t>(triangular_classify(dec, alg, s))].push_back(s);
  // (left, right, required class of every term of the bracket)
  const std::array<std::array<Triangle, 3>, 5> kinds{{{Triangle::Plus, Triangle::Plus, Triangle::Plus},
                                                      {Triangle::Minus, Triangle::Minus, Triangle::Minus},
                                                      {Triangle::Zero, Triangle::Plus, Triangle::Plus},
                                                      {Triangle::Zero, Triangle::Minus, Triangle::Minus},
                                                      {Triangle::Zero, Triangle::Zero, Triangle::Zero}}};
  for (const auto& p : part)
    if (p.empty()) {
      rep.skip(suite, "triangular.closure" + tag, "a part of the decomposition is empty in the box");
      return rep;
    }
  std::atomic<std::size_t> nonzero{0};
  Json extra = {{"plus", part[2].size()}, {"zero", part[1].size()}, {"minus", part[0].size()}};
  sampled(rep, suite, "triangular.closure" + tag, samples, seed, "triangular" + tag, [&](SampleRng& rng) -> std::optional<std::string> {
    const auto& kind = kinds[static_cast<std::size_t>(rng.uniform(0, 4))];
    auto pick = [&](Triangle t) {
      const auto& v = part[static_cast<std::size_t>(t)];
      return v[static_cast<std::size_t>(rng.uniform(0, static_cast<std::int64_t>(v.size()) - 1))];
    };
    BasisSymbol a = pick(kind[0]), b = pick(kind[1]);
    GradedElement br = alg.bracket(a, b);
    if (!br.is_zero()) ++nonzero;
    for (const auto& [s, c] : br.terms())
      if (triangular_classify(dec, alg, s) != kind[2])
        return "[" + alg.symbol_str(a) + ", " + alg.symbol_str(b) + "] has " + alg.symbol_str(s) + " in the " +
               to_string(triangular_classify(dec, alg, s)) + " part";
    return std::nullopt;
  }, extra);
  rep.records().back().payload["nonzero_brackets"] = nonzero.load();
  return rep;
}

// ---- KEALA

namespace {

std::size_t keala_m(const LatticeVector& r) {
  if (r.size() % 2 == 0) throw ArgumentError("KEALA degrees have odd rank 2m+1");
  return r.size() / 2;
}

LatticeVector truncate_last(const LatticeVector& r) {
  LatticeVector out(r.size() - 1);
  for (std::size_t i = 0; i + 1 < r.size(); ++i) out[i] = r[i];
  return out;
}

}  // namespace

RationalVector underline(const LatticeVector& r) { return standard_J1(keala_m(r)).apply(r); }

RationalVector underline_display(const LatticeVector& r) {
  const std::size_t m = keala_m(r), n = r.size();
  const long rn = static_cast<long>(r[n - 1]);
  RationalVector out(n);
  for (std::size_t i = 0; i < m; ++i) out[i] = static_cast<long>(r[m + i]) + rn;  // the last of these reads r_M
  for (std::size_t i = 0; i < m; ++i) out[m + i] = -static_cast<long>(r[i]) + rn;
  long sum = 0;
  for (std::size_t i = 0; i < 2 * m; ++i) sum += static_cast<long>(r[i]);
  out[n - 1] = -sum;
  return out;
}

std::pair<RationalVector, LatticeVector> der_bracket(const RationalVector& u, const LatticeVector& r,
                                                     const RationalVector& v, const LatticeVector& s) {
  Rational us = dot(u, s), vr = dot(v, r);
  RationalVector w(u.size());
  for (std::size_t i = 0; i < w.size(); ++i) w[i] = us * v[i] - vr * u[i];
  return {w, r + s};
}

VerificationReport keala_S_isomorphism_check(std::size_t m, std::size_t samples, std::uint64_t seed) {
  VerificationReport rep;
  const std::string suite = "keala";
  const std::size_t n = 2 * m + 1;
  const std::string tag = "[m=" + std::to_string(m) + "]";
  SkewFormContext j1(standard_J1(m)), j(standard_J(m));
  {
    ScopedTimer timer(rep);
    std::string ce;
    std::size_t checked = 0;
    for (const auto& r : box_points(n, 2)) {
      ++checked;
      if (underline(r) != underline_display(r)) {
        ce = "r = " + r.str() + ": J_1 r = " + to_string(underline(r)) + ", display " + to_string(underline_display(r));
        break;
      }
    }
    if (ce.empty() && m == 1 && underline(LatticeVector{1, 0, 0}) != RationalVector{0, -1, -1}) ce = "J_1 e_1 != (0,-1,-1)";
    rep.check(suite, "lemma6.1.underline" + tag, ce.empty(),
              {{"checked", checked},
               {"display_typo", "component " + std::to_string(m) + " reads r_{2m}+r_M; the undefined r_M is taken as r_N"}},
              ce);
  }
  auto sample_s = [&](SampleRng& rng) {
    while (true) {
      LatticeVector r = rng.lattice(n, 3);
      r[n - 1] = 0;
      if (!j1.in_radical(r)) return r;
    }
  };
  sampled(rep, suite, "lemma6.1.pairing" + tag, samples, seed, "keala.pair" + tag, [&](SampleRng& rng) -> std::optional<std::string> {
    LatticeVector r = sample_s(rng), s = sample_s(rng);
    if (dot(underline(r), s) == dot(j.image(truncate_last(r)), truncate_last(s))) return std::nullopt;
    return "r = " + r.str() + ", s = " + s.str();
  });
  std::atomic<std::size_t> nonzero{0};
  sampled(rep, suite, "lemma6.1.homomorphism" + tag, samples, seed, "keala.hom" + tag, [&](SampleRng& rng) -> std::optional<std::string> {
    LatticeVector r = sample_s(rng), s = sample_s(rng);
    auto [w, deg] = der_bracket(underline(r), r, underline(s), s);
    // w is a multiple of the underline of r + s; eta sends D(x_, x) to D(J x', x')
    RationalVector target = underline(deg);
    Rational c = dot(underline(r), s);
    for (std::size_t i = 0; i < n; ++i)
      if (w[i] != c * target[i]) return "[D(r_,r), D(s_,s)] leaves S at r = " + r.str() + ", s = " + s.str();
    LatticeVector r2 = truncate_last(r), s2 = truncate_last(s), d2 = truncate_last(deg);
    RationalVector lhs = j.image(d2);
    for (auto& x : lhs) x *= c;
    auto [rhs, rdeg] = der_bracket(j.image(r2), r2, j.image(s2), s2);
    if (sgn(c) != 0) ++nonzero;
    if (rdeg == d2 && lhs == rhs) return std::nullopt;
    return "eta([x,y]) != [eta x, eta y] at r = " + r.str() + ", s = " + s.str();
  });
  rep.records().back().payload["nonzero_brackets"] = nonzero.load();
  {
    ScopedTimer timer(rep);
    std::set<LatticeVector> images;
    std::size_t sources = 0;
    for (const auto& s : box_points(n, 2, false))
      if (s[n - 1] == 0 && !j1.in_radical(s)) {
        ++sources;
        images.insert(truncate_last(s));
      }
    std::size_t targets = 0;
    for (const auto& s : box_points(2 * m, 2, false))
      if (!j.in_radical(s)) ++targets;
    bool ok = images.size() == sources && sources == targets;
    rep.check(suite, "lemma6.1.bijective" + tag, ok, {{"sources", sources}, {"images", images.size()}, {"targets", targets}},
              ok ? "" : "index map s -> s' is not a bijection on the box");
  }
  {
    // In tau_{J_1} the same bracket differs from the S bracket only by central K terms.
    auto alg = AlgebraSpec::tau_b(j1, "keala");
    SampleStream stream(seed, "keala.center" + tag);
    ScopedTimer timer(rep);
    auto res = run_samples(samples, [&](std::size_t i) -> std::optional<std::string> {
      SampleRng rng = stream.at(i);
      LatticeVector r = sample_s(rng), s = sample_s(rng);
      GradedElement br = alg->bracket(alg->d_element(underline(r), r), alg->d_element(underline(s), s));
      GradedElement expect = alg->zero();
      if (!j1.in_radical(r + s)) expect = dot(underline(r), s) * alg->d_element(underline(r + s), r + s);
      GradedElement rest = br - expect;
      for (const auto& [sym, c] : rest.terms())
        if (sym.kind != SymbolKind::K) return "non-central remainder " + alg->symbol_str(sym) + " at r = " + r.str();
      return std::nullopt;
    });
    rep.check(suite, "lemma6.1.mod_center" + tag, res.ok(), {{"samples", res.total}, {"failures", res.failures}},
              res.first_counterexample);
  }
  return rep;
}

VerificationReport keala_suite(std::size_t m, std::size_t samples, std::uint64_t seed, std::int64_t box) {
  VerificationReport rep;
  const std::string suite = "keala";
  const std::size_t n = 2 * m + 1;
  const std::string tag = "[m=" + std::to_string(m) + "]";
  SkewFormContext j1(standard_J1(m));
  auto alg = AlgebraSpec::tau_b(j1, "keala");
  {
    ScopedTimer timer(rep);
    const auto& rad = j1.radical();
    bool ok = rad.size() == 1;
    std::string ce = ok ? "" : "radical rank " + std::to_string(rad.size());
    if (ok && m == 1 && rad[0] != LatticeVector{1, -1, 1} && rad[0] != LatticeVector{-1, 1, -1})
      ce = "generator " + rad[0].str() + " is not +-(1,-1,1)";
    Json payload = {{"rank", rad.size()}};
    if (!rad.empty()) payload["generator"] = rad[0].str();
    rep.check(suite, "J1.radical" + tag, ce.empty(), payload, ce);
  }
  rep.merge(keala_S_isomorphism_check(m, samples, seed));
  auto sample_s = [&](SampleRng& rng, bool avoid_radical) {
    while (true) {
      LatticeVector r = rng.lattice(n, 3);
      r[n - 1] = 0;
      if (!avoid_radical || !j1.in_radical(r)) return r;
    }
  };
  const LatticeVector en = LatticeVector::unit(n, n - 1);
  const RationalVector en_q = en.to_rational();
  std::atomic<std::size_t> nonzero{0};
  sampled(rep, suite, "remark6.1.bracket" + tag, samples, seed, "keala.remark" + tag, [&](SampleRng& rng) -> std::optional<std::string> {
    LatticeVector r = sample_s(rng, true), s = sample_s(rng, false);
    RationalVector ru = underline(r);
    GradedElement lhs = alg->bracket(alg->d_element(ru, r), alg->k_element(en_q, s));
    GradedElement rhs = dot(ru, s) * alg->k_element(en_q, r + s) + dot(ru, en) * alg->k_element(r.to_rational(), r + s);
    if (!lhs.is_zero()) ++nonzero;
    if (lhs == rhs) return std::nullopt;
    return "r = " + r.str() + ", s = " + s.str() + ": " + lhs.str() + " vs " + rhs.str();
  });
  rep.records().back().payload["nonzero_brackets"] = nonzero.load();
  {
    ScopedTimer timer(rep);
    std::string ce;
    std::size_t zero_checked = 0, witnesses = 0;
    for (const auto& r : box_points(n, box, false)) {
      if (r[n - 1] != 0) continue;
      std::int64_t sum = 0;
      for (std::size_t i = 0; i + 1 < n; ++i) sum += r[i];
      if (sum == 0) {
        ++zero_checked;
        if (!alg->k_element(en_q, r).is_zero() && ce.empty()) ce = "K(e_N, " + r.str() + ") is nonzero";
        continue;
      }
      // split r = a + s with sum(a) = 0 and (s_|a) != 0, a = (1,..,1,-1,..,-1,0)
      LatticeVector a(n);
      for (std::size_t i = 0; i < m; ++i) {
        a[i] = 1;
        a[m + i] = -1;
      }
      LatticeVector s = r - a;
      ++witnesses;
      if (sgn(dot(underline(s), a)) == 0 && ce.empty()) ce = "no witness split for " + r.str();
    }
    rep.check(suite, "prop6.1(3).K_eN" + tag, ce.empty(), {{"box", box}, {"vanishing_checked", zero_checked}, {"witness_splits", witnesses}}, ce);
  }
  rep.merge(triangular_closure_check(Decomposition::Keala, *alg, samples, seed, box));
  return rep;
}

}  // namespace sseala
