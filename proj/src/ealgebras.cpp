#include "sseala/ealgebras.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <climits>
#include <mutex>
#include <numeric>

#include "sseala/errors.hpp"
#include "sseala/linalg.hpp"
#include "sseala/parallel.hpp"

namespace sseala {

EALAInstance make_instance(std::shared_ptr<const AlgebraSpec> alg) {
  EALAInstance inst;
  const std::size_t n = alg->rank();
  inst.cartan.push_back(alg->x(alg->simple().index_of("h"), LatticeVector(n)));
  for (std::size_t i = 0; i < n; ++i) inst.cartan.push_back(alg->k_coord(i));
  for (std::size_t i = 0; i < n; ++i) inst.cartan.push_back(alg->d_coord(i));
  inst.algebra = std::move(alg);
  return inst;
}

EALAInstance build_tauB(const SkewFormContext& ctx, std::string name) {
  return make_instance(AlgebraSpec::tau_b(ctx, std::move(name)));
}

RationalMatrix random_nondegenerate_skew(std::size_t m, std::uint64_t seed) {
  const std::size_t n = 2 * m;
  SampleStream stream(seed, "random-skew");
  for (std::uint64_t attempt = 0;; ++attempt) {
    SampleRng rng = stream.at(attempt);
    RationalMatrix b(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) {
        b.at(i, j) = rng.rational(3, 3);
        b.at(j, i) = -b.at(i, j);
      }
    if (sgn(determinant(b)) != 0) return b;
  }
}

BasisSymbol random_symbol(const AlgebraSpec& alg, SampleRng& rng, std::int64_t radius) {
  while (true) {
    auto basis = alg.basis_in_degree(rng.lattice(alg.rank(), radius));
    if (basis.empty()) continue;
    return basis[static_cast<std::size_t>(rng.uniform(0, static_cast<std::int64_t>(basis.size()) - 1))];
  }
}

GradedElement random_element(const AlgebraSpec& alg, SampleRng& rng, std::int64_t radius, std::size_t terms) {
  GradedElement x = alg.zero();
  for (std::size_t t = 0; t < terms; ++t) {
    Rational c = rng.rational(3, 3);
    if (sgn(c) == 0) c = 1;
    x.add_term(random_symbol(alg, rng, radius), c);
  }
  return x;
}

// ---- graded dimensions

std::map<LatticeVector, std::size_t> graded_dims(const AlgebraSpec& alg, GradedPart part, std::int64_t radius) {
  if (radius < 1) throw ArgumentError("graded_dims: box radius must be at least 1");
  const SymbolKind kind = part == GradedPart::Ztilde ? SymbolKind::K : SymbolKind::D;
  std::map<LatticeVector, std::size_t> out;
  for (const auto& r : box_points(alg.rank(), radius)) {
    auto basis = alg.basis_in_degree(r);
    out[r] = static_cast<std::size_t>(std::count_if(basis.begin(), basis.end(), [&](const BasisSymbol& s) { return s.kind == kind; }));
  }
  return out;
}

VerificationReport graded_dims_check(const AlgebraSpec& alg, std::int64_t radius) {
  VerificationReport rep;
  const std::string suite = "graded-dims";
  const std::string tag = "[" + alg.name() + ",R=" + std::to_string(radius) + "]";
  const std::size_t n = alg.rank();
  if (alg.family() != AlgebraFamily::TauB) {
    // Z = Omega_A / d_A and the derivation part of each family, degree by degree.
    std::size_t z_nonzero = n - 1;
    std::size_t d_nonzero = alg.family() == AlgebraFamily::Toroidal ? 0 : alg.family() == AlgebraFamily::FullToroidal ? n : n - 1;
    for (GradedPart part : {GradedPart::Ztilde, GradedPart::Htilde}) {
      std::size_t expect_nonzero = part == GradedPart::Ztilde ? z_nonzero : d_nonzero;
      std::string ce;
      std::size_t degrees = 0;
      for (const auto& [r, d] : graded_dims(alg, part, radius)) {
        ++degrees;
        std::size_t want = r.is_zero() ? n : expect_nonzero;
        if (d != want && ce.empty()) ce = "degree " + r.str() + ": dim " + std::to_string(d) + ", expected " + std::to_string(want);
      }
      rep.check(suite, std::string(part == GradedPart::Ztilde ? "graded.Z" : "graded.D") + tag, ce.empty(),
                {{"degrees", degrees}, {"dim_at_nonzero", expect_nonzero}, {"dim_at_zero", n}}, ce);
    }
    return rep;
  }
  const SkewFormContext& ctx = *alg.skew();
  struct Item {
    const char* id;
    GradedPart part;
    int which;  // 0: nonzero radical degree, 1: outside the radical, 2: zero
    std::size_t want;
  };
  const Item items[] = {{"prop3.1(1)", GradedPart::Ztilde, 0, 0}, {"prop3.1(2)", GradedPart::Ztilde, 1, 1},
                        {"prop3.1(3)", GradedPart::Ztilde, 2, n},  {"prop3.1(4)", GradedPart::Htilde, 0, 0},
                        {"prop3.1(5)", GradedPart::Htilde, 1, 1},  {"prop3.1(6)", GradedPart::Htilde, 2, n}};
  auto z = graded_dims(alg, GradedPart::Ztilde, radius);
  auto h = graded_dims(alg, GradedPart::Htilde, radius);
  for (const auto& it : items) {
    const auto& dims = it.part == GradedPart::Ztilde ? z : h;
    std::size_t degrees = 0;
    std::string ce;
    for (const auto& [r, d] : dims) {
      int which = r.is_zero() ? 2 : ctx.in_radical(r) ? 0 : 1;
      if (which != it.which) continue;
      ++degrees;
      if (d != it.want && ce.empty()) ce = "degree " + r.str() + ": dim " + std::to_string(d) + ", expected " + std::to_string(it.want);
    }
    rep.check(suite, std::string(it.id) + tag, ce.empty(), {{"degrees", degrees}, {"expected_dim", it.want}}, ce);
  }
  return rep;
}

bool core_membership(const GradedElement& x) {
  return std::all_of(x.terms().begin(), x.terms().end(), [](const auto& t) {
    return t.first.kind == SymbolKind::X || t.first.kind == SymbolKind::K;
  });
}

// ---- Jacobi

namespace {

struct Overflow {};

// Reduced p/q with q > 0 in machine words; every operation checks for overflow.
struct Q {
  std::int64_t n = 0, d = 1;
};

std::int64_t narrow(__int128 x) {
  if (x > INT64_MAX || x < INT64_MIN) throw Overflow{};
  return static_cast<std::int64_t>(x);
}

__int128 gcd128(__int128 a, __int128 b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    __int128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

Q make_q(__int128 n, __int128 d) {
  if (n == 0) return {};
  if (d < 0) n = -n, d = -d;
  __int128 g = gcd128(n, d);
  return {narrow(n / g), narrow(d / g)};
}

Q add(Q a, Q b) {
  if (a.d == 1 && b.d == 1) return {narrow(static_cast<__int128>(a.n) + b.n), 1};
  return make_q(static_cast<__int128>(a.n) * b.d + static_cast<__int128>(b.n) * a.d, static_cast<__int128>(a.d) * b.d);
}

Q mul(Q a, Q b) {
  if (a.d == 1 && b.d == 1) return {narrow(static_cast<__int128>(a.n) * b.n), 1};
  return make_q(static_cast<__int128>(a.n) * b.n, static_cast<__int128>(a.d) * b.d);
}

Q to_q(const Rational& x) {
  if (!x.get_num().fits_slong_p() || !x.get_den().fits_slong_p()) throw Overflow{};
  return {x.get_num().get_si(), x.get_den().get_si()};
}

struct Term {
  int id;
  Q c;
};

struct SlotTerm {
  int slot;
  Q c;
};

int slot_of(const std::vector<BasisSymbol>& basis, const BasisSymbol& s) {
  auto it = std::find(basis.begin(), basis.end(), s);
  if (it == basis.end()) throw UnsupportedOperation("non-canonical symbol in a bracket result");
  return static_cast<int>(it - basis.begin());
}

std::string triple_str(const AlgebraSpec& alg, const BasisSymbol& a, const BasisSymbol& b, const BasisSymbol& c) {
  return "(" + alg.symbol_str(a) + ", " + alg.symbol_str(b) + ", " + alg.symbol_str(c) + ")";
}

struct PairScan {
  std::vector<BasisSymbol> table;             // interned symbols; the first n are the box basis
  std::map<BasisSymbol, int> index;
  std::vector<std::size_t> offset;            // CSR over pairs i < j, key i * n + j
  std::vector<Term> terms;
  std::size_t failures = 0;
  std::string first;
};

int intern(PairScan& ps, const BasisSymbol& s) {
  auto [it, fresh] = ps.index.try_emplace(s, static_cast<int>(ps.table.size()));
  if (fresh) ps.table.push_back(s);
  return it->second;
}

// Brackets of every pair of box symbols, with antisymmetry, degree additivity and canonical output checked.
PairScan scan_pairs(const AlgebraSpec& alg, const std::vector<BasisSymbol>& basis) {
  PairScan ps;
  const std::size_t n = basis.size();
  for (const auto& s : basis) intern(ps, s);
  ps.offset.assign(n * n + 1, 0);
  auto fail = [&](const std::string& what) {
    if (ps.failures++ == 0) ps.first = what;
  };
  for (std::size_t i = 0; i < n; ++i) {
    if (!alg.bracket(basis[i], basis[i]).is_zero()) fail("[x,x] != 0 for x = " + alg.symbol_str(basis[i]));
    for (std::size_t j = 0; j < n; ++j) {
      ps.offset[i * n + j] = ps.terms.size();
      if (j <= i) continue;
      GradedElement xy = alg.bracket(basis[i], basis[j]);
      GradedElement yx = alg.bracket(basis[j], basis[i]);
      if (!(xy + yx).is_zero())
        fail("antisymmetry fails on (" + alg.symbol_str(basis[i]) + ", " + alg.symbol_str(basis[j]) + ")");
      LatticeVector deg = basis[i].degree + basis[j].degree;
      for (const auto& [s, c] : xy.terms()) {
        if (s.degree != deg) fail("degree of [" + alg.symbol_str(basis[i]) + ", " + alg.symbol_str(basis[j]) + "] term " + alg.symbol_str(s));
        if (!alg.is_canonical(s)) fail("non-canonical output " + alg.symbol_str(s));
        ps.terms.push_back({intern(ps, s), to_q(c)});
      }
    }
  }
  ps.offset[n * n] = ps.terms.size();
  return ps;
}

}  // namespace

JacobiScan jacobi_exhaustive(const AlgebraSpec& alg, std::int64_t radius, bool parallel) {
  const std::vector<BasisSymbol> basis = alg.basis_in_box(radius);
  const std::size_t n = basis.size();
  JacobiScan out;
  out.symbols = n;
  PairScan ps = scan_pairs(alg, basis);
  out.pair_failures = ps.failures;
  out.first_pair_counterexample = ps.first;

  // Second level: [b_k, t] for every box symbol b_k and every symbol t produced above,
  // stored as slots inside the degree deg(b_k) + deg(t).
  const std::size_t nres = ps.table.size();
  std::vector<std::vector<std::vector<SlotTerm>>> level2(n, std::vector<std::vector<SlotTerm>>(nres));
  std::vector<std::string> level2_error(n);
  auto fill_row = [&](std::size_t k, std::map<LatticeVector, std::vector<BasisSymbol>>& cache) {
    for (std::size_t t = 0; t < nres; ++t) {
      GradedElement br = alg.bracket(basis[k], ps.table[t]);
      if (br.is_zero()) continue;
      LatticeVector deg = basis[k].degree + ps.table[t].degree;
      auto it = cache.find(deg);
      if (it == cache.end()) it = cache.emplace(deg, alg.basis_in_degree(deg)).first;
      for (const auto& [s, c] : br.terms()) level2[k][t].push_back({slot_of(it->second, s), to_q(c)});
    }
  };
  auto fill_safe = [&](std::size_t k, std::map<LatticeVector, std::vector<BasisSymbol>>& cache) {
    try {
      fill_row(k, cache);
    } catch (const Overflow&) {
      level2_error[k] = "coefficient overflow";
    } catch (const std::exception& e) {
      level2_error[k] = e.what();
    }
  };
  if (parallel) {
#pragma omp parallel
    {
      std::map<LatticeVector, std::vector<BasisSymbol>> cache;
#pragma omp for schedule(dynamic, 4)
      for (std::size_t k = 0; k < n; ++k) fill_safe(k, cache);
    }
  } else {
    std::map<LatticeVector, std::vector<BasisSymbol>> cache;
    for (std::size_t k = 0; k < n; ++k) fill_safe(k, cache);
  }

  struct RowResult {
    std::size_t triples = 0, failures = 0;
    std::string first;
  };
  std::vector<RowResult> rows(n);
  auto pair_terms = [&](std::size_t i, std::size_t j) {
    return std::pair{ps.terms.begin() + static_cast<std::ptrdiff_t>(ps.offset[i * n + j]),
                     ps.terms.begin() + static_cast<std::ptrdiff_t>(ps.offset[i * n + j + 1])};
  };
  auto row = [&](std::size_t i) {
    RowResult& rr = rows[i];
    std::array<Q, 2 * kMaxRank + 8> acc;
    for (std::size_t j = i + 1; j < n; ++j)
      for (std::size_t k = j + 1; k < n; ++k) {
        ++rr.triples;
        auto [jk0, jk1] = pair_terms(j, k);
        auto [ik0, ik1] = pair_terms(i, k);
        auto [ij0, ij1] = pair_terms(i, j);
        if (jk0 == jk1 && ik0 == ik1 && ij0 == ij1) continue;
        bool bad = false;
        try {
          acc.fill(Q{});
          int hi = -1;
          auto spread = [&](std::size_t outer, auto b, auto e, std::int64_t sign) {
            for (auto p = b; p != e; ++p)
              for (const auto& st : level2[outer][static_cast<std::size_t>(p->id)]) {
                Q c = mul(p->c, st.c);
                if (sign < 0) c.n = -c.n;
                acc[static_cast<std::size_t>(st.slot)] = add(acc[static_cast<std::size_t>(st.slot)], c);
                hi = std::max(hi, st.slot);
              }
          };
          spread(i, jk0, jk1, 1);   // [b_i, [b_j, b_k]]
          spread(j, ik0, ik1, -1);  // [b_j, [b_k, b_i]] with [b_k, b_i] = -[b_i, b_k]
          spread(k, ij0, ij1, 1);   // [b_k, [b_i, b_j]]
          for (int s = 0; s <= hi; ++s) bad = bad || acc[static_cast<std::size_t>(s)].n != 0;
        } catch (const Overflow&) {
          auto x = alg.element(basis[i]), y = alg.element(basis[j]), z = alg.element(basis[k]);
          bad = !jacobi_check(x, y, z).holds;
        }
        if (bad && rr.failures++ == 0) {
          auto jr = jacobi_check(alg.element(basis[i]), alg.element(basis[j]), alg.element(basis[k]));
          rr.first = triple_str(alg, basis[i], basis[j], basis[k]) + " defect " + jr.defect.str();
        }
      }
  };
  for (std::size_t k = 0; k < n; ++k)
    if (!level2_error[k].empty()) throw UnsupportedOperation("jacobi kernel: " + level2_error[k]);
  if (parallel) {
#pragma omp parallel for schedule(dynamic, 1)
    for (std::size_t i = 0; i < n; ++i) row(i);
  } else {
    for (std::size_t i = 0; i < n; ++i) row(i);
  }
  for (const auto& rr : rows) {
    out.triples += rr.triples;
    if (rr.failures && out.failures == 0) out.first_counterexample = rr.first;
    out.failures += rr.failures;
  }
  return out;
}

JacobiScan jacobi_exhaustive_reference(const AlgebraSpec& alg, std::int64_t radius, std::size_t max_triples) {
  const std::vector<BasisSymbol> basis = alg.basis_in_box(radius);
  const std::size_t n = basis.size();
  JacobiScan out;
  out.symbols = n;
  std::vector<GradedElement> el;
  for (const auto& s : basis) el.push_back(alg.element(s));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      if (!(alg.bracket(el[i], el[j]) + alg.bracket(el[j], el[i])).is_zero() && out.pair_failures++ == 0)
        out.first_pair_counterexample = "antisymmetry fails on (" + alg.symbol_str(basis[i]) + ", " + alg.symbol_str(basis[j]) + ")";
      for (std::size_t k = j + 1; k < n; ++k) {
        if (max_triples && out.triples == max_triples) return out;
        ++out.triples;
        auto jr = jacobi_check(el[i], el[j], el[k]);
        if (!jr.holds && out.failures++ == 0)
          out.first_counterexample = triple_str(alg, basis[i], basis[j], basis[k]) + " defect " + jr.defect.str();
      }
    }
  return out;
}

VerificationReport jacobi_suite(const AlgebraSpec& alg, const JacobiOptions& opt) {
  VerificationReport rep;
  const std::string suite = "jacobi";
  const std::string tag = "[" + alg.name() + "]";
  {
    ScopedTimer timer(rep);
    JacobiScan scan = jacobi_exhaustive(alg, opt.radius);
    Json payload = {{"radius", opt.radius}, {"symbols", scan.symbols}, {"triples", scan.triples}, {"failures", scan.failures}};
    rep.check(suite, "jacobi.exhaustive" + tag, scan.failures == 0, payload, scan.first_counterexample);
    rep.check(suite, "jacobi.pairs" + tag, scan.pair_failures == 0,
              {{"radius", opt.radius}, {"pairs", scan.symbols * (scan.symbols - 1) / 2}, {"failures", scan.pair_failures}},
              scan.first_pair_counterexample);
  }
  {
    ScopedTimer timer(rep);
    SampleStream stream(opt.seed, "jacobi.random/" + alg.name());
    auto res = run_samples(opt.samples, [&](std::size_t i) -> std::optional<std::string> {
      SampleRng rng = stream.at(i);
      GradedElement x = random_element(alg, rng, opt.sample_radius, 2);
      GradedElement y = random_element(alg, rng, opt.sample_radius, 2);
      GradedElement z = random_element(alg, rng, opt.sample_radius, 2);
      auto jr = jacobi_check(x, y, z);
      if (jr.holds) return std::nullopt;
      return "x = " + x.str() + "; y = " + y.str() + "; z = " + z.str() + "; defect " + jr.defect.str();
    });
    rep.check(suite, "jacobi.random" + tag, res.ok(),
              {{"radius", opt.sample_radius}, {"samples", res.total}, {"failures", res.failures}}, res.first_counterexample);
  }
  {
    ScopedTimer timer(rep);
    SampleStream stream(opt.seed, "normal-form/" + alg.name());
    auto res = run_samples(opt.samples, [&](std::size_t i) -> std::optional<std::string> {
      SampleRng rng = stream.at(i);
      GradedElement x = random_element(alg, rng, opt.sample_radius, 2);
      // A raw coordinate K symbol away from degree 0 is usually not canonical.
      LatticeVector r = rng.nonzero_lattice(alg.rank(), opt.sample_radius);
      int coord = static_cast<int>(rng.uniform(0, static_cast<std::int64_t>(alg.rank()) - 1));
      x.add_term({SymbolKind::K, coord, r}, rng.rational(3, 3));
      GradedElement once = alg.normalize(x);
      GradedElement twice = alg.normalize(once);
      for (const auto& [s, c] : once.terms())
        if (!alg.is_canonical(s)) return "normalize(" + x.str() + ") keeps " + alg.symbol_str(s);
      if (!(once == twice)) return "normalize not idempotent on " + x.str();
      return std::nullopt;
    });
    rep.check(suite, "normal_form.idempotent" + tag, res.ok(), {{"samples", res.total}, {"failures", res.failures}},
              res.first_counterexample);
  }
  return rep;
}

// ---- EALA axioms

namespace {

// Coordinates of a weight: alpha coefficient, delta coefficients, omega coefficients.
struct Weight {
  Rational a;
  std::vector<Rational> g, s;
  bool operator==(const Weight&) const = default;
};

Rational weight_pairing(const Weight& x, const Weight& y, const Rational& alpha_norm) {
  Rational v = x.a * y.a * alpha_norm;
  for (std::size_t i = 0; i < x.g.size(); ++i) v += x.g[i] * y.s[i] + x.s[i] * y.g[i];
  return v;
}

// Eigenvalue of ad c on the symbol, or nothing when the symbol is not an eigenvector.
std::optional<Rational> eigenvalue(const AlgebraSpec& alg, const GradedElement& c, const BasisSymbol& s) {
  GradedElement br = alg.bracket(c, alg.element(s));
  if (br.is_zero()) return Rational(0);
  if (br.terms().size() != 1 || br.terms().begin()->first != s) return std::nullopt;
  return br.terms().begin()->second;
}

std::optional<Weight> weight_of(const EALAInstance& inst, const BasisSymbol& s) {
  const AlgebraSpec& alg = *inst.algebra;
  const std::size_t n = alg.rank();
  Weight w{0, std::vector<Rational>(n), std::vector<Rational>(n)};
  auto h = eigenvalue(alg, inst.cartan[0], s);
  if (!h) return std::nullopt;
  // alpha(h) = 2 for sl2, with <alpha, alpha> = root_norm
  w.a = *h / 2;
  for (std::size_t i = 0; i < n; ++i) {
    auto k = eigenvalue(alg, inst.cartan[1 + i], s);
    auto d = eigenvalue(alg, inst.cartan[1 + n + i], s);
    if (!k || !d) return std::nullopt;
    w.s[i] = *k;
    w.g[i] = *d;
  }
  return w;
}

std::string weight_str(const Weight& w) {
  std::string out = to_string(w.a) + "*alpha + delta" + to_string(w.g);
  bool zero_s = std::all_of(w.s.begin(), w.s.end(), [](const Rational& x) { return sgn(x) == 0; });
  if (!zero_s) out += " + omega" + to_string(w.s);
  return out;
}

bool is_root(const AlgebraSpec& alg, const Rational& a, const LatticeVector& g) {
  for (const auto& s : alg.basis_in_degree(g)) {
    Rational sa = s.kind == SymbolKind::X ? Rational(alg.simple().root[static_cast<std::size_t>(s.index)]) : Rational(0);
    if (sa == a) return true;
  }
  return false;
}

}  // namespace

VerificationReport eala_axiom_suite(const EALAInstance& inst, const EALAOptions& opt) {
  VerificationReport rep;
  const AlgebraSpec& alg = *inst.algebra;
  const std::string suite = "eala";
  const std::string tag = "[" + alg.name() + ",box=" + std::to_string(opt.box) + "]";
  const std::size_t n = alg.rank();
  const auto basis = alg.basis_in_box(opt.box);

  // EA1
  {
    ScopedTimer timer(rep);
    if (!alg.has_form()) {
      rep.check(suite, "EA1.form" + tag, false, {{"has_form", false}},
                alg.name() + " carries no nondegenerate invariant form: the K(u,r) pair with nothing");
    } else {
      SampleStream stream(opt.seed, "eala.form/" + alg.name());
      auto sym = run_samples(opt.samples, [&](std::size_t i) -> std::optional<std::string> {
        SampleRng rng = stream.at(i);
        GradedElement x = random_element(alg, rng, opt.box, 3), y = random_element(alg, rng, opt.box, 3);
        if (*alg.form(x, y) == *alg.form(y, x)) return std::nullopt;
        return "x = " + x.str() + "; y = " + y.str();
      });
      rep.check(suite, "EA1.symmetric" + tag, sym.ok(), {{"samples", sym.total}, {"failures", sym.failures}},
                sym.first_counterexample);
      SampleStream istream(opt.seed, "eala.invariance/" + alg.name());
      std::atomic<std::size_t> nontrivial{0};
      auto inv = run_samples(opt.samples, [&](std::size_t i) -> std::optional<std::string> {
        SampleRng rng = istream.at(i);
        GradedElement x = random_element(alg, rng, opt.box, 2), y = random_element(alg, rng, opt.box, 2),
                      z = random_element(alg, rng, opt.box, 2);
        // Aim the third element near -(deg x + deg y) so that most samples pair nontrivially.
        if (rng.uniform(0, 1) == 1 && !x.is_zero() && !y.is_zero()) {
          LatticeVector want = -(x.terms().begin()->first.degree + y.terms().begin()->first.degree);
          for (const auto& s : alg.basis_in_degree(want)) z.add_term(s, rng.rational(3, 3));
        }
        Rational lhs = *alg.form(alg.bracket(x, y), z), rhs = *alg.form(x, alg.bracket(y, z));
        if (lhs == rhs) {
          if (sgn(lhs) != 0) ++nontrivial;
          return std::nullopt;
        }
        return "x = " + x.str() + "; y = " + y.str() + "; z = " + z.str() + "; ([x,y],z) = " + to_string(lhs) +
               ", (x,[y,z]) = " + to_string(rhs);
      });
      rep.check(suite, "EA1.invariant" + tag, inv.ok(),
                {{"samples", inv.total}, {"nonzero_values", nontrivial.load()}, {"failures", inv.failures}},
                inv.first_counterexample);
      std::string ce;
      std::size_t slices = 0;
      for (const auto& r : box_points(n, opt.box)) {
        auto a = alg.basis_in_degree(r), b = alg.basis_in_degree(-r);
        ++slices;
        RationalMatrix gram(a.size(), b.size());
        for (std::size_t i = 0; i < a.size(); ++i)
          for (std::size_t j = 0; j < b.size(); ++j) gram.at(i, j) = *alg.form(a[i], b[j]);
        if ((a.size() != b.size() || rank(gram) != a.size()) && ce.empty())
          ce = "Gram matrix between degrees " + r.str() + " and " + (-r).str() + " is singular: " + gram.str();
      }
      rep.check(suite, "EA1.nondegenerate" + tag, ce.empty(), {{"slices", slices}}, ce);
    }
  }

  // EA2
  std::vector<std::pair<BasisSymbol, Weight>> weights;
  {
    ScopedTimer timer(rep);
    std::string ce;
    for (std::size_t a = 0; a < inst.cartan.size(); ++a)
      for (std::size_t b = 0; b < inst.cartan.size(); ++b)
        if (!alg.bracket(inst.cartan[a], inst.cartan[b]).is_zero() && ce.empty())
          ce = "[" + inst.cartan[a].str() + ", " + inst.cartan[b].str() + "] != 0";
    rep.check(suite, "EA2.abelian" + tag, ce.empty(), {{"cartan_dim", inst.cartan.size()}}, ce);
    ce.clear();
    std::size_t zero_weight = 0;
    for (const auto& s : basis) {
      auto w = weight_of(inst, s);
      if (!w) {
        if (ce.empty()) ce = alg.symbol_str(s) + " is not an eigenvector of the Cartan subalgebra";
        continue;
      }
      Rational want_a = s.kind == SymbolKind::X ? Rational(alg.simple().root[static_cast<std::size_t>(s.index)]) : Rational(0);
      bool good = w->a == want_a && std::all_of(w->s.begin(), w->s.end(), [](const Rational& x) { return sgn(x) == 0; });
      for (std::size_t i = 0; i < n; ++i) good = good && w->g[i] == Rational(static_cast<long>(s.degree[i]));
      if (!good && ce.empty()) ce = alg.symbol_str(s) + " has weight " + weight_str(*w);
      bool is_zero_weight = sgn(w->a) == 0 && s.degree.is_zero();
      zero_weight += is_zero_weight;
      weights.push_back({s, *w});
    }
    rep.check(suite, "EA2.diagonal" + tag, ce.empty(), {{"symbols", basis.size()}}, ce);
    // Zero-weight symbols are exactly h, K_i, d_i.
    rep.check(suite, "EA2.self_centralizing" + tag, zero_weight == inst.cartan.size(),
              {{"zero_weight_symbols", zero_weight}, {"cartan_dim", inst.cartan.size()}},
              zero_weight == inst.cartan.size() ? "" : std::to_string(zero_weight) + " zero-weight symbols for a Cartan of dimension " + std::to_string(inst.cartan.size()));
  }

  if (!alg.has_form()) {
    for (const char* id : {"EA3.ad_nilpotent", "EA5.connected", "EA5.isotropic"})
      rep.skip(suite, id + tag, "needs the form on H* induced by EA1");
  } else {
    const Rational& norm = alg.simple().root_norm;
    // EA3
    {
      ScopedTimer timer(rep);
      SampleStream stream(opt.seed, "eala.nilpotent/" + alg.name());
      const int e = alg.simple().index_of("e"), f = alg.simple().index_of("f");
      std::vector<std::size_t> order_hist(8, 0);
      std::mutex mu;
      auto res = run_samples(opt.samples, [&](std::size_t i) -> std::optional<std::string> {
        SampleRng rng = stream.at(i);
        LatticeVector r = rng.lattice(n, opt.box);
        GradedElement x = rng.rational(3, 3) * alg.x(rng.uniform(0, 1) ? e : f, r);
        if (x.is_zero()) x = alg.x(e, r);
        GradedElement y = random_element(alg, rng, opt.box, 3);
        auto nr = ad_nilpotency(x, y, 6);
        if (!nr.nilpotent) return "ad(" + x.str() + ")^6 does not kill " + y.str();
        std::lock_guard<std::mutex> lock(mu);
        ++order_hist[nr.k];
        return std::nullopt;
      });
      rep.check(suite, "EA3.ad_nilpotent" + tag, res.ok(),
                {{"samples", res.total}, {"failures", res.failures}, {"order_histogram", order_hist}}, res.first_counterexample);
    }
    // EA4
    {
      std::string ce;
      for (const auto& [s, w] : weights) {
        bool integral = is_integral(w.a) && std::all_of(w.g.begin(), w.g.end(), [](const Rational& x) { return is_integral(x); });
        if (!integral && ce.empty()) ce = alg.symbol_str(s) + " has weight " + weight_str(w);
      }
      rep.check(suite, "EA4.discrete" + tag, ce.empty(), {{"roots_in", "Z alpha + sum Z delta_i"}, {"symbols", weights.size()}}, ce);
    }
    // EA5
    {
      ScopedTimer timer(rep);
      std::vector<Weight> nonisotropic;
      std::vector<LatticeVector> isotropic;
      for (const auto& [s, w] : weights) {
        Rational q = weight_pairing(w, w, norm);
        if (sgn(q) != 0) {
          if (std::find(nonisotropic.begin(), nonisotropic.end(), w) == nonisotropic.end()) nonisotropic.push_back(w);
        } else if (sgn(w.a) == 0 && std::find(isotropic.begin(), isotropic.end(), s.degree) == isotropic.end()) {
          isotropic.push_back(s.degree);
        }
      }
      std::vector<std::size_t> parent(nonisotropic.size());
      std::iota(parent.begin(), parent.end(), 0);
      auto find = [&](std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
      };
      for (std::size_t a = 0; a < nonisotropic.size(); ++a)
        for (std::size_t b = a + 1; b < nonisotropic.size(); ++b)
          if (sgn(weight_pairing(nonisotropic[a], nonisotropic[b], norm)) != 0) parent[find(a)] = find(b);
      std::size_t components = 0;
      for (std::size_t a = 0; a < nonisotropic.size(); ++a) components += find(a) == a;
      rep.check(suite, "EA5.connected" + tag, components == 1,
                {{"nonisotropic_roots", nonisotropic.size()}, {"components", components}},
                components == 1 ? "" : std::to_string(components) + " orthogonal components in the box");
      std::string ce;
      for (const auto& sigma : isotropic) {
        bool found = false;
        for (const auto& w : nonisotropic) {
          LatticeVector g(n);
          for (std::size_t i = 0; i < n; ++i) g[i] = w.g[i].get_num().get_si();
          if (is_root(alg, w.a, g + sigma)) {
            found = true;
            break;
          }
        }
        if (!found && ce.empty()) ce = "no nonisotropic alpha with alpha + delta" + sigma.str() + " a root";
      }
      rep.check(suite, "EA5.isotropic" + tag, ce.empty(), {{"isotropic_roots", isotropic.size()}}, ce);
    }
  }

  // Core of tau_B: generated by the root vectors X_{+-alpha}(r), equal to g (x) A + Ztilde.
  if (alg.family() == AlgebraFamily::TauB) {
    ScopedTimer timer(rep);
    const SkewFormContext& ctx = *alg.skew();
    const int e = alg.simple().index_of("e"), h = alg.simple().index_of("h"), f = alg.simple().index_of("f");
    std::string ce;
    std::size_t witnessed = 0;
    auto expect_multiple = [&](const GradedElement& got, const BasisSymbol& s, const std::string& how) {
      bool ok = got.terms().size() == 1 && got.terms().begin()->first == s;
      if (!ok && ce.empty()) ce = how + " = " + got.str() + " is not a nonzero multiple of " + alg.symbol_str(s);
      witnessed += ok;
    };
    for (const auto& s : basis) {
      if (!core_membership(alg.element(s))) continue;
      if (s.kind == SymbolKind::X) {
        if (s.index == h) expect_multiple(alg.bracket(alg.x(e, s.degree), alg.x(f, LatticeVector(n))), s, "[e(r), f(0)]");
        else ++witnessed;
        continue;
      }
      // K symbols: [h(c), h(r - c)] = 2 K(c, r), nonzero in Ztilde when (Bc|r) != 0.
      if (s.degree.is_zero()) {
        LatticeVector c = LatticeVector::unit(n, static_cast<std::size_t>(s.index));
        expect_multiple(alg.bracket(alg.x(h, c), alg.x(h, -c)), s, "[h(e_i), h(-e_i)]");
        continue;
      }
      bool done = false;
      for (std::size_t i = 0; i < n && !done; ++i) {
        LatticeVector c = LatticeVector::unit(n, i);
        if (sgn(ctx.pairing(c, s.degree)) == 0) continue;
        expect_multiple(alg.bracket(alg.x(h, c), alg.x(h, s.degree - c)), s, "[h(c), h(r - c)]");
        done = true;
      }
      if (!done && ce.empty()) ce = "no witness for " + alg.symbol_str(s);
    }
    rep.check(suite, "prop3.1(8).generated" + tag, ce.empty(), {{"core_symbols", witnessed}}, ce);
    SampleStream stream(opt.seed, "eala.core/" + alg.name());
    auto res = run_samples(opt.samples, [&](std::size_t i) -> std::optional<std::string> {
      SampleRng rng = stream.at(i);
      GradedElement x = alg.zero();
      while (x.is_zero()) {
        x = random_element(alg, rng, opt.box, 3);
        GradedElement core = alg.zero();
        for (const auto& [s, c] : x.terms())
          if (s.kind != SymbolKind::D) core.add_term(s, c);
        x = core;
      }
      GradedElement y = random_element(alg, rng, opt.box, 3);
      GradedElement xy = alg.bracket(x, y);
      if (core_membership(xy)) return std::nullopt;
      return "[" + x.str() + ", " + y.str() + "] = " + xy.str() + " leaves the core";
    });
    rep.check(suite, "prop3.1(8).ideal" + tag, res.ok(), {{"samples", res.total}, {"failures", res.failures}},
              res.first_counterexample);
  }
  return rep;
}

// ---- Phi_F

AutomorphismF::AutomorphismF(RationalMatrix f) : f_(std::move(f)) {
  if (f_.rows() != f_.cols()) throw ArgumentError("automorphism matrix must be square");
  if (!f_.is_integral()) throw ArgumentError("automorphism matrix must be integral");
  Rational d = determinant(f_);
  if (d != 1 && d != -1) throw ArgumentError("automorphism matrix must have determinant +-1, got " + to_string(d));
  inv_t_ = sseala::inverse(f_).transpose();
}

AutomorphismF AutomorphismF::inverse() const { return AutomorphismF(sseala::inverse(f_)); }

GradedElement AutomorphismF::apply(const GradedElement& x, const AlgebraSpec& target) const {
  if (target.rank() != f_.rows()) throw ArgumentError("automorphism rank does not match the target algebra");
  const AlgebraSpec* src = x.algebra();
  GradedElement out = target.zero();
  for (const auto& [s, c] : x.terms()) {
    LatticeVector fr = f_.apply_integral(s.degree);
    switch (s.kind) {
      case SymbolKind::X:
        out.add_term({SymbolKind::X, s.index, fr}, c);
        break;
      case SymbolKind::K:
        out += c * target.k_element(f_.apply(src->vector_of(s)), fr);
        break;
      case SymbolKind::D:
        out += c * target.d_element(inv_t_.apply(src->vector_of(s)), fr);
        break;
      case SymbolKind::T:
        throw UnsupportedOperation("Phi_F is not defined on T symbols");
    }
  }
  return out;
}

GradedElement apply_phi(const AutomorphismF& f, const GradedElement& x, const AlgebraSpec& target) {
  return f.apply(x, target);
}

VerificationReport phi_isomorphism_check(const AutomorphismF& f, const AlgebraSpec& from, const AlgebraSpec& to,
                                         std::size_t samples, std::uint64_t seed, std::int64_t radius) {
  VerificationReport rep;
  ScopedTimer timer(rep);
  const std::string suite = "phi";
  const std::string tag = "[" + from.name() + "->" + to.name() + "]";
  const RationalMatrix& F = f.matrix();
  const bool skew_pair = from.skew() && to.skew();
  if (skew_pair) {
    bool ok = from.skew()->matrix() == F.transpose() * to.skew()->matrix() * F;
    rep.check(suite, "phi.congruence" + tag, ok, {{"F", F.str()}},
              ok ? "" : "B_from != F^T B_to F for F = " + F.str());
    if (!ok) return rep;
  }
  SampleStream stream(seed, "phi/" + from.name() + "/" + to.name());
  auto hom = run_samples(samples, [&](std::size_t i) -> std::optional<std::string> {
    SampleRng rng = stream.at(i);
    GradedElement x = random_element(from, rng, radius, 2), y = random_element(from, rng, radius, 2);
    GradedElement lhs = f.apply(from.bracket(x, y), to);
    GradedElement rhs = to.bracket(f.apply(x, to), f.apply(y, to));
    if (lhs == rhs) return std::nullopt;
    return "x = " + x.str() + "; y = " + y.str() + "; Phi[x,y] = " + lhs.str() + "; [Phi x, Phi y] = " + rhs.str();
  });
  rep.check(suite, "phi.bracket" + tag, hom.ok(), {{"samples", hom.total}, {"failures", hom.failures}},
            hom.first_counterexample);

  AutomorphismF g = f.inverse();
  auto inv = run_samples(samples, [&](std::size_t i) -> std::optional<std::string> {
    SampleRng rng = stream.at(samples + i);
    GradedElement x = random_element(from, rng, radius, 3);
    GradedElement back = g.apply(f.apply(x, to), from);
    if (back == x) return std::nullopt;
    return "Phi_{F^-1} Phi_F (" + x.str() + ") = " + back.str();
  });
  rep.check(suite, "phi.inverse" + tag, inv.ok(), {{"samples", inv.total}, {"failures", inv.failures}},
            inv.first_counterexample);

  if (skew_pair) {
    // K(u,r) with (Bu|r) = 0 lies in K_B; its image must lie in K_B'.
    const RationalMatrix& b = from.skew()->matrix();
    const RationalMatrix& b2 = to.skew()->matrix();
    const std::size_t n = from.rank();
    auto kb = run_samples(samples, [&](std::size_t i) -> std::optional<std::string> {
      SampleRng rng = stream.at(2 * samples + i);
      LatticeVector r = rng.lattice(n, radius);
      RationalVector u(n);
      for (auto& x : u) x = rng.rational(3, 3);
      RationalVector bu = b.apply(u);
      Rational d = dot(bu, r);
      for (std::size_t j = 0; j < n && sgn(d) != 0; ++j) {
        Rational bj = dot(b.apply(LatticeVector::unit(n, j)), r);
        if (sgn(bj) == 0) continue;
        u[j] -= d / bj;
        d = 0;
      }
      if (sgn(d) != 0) return std::nullopt;  // r in the radical and u already fixed
      RationalVector fu = F.apply(u);
      LatticeVector fr = F.apply_integral(r);
      if (sgn(dot(b2.apply(fu), fr)) == 0) return std::nullopt;
      return "K(" + to_string(u) + ", " + r.str() + ") in K_B maps outside K_B'";
    });
    rep.check(suite, "phi.K_B" + tag, kb.ok(), {{"samples", kb.total}, {"failures", kb.failures}}, kb.first_counterexample);

    std::string ce;
    std::size_t degrees = 0;
    for (const auto& r : box_points(n, radius, false)) {
      if (from.skew()->in_radical(r)) continue;
      ++degrees;
      GradedElement got = f.apply(from.element({SymbolKind::D, kBVector, r}), to);
      LatticeVector fr = F.apply_integral(r);
      GradedElement want = to.d_element(b2.apply(fr), fr);
      if (!(got == want) && ce.empty()) ce = "Phi(h_" + r.str() + ") = " + got.str() + ", expected " + want.str();
    }
    rep.check(suite, "phi.H_B" + tag, ce.empty(), {{"degrees", degrees}}, ce);
  }
  return rep;
}

VerificationReport congruence_suite(std::size_t samples, std::uint64_t seed) {
  VerificationReport rep;
  const std::string suite = "congruence";
  auto induced = [&](const RationalMatrix& a, std::size_t m) {
    // A J_1 A^T = J' gives J_1 = F^T J' F with F = (A^T)^{-1}.
    auto from = AlgebraSpec::tau_b(SkewFormContext(standard_J1(m)), "keala[m=" + std::to_string(m) + "]");
    auto to = AlgebraSpec::tau_b(SkewFormContext(standard_Jprime(m)), "tauJ'[m=" + std::to_string(m) + "]");
    AutomorphismF f(inverse(a.transpose()));
    rep.merge(phi_isomorphism_check(f, *from, *to, samples, seed));
  };
  {
    ScopedTimer timer(rep);
    RationalMatrix a = RationalMatrix::from_int({{1, 0, 0}, {0, 1, 0}, {1, -1, 1}});
    bool ok = congruence_check(a, standard_J1(1), standard_Jprime(1));
    SkewFormContext c1(standard_J1(1)), c2(standard_Jprime(1));
    rep.check(suite, "remark3.2.matrix[m=1]", ok,
              {{"A", a.str()}, {"radical_rank_from", c1.radical().size()}, {"radical_rank_to", c2.radical().size()}},
              ok ? "" : "A J_1 A^T != diag(J,0) for A = " + a.str());
    if (ok) induced(a, 1);
  }
  {
    ScopedTimer timer(rep);
    auto a = search_congruence(standard_J1(2), standard_Jprime(2));
    bool ok = a && congruence_check(*a, standard_J1(2), standard_Jprime(2));
    rep.check(suite, "prop3.2.search[m=2]", ok, {{"A", a ? a->str() : std::string("none")}},
              ok ? "" : "no {-1,0,1} matrix A with A J_1 A^T = diag(J,0) found within the search budget");
    if (ok) induced(*a, 2);
  }
  return rep;
}

}  // namespace sseala
