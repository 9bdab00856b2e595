#include "sseala/driver.hpp"

#include <fstream>
#include <functional>
#include <sstream>

#include "sseala/cocycle.hpp"
#include "sseala/ealgebras.hpp"
#include "sseala/errors.hpp"
#include "sseala/jet.hpp"
#include "sseala/roots.hpp"
#include "sseala/t_filtration.hpp"

namespace sseala {

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep))
    if (!cur.empty()) out.push_back(cur);
  return out;
}

std::string matrix_tag(const RunConfig& cfg) {
  if (cfg.matrix == "J" || cfg.matrix == "J1" || cfg.matrix == "random") return cfg.matrix;
  return "file";
}

// Suite bodies throw when their preconditions fail; those become skips.
void guarded(VerificationReport& rep, const std::string& suite, const std::string& what,
             const std::function<VerificationReport()>& body) {
  try {
    ScopedTimer timer(rep);
    rep.merge(body());
  } catch (const PreconditionError& e) {
    rep.skip(suite, what, e.what());
  } catch (const UnsupportedOperation& e) {
    rep.skip(suite, what, e.what());
  }
}

struct Context {
  const RunConfig& cfg;
  RationalMatrix b;
  SkewFormContext ctx;
  std::size_t n;
  std::vector<RationalVector> betas;
};

std::vector<unsigned> powers(const RunConfig& cfg) {
  if (cfg.sp_power) return {*cfg.sp_power};
  return {0, 1, 2};
}

std::vector<std::shared_ptr<const AlgebraSpec>> jacobi_algebras(const Context& c) {
  const auto& a = c.cfg.algebra;
  const std::size_t m = c.cfg.m;
  std::vector<std::shared_ptr<const AlgebraSpec>> out;
  auto want = [&](const char* name) { return a.empty() || a == name; };
  if (want("toroidal")) out.push_back(AlgebraSpec::toroidal(c.n));
  if (want("full-toroidal")) out.push_back(AlgebraSpec::full_toroidal(c.n));
  if (want("tauS")) out.push_back(AlgebraSpec::tau_s(c.n));
  if (want("tauB")) out.push_back(AlgebraSpec::tau_b(c.ctx, "tauB[" + matrix_tag(c.cfg) + ",m=" + std::to_string(m) + "]"));
  if (want("heala") && !a.empty()) out.push_back(AlgebraSpec::tau_b(SkewFormContext(standard_J(m)), "heala[m=" + std::to_string(m) + "]"));
  if (want("keala")) out.push_back(AlgebraSpec::tau_b(SkewFormContext(standard_J1(m)), "keala[m=" + std::to_string(m) + "]"));
  if (out.empty()) throw ArgumentError("unknown algebra '" + a + "'");
  return out;
}

// Exhaustive triples grow like (symbols)^3; rank 4 and up is scanned at radius 1.
std::int64_t exhaustive_radius(std::size_t n, std::int64_t box) { return n >= 4 ? std::min<std::int64_t>(box, 1) : box; }

void verify_jacobi(const Context& c, VerificationReport& rep) {
  for (const auto& alg : jacobi_algebras(c)) {
    JacobiOptions opt;
    opt.radius = exhaustive_radius(alg->rank(), c.cfg.box);
    opt.samples = c.cfg.samples;
    opt.seed = c.cfg.seed;
    if (opt.radius != c.cfg.box)
      rep.skip("jacobi", "jacobi.exhaustive_requested_radius[" + alg->name() + "]",
               "radius " + std::to_string(c.cfg.box) + " at rank " + std::to_string(alg->rank()) +
                   " is out of reach; scanned radius " + std::to_string(opt.radius));
    guarded(rep, "jacobi", "jacobi[" + alg->name() + "]", [&] { return jacobi_suite(*alg, opt); });
  }
}

void verify_eala(const Context& c, VerificationReport& rep) {
  for (const auto& alg : jacobi_algebras(c)) {
    if (!alg->has_form()) continue;
    guarded(rep, "eala", "eala[" + alg->name() + "]", [&] {
      auto r = eala_axiom_suite(make_instance(alg), {c.cfg.box, c.cfg.samples, c.cfg.seed});
      r.merge(graded_dims_check(*alg, c.cfg.box + 1));
      return r;
    });
  }
  guarded(rep, "congruence", "congruence", [&] { return congruence_suite(c.cfg.samples, c.cfg.seed); });
}

void verify_tfilt(const Context& c, VerificationReport& rep) {
  TSuiteOptions opt;
  opt.samples = c.cfg.samples;
  opt.seed = c.cfg.seed;
  if (c.cfg.q) opt.qmax = *c.cfg.q;
  const auto& l = c.cfg.lemma;
  std::vector<int> items = parse_items(c.cfg.items);
  // under "all", item 8 runs once, with the appendix
  if (c.cfg.target == "all" && items.empty()) items = {1, 2, 3, 4, 5, 6, 7};
  if (l.empty() || l == "4.4")
    guarded(rep, "t-filtration", "lemma4.4", [&] { return lemma44_suite(c.ctx, items, opt); });
  if (l.empty() || l == "4.5" || l == "4.6")
    guarded(rep, "t-filtration", "lemma4.5-4.6", [&] { return lemma45_46_suite(c.ctx, opt); });
  if (l.empty() || l == "oracle")
    guarded(rep, "oracle", "oracle", [&] { return oracle_cross_validation(3, 3, 2, c.cfg.samples, c.cfg.seed); });
  if (l.empty() || l == "4.8")
    guarded(rep, "t-filtration", "dims", [&] {
      std::vector<unsigned> qs{1, 2, 3};
      if (c.n <= 2) qs.push_back(4);
      return quotient_dims_report(c.n, qs);
    });
  if (!l.empty() && l != "4.4" && l != "4.5" && l != "4.6" && l != "oracle" && l != "4.8")
    throw ArgumentError("unknown --lemma '" + l + "' (4.4, 4.5, 4.6, 4.8, oracle)");
}

void verify_psi(const Context& c, VerificationReport& rep) {
  guarded(rep, "psi", "psi", [&] {
    VerificationReport r;
    r.merge(psi_hom_check(c.ctx, c.cfg.samples, c.cfg.seed, 3));
    r.merge(psi_table_check(c.cfg.m));
    r.merge(psi_image_check(c.ctx, c.cfg.box));
    r.merge(kernel_central_check(c.ctx, c.cfg.box));
    return r;
  });
}

void verify_jet(const Context& c, VerificationReport& rep) {
  for (unsigned k : powers(c.cfg))
    for (std::size_t i = 0; i < c.betas.size(); ++i)
      guarded(rep, "jet", "jet[S^" + std::to_string(k) + ",beta=" + to_string(c.betas[i]) + "]", [&] {
        JetModule jm(TModule(c.ctx, k), c.betas[i]);
        return jet_suite(jm, c.cfg.samples, c.cfg.seed, 3, i == 0);
      });
}

std::vector<RealRoot> reflections(const Context& c) {
  std::vector<std::string> names = c.cfg.reflect;
  if (names.empty()) {
    names = {"alpha", "alpha+delta[1]"};
    if (c.n >= 2) names.push_back("-alpha+delta[2]");
  }
  std::vector<RealRoot> out;
  for (const auto& s : names) out.push_back(parse_real_root(s, c.n));
  return out;
}

void verify_thm52(const Context& c, VerificationReport& rep) {
  guarded(rep, "thm52", "thm52", [&] {
    VerificationReport r;
    auto alg = AlgebraSpec::tau_b(c.ctx, "tauB[" + matrix_tag(c.cfg) + ",m=" + std::to_string(c.cfg.m) + "]");
    const auto refl = reflections(c);
    std::vector<unsigned> mus{0, 1, 2, 3};
    if (c.cfg.mu) mus = {*c.cfg.mu};
    for (unsigned mu : mus)
      for (unsigned k : powers(c.cfg))
        for (const auto& beta : c.betas) {
          Thm52Module mod(alg, mu, k, beta);
          r.merge(thm52_suite(mod, c.cfg.samples, c.cfg.seed, c.cfg.box));
          r.merge(lemma21_checks(mod, refl, c.cfg.box));
        }
    r.merge(reflection_suite(c.n, c.cfg.samples, c.cfg.seed));
    r.merge(triangular_closure_check(Decomposition::TauB, *alg, c.cfg.samples, c.cfg.seed, c.cfg.box));
    return r;
  });
}

void verify_keala(const Context& c, VerificationReport& rep) {
  guarded(rep, "keala", "keala", [&] { return keala_suite(c.cfg.m, c.cfg.samples, c.cfg.seed, c.cfg.box); });
}

void verify_appendix(const Context& c, VerificationReport& rep) {
  TSuiteOptions opt;
  opt.samples = c.cfg.samples;
  opt.seed = c.cfg.seed;
  guarded(rep, "appendix", "appendix", [&] { return appendix_bracket_suite(c.ctx, {{1, 1}, {1, 2}, {2, 2}, {2, 3}}, opt); });
  guarded(rep, "cocycle", "cocycle", [&] { return cocycle_suite(c.ctx, c.cfg.box, c.cfg.box); });
}

using Verifier = void (*)(const Context&, VerificationReport&);
const std::vector<std::pair<std::string, Verifier>>& verifiers() {
  static const std::vector<std::pair<std::string, Verifier>> v = {
      {"jacobi", verify_jacobi}, {"eala", verify_eala},   {"t-filtration", verify_tfilt}, {"psi", verify_psi},
      {"jet", verify_jet},       {"thm52", verify_thm52}, {"keala", verify_keala},        {"appendix", verify_appendix}};
  return v;
}

}  // namespace

const std::vector<std::string>& verify_targets() {
  static const std::vector<std::string> t = [] {
    std::vector<std::string> out;
    for (const auto& [name, f] : verifiers()) out.push_back(name);
    out.push_back("all");
    return out;
  }();
  return t;
}

std::vector<int> parse_items(const std::string& text) {
  std::vector<int> out;
  for (const auto& part : split(text, ',')) {
    try {
      auto dash = part.find('-');
      if (dash == std::string::npos) {
        out.push_back(std::stoi(part));
      } else {
        int a = std::stoi(part.substr(0, dash)), b = std::stoi(part.substr(dash + 1));
        if (a > b) throw ArgumentError("bad item range '" + part + "'");
        for (int i = a; i <= b; ++i) out.push_back(i);
      }
    } catch (const std::logic_error&) {
      throw ArgumentError("bad --items '" + text + "'");
    }
  }
  return out;
}

void validate(const RunConfig& cfg) {
  if (cfg.m < 1 || cfg.m > 3) throw ArgumentError("--m must be 1, 2 or 3");
  if (cfg.box < 0 || cfg.box > 4) throw ArgumentError("--box must be in [0, 4]");
  if (cfg.format != "json" && cfg.format != "text") throw ArgumentError("--format must be json or text");
  if (cfg.mu && *cfg.mu > 8) throw ArgumentError("--mu must be at most 8");
  if (cfg.sp_power && *cfg.sp_power > 4) throw ArgumentError("--sp-power must be at most 4");
  if (cfg.q && (*cfg.q < 1 || *cfg.q > 5)) throw ArgumentError("--q must be in [1, 5]");
}

Json config_json(const RunConfig& cfg) {
  Json j;
  j["command"] = cfg.command;
  j["target"] = cfg.target;
  j["algebra"] = cfg.algebra;
  j["matrix"] = cfg.matrix;
  j["m"] = cfg.m;
  j["box"] = cfg.box;
  j["samples"] = cfg.samples;
  j["seed"] = cfg.seed;
  j["beta"] = cfg.beta;
  j["mu"] = cfg.mu ? Json(*cfg.mu) : Json();
  j["sp-power"] = cfg.sp_power ? Json(*cfg.sp_power) : Json();
  j["q"] = cfg.q ? Json(*cfg.q) : Json();
  j["lemma"] = cfg.lemma;
  j["items"] = cfg.items;
  j["reflect"] = cfg.reflect;
  return j;
}

void apply_config_json(RunConfig& cfg, const Json& j) {
  if (!j.is_object()) throw ParseError("config must be a JSON object");
  try {
    for (const auto& [key, v] : j.items()) {
      if (key == "algebra") cfg.algebra = v.get<std::string>();
      else if (key == "matrix") cfg.matrix = v.get<std::string>();
      else if (key == "m") cfg.m = v.get<std::size_t>();
      else if (key == "box") cfg.box = v.get<std::int64_t>();
      else if (key == "samples") cfg.samples = v.get<std::size_t>();
      else if (key == "seed") cfg.seed = v.get<std::uint64_t>();
      else if (key == "beta") cfg.beta = v.get<std::string>();
      else if (key == "mu") cfg.mu = v.is_null() ? std::nullopt : std::optional(v.get<unsigned>());
      else if (key == "sp-power") cfg.sp_power = v.is_null() ? std::nullopt : std::optional(v.get<unsigned>());
      else if (key == "q") cfg.q = v.is_null() ? std::nullopt : std::optional(v.get<unsigned>());
      else if (key == "lemma") cfg.lemma = v.get<std::string>();
      else if (key == "items") cfg.items = v.get<std::string>();
      else if (key == "reflect") cfg.reflect = v.get<std::vector<std::string>>();
      else if (key == "format") cfg.format = v.get<std::string>();
      else if (key == "out") cfg.out = v.get<std::string>();
      else throw ParseError("unknown config key '" + key + "'");
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("config: ") + e.what());
  }
}

RationalMatrix resolve_matrix(const RunConfig& cfg) {
  if (cfg.matrix == "J") return standard_J(cfg.m);
  if (cfg.matrix == "J1") return standard_J1(cfg.m);
  if (cfg.matrix == "random") return random_nondegenerate_skew(cfg.m, cfg.seed);
  std::ifstream in(cfg.matrix);
  if (!in) throw ParseError("cannot open matrix file '" + cfg.matrix + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_matrix_json(ss.str());
}

std::vector<RationalVector> resolve_betas(const RunConfig& cfg, std::size_t n) {
  if (cfg.beta.empty()) {
    RationalVector generic(n);
    for (std::size_t i = 0; i < n; ++i) generic[i] = rat(i % 2 ? -static_cast<std::int64_t>(i + 1) : i + 1, 2 * i + 3);
    return {RationalVector(n), generic};
  }
  auto parts = split(cfg.beta, ',');
  if (parts.size() != 1 && parts.size() != n)
    throw ArgumentError("--beta needs 1 or " + std::to_string(n) + " rationals, got " + std::to_string(parts.size()));
  RationalVector beta(n);
  for (std::size_t i = 0; i < n; ++i) {
    try {
      beta[i] = parse_rational(parts[parts.size() == 1 ? 0 : i]);
    } catch (const std::exception& e) {
      throw ArgumentError("--beta: " + std::string(e.what()));
    }
  }
  return {beta};
}

VerificationReport run(const RunConfig& cfg) {
  validate(cfg);
  RationalMatrix b = resolve_matrix(cfg);
  Context c{cfg, b, SkewFormContext(b), b.rows(), {}};
  c.betas = resolve_betas(cfg, c.n);
  VerificationReport rep;

  if (cfg.command == "verify") {
    bool found = false;
    for (const auto& [name, f] : verifiers())
      if (cfg.target == "all" || cfg.target == name) {
        f(c, rep);
        found = true;
      }
    if (!found) throw ArgumentError("unknown verify target '" + cfg.target + "'");
  } else if (cfg.command == "dims") {
    if (cfg.target == "quotient") {
      std::vector<unsigned> qs{1, 2, 3};
      if (cfg.q) qs = {*cfg.q};
      guarded(rep, "t-filtration", "dims", [&] { return quotient_dims_report(c.n, qs); });
    } else if (cfg.target == "graded") {
      auto alg = AlgebraSpec::tau_b(c.ctx, "tauB[" + matrix_tag(cfg) + ",m=" + std::to_string(cfg.m) + "]");
      guarded(rep, "graded-dims", "graded", [&] { return graded_dims_check(*alg, cfg.box); });
    } else {
      throw ArgumentError("unknown dims target '" + cfg.target + "'");
    }
  } else if (cfg.command == "solve") {
    if (cfg.target != "cocycle") throw ArgumentError("unknown solve target '" + cfg.target + "'");
    guarded(rep, "cocycle", "solve", [&] {
      VerificationReport r;
      CocycleSystem sys = build_system(c.ctx, cfg.box);
      CocycleSolution sol = solve(sys);
      r.check("cocycle", "solution[box=" + std::to_string(cfg.box) + "]", true, solution_json(sys, sol));
      r.merge(cocycle_suite(c.ctx, cfg.box, cfg.box));
      return r;
    });
  } else {
    throw ArgumentError("unknown command '" + cfg.command + "'");
  }
  return rep;
}

}  // namespace sseala
