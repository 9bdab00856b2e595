#include <doctest.h>

#include "sseala/cocycle.hpp"
#include "sseala/driver.hpp"
#include "sseala/ealgebras.hpp"
#include "sseala/errors.hpp"
#include "sseala/parallel.hpp"
#include "sseala/sampling.hpp"

using namespace sseala;

TEST_CASE("cocycle row coefficients") {
  SkewFormContext ctx(standard_J(1));
  auto c = row_coefficients(ctx, LatticeVector{0, 1}, LatticeVector{1, 0}, LatticeVector{1, 0});
  CHECK(c[0] == 1);
  CHECK(c[1] == 1);
  CHECK(c[2] == -2);
}

TEST_CASE("cocycle system shape") {
  SkewFormContext ctx(standard_J(1));
  CocycleSystem sys = build_system(ctx, 2);
  CHECK(sys.unknowns.size() == 625);
  CHECK(sys.rows.size() == 4240);
  CHECK(sys.rows.size() == sys.row_source.size());
  for (const auto& [l, r, s] : sys.row_source) {
    CHECK_FALSE(l.is_zero());
    CHECK_FALSE(r.is_zero());
    CHECK_FALSE(s.is_zero());
  }
  CocycleSystem serial = build_system(ctx, 2, false);
  CHECK(serial.rows == sys.rows);
  CocycleSystem empty = build_system(ctx, 0);
  CHECK(empty.rows.empty());
  CHECK(empty.unknowns.size() == 1);
  CHECK_THROWS_AS(build_system(SkewFormContext(standard_J1(1)), 1), PreconditionError);
}

TEST_CASE("cocycle solution space") {
  SkewFormContext ctx(standard_J(1));
  CocycleSystem sys = build_system(ctx, 2);
  CocycleSolution sol = solve(sys);
  CHECK(sol.rank == 574);
  // the 49 pairs with a zero index never carry a coefficient, plus lambda and mu
  CHECK(sol.nullspace.size() == 51);
  CHECK(sol.family_in_span[0]);
  CHECK(sol.family_in_span[1]);
  CHECK(sol.family_in_span[2]);
  CHECK(cocycle_identities(sys, sol, 2).ok());
}

TEST_CASE("arbitrary scalar families satisfy every row") {
  SkewFormContext ctx(random_nondegenerate_skew(1, 3));
  CocycleSystem sys = build_system(ctx, 2);
  SampleStream stream(41, "test.family");
  for (std::size_t i = 0; i < 10; ++i) {
    SampleRng rng = stream.at(i);
    ScalarFamily fam{rng.rational(5, 5), rng.rational(5, 5), rng.rational(5, 5)};
    auto rep = check_family(sys, fam, false);
    CHECK(rep.ok());
  }
  auto quad = check_family(sys, {rat(2), rat(1), rat(4)});
  CHECK(quad.ok());
  auto bad = check_family(sys, {rat(2), rat(1), rat(3)});
  CHECK_FALSE(bad.ok());
  const CheckRecord* rec = bad.find("cocycle", "family.quadratic[lambda=2,mu=1,c=3]");
  REQUIRE(rec);
  CHECK_FALSE(rec->counterexample.empty());
}

TEST_CASE("solution json uses exponent records") {
  SkewFormContext ctx(standard_J(1));
  CocycleSystem sys = build_system(ctx, 1);
  Json j = solution_json(sys, solve(sys));
  CHECK(j["unknowns"] == 81);
  REQUIRE(j["basis"].size() == j["nullity"].get<std::size_t>());
  CHECK(j["basis"][0][0]["exp"].size() == 4);
}

TEST_CASE("config parsing") {
  CHECK(parse_items("1-3,5") == std::vector<int>{1, 2, 3, 5});
  CHECK(parse_items("") == std::vector<int>{});
  CHECK_THROWS_AS(parse_items("3-1"), ArgumentError);
  CHECK_THROWS_AS(parse_items("x"), ArgumentError);

  RunConfig cfg;
  CHECK(resolve_betas(cfg, 2).size() == 2);
  cfg.beta = "1/2";
  CHECK(resolve_betas(cfg, 2) == std::vector<RationalVector>{{rat(1, 2), rat(1, 2)}});
  cfg.beta = "1/2,-3";
  CHECK(resolve_betas(cfg, 2) == std::vector<RationalVector>{{rat(1, 2), rat(-3)}});
  cfg.beta = "1,2,3";
  CHECK_THROWS_AS(resolve_betas(cfg, 2), ArgumentError);

  RunConfig a;
  a.box = 1;
  a.samples = 7;
  a.mu = 2;
  a.reflect = {"alpha"};
  RunConfig b;
  Json j = config_json(a);
  j.erase("command");
  j.erase("target");
  apply_config_json(b, j);
  CHECK(config_json(b) == config_json(a));
  CHECK_THROWS_AS(apply_config_json(b, Json{{"nope", 1}}), ParseError);

  RunConfig bad;
  bad.m = 0;
  CHECK_THROWS_AS(validate(bad), ArgumentError);
  bad.m = 1;
  bad.format = "xml";
  CHECK_THROWS_AS(validate(bad), ArgumentError);
}

TEST_CASE("reports do not depend on the worker count") {
  RunConfig cfg;
  cfg.target = "keala";
  cfg.box = 1;
  cfg.samples = 40;
  cfg.seed = 9;
  const int before = worker_count();
  set_workers(1);
  const std::string one = run(cfg).to_json(config_json(cfg)).dump();
  set_workers(4);
  const std::string four = run(cfg).to_json(config_json(cfg)).dump();
  set_workers(before);
  CHECK(one == four);
}

TEST_CASE("failed checks carry counterexamples; degenerate forms skip") {
  RunConfig cfg;
  cfg.target = "psi";
  cfg.m = 2;
  cfg.box = 1;
  cfg.samples = 20;
  auto rep = run(cfg);
  CHECK(rep.count(Status::Fail) > 0);
  for (const auto& r : rep.records())
    if (r.status == Status::Fail) CHECK_FALSE(r.counterexample.empty());

  cfg.matrix = "J1";
  cfg.m = 1;
  auto skipped = run(cfg);
  // image and kernel need a nondegenerate form; the printed table is for J and fails either way
  CHECK(skipped.count(Status::Skip) == 2);
  for (const auto& r : skipped.records())
    if (r.status == Status::Fail) CHECK(r.id.rfind("lemma4.9.", 0) == 0);
}

TEST_CASE("report json shape") {
  VerificationReport rep;
  rep.check("s", "a", true, {{"x", 1}});
  rep.check("s", "b", false, Json::object(), "witness");
  rep.skip("s", "c", "why");
  Json j = rep.to_json({{"seed", 1}});
  CHECK(j["summary"]["pass"] == 1);
  CHECK(j["summary"]["fail"] == 1);
  CHECK(j["summary"]["skip"] == 1);
  CHECK(j["checks"][1]["counterexample"] == "witness");
  CHECK(j["digest"].get<std::string>().size() == 16);
  CHECK_FALSE(j["checks"][0].contains("elapsed_ms"));
  std::vector<std::string> keys;
  for (const auto& [k, v] : j.items()) keys.push_back(k);
  CHECK(keys == std::vector<std::string>{"tool", "version", "sampler", "config", "summary", "digest", "checks"});
}
