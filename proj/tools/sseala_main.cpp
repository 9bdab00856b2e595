#include <cstring>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "sseala/driver.hpp"
#include "sseala/errors.hpp"
#include "sseala/parallel.hpp"

using namespace sseala;

namespace {

// --config is applied before the other flags so that explicit flags win.
std::string find_config(int argc, char** argv) {
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--config") == 0 && i + 1 < argc) return argv[i + 1];
    if (std::strncmp(argv[i], "--config=", 9) == 0) return argv[i] + 9;
  }
  return {};
}

void write_file(const std::string& path, const std::string& body) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ArgumentError("cannot write '" + path + "'");
  out << body;
}

}  // namespace

int main(int argc, char** argv) {
  RunConfig cfg;
  try {
    if (auto path = find_config(argc, argv); !path.empty()) {
      std::ifstream in(path);
      if (!in) throw ParseError("cannot open config '" + path + "'");
      std::stringstream ss;
      ss << in.rdbuf();
      apply_config_json(cfg, Json::parse(ss.str()));
    }
  } catch (const std::exception& e) {
    std::cerr << "sseala: " << e.what() << "\n";
    return 2;
  }

  CLI::App app{"Exact verification of skew symmetric extended affine Lie algebras"};
  app.require_subcommand(1);
  std::string config_path;
  unsigned mu = 0, sp_power = 0, q = 0;
  app.add_option("--config", config_path, "JSON file with flag defaults");
  app.add_option("--algebra", cfg.algebra, "toroidal, full-toroidal, tauS, tauB, heala or keala");
  app.add_option("--matrix", cfg.matrix, "J, J1, random, or a JSON matrix file");
  app.add_option("--m", cfg.m, "half rank");
  app.add_option("--box", cfg.box, "box radius");
  app.add_option("--samples", cfg.samples, "samples per randomized check");
  app.add_option("--seed", cfg.seed, "sampling seed");
  app.add_option("--beta", cfg.beta, "shift vector p/q,...");
  auto* mu_opt = app.add_option("--mu", mu, "sl2 highest weight");
  auto* sp_opt = app.add_option("--sp-power", sp_power, "symmetric power of the natural sp representation");
  auto* q_opt = app.add_option("--q", q, "filtration index");
  app.add_option("--lemma", cfg.lemma, "restrict t-filtration checks: 4.4, 4.5, 4.6, 4.8, oracle");
  app.add_option("--items", cfg.items, "item list such as 1-8 or 1,3");
  app.add_option("--reflect", cfg.reflect, "reflections such as alpha+delta[1]")->delimiter(';');
  app.add_option("--out", cfg.out, "report path; timings go to <out>.timings.json");
  app.add_option("--format", cfg.format, "json or text")->check(CLI::IsMember({"json", "text"}));

  auto* verify = app.add_subcommand("verify", "run verification suites")->fallthrough();
  verify->add_option("target", cfg.target)->required()->check(CLI::IsMember(verify_targets()));
  auto* dims = app.add_subcommand("dims", "dimension reports")->fallthrough();
  dims->add_option("target", cfg.target)->required()->check(CLI::IsMember({"quotient", "graded"}));
  auto* solve = app.add_subcommand("solve", "exact linear systems")->fallthrough();
  solve->add_option("target", cfg.target)->required()->check(CLI::IsMember({"cocycle"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }
  if (mu_opt->count()) cfg.mu = mu;
  if (sp_opt->count()) cfg.sp_power = sp_power;
  if (q_opt->count()) cfg.q = q;
  cfg.command = verify->parsed() ? "verify" : dims->parsed() ? "dims" : "solve";

  try {
    configure_workers_from_env();
    VerificationReport rep = run(cfg);
    const std::string body = cfg.format == "json" ? rep.to_json(config_json(cfg)).dump(2) + "\n" : rep.to_text();
    if (cfg.out.empty()) {
      std::cout << body;
    } else {
      write_file(cfg.out, body);
      write_file(cfg.out + ".timings.json", rep.timings_json().dump(2) + "\n");
    }
    std::cerr << "sseala: " << rep.count(Status::Pass) << " pass, " << rep.count(Status::Fail) << " fail, "
              << rep.count(Status::Skip) << " skip\n";
    return rep.ok() ? 0 : 1;
  } catch (const ArgumentError& e) {
    std::cerr << "sseala: " << e.what() << "\n";
    return 2;
  } catch (const ParseError& e) {
    std::cerr << "sseala: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "sseala: internal error: " << e.what() << "\n";
    return 2;
  }
}
