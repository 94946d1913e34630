#pragma once

// Command line front end. run() is the whole tool; main only forwards argv.

#include <fstream>
#include <sstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "suites.hpp"

namespace qlag::cli {

inline int infer_twist_vars(const std::string& nu) {
  for (int n = 1; n <= kMaxVars; ++n) {
    try {
      parse_one_form(nu, n);
      return n;
    } catch (const ParseError&) {
    } catch (const VariableError&) {
    }
  }
  return 1;
}

inline void parse_diagnostic(std::ostream& err, const std::string& what, const std::string& text, const ParseError& e) {
  err << "qlag: parse error in " << what << ": " << e.what() << "\n  " << text << "\n  "
      << std::string(std::min(e.pos, text.size()), ' ') << "^\n";
}

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact checks for polydifferential, bar and BV constructions over Q.", "qlag"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kToolVersion));

  SuiteConfig cfg;
  int vars = 0;
  int degree_cap = -1;
  int weight = 0;
  bool weight_set = false;
  std::string format = "text", out_path, suite;

  auto common = [&](CLI::App* sc) {
    sc->add_option("--vars", vars, "number of variables (default 1, or inferred from --f / --twist)")->check(CLI::Range(1, kMaxVars));
    sc->add_option("--order", cfg.order, "differential order cap")->check(CLI::NonNegativeNumber);
    sc->add_option("--arity", cfg.arity, "arity cap")->check(CLI::NonNegativeNumber);
    sc->add_option("--degree-cap", degree_cap, "polynomial degree cap")->check(CLI::NonNegativeNumber);
    sc->add_option("--bar-length", cfg.bar_length, "bar length cap")->check(CLI::NonNegativeNumber);
    sc->add_option_function<int>("--weight", [&](const int& w) { weight = w; weight_set = true; }, "Bernstein weight");
    sc->add_option("--twist", cfg.twist, "twist one-form, e.g. \"x^2*dy\"");
    sc->add_option("--f", cfg.f, "polynomial f, e.g. \"x^3+y^3\"");
    sc->add_option("--seed", cfg.seed, "random seed");
    sc->add_option("--format", format, "text or json")->check(CLI::IsMember({"text", "json"}));
    sc->add_option("--out", out_path, "write the report to this file");
  };
  CLI::App* verify = app.add_subcommand("verify", "run an identity suite");
  verify->add_option("suite", suite)->required()->check(
      CLI::IsMember({"hochschild", "braces", "cup", "phi", "torsor", "bar", "main-theorem", "bv"}));
  common(verify);
  CLI::App* coh = app.add_subcommand("cohomology", "windowed cohomology tables");
  coh->add_option("suite", suite)->required()->check(CLI::IsMember({"diff-complex", "koszul", "twisted-derham"}));
  common(coh);
  CLI::App* orc = app.add_subcommand("oracle", "independent oracles");
  orc->add_option("suite", suite)->required()->check(CLI::IsMember({"jacobian", "weyl-window"}));
  common(orc);

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::Success& e) {
    std::ostringstream o, er;
    app.exit(e, o, er);
    out << o.str();
    return 0;
  } catch (const CLI::ParseError& e) {
    std::ostringstream o, er;
    app.exit(e, o, er);
    err << er.str() << o.str();
    return 2;
  }

  if (degree_cap >= 0) cfg.degree_cap = degree_cap;
  if (weight_set) cfg.weight = weight;
  if (vars > 0) cfg.vars = vars;
  else if (!cfg.f.empty()) cfg.vars = infer_vars(cfg.f, 0);
  else if (!cfg.twist.empty()) cfg.vars = infer_twist_vars(cfg.twist);

  // Validate text inputs up front so errors carry a location.
  try {
    if (!cfg.twist.empty()) parse_one_form(cfg.twist, cfg.vars);
  } catch (const ParseError& e) {
    parse_diagnostic(err, "--twist", cfg.twist, e);
    return 2;
  } catch (const VariableError& e) {
    err << "qlag: --twist: " << e.what() << "\n";
    return 2;
  }
  try {
    if (!cfg.f.empty()) parse_poly(cfg.f, cfg.vars);
  } catch (const ParseError& e) {
    parse_diagnostic(err, "--f", cfg.f, e);
    return 2;
  } catch (const VariableError& e) {
    err << "qlag: --f: " << e.what() << "\n";
    return 2;
  }

  Report rep("", nlohmann::json::object());
  try {
    if (verify->parsed()) {
      if (suite == "hochschild") rep = suite_hochschild(cfg);
      else if (suite == "braces") rep = suite_braces(cfg);
      else if (suite == "cup") rep = suite_cup(cfg);
      else if (suite == "phi") rep = suite_phi(cfg);
      else if (suite == "torsor") rep = suite_torsor(cfg);
      else if (suite == "bar") rep = suite_bar(cfg);
      else if (suite == "main-theorem") rep = suite_main_theorem(cfg);
      else rep = suite_bv(cfg);
    } else if (coh->parsed()) {
      if (suite == "diff-complex") rep = cohomology_diff_complex(cfg);
      else rep = cohomology_forms(cfg, suite == "koszul" ? Flavor::Koszul : Flavor::TwistedDR, cfg.vars);
    } else {
      if (suite == "jacobian") rep = oracle_jacobian(cfg, cfg.vars);
      else rep = oracle_weyl_window(cfg);
    }
  } catch (const ParseError& e) {
    err << "qlag: parse error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "qlag: " << e.what() << "\n";
    return 1;
  }

  std::string body = format == "json" ? rep.to_json().dump(2) + "\n" : rep.text();
  if (out_path.empty()) {
    out << body;
  } else {
    std::ofstream f(out_path, std::ios::binary);
    if (!f) {
      err << "qlag: cannot write " << out_path << "\n";
      return 1;
    }
    f << body;
  }
  if (rep.count(Status::Provisional)) err << "qlag: warning: " << rep.count(Status::Provisional) << " provisional check(s)\n";
  if (!rep.ok()) {
    err << "qlag: " << rep.count(Status::Fail) << " check(s) failed\n";
    return 1;
  }
  return 0;
}

}  // namespace qlag::cli
