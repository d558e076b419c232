// mdst_lab: replicated experiments on directed spanning forests and linear trees.
//
//   mdst_lab lln --n 50000 --reps 20 --alpha 1 --out lln.csv
//   mdst_lab analytic table

#include <cstdio>
#include <iostream>
#include <map>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "mdst/analytic.hpp"
#include "mdst/lab.hpp"

namespace {

using mdst::lab::ExperimentConfig;
using mdst::lab::ExperimentKind;
using mdst::lab::Process;

constexpr int kConfigError = 2;

void add_common_flags(CLI::App* cmd, ExperimentConfig& cfg, std::string& process) {
  cmd->add_option("--n", cfg.n, "number of points (binomial) or intensity (poisson)")->capture_default_str();
  cmd->add_option("--m", cfg.m, "sequence length for linear-tree experiments")->capture_default_str();
  cmd->add_option("--reps", cfg.reps, "replicates")->capture_default_str();
  cmd->add_option("--alpha", cfg.alpha, "weight exponent")->capture_default_str();
  cmd->add_option("--theta", cfg.theta, "cone start angle, radians anticlockwise from up")->capture_default_str();
  cmd->add_option("--phi", cfg.phi, "cone opening, in (0,pi] or 2pi")->capture_default_str();
  cmd->add_flag("--rooted", cfg.rooted, "adjoin the origin");
  cmd->add_option("--process", process, "point process")
      ->check(CLI::IsMember({"binomial", "poisson"}))
      ->capture_default_str();
  cmd->add_option("--sigma", cfg.sigma, "boundary strip exponent")->capture_default_str();
  cmd->add_option("--epsilon", cfg.epsilon, "interior region exponent")->capture_default_str();
  cmd->add_option("--seed", cfg.base_seed, "base seed")->capture_default_str();
  cmd->add_option("--bandwidth", cfg.kde_bandwidth, "KDE bandwidth")->capture_default_str();
  cmd->add_option("--out", cfg.output, "output CSV path (summary to stdout when omitted)");
  cmd->add_option("--jobs", cfg.jobs, "worker threads, 0 = all cores")->capture_default_str();
}

void print_summary(const mdst::lab::ExperimentResult& res) {
  std::ostringstream os;
  mdst::lab::write_summary(os, res);
  std::cout << os.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Monte Carlo laboratory for minimal directed spanning forests and directed linear trees"};
  app.require_subcommand(1);

  ExperimentConfig cfg;
  std::string process = "binomial";
  const std::map<std::string, ExperimentKind> kinds = {
      {"lln", ExperimentKind::lln},
      {"total-law", ExperimentKind::total_law},
      {"boundary", ExperimentKind::boundary},
      {"clt-region", ExperimentKind::clt_region},
      {"coupling", ExperimentKind::coupling},
      {"dlt-density", ExperimentKind::dlt_density},
      {"dickman", ExperimentKind::dickman},
  };
  std::map<std::string, CLI::App*> commands;
  const std::map<std::string, std::string> help = {
      {"lln", "scaled total weight n^(alpha/2-1) L^alpha"},
      {"total-law", "centred total weight"},
      {"boundary", "centred weight of the boundary strip"},
      {"clt-region", "scaled centred weight of the interior square"},
      {"coupling", "strip forest versus linear forest gap"},
      {"dlt-density", "centred alpha=1 linear tree length with density estimate"},
      {"dickman", "root-edge weight versus the Dickman series sampler"},
  };
  for (const auto& [name, kind] : kinds) {
    auto* cmd = app.add_subcommand(name, help.at(name));
    add_common_flags(cmd, cfg, process);
    commands[name] = cmd;
  }

  auto* analytic = app.add_subcommand("analytic", "closed-form constants");
  analytic->require_subcommand(1);
  auto* table = analytic->add_subcommand("table", "CSV of exact moments and limit constants");
  int depth = 4;
  std::string table_out;
  table->add_option("--depth", depth, "moment recursion depth")->capture_default_str();
  table->add_option("--out", table_out, "output CSV path (stdout when omitted)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kConfigError;
  }

  try {
    if (table->parsed()) {
      if (depth < 1) throw mdst::lab::ConfigError("--depth must be at least 1");
      const auto rows = mdst::analytic::analytic_table(depth);
      if (table_out.empty()) {
        mdst::lab::write_analytic_table(std::cout, rows);
      } else {
        mdst::lab::write_file(table_out, [&](std::ostream& os) { mdst::lab::write_analytic_table(os, rows); });
        std::cerr << "wrote " << table_out << "\n";
      }
      return 0;
    }

    for (const auto& [name, cmd] : commands) {
      if (!cmd->parsed()) continue;
      cfg.kind = kinds.at(name);
      cfg.process = process == "poisson" ? Process::poisson : Process::binomial;
      mdst::lab::validate(cfg);
      const auto res = mdst::lab::run_experiment(cfg);
      if (!cfg.output.empty())
        for (const auto& path : mdst::lab::emit(res, cfg.output)) std::cerr << "wrote " << path << "\n";
      print_summary(res);
      return 0;
    }
  } catch (const mdst::lab::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfigError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
