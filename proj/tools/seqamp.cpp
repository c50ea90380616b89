// Command-line front end: loads experiment configs, dispatches the
// verification suites, and emits human-readable text plus optional
// line-delimited machine records (--report). Exit codes: 0 all checks pass,
// 1 at least one check failed, 2 usage or config error.
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "seqamp/config.hpp"
#include "seqamp/quantum.hpp"
#include "seqamp/random.hpp"
#include "seqamp/verify.hpp"

namespace {

using namespace seqamp;

constexpr std::uint64_t kDefaultSeed = 20210711;

std::string describe(const ProbabilityTable& table) {
  std::string out;
  for (const auto& [block, p] : table.entries) {
    if (!out.empty()) out += ", ";
    out += block.str() + " = " + format_real(p);
  }
  return out;
}

void audit_matrices(const ExperimentConfig& cfg, RunReport& report) {
  for (const auto& [id, matrix] : cfg.model.interactions()) {
    const Real defect = unitarity_defect(matrix);
    report.add("interaction '" + id + "' is unitary", defect <= kUnitaryTol,
               defect);
  }
  for (const auto& [key, matrix] : cfg.model.transitions()) {
    const Real defect = unitarity_defect(matrix);
    report.add("transition '" + key.from + "' -" + key.interaction + "-> '" +
                   key.to + "' is unitary",
               defect <= kUnitaryTol, defect);
  }
}

RunReport cmd_validate(const std::string& path, long samples,
                       std::uint64_t seed) {
  const ExperimentConfig cfg = load_config(path, /*validate=*/false);
  RunReport report("validate " + path);
  report.add("config parses and all references resolve", true, 0,
             "schema " + std::to_string(cfg.schema_version) + ", dimension " +
                 std::to_string(cfg.model.dim()) + ", " +
                 std::to_string(cfg.sequences.size()) + " sequences, " +
                 std::to_string(cfg.layouts.size()) + " layouts");
  audit_matrices(cfg, report);

  long cuts = 0, merges = 0;
  bool rebuilt = true;
  for (const NamedSequence& named : cfg.sequences) {
    const Sequence& s = named.sequence;
    const int n = s.size();
    for (int j = 1; j < n - 1; ++j) {
      const auto& outcome = s.events()[j].outcome;
      if (outcome.indices().size() == 1) {
        std::vector<Event> head(s.events().begin(), s.events().begin() + j + 1);
        std::vector<Event> tail(s.events().begin() + j, s.events().end());
        const Sequence a(s.system(), head,
                         {s.interactions().begin(),
                          s.interactions().begin() + j});
        const Sequence b(s.system(), tail,
                         {s.interactions().begin() + j,
                          s.interactions().end()});
        rebuilt = rebuilt && series(a, b) == s;
        ++cuts;
      } else {
        std::vector<Event> events = s.events();
        events[j].outcome = IndexSet::single(outcome.indices().front());
        const Sequence a(s.system(), events, s.interactions());
        events[j].outcome = IndexSet(std::vector<int>(
            outcome.indices().begin() + 1, outcome.indices().end()));
        const Sequence b(s.system(), events, s.interactions());
        rebuilt = rebuilt && parallel(a, b) == s;
        ++merges;
      }
    }
  }
  report.add("declared sequences rebuild from series cuts and parallel merges",
             rebuilt, 0,
             std::to_string(cuts) + " cuts, " + std::to_string(merges) +
                 " merges");

  for (CheckResult& r : logic_identity_suite(samples, seed))
    report.add(std::move(r));
  return report;
}

RunReport cmd_amplitude(const std::string& path, const std::string& name) {
  const ExperimentConfig cfg = load_config(path);
  const Sequence& s = cfg.sequence(name);
  const Complex z = amplitude(cfg.model, s);
  const Real p = probability(cfg.model, s);
  RunReport report("amplitude " + path + " " + name);
  report.add("amplitude of '" + name + "'", true, 0,
             "z = " + format_complex(z));
  report.add("probability of '" + name + "'", true, 0,
             "p = " + format_real(p));
  report.add("probability equals the squared modulus",
             std::abs(p - std::norm(z)) <= kProbabilityTol,
             std::abs(p - std::norm(z)));
  return report;
}

RunReport cmd_check_nd(const std::string& path, Real tol, long runs,
                       std::uint64_t seed) {
  const ExperimentConfig cfg = load_config(path);
  if (cfg.layouts.empty())
    fail(Errc::invalid_argument, "config declares no layouts to check");
  RunReport report("check-nd " + path);

  for (const NamedLayout& named : cfg.layouts) {
    const std::string prefix = "layout '" + named.name + "': ";
    const ProbabilityTable baseline =
        quantum_prediction(cfg.model, named.layout);
    report.add(prefix + "baseline distribution", true, 0, describe(baseline));

    const int last = static_cast<int>(named.layout.chain.size()) + 1;
    for (int pos = 1; pos <= last; ++pos) {
      const Layout inserted = insert_trivial(named.layout, pos);
      const Real deviation = ProbabilityTable::max_deviation(
          baseline, quantum_prediction(cfg.model, inserted));
      report.add(prefix + "trivial insertion at position " +
                     std::to_string(pos) +
                     " leaves the distribution unchanged",
                 deviation <= tol, deviation, "tolerance " + format_real(tol));
    }
    try {
      const Layout inserted = insert_trivial(named.layout, 1);
      report.add(prefix + "classical account after the insertion", true, 0,
                 describe(classical_prediction(cfg.model, inserted)));
    } catch (const Error& e) {
      if (e.code() != Errc::asymmetric_transitions) throw;
      report.add(prefix + "classical account unavailable", true, 0, e.what());
    }

    if (runs > 0) {
      for (CheckResult& r :
           monte_carlo_suite(cfg.model, named.layout, runs, seed)) {
        r.name = prefix + r.name;
        report.add(std::move(r));
      }
      const ProbabilityTable freq =
          monte_carlo(cfg.model, named.layout, runs, seed);
      std::string table;
      for (const auto& [block, p] : baseline.entries) {
        if (!table.empty()) table += "; ";
        const Real se = std::sqrt(std::max(p * (1 - p), 0.0) /
                                  static_cast<Real>(runs));
        table += block.str() + ": p = " + format_real(p) +
                 ", freq = " + format_real(freq.value(block)) +
                 ", se = " + format_real(se);
      }
      report.add(prefix + "Monte-Carlo frequency table", true, 0, table);
    }
  }
  return report;
}

RunReport cmd_reconstruct(const std::string& path, int models,
                          std::uint64_t seed, Real tol) {
  const ExperimentConfig cfg = load_config(path);
  RunReport report("reconstruct " + path);
  audit_matrices(cfg, report);

  Rng rng(seed);
  for (const auto& [key, matrix] : cfg.model.transitions()) {
    const std::string label =
        "'" + key.from + "' -" + key.interaction + "-> '" + key.to + "'";
    const TransformationMatrix t(matrix, key.from, key.to);
    const std::vector<StateVector> basis = prepared_states(t);

    Real repeat_res = 0;
    for (int q = 0; q < cfg.model.dim(); ++q) {
      const Vector repeated = t.matrix() * basis[q].components();
      for (int k = 0; k < cfg.model.dim(); ++k)
        repeat_res = std::max(repeat_res, std::abs(std::norm(repeated(k)) -
                                                   (q == k ? 1.0 : 0.0)));
    }
    report.add("prepared states behind " + label +
                   " repeat their outcome deterministically",
               repeat_res <= tol, repeat_res);

    const StateVector v(random_state(cfg.model.dim(), rng), t.from());
    Real total = 0;
    for (int k = 0; k < cfg.model.dim(); ++k)
      total += born_probability(basis[k], v);
    report.add("Born probabilities behind " + label + " sum to one",
               std::abs(total - 1.0) <= tol, std::abs(total - 1.0));

    if (cfg.model.dim() <= 4) {
      std::string states;
      for (int k = 0; k < cfg.model.dim(); ++k) {
        if (!states.empty()) states += "; ";
        states += "u" + std::to_string(k) + " = (";
        for (int c = 0; c < cfg.model.dim(); ++c)
          states += (c ? ", " : "") + format_complex(basis[k][c]);
        states += ")";
      }
      report.add("prepared basis behind " + label, true, 0, states);
    }
  }

  for (CheckResult& r : reconstruction_suite(models, seed, kUnitaryTol, tol))
    report.add(std::move(r));
  return report;
}

RunReport cmd_check_composition(long samples, std::uint64_t seed) {
  RunReport report("check-composition");
  for (CheckResult& r : composition_suite(samples, seed))
    report.add(std::move(r));
  return report;
}

RunReport cmd_action(const std::string& lagrangian, Real mass, Real omega,
                     Real alpha, int points, Real spacing, int steps,
                     long paths, std::uint64_t seed) {
  RunReport report("action");
  for (CheckResult& r : action_suite(paths, seed)) report.add(std::move(r));

  const ActionFunctional l{lagrangian == "harmonic" ? Lagrangian::harmonic
                                                    : Lagrangian::free_particle,
                           mass, omega};
  const LatticeSpec grid{points, spacing};
  const ActionScale scale{alpha};
  for (CheckResult& r : lattice_suite(l, grid, steps, scale))
    report.add(std::move(r));
  return report;
}

int emit(const RunReport& report, const std::string& report_path) {
  report.render_text(std::cout);
  if (!report_path.empty()) {
    std::ofstream out(report_path, std::ios::binary);
    if (!out) {
      std::cerr << "error: cannot write '" << report_path << "'\n";
      return 2;
    }
    out << report.jsonl();
  }
  return report.exit_code();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Operational sequence-amplitude toolkit"};
  app.require_subcommand(1);

  std::string config_path, sequence_name, report_path;
  std::string lagrangian = "free";
  std::uint64_t seed = kDefaultSeed;
  Real tol = kProbabilityTol;
  long runs = 0, samples = 1000, paths = 1000;
  int models = 100, points = 64, steps = 8;
  Real mass = 1.0, omega = 1.0, alpha = 1.0, spacing = 1.0;

  const auto add_seed = [&](CLI::App* cmd) {
    cmd->add_option("--seed", seed, "random seed")
        ->envname("SEQAMP_SEED")
        ->capture_default_str();
  };
  const auto add_report = [&](CLI::App* cmd) {
    cmd->add_option("--report", report_path,
                    "write machine-readable line-delimited records here");
  };

  CLI::App* validate =
      app.add_subcommand("validate", "audit a config and the sequence algebra");
  validate->add_option("config", config_path, "experiment config")->required();
  validate->add_option("--samples", samples, "random tuples per identity")
      ->capture_default_str();
  add_seed(validate);
  add_report(validate);

  CLI::App* ampl =
      app.add_subcommand("amplitude", "amplitude of a declared sequence");
  ampl->add_option("config", config_path, "experiment config")->required();
  ampl->add_option("sequence", sequence_name, "declared sequence name")
      ->required();
  add_report(ampl);

  CLI::App* nd = app.add_subcommand(
      "check-nd", "trivial-measurement insertions on declared layouts");
  nd->add_option("config", config_path, "experiment config")->required();
  nd->add_option("--tol", tol, "deviation tolerance")->capture_default_str();
  nd->add_option("--runs", runs,
                 "Monte-Carlo runs per layout (0 disables the table)")
      ->capture_default_str();
  add_seed(nd);
  add_report(nd);

  CLI::App* recon = app.add_subcommand(
      "reconstruct", "states, operators and the reconstruction checks");
  recon->add_option("config", config_path, "experiment config")->required();
  recon->add_option("--samples", models, "random models to draw")
      ->capture_default_str();
  recon->add_option("--tol", tol, "residual tolerance")->capture_default_str();
  add_seed(recon);
  add_report(recon);

  CLI::App* comp = app.add_subcommand(
      "check-composition", "composition-law candidate audit");
  comp->add_option("--samples", samples, "samples per axiom")
      ->capture_default_str();
  add_seed(comp);
  add_report(comp);

  CLI::App* act = app.add_subcommand(
      "action", "action functional, phase rule and lattice sum over paths");
  act->add_option("--lagrangian", lagrangian, "free or harmonic")
      ->check(CLI::IsMember({"free", "harmonic"}))
      ->capture_default_str();
  act->add_option("--mass", mass, "particle mass")->capture_default_str();
  act->add_option("--omega", omega, "harmonic frequency")
      ->capture_default_str();
  act->add_option("--alpha", alpha, "action scale")->capture_default_str();
  act->add_option("--points", points, "lattice points")->capture_default_str();
  act->add_option("--spacing", spacing, "lattice spacing")
      ->capture_default_str();
  act->add_option("--steps", steps, "propagator steps")->capture_default_str();
  act->add_option("--paths", paths, "random paths to sample")
      ->capture_default_str();
  add_seed(act);
  add_report(act);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (app.got_subcommand(validate))
      return emit(cmd_validate(config_path, samples, seed), report_path);
    if (app.got_subcommand(ampl))
      return emit(cmd_amplitude(config_path, sequence_name), report_path);
    if (app.got_subcommand(nd))
      return emit(cmd_check_nd(config_path, tol, runs, seed), report_path);
    if (app.got_subcommand(recon))
      return emit(cmd_reconstruct(config_path, models, seed, tol), report_path);
    if (app.got_subcommand(comp))
      return emit(cmd_check_composition(samples, seed), report_path);
    if (app.got_subcommand(act))
      return emit(cmd_action(lagrangian, mass, omega, alpha, points, spacing,
                             steps, paths, seed),
                  report_path);
  } catch (const seqamp::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
