// bellcomb command-line front end: canonical decision scenarios, the CHSH
// betting game, deterministic-strategy enumeration, and the credence-weighted
// bound table. All randomized commands are reproducible from --seed; files
// are emitted with fixed-precision numbers so reruns are byte-identical.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "bellcomb/bell_game.hpp"
#include "bellcomb/csv.hpp"
#include "bellcomb/decision.hpp"
#include "bellcomb/lhv.hpp"
#include "bellcomb/mixture.hpp"
#include "bellcomb/quantum.hpp"
#include "bellcomb/scenarios.hpp"

namespace {

using nlohmann::json;

enum class Format { Table, Csv, Json };

struct OutputSpec {
  std::optional<std::string> path;
  Format format = Format::Table;
};

/// Round-trips a double through the fixed 9-digit representation so JSON
/// output carries the same precision as CSV and tables.
double fixed9(double x) { return std::stod(bellcomb::format_fixed(x)); }

std::ostream& open_sink(const OutputSpec& out, std::ofstream& file) {
  if (!out.path) return std::cout;
  file.open(*out.path, std::ios::binary | std::ios::trunc);
  if (!file) throw bellcomb::Error("cannot open output file '" + *out.path + "'");
  return file;
}

/// Default output directory for emitted files, overridable per run.
std::filesystem::path output_dir(const std::optional<std::string>& flag) {
  if (flag) return *flag;
  if (const char* env = std::getenv("BELLCOMB_OUTPUT_DIR")) return env;
  return ".";
}

// ---------------------------------------------------------------------------
// scenario

struct ScenarioReport {
  bellcomb::scenarios::ScenarioSpec spec;
  bellcomb::Prescription bdt;
  bellcomb::Prescription cdt;
  double residual = 0.0;
  bool newcomb_type = false;
};

ScenarioReport evaluate_scenario(const bellcomb::scenarios::ScenarioSpec& spec) {
  ScenarioReport report{spec,
                        bellcomb::prescribe(spec.problem, bellcomb::Theory::BDT),
                        bellcomb::prescribe(spec.problem, bellcomb::Theory::CDT),
                        bellcomb::evidential_decomposition_residual(spec.problem),
                        bellcomb::is_newcomb_type(spec.problem)};
  return report;
}

std::string join(const std::vector<std::string>& items) {
  std::string acc;
  for (const auto& s : items) {
    if (!acc.empty()) acc += " ";
    acc += s;
  }
  return acc;
}

void print_scenario_table(const ScenarioReport& r, std::ostream& out) {
  out << "scenario: " << r.spec.name << "\n";
  out << "action,eu,ceu\n";
  for (const auto& action : r.spec.problem.actions()) {
    out << action << ',' << bellcomb::format_fixed(r.bdt.values.at(action)) << ','
        << bellcomb::format_fixed(r.cdt.values.at(action)) << '\n';
  }
  out << "bdt_best: " << join(r.bdt.best_actions) << "\n";
  out << "cdt_best: " << join(r.cdt.best_actions) << "\n";
  out << "decomposition_residual: " << bellcomb::format_fixed(r.residual) << "\n";
  out << "newcomb_type: " << (r.newcomb_type ? "true" : "false") << "\n";
}

void print_scenario_csv(const ScenarioReport& r, std::ostream& out) {
  out << "action,eu,ceu\n";
  for (const auto& action : r.spec.problem.actions()) {
    out << action << ',' << bellcomb::format_fixed(r.bdt.values.at(action)) << ','
        << bellcomb::format_fixed(r.cdt.values.at(action)) << '\n';
  }
  out << "\nbdt_best,cdt_best,newcomb_type\n";
  out << join(r.bdt.best_actions) << ',' << join(r.cdt.best_actions) << ','
      << (r.newcomb_type ? "true" : "false") << '\n';
}

json scenario_json(const ScenarioReport& r) {
  json actions = json::array();
  for (const auto& action : r.spec.problem.actions()) {
    actions.push_back({{"action", action},
                       {"eu", fixed9(r.bdt.values.at(action))},
                       {"ceu", fixed9(r.cdt.values.at(action))}});
  }
  return json{{"scenario", r.spec.name},
              {"actions", actions},
              {"bdt_best", r.bdt.best_actions},
              {"cdt_best", r.cdt.best_actions},
              {"decomposition_residual", fixed9(r.residual)},
              {"newcomb_type", r.newcomb_type}};
}

// ---------------------------------------------------------------------------
// enumerate-lhv

void print_enumeration(Format format, std::ostream& out) {
  const auto all = bellcomb::enumerate_deterministic();
  if (format == Format::Json) {
    json rows = json::array();
    double best = -4.0;
    for (const auto& s : all) {
      rows.push_back({{"a_red", s.a_red},
                      {"a_green", s.a_green},
                      {"b_red", s.b_red},
                      {"b_green", s.b_green},
                      {"f", fixed9(s.chsh_value())}});
      best = std::max(best, s.chsh_value());
    }
    out << json{{"strategies", rows}, {"max_f", fixed9(best)}}.dump(2) << '\n';
    return;
  }
  out << "a_red,a_green,b_red,b_green,f\n";
  double best = -4.0;
  for (const auto& s : all) {
    out << s.a_red << ',' << s.a_green << ',' << s.b_red << ',' << s.b_green << ','
        << bellcomb::format_fixed(s.chsh_value()) << '\n';
    best = std::max(best, s.chsh_value());
  }
  out << "max_f," << bellcomb::format_fixed(best) << '\n';
}

// ---------------------------------------------------------------------------
// bounds

std::vector<double> parse_grid(const std::string& grid) {
  std::vector<double> values;
  std::stringstream ss(grid);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) values.push_back(std::stod(item));
  }
  if (values.empty()) throw bellcomb::Error("empty epsilon grid");
  return values;
}

void print_bounds(const std::vector<double>& grid, double threshold, Format format,
                  std::ostream& out) {
  const double eps_star = bellcomb::break_even_credence(threshold);
  if (format == Format::Json) {
    json rows = json::array();
    for (double e : grid) {
      rows.push_back({{"epsilon", fixed9(e)}, {"bound", fixed9(bellcomb::mixture_chsh_bound(e))}});
    }
    out << json{{"threshold", fixed9(threshold)},
                {"rows", rows},
                {"break_even_epsilon", fixed9(eps_star)}}
               .dump(2)
        << '\n';
    return;
  }
  out << "epsilon,bound\n";
  for (double e : grid) {
    out << bellcomb::format_fixed(e) << ','
        << bellcomb::format_fixed(bellcomb::mixture_chsh_bound(e)) << '\n';
  }
  out << "break_even_epsilon," << bellcomb::format_fixed(eps_star) << '\n';
}

// ---------------------------------------------------------------------------
// bell-game

struct BellGameOptions {
  std::int64_t pairs = 10'000;
  double epsilon = 0.1;
  double threshold = 2.8;
  std::string agent = "cdt";
  std::string semantics = "expectation";
  std::string mechanism = "quantum";
  std::int64_t sessions = 1;
  std::uint64_t seed = bellcomb::kDefaultSeed;
  std::optional<std::string> out_dir;
  bool dump_pairs = false;
  Format format = Format::Table;
};

bellcomb::Agent make_agent(const BellGameOptions& opt) {
  if (opt.agent == "cdt") {
    const auto semantics = opt.semantics == "concentration"
                               ? bellcomb::CdtSemantics::HypothesisConcentration
                               : bellcomb::CdtSemantics::ExpectationRule;
    return bellcomb::Agent::cdt(opt.epsilon, semantics);
  }
  return bellcomb::Agent::bdt();
}

int run_bell_game(const BellGameOptions& opt) {
  bellcomb::GameConfig config;
  config.n_pairs = opt.pairs;
  config.threshold = opt.threshold;
  config.seed = opt.seed;
  if (opt.mechanism == "lhv") {
    config.mechanism = bellcomb::Mechanism::LHV;
  } else if (opt.mechanism == "superdeterministic") {
    config.mechanism = bellcomb::Mechanism::Superdeterministic;
  } else {
    config.mechanism = bellcomb::Mechanism::Quantum;
  }
  config.validate();

  const bellcomb::Agent agent = make_agent(opt);
  const auto dir = output_dir(opt.out_dir);
  std::filesystem::create_directories(dir);

  auto sink = [&](const bellcomb::Agent&, std::int64_t session,
                  const bellcomb::SessionRecord& record) {
    if (!opt.dump_pairs) return;
    std::ofstream f(dir / ("session_" + std::to_string(session) + ".csv"),
                    std::ios::binary | std::ios::trunc);
    bellcomb::write_session_csv(record, f);
  };

  const auto ledger = bellcomb::run_tournament(config, {agent}, opt.sessions, sink);
  const auto& rows = ledger.agents.front();

  {
    std::ofstream f(dir / "ledger.csv", std::ios::binary | std::ios::trunc);
    bellcomb::write_ledger_csv(ledger, f);
  }

  if (opt.format == Format::Csv) {
    bellcomb::write_ledger_csv(ledger, std::cout);
  } else if (opt.format == Format::Json) {
    json summary{{"agent", rows.agent},
                 {"mechanism", bellcomb::to_string(config.mechanism)},
                 {"sessions", opt.sessions},
                 {"pairs", opt.pairs},
                 {"threshold", fixed9(opt.threshold)},
                 {"plays", rows.count(bellcomb::Decision::Play)},
                 {"declines", rows.count(bellcomb::Decision::Decline)},
                 {"wins", rows.win_count(config)},
                 {"total_payout", fixed9(rows.total_payout())},
                 {"mean_payout", fixed9(rows.mean_payout())}};
    std::cout << summary.dump(2) << '\n';
  } else {
    std::cout << "agent: " << rows.agent << "\n"
              << "mechanism: " << bellcomb::to_string(config.mechanism) << "\n"
              << "sessions: " << opt.sessions << "  pairs: " << opt.pairs
              << "  threshold: " << bellcomb::format_fixed(opt.threshold) << "\n"
              << "plays: " << rows.count(bellcomb::Decision::Play)
              << "  declines: " << rows.count(bellcomb::Decision::Decline)
              << "  wins: " << rows.win_count(config) << "\n"
              << "total_payout: " << bellcomb::format_fixed(rows.total_payout()) << "\n"
              << "mean_payout: " << bellcomb::format_fixed(rows.mean_payout()) << "\n"
              << "ledger: " << (dir / "ledger.csv").string() << "\n";
  }
  return 0;
}

// ---------------------------------------------------------------------------
// repro

void print_repro(std::ostream& out) {
  out << "== smoking-gene ==\n";
  print_scenario_table(evaluate_scenario(bellcomb::scenarios::smoking_gene()), out);
  out << "\n== newcomb (0.99, 0.01) ==\n";
  print_scenario_table(evaluate_scenario(bellcomb::scenarios::newcomb_classic(0.99, 0.01)), out);
  out << "\n== million-box (1000000 boxes, accuracy 0.999) ==\n";
  print_scenario_table(evaluate_scenario(bellcomb::scenarios::million_box(1'000'000, 0.999)),
                       out);
  out << "\n== deterministic strategies ==\n";
  out << "count: " << bellcomb::enumerate_deterministic().size() << "\n";
  out << "max_f: " << bellcomb::format_fixed(bellcomb::lhv_chsh_max()) << "\n";
  out << "\n== quantum maximum ==\n";
  out << "chsh(tsirelson): "
      << bellcomb::format_fixed(bellcomb::chsh_of_model(bellcomb::tsirelson_config())) << "\n";
  out << "\n== credence-weighted bounds (threshold 2.8) ==\n";
  print_bounds({0.0, 0.05, 0.1, 0.5, 1.0}, 2.8, Format::Table, out);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"bellcomb: expected-utility engines and a CHSH betting game"};
  app.set_config("--config", "", "flat key=value config file; flags override file values");
  app.require_subcommand(1);
  app.failure_message(CLI::FailureMessage::simple);

  std::string format_name = "table";
  auto add_format = [&format_name](CLI::App* cmd) {
    cmd->add_option("--format", format_name, "output format")
        ->check(CLI::IsMember({"table", "csv", "json"}));
  };
  auto parse_format = [&format_name]() {
    if (format_name == "csv") return Format::Csv;
    if (format_name == "json") return Format::Json;
    return Format::Table;
  };

  // scenario -------------------------------------------------------------
  auto* scenario_cmd = app.add_subcommand("scenario", "evaluate a canonical decision scenario");
  std::string scenario_name;
  double p1 = 0.99, p2 = 0.01, prior = 0.5, gene_prior = 0.5, accuracy = 0.999;
  std::int64_t boxes = 1'000'000;
  std::optional<std::string> scenario_out;
  scenario_cmd->add_option("name", scenario_name, "newcomb | smoking-gene | million-box")
      ->required();
  scenario_cmd->add_option("--p1", p1, "P(million | one_box) for newcomb");
  scenario_cmd->add_option("--p2", p2, "P(million | two_box) for newcomb");
  scenario_cmd->add_option("--prior", prior, "hypothesis prior that the box is full");
  scenario_cmd->add_option("--gene-prior", gene_prior, "prior P(gene) for smoking-gene");
  scenario_cmd->add_option("--boxes", boxes, "closed-box count for million-box");
  scenario_cmd->add_option("--accuracy", accuracy, "predictor accuracy for million-box");
  scenario_cmd->add_option("--output", scenario_out, "write the report to this file");
  add_format(scenario_cmd);

  // bell-game --------------------------------------------------------------
  auto* game_cmd = app.add_subcommand("bell-game", "run seeded betting-game tournaments");
  BellGameOptions game;
  game_cmd->add_option("--pairs", game.pairs, "box pairs per session")->check(CLI::PositiveNumber);
  game_cmd->add_option("--epsilon", game.epsilon, "CDT credence on factorized hypotheses")
      ->check(CLI::Range(0.0, 1.0));
  game_cmd->add_option("--threshold", game.threshold, "win threshold on the statistic");
  game_cmd->add_option("--agent", game.agent, "cdt | bdt")
      ->check(CLI::IsMember({"cdt", "bdt"}));
  game_cmd->add_option("--semantics", game.semantics, "CDT rule: expectation | concentration")
      ->check(CLI::IsMember({"expectation", "concentration"}));
  game_cmd
      ->add_option("--mechanism", game.mechanism, "quantum | lhv | superdeterministic")
      ->check(CLI::IsMember({"quantum", "lhv", "superdeterministic"}));
  game_cmd->add_option("--sessions", game.sessions, "sessions to play")
      ->check(CLI::PositiveNumber);
  game_cmd->add_option("--seed", game.seed, "master seed (default 0xBE11C0DE)");
  game_cmd->add_option("--output", game.out_dir,
                       "output directory (default $BELLCOMB_OUTPUT_DIR or .)");
  game_cmd->add_flag("--dump-pairs", game.dump_pairs, "write per-pair CSV per session");
  add_format(game_cmd);

  // enumerate-lhv ----------------------------------------------------------
  auto* enum_cmd = app.add_subcommand("enumerate-lhv", "list all 16 deterministic strategies");
  std::optional<std::string> enum_out;
  enum_cmd->add_option("--output", enum_out, "write the table to this file");
  add_format(enum_cmd);

  // bounds -------------------------------------------------------------
  auto* bounds_cmd = app.add_subcommand("bounds", "credence-weighted CHSH bound table");
  std::string grid = "0,0.1,0.2,0.3,0.4,0.5,0.6,0.7,0.8,0.9,1";
  double bound_threshold = 2.8;
  std::optional<std::string> bounds_out;
  bounds_cmd->add_option("--epsilon-grid", grid, "comma-separated epsilon values");
  bounds_cmd->add_option("--threshold", bound_threshold, "threshold for the break-even credence");
  bounds_cmd->add_option("--output", bounds_out, "write the table to this file");
  add_format(bounds_cmd);

  // repro -------------------------------------------------------------
  auto* repro_cmd = app.add_subcommand("repro", "reproduce the headline tables and values");
  std::optional<std::string> repro_out;
  repro_cmd->add_option("--output", repro_out, "write the report to this file");
  add_format(repro_cmd);

  try {
    app.parse(argc, argv);

    if (scenario_cmd->parsed()) {
      std::map<std::string, double> params{{"p1", p1},
                                           {"p2", p2},
                                           {"prior", prior},
                                           {"gene-prior", gene_prior},
                                           {"boxes", static_cast<double>(boxes)},
                                           {"accuracy", accuracy}};
      const auto report = evaluate_scenario(bellcomb::scenarios::by_name(scenario_name, params));
      std::ofstream file;
      std::ostream& out = open_sink({scenario_out, parse_format()}, file);
      switch (parse_format()) {
        case Format::Json: out << scenario_json(report).dump(2) << '\n'; break;
        case Format::Csv: print_scenario_csv(report, out); break;
        default: print_scenario_table(report, out);
      }
      return 0;
    }
    if (game_cmd->parsed()) {
      game.format = parse_format();
      return run_bell_game(game);
    }
    if (enum_cmd->parsed()) {
      std::ofstream file;
      std::ostream& out = open_sink({enum_out, parse_format()}, file);
      print_enumeration(parse_format(), out);
      return 0;
    }
    if (bounds_cmd->parsed()) {
      std::ofstream file;
      std::ostream& out = open_sink({bounds_out, parse_format()}, file);
      print_bounds(parse_grid(grid), bound_threshold, parse_format(), out);
      return 0;
    }
    if (repro_cmd->parsed()) {
      std::ofstream file;
      std::ostream& out = open_sink({repro_out, parse_format()}, file);
      print_repro(out);
      return 0;
    }
    return 0;
  } catch (const CLI::ParseError& e) {
    if (e.get_name() == "CallForHelp" || e.get_name() == "CallForAllHelp" ||
        e.get_name() == "CallForVersion") {
      return app.exit(e);
    }
    std::cerr << e.what() << '\n';
    return 2;
  } catch (const bellcomb::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 1;
  }
}
