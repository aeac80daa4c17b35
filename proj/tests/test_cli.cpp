#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <sys/wait.h>

namespace {

namespace fs = std::filesystem;

struct RunResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

const char* cli_path() {
  const char* path = std::getenv("BELLCOMB_CLI");
  REQUIRE(path != nullptr);
  return path;
}

RunResult run_cli(const std::string& args) {
  static int counter = 0;
  const fs::path dir = fs::path("cli_test_scratch");
  fs::create_directories(dir);
  const fs::path out = dir / ("out" + std::to_string(counter));
  const fs::path err = dir / ("err" + std::to_string(counter));
  ++counter;

  const std::string cmd = std::string(cli_path()) + " " + args + " > " + out.string() +
                          " 2> " + err.string();
  const int status = std::system(cmd.c_str());
  RunResult result;
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  result.out = slurp(out);
  result.err = slurp(err);
  return result;
}

bool contains(const std::string& haystack, const std::string& needle) {
  return haystack.find(needle) != std::string::npos;
}

}  // namespace

TEST_CASE("scenario reports the expected utilities") {
  const auto r = run_cli("scenario smoking-gene");
  CHECK(r.exit_code == 0);
  CHECK(contains(r.out, "smoke,-19.000000000,-49.000000000"));
  CHECK(contains(r.out, "abstain,-2.000000000,-50.000000000"));
  CHECK(contains(r.out, "bdt_best: abstain"));
  CHECK(contains(r.out, "cdt_best: smoke"));
  CHECK(contains(r.out, "newcomb_type: true"));
}

TEST_CASE("scenario accepts parameter overrides") {
  const auto r = run_cli("scenario newcomb --p1 0.99 --p2 0.01");
  CHECK(r.exit_code == 0);
  CHECK(contains(r.out, "one_box,990000.000000000"));
  CHECK(contains(r.out, "two_box,11000.000000000"));
}

TEST_CASE("scenario validation failures exit with code 2") {
  const auto bad_prob = run_cli("scenario newcomb --p1 1.2");
  CHECK(bad_prob.exit_code == 2);
  CHECK(contains(bad_prob.err, "InvalidProbability"));

  const auto unknown = run_cli("scenario tea-universe");
  CHECK(unknown.exit_code == 2);
  CHECK(contains(unknown.err, "tea-universe"));

  const auto bad_flag = run_cli("scenario newcomb --nonsense 3");
  CHECK(bad_flag.exit_code == 2);
}

TEST_CASE("enumerate-lhv lists every strategy") {
  const auto r = run_cli("enumerate-lhv");
  CHECK(r.exit_code == 0);
  int rows = 0;
  std::istringstream lines(r.out);
  std::string line;
  while (std::getline(lines, line)) {
    if (line.find(",2.000000000") != std::string::npos ||
        line.find(",-2.000000000") != std::string::npos) {
      ++rows;
    }
  }
  CHECK(rows == 17);  // 16 strategies plus the max row
  CHECK(contains(r.out, "max_f,2.000000000"));
}

TEST_CASE("bounds emits the weighted bound table") {
  const auto r = run_cli("bounds --epsilon-grid 0,0.1,1 --threshold 2.8");
  CHECK(r.exit_code == 0);
  CHECK(contains(r.out, "0.000000000,2.828427125"));
  CHECK(contains(r.out, "0.100000000,2.745584412"));
  CHECK(contains(r.out, "1.000000000,2.000000000"));
  CHECK(contains(r.out, "break_even_epsilon,0.034314575"));
}

TEST_CASE("bell-game is deterministic per seed") {
  const auto first = run_cli(
      "bell-game --agent bdt --pairs 400 --sessions 3 --seed 7 --output cli_test_scratch/g1");
  const auto second = run_cli(
      "bell-game --agent bdt --pairs 400 --sessions 3 --seed 7 --output cli_test_scratch/g2");
  CHECK(first.exit_code == 0);
  CHECK(second.exit_code == 0);
  const auto a = slurp("cli_test_scratch/g1/ledger.csv");
  const auto b = slurp("cli_test_scratch/g2/ledger.csv");
  CHECK_FALSE(a.empty());
  CHECK(a == b);

  const auto reseeded = run_cli(
      "bell-game --agent bdt --pairs 400 --sessions 3 --seed 8 --output cli_test_scratch/g3");
  CHECK(reseeded.exit_code == 0);
  CHECK(slurp("cli_test_scratch/g3/ledger.csv") != a);
}

TEST_CASE("bell-game cdt agent declines every session") {
  const auto r = run_cli(
      "bell-game --agent cdt --epsilon 0.1 --sessions 10 --pairs 100 "
      "--output cli_test_scratch/g4");
  CHECK(r.exit_code == 0);
  CHECK(contains(r.out, "declines: 10"));
  CHECK(contains(r.out, "total_payout: 10000.000000000"));
}

TEST_CASE("bell-game json output") {
  const auto r = run_cli(
      "bell-game --agent cdt --epsilon 1 --sessions 2 --pairs 50 --format json "
      "--output cli_test_scratch/g5");
  CHECK(r.exit_code == 0);
  CHECK(contains(r.out, "\"declines\": 2"));
  CHECK(contains(r.out, "\"total_payout\": 2000.0"));
}

TEST_CASE("bell-game rejects invalid flags with exit code 2") {
  CHECK(run_cli("bell-game --agent nonsense").exit_code == 2);
  CHECK(run_cli("bell-game --epsilon 1.5").exit_code == 2);
  CHECK(run_cli("bell-game --pairs -5").exit_code == 2);
}

TEST_CASE("session dumps carry per-pair rows and a summary") {
  const auto r = run_cli(
      "bell-game --agent bdt --pairs 16 --sessions 1 --seed 5 --dump-pairs "
      "--output cli_test_scratch/g6");
  CHECK(r.exit_code == 0);
  const auto csv = slurp("cli_test_scratch/g6/session_0.csv");
  CHECK(contains(csv, "pair_index,alice_colour,charlie_colour,product"));
  CHECK(contains(csv, "mean_rr,mean_rg,mean_gr,mean_gg,f_statistic,decision,payout"));
  CHECK(contains(csv, "PLAY"));
  int pair_rows = 0;
  std::istringstream lines(csv);
  std::string line;
  while (std::getline(lines, line)) {
    if (line.find(",red,") != std::string::npos ||
        line.find(",green,") != std::string::npos) {
      ++pair_rows;
    }
  }
  CHECK(pair_rows == 16);
}

TEST_CASE("bell-game bdt agent loses every forced session in a factorized world") {
  const auto r = run_cli(
      "bell-game --agent bdt --mechanism lhv --sessions 10 --pairs 2000 "
      "--output cli_test_scratch/g7");
  CHECK(r.exit_code == 0);
  CHECK(contains(r.out, "plays: 10"));
  CHECK(contains(r.out, "wins: 0"));
  CHECK(contains(r.out, "total_payout: 0.000000000"));
}

TEST_CASE("config file supplies defaults and flags override it") {
  fs::create_directories("cli_test_scratch");
  {
    std::ofstream f("cli_test_scratch/game.conf");
    f << "[bell-game]\n"
      << "agent=cdt\n"
      << "epsilon=0.1\n"
      << "sessions=4\n"
      << "pairs=100\n";
  }
  const auto from_file =
      run_cli("--config cli_test_scratch/game.conf bell-game --output cli_test_scratch/g8");
  CHECK(from_file.exit_code == 0);
  CHECK(contains(from_file.out, "declines: 4"));
  CHECK(contains(from_file.out, "total_payout: 4000.000000000"));

  const auto overridden = run_cli(
      "--config cli_test_scratch/game.conf bell-game --sessions 2 "
      "--output cli_test_scratch/g9");
  CHECK(overridden.exit_code == 0);
  CHECK(contains(overridden.out, "declines: 2"));
}

TEST_CASE("output directory falls back to the environment variable") {
  fs::remove_all("cli_test_scratch/envdir");
  const std::string cmd = "BELLCOMB_OUTPUT_DIR=cli_test_scratch/envdir " +
                          std::string(cli_path()) +
                          " bell-game --agent cdt --epsilon 1 --sessions 1 --pairs 50 "
                          "> /dev/null 2> /dev/null";
  const int status = std::system(cmd.c_str());
  CHECK(WIFEXITED(status));
  CHECK(WEXITSTATUS(status) == 0);
  CHECK(fs::exists("cli_test_scratch/envdir/ledger.csv"));
}

TEST_CASE("repro prints the headline numbers") {
  const auto r = run_cli("repro");
  CHECK(r.exit_code == 0);
  CHECK(contains(r.out, "smoke,-19.000000000"));
  CHECK(contains(r.out, "one_box,990000.000000000"));
  CHECK(contains(r.out, "max_f: 2.000000000"));
  CHECK(contains(r.out, "chsh(tsirelson): 2.828427125"));
  CHECK(contains(r.out, "break_even_epsilon,0.034314575"));
}
