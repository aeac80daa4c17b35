#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "bellcomb/correlations.hpp"
#include "bellcomb/decision.hpp"
#include "bellcomb/errors.hpp"
#include "bellcomb/lhv.hpp"
#include "bellcomb/mixture.hpp"
#include "bellcomb/quantum.hpp"
#include "bellcomb/rng.hpp"

namespace bellcomb {

/// Documented default seed for every seeded entry point.
inline constexpr std::uint64_t kDefaultSeed = 0xBE11C0DEULL;

enum class Mechanism { LHV, Quantum, Superdeterministic };
enum class Decision { Play, Decline };
enum class CdtSemantics { ExpectationRule, HypothesisConcentration };

inline std::string to_string(Mechanism m) {
  switch (m) {
    case Mechanism::LHV: return "lhv";
    case Mechanism::Quantum: return "quantum";
    default: return "superdeterministic";
  }
}

inline std::string to_string(Decision d) { return d == Decision::Play ? "PLAY" : "DECLINE"; }

/// Parameters of one betting session: N box pairs, a win threshold on the
/// empirical CHSH statistic, the payout schedule, and the mechanism that
/// fabricates the boxes.
struct GameConfig {
  std::int64_t n_pairs = 10'000;
  double threshold = 2.8;
  double win_payout = 1'000'000.0;
  double decline_payout = 1'000.0;
  double lose_payout = 0.0;
  Mechanism mechanism = Mechanism::Quantum;
  std::uint64_t seed = kDefaultSeed;

  /// Box behaviour under the LHV mechanism. Defaults to the best
  /// deterministic strategy (CHSH value exactly 2).
  LHVModel box_model = LHVModel::from_strategy({1, 1, 1, 1});
  /// Box behaviour under the quantum and superdeterministic mechanisms.
  CHSHConfiguration quantum_config = tsirelson_config();

  void validate() const {
    if (n_pairs < 1) throw SettingsMismatch("n_pairs must be at least 1");
    if (!(threshold > -4.0 && threshold < 4.0)) {
      throw InvalidThreshold("threshold must lie strictly inside (-4, 4)");
    }
  }
};

/// A participant: either an evidential bettor carrying a model of the box
/// statistics, or a causal bettor carrying a credence epsilon on locally
/// factorized hypotheses plus the decision semantics to apply to it.
struct Agent {
  Theory theory = Theory::BDT;
  std::string name = "bdt";

  // CDT parameters.
  double epsilon = 0.0;
  CdtSemantics semantics = CdtSemantics::ExpectationRule;

  // BDT parameters: the agent's evidential correlators, cell order RR RG GR GG.
  std::array<double, 4> evidential_correlators{};

  static Agent cdt(double epsilon, CdtSemantics semantics = CdtSemantics::ExpectationRule) {
    if (!(epsilon >= 0.0 && epsilon <= 1.0)) {
      throw InvalidCredence("epsilon = " + std::to_string(epsilon) + " is outside [0,1]");
    }
    Agent a;
    a.theory = Theory::CDT;
    a.name = semantics == CdtSemantics::ExpectationRule ? "cdt-expectation" : "cdt-concentration";
    a.epsilon = epsilon;
    a.semantics = semantics;
    return a;
  }

  /// Evidential agent whose model matches the given joint model (the
  /// saturating quantum configuration by default).
  template <JointModelLike M>
  static Agent bdt(const M& model) {
    Agent a;
    a.theory = Theory::BDT;
    a.name = "bdt";
    a.evidential_correlators = correlators_of_model(model);
    return a;
  }

  static Agent bdt() { return bdt(tsirelson_config()); }
};

/// Per-session transcript: the pressed colours, the outcome products, the
/// per-cell statistics with the empty-cell-counts-as-zero rule, and the
/// resulting decision and payout.
struct SessionRecord {
  std::vector<std::pair<Colour, Colour>> settings;
  std::vector<int> products;  // +-1 per pair
  std::array<std::int64_t, 4> cell_counts{};
  std::array<double, 4> cell_means{};
  double f_statistic = 0.0;
  Decision decision = Decision::Decline;
  bool won = false;
  double payout = 0.0;
};

/// Per-cell means and the CHSH combination of an observed transcript. A cell
/// that received no pairs contributes zero.
struct ChshEstimate {
  std::array<std::int64_t, 4> cell_counts{};
  std::array<double, 4> cell_means{};
  double f_statistic = 0.0;
};

inline ChshEstimate chsh_statistic(const std::vector<std::pair<Colour, Colour>>& settings,
                                   const std::vector<int>& products) {
  if (settings.size() != products.size()) {
    throw SettingsMismatch("settings and products lengths differ");
  }
  ChshEstimate est;
  std::array<double, 4> sums{};
  for (std::size_t i = 0; i < settings.size(); ++i) {
    const std::size_t c = cell_index(settings[i].first, settings[i].second);
    est.cell_counts[c] += 1;
    sums[c] += products[i];
  }
  for (std::size_t c = 0; c < 4; ++c) {
    est.cell_means[c] = est.cell_counts[c] == 0
                            ? 0.0
                            : sums[c] / static_cast<double>(est.cell_counts[c]);
  }
  est.f_statistic = chsh_combination(est.cell_means);
  return est;
}

/// Produces the outcome pair of every box pair for the given button presses.
/// LHV boxes draw a hidden state per pair and answer from its response
/// tables; quantum and superdeterministic boxes sample the Born joint at the
/// pair's settings (the factory that "knows" the buttons is operationally a
/// setting-conditioned sampler).
inline std::vector<std::pair<int, int>> fabricate_boxes(
    const GameConfig& config, const std::vector<std::pair<Colour, Colour>>& settings,
    SplitMixRng& rng) {
  config.validate();
  if (static_cast<std::int64_t>(settings.size()) != config.n_pairs) {
    throw SettingsMismatch("expected " + std::to_string(config.n_pairs) + " setting pairs, got " +
                           std::to_string(settings.size()));
  }
  std::vector<std::pair<int, int>> outcomes;
  outcomes.reserve(settings.size());

  if (config.mechanism == Mechanism::LHV) {
    const auto& model = config.box_model;
    const std::size_t n_hidden = model.hidden_prior.size();
    // Cache P(+1) per hidden state and colour for both sides.
    std::vector<std::array<double, 2>> a_plus(n_hidden), b_plus(n_hidden);
    for (std::size_t k = 0; k < n_hidden; ++k) {
      const auto& hidden = model.hidden_prior.support()[k];
      for (std::size_t c = 0; c < 2; ++c) {
        const auto& colour = detail::colour_condition(kColours[c]);
        a_plus[k][c] = model.response_for(Side::A, hidden).row(colour).mass()[0];
        b_plus[k][c] = model.response_for(Side::B, hidden).row(colour).mass()[0];
      }
    }
    for (const auto& [ca, cb] : settings) {
      const std::size_t k = rng.sample_index(model.hidden_prior.mass());
      const int a = rng.sample_pm(a_plus[k][ca == Colour::Green ? 1 : 0]);
      const int b = rng.sample_pm(b_plus[k][cb == Colour::Green ? 1 : 0]);
      outcomes.emplace_back(a, b);
    }
    return outcomes;
  }

  // Quantum / superdeterministic: per-cell Born joints, sampled directly.
  std::array<std::vector<double>, 4> cell_mass;
  for (std::size_t c = 0; c < 4; ++c) {
    cell_mass[c] = config.quantum_config.joint(kCells[c].first, kCells[c].second).mass();
  }
  for (const auto& [ca, cb] : settings) {
    const std::size_t idx = rng.sample_index(cell_mass[cell_index(ca, cb)]);
    const auto& label = pair_support()[idx];
    outcomes.emplace_back(pair_a_value(label), pair_b_value(label));
  }
  return outcomes;
}

/// Standard normal upper-tail-complement CDF.
inline double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::numbers::sqrt2); }

/// Monte Carlo standard error of the CHSH statistic for N pairs split evenly
/// across the four cells, under the given model correlators.
inline double chsh_standard_error(const std::array<double, 4>& correlators,
                                  std::int64_t n_pairs) {
  const double per_cell = static_cast<double>(n_pairs) / 4.0;
  double variance = 0.0;
  for (double e : correlators) variance += (1.0 - e * e) / per_cell;
  return std::sqrt(variance);
}

/// The causal bettor's choice. The expectation rule compares the weighted
/// causal expectation of the statistic against the threshold, treating the
/// session as long enough that deviations from it can be neglected. The
/// concentration variant instead concentrates per hypothesis class: the
/// factorized class pins the statistic at 2 and the quantum-compatible class
/// at 2 sqrt(2), so the win probability becomes the credence on whichever
/// classes clear the threshold.
inline Decision cdt_decision(const Agent& agent, const GameConfig& config) {
  config.validate();
  if (agent.theory != Theory::CDT) throw Error("cdt_decision requires a CDT agent");
  if (agent.semantics == CdtSemantics::ExpectationRule) {
    return mixture_chsh_bound(agent.epsilon) > config.threshold ? Decision::Play
                                                                : Decision::Decline;
  }
  const double p_win = agent.epsilon * (2.0 > config.threshold ? 1.0 : 0.0) +
                       (1.0 - agent.epsilon) * (kQuantumChshMax > config.threshold ? 1.0 : 0.0);
  return p_win * config.win_payout > config.decline_payout ? Decision::Play
                                                           : Decision::Decline;
}

/// The evidential bettor's choice: expected utility of playing under a
/// normal approximation to the empirical statistic around the agent's model
/// mean, clamped to certainty beyond six standard errors.
inline Decision bdt_decision(const Agent& agent, const GameConfig& config) {
  config.validate();
  if (agent.theory != Theory::BDT) throw Error("bdt_decision requires a BDT agent");
  const double mean = chsh_combination(agent.evidential_correlators);
  const double se = chsh_standard_error(agent.evidential_correlators, config.n_pairs);
  double p_win;
  if (se <= 0.0) {
    p_win = mean > config.threshold ? 1.0 : 0.0;
  } else {
    const double z = (mean - config.threshold) / se;
    p_win = z > 6.0 ? 1.0 : (z < -6.0 ? 0.0 : normal_cdf(z));
  }
  const double play_eu = p_win * config.win_payout + (1.0 - p_win) * config.lose_payout;
  return play_eu > config.decline_payout ? Decision::Play : Decision::Decline;
}

inline Decision decide(const Agent& agent, const GameConfig& config) {
  return agent.theory == Theory::CDT ? cdt_decision(agent, config)
                                     : bdt_decision(agent, config);
}

/// One full session: the agent decides; a declined game pays the risk-free
/// amount with no boxes pressed; a played game draws both participants'
/// colours uniformly at random, fabricates the boxes, and pays on the
/// empirical statistic. Bit-identical given (config, agent, seed).
inline SessionRecord play_session(const GameConfig& config, const Agent& agent,
                                  std::uint64_t seed) {
  config.validate();
  SessionRecord record;
  record.decision = decide(agent, config);
  if (record.decision == Decision::Decline) {
    record.payout = config.decline_payout;
    return record;
  }
  SplitMixRng rng(seed);
  record.settings.reserve(config.n_pairs);
  for (std::int64_t i = 0; i < config.n_pairs; ++i) {
    const Colour alice = rng.next_bool() ? Colour::Green : Colour::Red;
    const Colour charlie = rng.next_bool() ? Colour::Green : Colour::Red;
    record.settings.emplace_back(alice, charlie);
  }
  const auto outcomes = fabricate_boxes(config, record.settings, rng);
  record.products.reserve(outcomes.size());
  for (const auto& [a, b] : outcomes) record.products.push_back(a * b);
  const auto est = chsh_statistic(record.settings, record.products);
  record.cell_counts = est.cell_counts;
  record.cell_means = est.cell_means;
  record.f_statistic = est.f_statistic;
  record.won = record.f_statistic > config.threshold;
  record.payout = record.won ? config.win_payout : config.lose_payout;
  return record;
}

inline SessionRecord play_session(const GameConfig& config, const Agent& agent) {
  return play_session(config, agent, config.seed);
}

/// Aggregated results for one agent across a tournament.
struct AgentLedger {
  std::string agent;
  std::vector<std::uint64_t> session_seeds;
  std::vector<Decision> decisions;
  std::vector<double> f_statistics;
  std::vector<double> payouts;

  double total_payout() const {
    double total = 0.0;
    for (double p : payouts) total += p;
    return total;
  }
  double mean_payout() const {
    return payouts.empty() ? 0.0 : total_payout() / static_cast<double>(payouts.size());
  }
  std::int64_t count(Decision d) const {
    std::int64_t n = 0;
    for (Decision x : decisions) n += (x == d);
    return n;
  }
  std::int64_t win_count(const GameConfig& config) const {
    std::int64_t n = 0;
    for (std::size_t i = 0; i < decisions.size(); ++i) {
      n += (decisions[i] == Decision::Play && payouts[i] == config.win_payout);
    }
    return n;
  }
  double win_rate() const {
    std::int64_t plays = count(Decision::Play);
    if (plays == 0) return 0.0;
    std::int64_t wins = 0;
    for (std::size_t i = 0; i < decisions.size(); ++i) {
      wins += (decisions[i] == Decision::Play && payouts[i] > 0.0);
    }
    return static_cast<double>(wins) / static_cast<double>(plays);
  }
};

struct BankrollLedger {
  std::vector<AgentLedger> agents;
};

/// Runs n_sessions independent sessions per agent. Session seeds are derived
/// from the master seed by (agent index, session index), so reruns are
/// bit-identical and sessions could be played in any order.
inline BankrollLedger run_tournament(
    const GameConfig& config, const std::vector<Agent>& agents, std::int64_t n_sessions,
    const std::function<void(const Agent&, std::int64_t, const SessionRecord&)>& sink = {}) {
  config.validate();
  if (n_sessions < 1) throw SettingsMismatch("n_sessions must be at least 1");
  BankrollLedger ledger;
  for (std::size_t ai = 0; ai < agents.size(); ++ai) {
    AgentLedger agent_ledger;
    agent_ledger.agent = agents[ai].name;
    for (std::int64_t s = 0; s < n_sessions; ++s) {
      const std::uint64_t seed = derive_seed(config.seed, ai, static_cast<std::uint64_t>(s));
      const SessionRecord record = play_session(config, agents[ai], seed);
      agent_ledger.session_seeds.push_back(seed);
      agent_ledger.decisions.push_back(record.decision);
      agent_ledger.f_statistics.push_back(record.f_statistic);
      agent_ledger.payouts.push_back(record.payout);
      if (sink) sink(agents[ai], s, record);
    }
    ledger.agents.push_back(std::move(agent_ledger));
  }
  return ledger;
}

/// A box factory that correlates its hidden state with the buttons to be
/// pressed: per setting pair, deterministic strategies are weighted so the
/// observable joint reproduces the given configuration's statistics. The
/// unconditional prior is uniform, so the statistical-independence check
/// fails, while each response stays locally determined.
inline LHVModel superdeterministic_factory(const CHSHConfiguration& config) {
  const auto strategies = enumerate_deterministic();
  std::vector<std::string> labels;
  for (const auto& s : strategies) {
    labels.push_back(std::string("a") + (s.a_red > 0 ? "+" : "-") + (s.a_green > 0 ? "+" : "-") +
                     "b" + (s.b_red > 0 ? "+" : "-") + (s.b_green > 0 ? "+" : "-"));
  }
  LHVModel model = LHVModel::mixture_of_strategies(
      strategies, FiniteDistribution(labels, std::vector<double>(16, 1.0 / 16.0)));
  std::array<FiniteDistribution, 4> per_cell = {
      model.hidden_prior, model.hidden_prior, model.hidden_prior, model.hidden_prior};
  for (std::size_t c = 0; c < 4; ++c) {
    const auto joint = config.joint(kCells[c].first, kCells[c].second);
    std::vector<double> mass(strategies.size());
    for (std::size_t k = 0; k < strategies.size(); ++k) {
      const auto label = pair_label(strategies[k].a_value(kCells[c].first),
                                    strategies[k].b_value(kCells[c].second));
      // Four strategies share each (a, b) value pair at a fixed cell.
      mass[k] = joint.mass_of(label) / 4.0;
    }
    per_cell[c] = FiniteDistribution(labels, mass);
  }
  model.setting_dependent_prior = std::move(per_cell);
  return model;
}

}  // namespace bellcomb
