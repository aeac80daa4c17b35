#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "bellcomb/conditional_table.hpp"
#include "bellcomb/distribution.hpp"
#include "bellcomb/errors.hpp"

namespace bellcomb {

/// Tolerance for argmax ties and screening checks.
inline constexpr double kDecisionTol = 1e-9;

enum class Theory { BDT, CDT };

inline std::string to_string(Theory t) { return t == Theory::BDT ? "BDT" : "CDT"; }

/// A set of dependency hypotheses: a prior over hypothesis labels together
/// with one conditional outcome table per hypothesis. The optional
/// action-conditioned prior is only used for the evidential-decomposition
/// self-check, never for causal probabilities.
struct DependencyHypothesisSet {
  FiniteDistribution prior;                                 // over hypothesis labels
  std::vector<std::pair<std::string, ConditionalTable>> tables;  // label -> P(O|A;K)
  bool outcome_outside_influence = false;
  std::optional<ConditionalTable> joint_prior_given_action;  // action -> dist over labels

  const ConditionalTable& table_for(std::string_view hypothesis) const {
    for (const auto& [label, table] : tables) {
      if (label == hypothesis) return table;
    }
    throw UnknownLabel("hypothesis '" + std::string(hypothesis) + "' has no table");
  }
};

/// A finite decision problem: actions, outcomes, a utility for every
/// (action, outcome) pair, the agent's conditional probabilities, and an
/// optional hypothesis set for causal evaluation.
class DecisionProblem {
 public:
  DecisionProblem(std::vector<std::string> actions, std::vector<std::string> outcomes,
                  std::vector<std::vector<double>> utility, ConditionalTable evidential,
                  std::optional<DependencyHypothesisSet> hypotheses = std::nullopt)
      : actions_(std::move(actions)),
        outcomes_(std::move(outcomes)),
        utility_(std::move(utility)),
        evidential_(std::move(evidential)),
        hypotheses_(std::move(hypotheses)) {
    if (utility_.size() != actions_.size()) {
      throw MissingValue("utility row count differs from action count");
    }
    for (const auto& row : utility_) {
      if (row.size() != outcomes_.size()) {
        throw MissingValue("utility column count differs from outcome count");
      }
    }
    if (evidential_.conditions() != actions_) {
      throw SupportMismatch("evidential table conditions differ from action list");
    }
    if (evidential_.outcome_support() != outcomes_) {
      throw SupportMismatch("evidential table outcomes differ from outcome list");
    }
    if (hypotheses_) {
      for (const auto& [label, table] : hypotheses_->tables) {
        if (table.conditions() != actions_ || table.outcome_support() != outcomes_) {
          throw SupportMismatch("hypothesis '" + label +
                                "' table does not match the problem's supports");
        }
      }
    }
  }

  const std::vector<std::string>& actions() const { return actions_; }
  const std::vector<std::string>& outcomes() const { return outcomes_; }
  const ConditionalTable& evidential() const { return evidential_; }
  const std::optional<DependencyHypothesisSet>& hypotheses() const { return hypotheses_; }

  std::size_t action_index(std::string_view action) const {
    for (std::size_t i = 0; i < actions_.size(); ++i) {
      if (actions_[i] == action) return i;
    }
    throw UnknownAction("action '" + std::string(action) + "'");
  }

  std::size_t outcome_index(std::string_view outcome) const {
    for (std::size_t j = 0; j < outcomes_.size(); ++j) {
      if (outcomes_[j] == outcome) return j;
    }
    throw UnknownOutcome("outcome '" + std::string(outcome) + "'");
  }

  double utility(std::string_view action, std::string_view outcome) const {
    return utility_[action_index(action)][outcome_index(outcome)];
  }

  /// Copy with a transformed utility matrix (used by invariance tests).
  DecisionProblem with_utility(std::vector<std::vector<double>> utility) const {
    return DecisionProblem(actions_, outcomes_, std::move(utility), evidential_, hypotheses_);
  }

  const std::vector<std::vector<double>>& utility_matrix() const { return utility_; }

 private:
  std::vector<std::string> actions_;
  std::vector<std::string> outcomes_;
  std::vector<std::vector<double>> utility_;  // actions x outcomes
  ConditionalTable evidential_;
  std::optional<DependencyHypothesisSet> hypotheses_;
};

/// Evidential expected utility of an action: sum_j P(O_j|A) u(A, O_j).
inline double evidential_eu(const DecisionProblem& problem, std::string_view action) {
  const std::size_t i = problem.action_index(action);
  const auto& row = problem.evidential().row(problem.actions()[i]);
  double acc = 0.0;
  for (std::size_t j = 0; j < problem.outcomes().size(); ++j) {
    acc += row.mass()[j] * problem.utility_matrix()[i][j];
  }
  return acc;
}

/// Causal probability of an outcome given an action: the hypothesis-prior
/// average of the per-hypothesis conditionals. The unconditional prior is
/// used always, regardless of any correlation between hypotheses and actions.
inline double causal_probability(const DependencyHypothesisSet& hyps,
                                 std::string_view action, std::string_view outcome) {
  double acc = 0.0;
  for (std::size_t k = 0; k < hyps.prior.size(); ++k) {
    const auto& table = hyps.table_for(hyps.prior.support()[k]);
    if (!table.has_condition(action)) {
      throw UnknownAction("action '" + std::string(action) + "'");
    }
    const auto& row = table.row(action);
    if (!row.has_label(outcome)) {
      throw UnknownOutcome("outcome '" + std::string(outcome) + "'");
    }
    acc += hyps.prior.mass()[k] * row.mass_of(outcome);
  }
  return acc;
}

/// Causal expected utility of an action: sum_j P_c(O_j|A) u(A, O_j).
inline double causal_eu(const DecisionProblem& problem, std::string_view action) {
  if (!problem.hypotheses()) {
    throw NoHypotheses("causal_eu requires a dependency hypothesis set");
  }
  const std::size_t i = problem.action_index(action);
  const auto& hyps = *problem.hypotheses();
  double acc = 0.0;
  for (std::size_t j = 0; j < problem.outcomes().size(); ++j) {
    acc += causal_probability(hyps, problem.actions()[i], problem.outcomes()[j]) *
           problem.utility_matrix()[i][j];
  }
  return acc;
}

/// Self-check for scenario authors: the largest absolute gap between the
/// evidential table and its hypothesis decomposition under the supplied
/// action-conditioned prior. Zero when the scenario is internally consistent.
inline double evidential_decomposition_residual(const DecisionProblem& problem) {
  if (!problem.hypotheses()) {
    throw NoHypotheses("decomposition residual requires a dependency hypothesis set");
  }
  const auto& hyps = *problem.hypotheses();
  if (!hyps.joint_prior_given_action) {
    throw NoJointPrior("decomposition residual requires an action-conditioned prior");
  }
  double worst = 0.0;
  for (const auto& action : problem.actions()) {
    const auto& prior_row = hyps.joint_prior_given_action->row(action);
    for (const auto& outcome : problem.outcomes()) {
      double mixture = 0.0;
      for (std::size_t k = 0; k < hyps.prior.size(); ++k) {
        const auto& label = hyps.tables[k].first;
        mixture += prior_row.mass_of(label) *
                   hyps.tables[k].second.probability(action, outcome);
      }
      const double evidential = problem.evidential().probability(action, outcome);
      worst = std::max(worst, std::abs(evidential - mixture));
    }
  }
  return worst;
}

/// One screening failure: under `hypothesis`, the probability of `outcome`
/// differs across the two named actions by more than the tolerance.
struct ScreeningViolation {
  std::string hypothesis;
  std::string outcome;
  std::string action_a;
  std::string action_b;
  double gap = 0.0;
};

/// Checks that every hypothesis renders outcome probabilities independent of
/// the action. Violations are reported as data so that deliberately
/// non-screened hypothesis sets can still be constructed and inspected.
inline std::vector<ScreeningViolation> validate_screening(
    const DependencyHypothesisSet& hyps, double tol = kDecisionTol) {
  std::vector<ScreeningViolation> violations;
  for (const auto& [label, table] : hyps.tables) {
    const auto& actions = table.conditions();
    for (std::size_t a = 0; a < actions.size(); ++a) {
      for (std::size_t b = a + 1; b < actions.size(); ++b) {
        for (const auto& outcome : table.outcome_support()) {
          const double gap = std::abs(table.probability(actions[a], outcome) -
                                      table.probability(actions[b], outcome));
          if (gap > tol) {
            violations.push_back({label, outcome, actions[a], actions[b], gap});
          }
        }
      }
    }
  }
  return violations;
}

/// The result of maximizing one of the two expected utilities: every argmax
/// (ties resolved at kDecisionTol) plus the full value table.
struct Prescription {
  Theory theory;
  std::vector<std::string> best_actions;   // all argmax ties, in action order
  std::map<std::string, double> values;

  /// Deterministic single choice: lexicographically first best action.
  const std::string& best_action() const {
    return *std::min_element(best_actions.begin(), best_actions.end());
  }
};

inline Prescription prescribe(const DecisionProblem& problem, Theory theory) {
  Prescription result;
  result.theory = theory;
  double best = -std::numeric_limits<double>::infinity();
  for (const auto& action : problem.actions()) {
    const double value = theory == Theory::BDT ? evidential_eu(problem, action)
                                               : causal_eu(problem, action);
    result.values[action] = value;
    best = std::max(best, value);
  }
  for (const auto& action : problem.actions()) {
    if (result.values[action] >= best - kDecisionTol) {
      result.best_actions.push_back(action);
    }
  }
  return result;
}

/// A problem is Newcomb-type exactly when the two theories disagree about
/// which actions are best.
inline bool is_newcomb_type(const DecisionProblem& problem) {
  auto bdt = prescribe(problem, Theory::BDT).best_actions;
  auto cdt = prescribe(problem, Theory::CDT).best_actions;
  std::sort(bdt.begin(), bdt.end());
  std::sort(cdt.begin(), cdt.end());
  return bdt != cdt;
}

}  // namespace bellcomb
