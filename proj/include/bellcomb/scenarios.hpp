#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "bellcomb/decision.hpp"
#include "bellcomb/errors.hpp"

namespace bellcomb::scenarios {

/// A named, ready-to-evaluate decision problem. Notes record where each
/// number comes from.
struct ScenarioSpec {
  std::string name;
  DecisionProblem problem;
  std::vector<std::string> notes;
};

namespace detail {
inline void require_probability(double p, const std::string& name) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw InvalidProbability(name + " = " + std::to_string(p) + " is outside [0,1]");
  }
}
}  // namespace detail

/// Two boxes, one predictor. `p_one` / `p_two` are the agent's conditional
/// probabilities that the closed box holds the million given one-boxing /
/// two-boxing; `box_full_prior` is the hypothesis prior that the money is
/// already there. Payoffs are the classic 1,000,000 / 0 / 1,001,000 / 1,000.
inline ScenarioSpec newcomb_classic(double p_one, double p_two,
                                    double box_full_prior = 0.5) {
  detail::require_probability(p_one, "p_one");
  detail::require_probability(p_two, "p_two");
  detail::require_probability(box_full_prior, "box_full_prior");

  const std::vector<std::string> actions = {"one_box", "two_box"};
  const std::vector<std::string> outcomes = {"million", "empty"};
  const std::vector<std::vector<double>> utility = {
      {1'000'000.0, 0.0},        // one_box: million found / nothing
      {1'001'000.0, 1'000.0}};   // two_box: million + 1000 / 1000 only

  auto evidential = ConditionalTable::from_rows(actions, outcomes,
                                                {{p_one, 1.0 - p_one},
                                                 {p_two, 1.0 - p_two}});

  // Hypotheses fix the box contents, so their rows are action-independent.
  const std::vector<std::string> hyp_labels = {"box_full", "box_empty"};
  auto full_table = ConditionalTable::from_rows(actions, outcomes,
                                                {{1.0, 0.0}, {1.0, 0.0}});
  auto empty_table = ConditionalTable::from_rows(actions, outcomes,
                                                 {{0.0, 1.0}, {0.0, 1.0}});
  DependencyHypothesisSet hyps{
      FiniteDistribution(hyp_labels, {box_full_prior, 1.0 - box_full_prior}),
      {{"box_full", std::move(full_table)}, {"box_empty", std::move(empty_table)}},
      /*outcome_outside_influence=*/true,
      ConditionalTable::from_rows(actions, hyp_labels,
                                  {{p_one, 1.0 - p_one}, {p_two, 1.0 - p_two}})};

  ScenarioSpec spec{
      "newcomb",
      DecisionProblem(actions, outcomes, utility, std::move(evidential), std::move(hyps)),
      {"payoffs 1,000,000 / 0 / 1,001,000 / 1,000: classic two-box payout matrix",
       "p_one, p_two: agent's conditional credences in the predictor's accuracy",
       "box_full_prior: hypothesis prior over the already-settled box contents"}};
  return spec;
}

/// Smoking gene: the correlation between smoking and cancer is carried
/// entirely by a common-cause gene. Conditional rows (0.2, 0.8) and
/// (0.02, 0.98); payoffs -99 / 1 / -100 / 0. The hypothesis tables use the
/// canonical completion P(cancer|gene)=1, P(cancer|no gene)=0, and the gene
/// prior is a free parameter: the causal prescription does not depend on it.
inline ScenarioSpec smoking_gene(double gene_prior = 0.5) {
  detail::require_probability(gene_prior, "gene_prior");

  const std::vector<std::string> actions = {"smoke", "abstain"};
  const std::vector<std::string> outcomes = {"cancer", "no_cancer"};
  const std::vector<std::vector<double>> utility = {{-99.0, 1.0}, {-100.0, 0.0}};

  auto evidential = ConditionalTable::from_rows(actions, outcomes,
                                                {{0.2, 0.8}, {0.02, 0.98}});

  const std::vector<std::string> hyp_labels = {"gene", "no_gene"};
  auto gene_table = ConditionalTable::from_rows(actions, outcomes,
                                                {{1.0, 0.0}, {1.0, 0.0}});
  auto no_gene_table = ConditionalTable::from_rows(actions, outcomes,
                                                   {{0.0, 1.0}, {0.0, 1.0}});
  DependencyHypothesisSet hyps{
      FiniteDistribution(hyp_labels, {gene_prior, 1.0 - gene_prior}),
      {{"gene", std::move(gene_table)}, {"no_gene", std::move(no_gene_table)}},
      /*outcome_outside_influence=*/true,
      // Gene incidence: 20% among smokers, 2% among nonsmokers.
      ConditionalTable::from_rows(actions, hyp_labels, {{0.2, 0.8}, {0.02, 0.98}})};

  ScenarioSpec spec{
      "smoking-gene",
      DecisionProblem(actions, outcomes, utility, std::move(evidential), std::move(hyps)),
      {"conditional rows (0.2, 0.8) and (0.02, 0.98): stated gene incidence",
       "payoffs (-99, 1, -100, 0): smoking is worth +1, cancer -100",
       "hypothesis completion: gene makes cancer certain, its absence impossible",
       "gene_prior: free parameter; CDT's prescription is insensitive to it"}};
  return spec;
}

/// Many-closed-boxes variant. One of `n_boxes` closed boxes holds the
/// million; an open box holds 1,000 on the side. By symmetry over which box
/// is picked, the problem reduces to two representative actions and a
/// two-valued quotient of the prize location ("in the chosen box" or not),
/// which keeps evaluation closed-form at n = 10^6. `predictor_accuracy` is
/// the probability the chosen box holds the prize given the agent leaves the
/// open box alone; a pick-the-open-box-too agent faces a uniformly placed
/// prize instead.
inline ScenarioSpec million_box(long long n_boxes, double predictor_accuracy) {
  if (n_boxes < 2) throw Error("million_box requires at least 2 closed boxes");
  detail::require_probability(predictor_accuracy, "predictor_accuracy");
  const double uniform_hit = 1.0 / static_cast<double>(n_boxes);

  const std::vector<std::string> actions = {"closed_only", "closed_plus_open"};
  const std::vector<std::string> outcomes = {"prize_in_chosen", "prize_elsewhere"};
  const std::vector<std::vector<double>> utility = {
      {1'000'000.0, 0.0},
      {1'001'000.0, 1'000.0}};

  auto evidential = ConditionalTable::from_rows(
      actions, outcomes,
      {{predictor_accuracy, 1.0 - predictor_accuracy},
       {uniform_hit, 1.0 - uniform_hit}});

  // The prize location is settled; hypotheses are the two-valued quotient of
  // "which box holds it" relative to the chosen box, uniform over boxes.
  const std::vector<std::string> hyp_labels = {"prize_in_chosen", "prize_elsewhere"};
  auto in_table = ConditionalTable::from_rows(actions, outcomes,
                                              {{1.0, 0.0}, {1.0, 0.0}});
  auto out_table = ConditionalTable::from_rows(actions, outcomes,
                                               {{0.0, 1.0}, {0.0, 1.0}});
  DependencyHypothesisSet hyps{
      FiniteDistribution(hyp_labels, {uniform_hit, 1.0 - uniform_hit}),
      {{"prize_in_chosen", std::move(in_table)},
       {"prize_elsewhere", std::move(out_table)}},
      /*outcome_outside_influence=*/true,
      ConditionalTable::from_rows(actions, hyp_labels,
                                  {{predictor_accuracy, 1.0 - predictor_accuracy},
                                   {uniform_hit, 1.0 - uniform_hit}})};

  ScenarioSpec spec{
      "million-box",
      DecisionProblem(actions, outcomes, utility, std::move(evidential), std::move(hyps)),
      {"n_boxes: number of closed boxes; prize placed in exactly one",
       "predictor_accuracy: P(chosen box holds prize | closed_only); explicit parameter",
       "two_box payoff adds the open box's 1,000",
       "actions and hypotheses are the symmetry quotient over box identity"}};
  return spec;
}

/// Payoff matrix for the two-agent box game: Alice's explicit take
/// (a1 = closed box only, a2 = both) against the prediction outcome
/// (b1 = predicted a1, b2 = predicted a2).
inline std::map<std::pair<std::string, std::string>, double> two_agent_newcomb_payoffs() {
  return {{{"a1", "b1"}, 1'000'000.0},
          {{"a1", "b2"}, 0.0},
          {{"a2", "b1"}, 1'001'000.0},
          {{"a2", "b2"}, 1'000.0}};
}

/// Builder lookup used by the command-line front end.
inline ScenarioSpec by_name(const std::string& name,
                            const std::map<std::string, double>& params) {
  auto get = [&params](const std::string& key, double fallback) {
    const auto it = params.find(key);
    return it == params.end() ? fallback : it->second;
  };
  if (name == "newcomb") {
    return newcomb_classic(get("p1", 0.99), get("p2", 0.01), get("prior", 0.5));
  }
  if (name == "smoking-gene") {
    return smoking_gene(get("gene-prior", 0.5));
  }
  if (name == "million-box") {
    return million_box(static_cast<long long>(get("boxes", 1'000'000.0)),
                       get("accuracy", 0.999));
  }
  throw UnknownLabel("scenario '" + name + "'");
}

}  // namespace bellcomb::scenarios
