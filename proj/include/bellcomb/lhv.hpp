#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "bellcomb/conditional_table.hpp"
#include "bellcomb/correlations.hpp"
#include "bellcomb/distribution.hpp"
#include "bellcomb/errors.hpp"

namespace bellcomb {

/// One fixed assignment of +-1 values to both buttons on both sides.
/// Exactly 16 of these exist; each pins the CHSH combination to +-2.
struct DeterministicStrategy {
  int a_red = 1;
  int a_green = 1;
  int b_red = 1;
  int b_green = 1;

  int a_value(Colour c) const { return c == Colour::Red ? a_red : a_green; }
  int b_value(Colour c) const { return c == Colour::Red ? b_red : b_green; }

  /// Closed-form CHSH value a_r(b_r + b_g) + a_g(b_r - b_g).
  double chsh_value() const {
    return a_red * (b_red + b_green) + a_green * (b_red - b_green);
  }

  FiniteDistribution joint(Colour a, Colour b) const {
    return FiniteDistribution::point_mass(pair_label(a_value(a), b_value(b)),
                                          pair_support());
  }
};

/// Enumerates all 16 sign assignments in a fixed order.
inline std::vector<DeterministicStrategy> enumerate_deterministic() {
  std::vector<DeterministicStrategy> all;
  all.reserve(16);
  for (int ar : {1, -1})
    for (int ag : {1, -1})
      for (int br : {1, -1})
        for (int bg : {1, -1}) all.push_back({ar, ag, br, bg});
  return all;
}

/// Brute-force maximum of the CHSH combination over deterministic strategies.
/// Serves as the oracle that bounds every locally factorized model.
inline double lhv_chsh_max() {
  double best = -4.0;
  for (const auto& s : enumerate_deterministic()) best = std::max(best, s.chsh_value());
  return best;
}

/// A locally factorized hidden-variable model: a prior over hidden states and,
/// per hidden state, independent response tables for each side. The optional
/// setting-dependent prior models factories that correlate the hidden state
/// with the buttons; it is carried as data for the independence check but is
/// never consulted by the factorized joint.
struct LHVModel {
  FiniteDistribution hidden_prior;  // over hidden-state labels
  std::vector<std::pair<std::string, ConditionalTable>> response_a;  // label -> P(a|colour)
  std::vector<std::pair<std::string, ConditionalTable>> response_b;  // label -> P(b|colour)
  std::optional<std::array<FiniteDistribution, 4>> setting_dependent_prior;  // per cell

  const ConditionalTable& response_for(Side side, std::string_view hidden) const {
    const auto& list = side == Side::A ? response_a : response_b;
    for (const auto& [label, table] : list) {
      if (label == hidden) return table;
    }
    throw UnknownLabel("hidden state '" + std::string(hidden) + "' has no response table");
  }

  /// Wraps a deterministic strategy as a single-hidden-state model.
  static LHVModel from_strategy(const DeterministicStrategy& s) {
    auto side_table = [](int red_value, int green_value) {
      auto row = [](int v) {
        return std::vector<double>{v > 0 ? 1.0 : 0.0, v > 0 ? 0.0 : 1.0};
      };
      return ConditionalTable::from_rows({"red", "green"}, pm_support(),
                                         {row(red_value), row(green_value)});
    };
    LHVModel model{FiniteDistribution({"s0"}, {1.0}), {}, {}, std::nullopt};
    model.response_a.emplace_back("s0", side_table(s.a_red, s.a_green));
    model.response_b.emplace_back("s0", side_table(s.b_red, s.b_green));
    return model;
  }

  /// Mixture of deterministic strategies under the given weights (one per
  /// strategy, in enumerate_deterministic() order when used that way).
  static LHVModel mixture_of_strategies(const std::vector<DeterministicStrategy>& strategies,
                                        const FiniteDistribution& weights) {
    if (weights.size() != strategies.size()) {
      throw SupportMismatch("one weight per strategy required");
    }
    LHVModel model{weights, {}, {}, std::nullopt};
    for (std::size_t k = 0; k < strategies.size(); ++k) {
      auto single = from_strategy(strategies[k]);
      model.response_a.emplace_back(weights.support()[k],
                                    single.response_a.front().second);
      model.response_b.emplace_back(weights.support()[k],
                                    single.response_b.front().second);
    }
    return model;
  }
};

namespace detail {
inline const std::string& colour_condition(Colour c) {
  static const std::string red = "red", green = "green";
  return c == Colour::Red ? red : green;
}
}  // namespace detail

/// Joint outcome distribution of a locally factorized model: for each hidden
/// state, the product of the two sides' responses, averaged under the
/// unconditional hidden prior. Any setting-dependent prior is ignored here by
/// definition of the factorized form.
inline FiniteDistribution lhv_joint(const LHVModel& model, Setting a, Setting b) {
  if (a.side != Side::A || b.side != Side::B) {
    throw SettingsMismatch("lhv_joint expects an A-side and a B-side setting");
  }
  std::vector<FiniteDistribution> components;
  components.reserve(model.hidden_prior.size());
  for (const auto& hidden : model.hidden_prior.support()) {
    const auto& ra = model.response_for(Side::A, hidden).row(detail::colour_condition(a.colour));
    const auto& rb = model.response_for(Side::B, hidden).row(detail::colour_condition(b.colour));
    std::array<double, 4> mass{};
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t j = 0; j < 2; ++j) mass[2 * i + j] = ra.mass()[i] * rb.mass()[j];
    components.push_back(make_pair_distribution(mass));
  }
  return mix(components, model.hidden_prior);
}

/// Causal joint for two agents whose outcomes can only depend on their own
/// choices: hypothesis-prior average of the per-hypothesis response products.
/// Same functional form as lhv_joint; computed by direct accumulation so the
/// two routes can be checked against each other.
inline FiniteDistribution two_agent_causal_joint(const LHVModel& hypotheses, Setting a,
                                                 Setting b) {
  if (a.side != Side::A || b.side != Side::B) {
    throw SettingsMismatch("two_agent_causal_joint expects an A-side and a B-side setting");
  }
  std::array<double, 4> mass{};
  for (std::size_t k = 0; k < hypotheses.hidden_prior.size(); ++k) {
    const auto& hidden = hypotheses.hidden_prior.support()[k];
    const double pk = hypotheses.hidden_prior.mass()[k];
    const auto& ra =
        hypotheses.response_for(Side::A, hidden).row(detail::colour_condition(a.colour));
    const auto& rb =
        hypotheses.response_for(Side::B, hidden).row(detail::colour_condition(b.colour));
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t j = 0; j < 2; ++j) mass[2 * i + j] += pk * ra.mass()[i] * rb.mass()[j];
  }
  return make_pair_distribution(mass);
}

/// Statistical independence: hidden states uncorrelated with the buttons.
/// Holds vacuously without a setting-dependent prior; otherwise every
/// per-cell prior must equal the unconditional one.
inline bool check_statistical_independence(const LHVModel& model, double tol = 1e-9) {
  if (!model.setting_dependent_prior) return true;
  for (const auto& per_cell : *model.setting_dependent_prior) {
    if (per_cell.support() != model.hidden_prior.support()) return false;
    for (std::size_t k = 0; k < per_cell.size(); ++k) {
      if (std::abs(per_cell.mass()[k] - model.hidden_prior.mass()[k]) > tol) return false;
    }
  }
  return true;
}

/// Adapter giving LHVModel the joint-model interface.
struct LhvJointModel {
  LHVModel model;

  FiniteDistribution joint(Colour a, Colour b) const {
    return lhv_joint(model, Setting::alice(a), Setting::bob(b));
  }
};

}  // namespace bellcomb
