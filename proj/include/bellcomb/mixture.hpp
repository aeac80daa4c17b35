#pragma once

#include <cmath>
#include <numbers>
#include <utility>

#include "bellcomb/correlations.hpp"
#include "bellcomb/distribution.hpp"
#include "bellcomb/errors.hpp"
#include "bellcomb/lhv.hpp"

namespace bellcomb {

/// The quantum maximum of the CHSH combination.
inline constexpr double kQuantumChshMax = 2.0 * std::numbers::sqrt2;

/// An agent's split of causal hypotheses into two classes: weight `epsilon`
/// on those whose causal probabilities factorize locally, and the remainder
/// on those whose causal probabilities coincide with the observed joint
/// (represented by any joint model Q).
template <JointModelLike Q>
struct HypothesisMixture {
  double epsilon = 0.0;
  LHVModel lhv_component;
  Q quantum_component;

  HypothesisMixture(double eps, LHVModel lhv, Q quantum)
      : epsilon(eps), lhv_component(std::move(lhv)), quantum_component(std::move(quantum)) {
    if (!(eps >= 0.0 && eps <= 1.0)) {
      throw InvalidCredence("epsilon = " + std::to_string(eps) + " is outside [0,1]");
    }
  }

  FiniteDistribution joint(Colour a, Colour b) const {
    return mixture_causal_joint(*this, a, b);
  }
};

/// epsilon-weighted average of the factorized term and the
/// quantum-compatible term.
template <JointModelLike Q>
FiniteDistribution mixture_causal_joint(const HypothesisMixture<Q>& mixture, Colour a,
                                        Colour b) {
  const auto lhv = lhv_joint(mixture.lhv_component, Setting::alice(a), Setting::bob(b));
  const auto quantum = mixture.quantum_component.joint(a, b);
  return mix({lhv, quantum},
             FiniteDistribution({"lhv", "quantum"},
                                {mixture.epsilon, 1.0 - mixture.epsilon}));
}

/// Upper bound on the causal CHSH expectation under the epsilon split:
/// 2 epsilon + 2 sqrt(2) (1 - epsilon).
inline double mixture_chsh_bound(double epsilon) {
  if (!(epsilon >= 0.0 && epsilon <= 1.0)) {
    throw InvalidCredence("epsilon = " + std::to_string(epsilon) + " is outside [0,1]");
  }
  return 2.0 * epsilon + kQuantumChshMax * (1.0 - epsilon);
}

/// The credence at which the mixture bound crosses a win threshold T:
/// (2 sqrt(2) - T) / (2 sqrt(2) - 2). Above it the bound drops below T.
inline double break_even_credence(double threshold) {
  return (kQuantumChshMax - threshold) / (kQuantumChshMax - 2.0);
}

}  // namespace bellcomb
