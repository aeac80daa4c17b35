#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <map>
#include <numeric>
#include <string>
#include <string_view>
#include <unordered_set>
#include <utility>
#include <vector>

#include "bellcomb/errors.hpp"

namespace bellcomb {

/// Absolute tolerance used for normalization checks throughout the library.
inline constexpr double kNormalizationTol = 1e-9;

/// A probability distribution over a finite, ordered set of labelled outcomes.
/// Immutable after construction; construction enforces nonnegativity, unit
/// total mass (within kNormalizationTol) and label uniqueness.
class FiniteDistribution {
 public:
  FiniteDistribution(std::vector<std::string> support, std::vector<double> mass)
      : support_(std::move(support)), mass_(std::move(mass)) {
    if (support_.size() != mass_.size()) {
      throw InvalidMass("support and mass lengths differ");
    }
    if (support_.empty()) {
      throw DegenerateDistribution("empty support");
    }
    double total = 0.0;
    for (std::size_t i = 0; i < mass_.size(); ++i) {
      if (!(mass_[i] >= 0.0)) {  // also rejects NaN
        throw InvalidMass("negative mass for label '" + support_[i] + "'");
      }
      total += mass_[i];
    }
    if (std::abs(total - 1.0) > kNormalizationTol) {
      throw NotNormalized("masses sum to " + std::to_string(total));
    }
    std::unordered_set<std::string_view> seen;
    for (const auto& label : support_) {
      if (!seen.insert(label).second) {
        throw DuplicateLabel("label '" + label + "' appears twice");
      }
    }
  }

  static FiniteDistribution point_mass(const std::string& label,
                                       std::vector<std::string> support) {
    std::vector<double> mass(support.size(), 0.0);
    bool found = false;
    for (std::size_t i = 0; i < support.size(); ++i) {
      if (support[i] == label) {
        mass[i] = 1.0;
        found = true;
      }
    }
    if (!found) throw UnknownLabel("point mass label '" + label + "' not in support");
    return FiniteDistribution(std::move(support), std::move(mass));
  }

  const std::vector<std::string>& support() const { return support_; }
  const std::vector<double>& mass() const { return mass_; }
  std::size_t size() const { return support_.size(); }

  bool has_label(std::string_view label) const {
    return index_of(label) != support_.size();
  }

  double mass_of(std::string_view label) const {
    const std::size_t i = index_of(label);
    if (i == support_.size()) {
      throw UnknownLabel("label '" + std::string(label) + "' not in support");
    }
    return mass_[i];
  }

  bool same_support(const FiniteDistribution& other) const {
    return support_ == other.support_;
  }

 private:
  std::size_t index_of(std::string_view label) const {
    for (std::size_t i = 0; i < support_.size(); ++i) {
      if (support_[i] == label) return i;
    }
    return support_.size();
  }

  std::vector<std::string> support_;
  std::vector<double> mass_;
};

/// Normalizes nonnegative weights into a distribution over the given labels.
inline FiniteDistribution normalize(const std::vector<double>& weights,
                                    std::vector<std::string> labels) {
  if (weights.size() != labels.size()) {
    throw InvalidMass("weights and labels lengths differ");
  }
  double total = 0.0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (!(weights[i] >= 0.0)) {
      throw InvalidMass("negative weight for label '" + labels[i] + "'");
    }
    total += weights[i];
  }
  if (total <= 0.0) {
    throw DegenerateDistribution("all weights are zero");
  }
  std::vector<double> mass(weights.size());
  for (std::size_t i = 0; i < weights.size(); ++i) mass[i] = weights[i] / total;
  return FiniteDistribution(std::move(labels), std::move(mass));
}

/// Mixture of distributions sharing one support. weights[k] applies to
/// components[k], in order; weights must itself be a distribution with one
/// entry per component.
inline FiniteDistribution mix(const std::vector<FiniteDistribution>& components,
                              const FiniteDistribution& weights) {
  if (components.empty()) throw DegenerateDistribution("no components to mix");
  if (weights.size() != components.size()) {
    throw SupportMismatch("weight count differs from component count");
  }
  for (const auto& c : components) {
    if (!c.same_support(components.front())) {
      throw SupportMismatch("mixture components have different supports");
    }
  }
  std::vector<double> mass(components.front().size(), 0.0);
  for (std::size_t k = 0; k < components.size(); ++k) {
    const double w = weights.mass()[k];
    const auto& cm = components[k].mass();
    for (std::size_t j = 0; j < mass.size(); ++j) mass[j] += w * cm[j];
  }
  return FiniteDistribution(components.front().support(), std::move(mass));
}

/// Expected value of a labelled payoff map under the distribution.
inline double expectation(const FiniteDistribution& dist,
                          const std::map<std::string, double>& value) {
  double acc = 0.0;
  for (std::size_t i = 0; i < dist.size(); ++i) {
    const auto it = value.find(dist.support()[i]);
    if (it == value.end()) {
      throw MissingValue("no value for label '" + dist.support()[i] + "'");
    }
    acc += dist.mass()[i] * it->second;
  }
  return acc;
}

}  // namespace bellcomb
