#pragma once

#include <array>
#include <cmath>
#include <concepts>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "bellcomb/distribution.hpp"
#include "bellcomb/errors.hpp"

namespace bellcomb {

enum class Colour { Red, Green };
enum class Side { A, B };

inline std::string to_string(Colour c) { return c == Colour::Red ? "red" : "green"; }

/// One measurement choice: which side presses which coloured button.
struct Setting {
  Side side;
  Colour colour;

  static Setting alice(Colour c) { return {Side::A, c}; }
  static Setting bob(Colour c) { return {Side::B, c}; }
};

inline constexpr std::array<Colour, 2> kColours = {Colour::Red, Colour::Green};

/// The four setting pairs in a fixed order: RR, RG, GR, GG.
inline constexpr std::size_t cell_index(Colour a, Colour b) {
  return (a == Colour::Green ? 2 : 0) + (b == Colour::Green ? 1 : 0);
}

inline constexpr std::array<std::pair<Colour, Colour>, 4> kCells = {{
    {Colour::Red, Colour::Red},
    {Colour::Red, Colour::Green},
    {Colour::Green, Colour::Red},
    {Colour::Green, Colour::Green},
}};

/// Canonical +-1-valued outcome support for one side.
inline const std::vector<std::string>& pm_support() {
  static const std::vector<std::string> s = {"+1", "-1"};
  return s;
}

inline int pm_value(const std::string& label) {
  if (label == "+1") return 1;
  if (label == "-1") return -1;
  throw UnknownLabel("outcome label '" + label + "' is not +1/-1");
}

/// Canonical support for a joint +-1 outcome pair, ordered (+1,+1), (+1,-1),
/// (-1,+1), (-1,-1).
inline const std::vector<std::string>& pair_support() {
  static const std::vector<std::string> s = {"++", "+-", "-+", "--"};
  return s;
}

inline std::string pair_label(int a, int b) {
  return std::string(1, a > 0 ? '+' : '-') + (b > 0 ? '+' : '-');
}

/// Product a*b encoded in a joint outcome label.
inline int pair_product(const std::string& label) {
  return label[0] == label[1] ? 1 : -1;
}

inline int pair_a_value(const std::string& label) { return label[0] == '+' ? 1 : -1; }
inline int pair_b_value(const std::string& label) { return label[1] == '+' ? 1 : -1; }

inline FiniteDistribution make_pair_distribution(std::array<double, 4> mass) {
  return FiniteDistribution(pair_support(), {mass[0], mass[1], mass[2], mass[3]});
}

/// Anything that yields a joint +-1 outcome distribution for each pair of
/// button colours.
template <typename M>
concept JointModelLike = requires(const M& m, Colour a, Colour b) {
  { m.joint(a, b) } -> std::convertible_to<FiniteDistribution>;
};

/// Expectation of the outcome product under a joint distribution over
/// pair_support().
inline double product_expectation(const FiniteDistribution& joint) {
  if (joint.support() != pair_support()) {
    throw SupportMismatch("expected a joint distribution over +-1 outcome pairs");
  }
  double acc = 0.0;
  for (std::size_t i = 0; i < joint.size(); ++i) {
    acc += joint.mass()[i] * pair_product(joint.support()[i]);
  }
  return acc;
}

/// The four correlators of a joint model, in cell order RR, RG, GR, GG.
template <JointModelLike M>
std::array<double, 4> correlators_of_model(const M& model) {
  std::array<double, 4> e{};
  for (std::size_t c = 0; c < kCells.size(); ++c) {
    e[c] = product_expectation(model.joint(kCells[c].first, kCells[c].second));
  }
  return e;
}

/// CHSH combination E(rr) + E(rg) + E(gr) - E(gg) of the four correlators.
inline double chsh_combination(const std::array<double, 4>& e) {
  return e[0] + e[1] + e[2] - e[3];
}

template <JointModelLike M>
double chsh_of_model(const M& model) {
  return chsh_combination(correlators_of_model(model));
}

/// Observable-level no-signalling: each side's outcome marginal must not
/// depend on the other side's button colour.
template <JointModelLike M>
bool check_no_signalling(const M& model, double tol = 1e-9) {
  for (Colour a : kColours) {
    const auto red = model.joint(a, Colour::Red);
    const auto green = model.joint(a, Colour::Green);
    for (int value : {1, -1}) {
      double m_red = 0.0, m_green = 0.0;
      for (std::size_t i = 0; i < pair_support().size(); ++i) {
        if (pair_a_value(pair_support()[i]) == value) {
          m_red += red.mass()[i];
          m_green += green.mass()[i];
        }
      }
      if (std::abs(m_red - m_green) > tol) return false;
    }
  }
  for (Colour b : kColours) {
    const auto red = model.joint(Colour::Red, b);
    const auto green = model.joint(Colour::Green, b);
    for (int value : {1, -1}) {
      double m_red = 0.0, m_green = 0.0;
      for (std::size_t i = 0; i < pair_support().size(); ++i) {
        if (pair_b_value(pair_support()[i]) == value) {
          m_red += red.mass()[i];
          m_green += green.mass()[i];
        }
      }
      if (std::abs(m_red - m_green) > tol) return false;
    }
  }
  return true;
}

}  // namespace bellcomb
