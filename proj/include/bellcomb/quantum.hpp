#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>

#include "bellcomb/correlations.hpp"
#include "bellcomb/distribution.hpp"
#include "bellcomb/errors.hpp"

namespace bellcomb {

/// A pure state of two qubits, amplitudes ordered |00>, |01>, |10>, |11>.
class TwoQubitState {
 public:
  using Amplitudes = std::array<std::complex<double>, 4>;

  explicit TwoQubitState(Amplitudes amplitudes) : amplitudes_(amplitudes) {
    double norm2 = 0.0;
    for (const auto& a : amplitudes_) norm2 += std::norm(a);
    if (std::abs(norm2 - 1.0) > 1e-12) {
      throw InvalidState("amplitudes have squared norm " + std::to_string(norm2));
    }
  }

  const Amplitudes& amplitudes() const { return amplitudes_; }

  /// (|00> + |11>)/sqrt(2).
  static TwoQubitState phi_plus() {
    const double r = 1.0 / std::numbers::sqrt2;
    return TwoQubitState({std::complex<double>(r), 0.0, 0.0, std::complex<double>(r)});
  }

 private:
  Amplitudes amplitudes_;
};

/// A +-1-valued single-qubit observable cos(theta) Z + sin(theta) X,
/// parameterized by its angle in the Z-X plane.
struct MeasurementSetting {
  double angle = 0.0;
};

namespace detail {

/// Real eigenvectors of cos(t) Z + sin(t) X: the +1 eigenvector is
/// (cos(t/2), sin(t/2)), the -1 eigenvector (-sin(t/2), cos(t/2)).
inline std::array<double, 2> eigenvector(double theta, int eigenvalue) {
  const double c = std::cos(theta / 2.0);
  const double s = std::sin(theta / 2.0);
  return eigenvalue > 0 ? std::array<double, 2>{c, s} : std::array<double, 2>{-s, c};
}

}  // namespace detail

/// Joint outcome distribution for measuring the two observables on a pure
/// two-qubit state. Computed by projecting the amplitude vector onto the
/// product eigenvectors; tiny negative round-off is clamped to zero before
/// the result is normalized into a distribution.
inline FiniteDistribution born_joint(const TwoQubitState& state, MeasurementSetting a,
                                     MeasurementSetting b) {
  std::array<double, 4> mass{};
  std::size_t cell = 0;
  for (int av : {1, -1}) {
    const auto va = detail::eigenvector(a.angle, av);
    for (int bv : {1, -1}) {
      const auto vb = detail::eigenvector(b.angle, bv);
      std::complex<double> amp = 0.0;
      for (std::size_t j = 0; j < 2; ++j) {
        for (std::size_t k = 0; k < 2; ++k) {
          amp += va[j] * vb[k] * state.amplitudes()[2 * j + k];
        }
      }
      mass[cell++] = std::max(0.0, std::norm(amp));
    }
  }
  return make_pair_distribution(mass);
}

/// Expectation of the product of the two measurement outcomes.
inline double correlator(const TwoQubitState& state, MeasurementSetting a,
                         MeasurementSetting b) {
  return product_expectation(born_joint(state, a, b));
}

/// A state plus one measurement angle per button colour per side.
struct CHSHConfiguration {
  TwoQubitState state;
  MeasurementSetting alice_red;
  MeasurementSetting alice_green;
  MeasurementSetting bob_red;
  MeasurementSetting bob_green;

  MeasurementSetting alice_setting(Colour c) const {
    return c == Colour::Red ? alice_red : alice_green;
  }
  MeasurementSetting bob_setting(Colour c) const {
    return c == Colour::Red ? bob_red : bob_green;
  }

  FiniteDistribution joint(Colour a, Colour b) const {
    return born_joint(state, alice_setting(a), bob_setting(b));
  }
};

/// The configuration that saturates the quantum maximum 2*sqrt(2):
/// (|00>+|11>)/sqrt(2) with angles 0, pi/2 for Alice and +-pi/4 for Bob.
inline CHSHConfiguration tsirelson_config() {
  const double pi = std::numbers::pi;
  return CHSHConfiguration{TwoQubitState::phi_plus(),
                           MeasurementSetting{0.0},
                           MeasurementSetting{pi / 2.0},
                           MeasurementSetting{pi / 4.0},
                           MeasurementSetting{-pi / 4.0}};
}

}  // namespace bellcomb
