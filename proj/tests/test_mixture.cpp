#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <random>

#include "bellcomb/lhv.hpp"
#include "bellcomb/mixture.hpp"
#include "bellcomb/quantum.hpp"

using namespace bellcomb;

TEST_CASE("bound formula endpoints and values") {
  CHECK(mixture_chsh_bound(0.0) == Catch::Approx(2.8284271247461903).margin(1e-12));
  CHECK(mixture_chsh_bound(1.0) == Catch::Approx(2.0).margin(1e-12));
  CHECK(mixture_chsh_bound(0.1) == Catch::Approx(2.7455844122715716).margin(1e-12));
  CHECK_THROWS_AS(mixture_chsh_bound(-0.1), InvalidCredence);
  CHECK_THROWS_AS(mixture_chsh_bound(1.1), InvalidCredence);
}

TEST_CASE("break-even credence at the canonical threshold") {
  CHECK(break_even_credence(2.8) == Catch::Approx(0.0343145750507624).margin(1e-12));
  // at the break-even point the bound equals the threshold
  CHECK(mixture_chsh_bound(break_even_credence(2.8)) == Catch::Approx(2.8).margin(1e-12));
}

TEST_CASE("mixture endpoints reduce to the components") {
  const auto lhv = LHVModel::from_strategy({1, 1, 1, -1});
  const auto quantum = tsirelson_config();

  const HypothesisMixture pure_lhv(1.0, lhv, quantum);
  const HypothesisMixture pure_quantum(0.0, lhv, quantum);
  for (Colour a : kColours) {
    for (Colour b : kColours) {
      const auto l = lhv_joint(lhv, Setting::alice(a), Setting::bob(b));
      const auto q = quantum.joint(a, b);
      const auto ml = mixture_causal_joint(pure_lhv, a, b);
      const auto mq = mixture_causal_joint(pure_quantum, a, b);
      for (std::size_t i = 0; i < 4; ++i) {
        CHECK(ml.mass()[i] == Catch::Approx(l.mass()[i]).margin(1e-12));
        CHECK(mq.mass()[i] == Catch::Approx(q.mass()[i]).margin(1e-12));
      }
    }
  }

  const HypothesisMixture half(0.5, lhv, quantum);
  for (Colour a : kColours) {
    for (Colour b : kColours) {
      const auto l = lhv_joint(lhv, Setting::alice(a), Setting::bob(b));
      const auto q = quantum.joint(a, b);
      const auto m = mixture_causal_joint(half, a, b);
      for (std::size_t i = 0; i < 4; ++i) {
        CHECK(m.mass()[i] ==
              Catch::Approx(0.5 * l.mass()[i] + 0.5 * q.mass()[i]).margin(1e-12));
      }
    }
  }

  CHECK_THROWS_AS(HypothesisMixture(1.5, lhv, quantum), InvalidCredence);
}

TEST_CASE("mixture CHSH never exceeds the bound") {
  std::mt19937_64 gen(1234);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const auto strategies = enumerate_deterministic();
  const auto quantum = tsirelson_config();

  for (int trial = 0; trial < 500; ++trial) {
    // random strategy mixture as the factorized component
    std::vector<double> w(16);
    std::vector<std::string> labels(16);
    for (int k = 0; k < 16; ++k) {
      w[k] = u(gen) + 1e-3;
      labels[k] = "s" + std::to_string(k);
    }
    const auto lhv = LHVModel::mixture_of_strategies(strategies, normalize(w, labels));
    const double eps = u(gen);
    const HypothesisMixture mixture(eps, lhv, quantum);
    CHECK(chsh_of_model(mixture) <= mixture_chsh_bound(eps) + 1e-9);
  }
}
