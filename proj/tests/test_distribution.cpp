#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <map>
#include <random>
#include <vector>

#include "bellcomb/distribution.hpp"

using namespace bellcomb;

TEST_CASE("normalize produces proportional masses") {
  const auto d = normalize({2.0, 2.0}, {"x", "y"});
  CHECK(d.mass_of("x") == Catch::Approx(0.5).margin(1e-12));
  CHECK(d.mass_of("y") == Catch::Approx(0.5).margin(1e-12));

  const auto point = normalize({1.0, 0.0, 0.0}, {"x", "y", "z"});
  CHECK(point.mass_of("x") == 1.0);
  CHECK(point.mass_of("y") == 0.0);
  CHECK(point.mass_of("z") == 0.0);

  // Gene incidence among smokers.
  const auto gene = normalize({0.2, 0.8}, {"gene", "no_gene"});
  CHECK(gene.mass_of("gene") == Catch::Approx(0.2).margin(1e-12));
  CHECK(gene.mass_of("no_gene") == Catch::Approx(0.8).margin(1e-12));
}

TEST_CASE("normalize rejects bad weights") {
  CHECK_THROWS_AS(normalize({0.0, 0.0}, {"x", "y"}), DegenerateDistribution);
  CHECK_THROWS_AS(normalize({1.0, -0.5}, {"x", "y"}), InvalidMass);
  CHECK_THROWS_AS(normalize({1.0}, {"x", "y"}), InvalidMass);
}

TEST_CASE("construction enforces the distribution invariants") {
  CHECK_THROWS_AS(FiniteDistribution({"x", "y"}, {0.5, 0.6}), NotNormalized);
  CHECK_THROWS_AS(FiniteDistribution({"x", "y"}, {1.5, -0.5}), InvalidMass);
  CHECK_THROWS_AS(FiniteDistribution({"x", "x"}, {0.5, 0.5}), DuplicateLabel);
  CHECK_THROWS_AS(FiniteDistribution({}, {}), DegenerateDistribution);
  // within tolerance is fine
  CHECK_NOTHROW(FiniteDistribution({"x", "y"}, {0.5, 0.5 + 5e-10}));
}

TEST_CASE("mix averages components under the weights") {
  const FiniteDistribution plus({"+1", "-1"}, {1.0, 0.0});
  const FiniteDistribution minus({"+1", "-1"}, {0.0, 1.0});
  const auto even = mix({plus, minus}, FiniteDistribution({"0", "1"}, {0.5, 0.5}));
  CHECK(even.mass_of("+1") == Catch::Approx(0.5).margin(1e-12));

  const FiniteDistribution d({"a", "b"}, {0.3, 0.7});
  const auto identity = mix({d}, FiniteDistribution({"0"}, {1.0}));
  CHECK(identity.mass_of("a") == Catch::Approx(0.3).margin(1e-15));

  const FiniteDistribution other({"a", "c"}, {0.3, 0.7});
  CHECK_THROWS_AS(mix({d, other}, FiniteDistribution({"0", "1"}, {0.5, 0.5})),
                  SupportMismatch);
}

TEST_CASE("expectation sums mass times value") {
  const FiniteDistribution point({"x", "y"}, {1.0, 0.0});
  CHECK(expectation(point, {{"x", 7.0}, {"y", -100.0}}) == 7.0);

  const FiniteDistribution pm({"+1", "-1"}, {0.5, 0.5});
  CHECK(expectation(pm, {{"+1", 1.0}, {"-1", -1.0}}) == Catch::Approx(0.0).margin(1e-15));

  // Evidential expected utility of smoking.
  const FiniteDistribution cancer({"C", "notC"}, {0.2, 0.8});
  CHECK(expectation(cancer, {{"C", -99.0}, {"notC", 1.0}}) ==
        Catch::Approx(-19.0).margin(1e-12));

  CHECK_THROWS_AS(expectation(cancer, {{"C", -99.0}}), MissingValue);
}

namespace {

FiniteDistribution random_distribution(std::mt19937_64& gen, std::size_t n,
                                       const std::string& prefix) {
  std::uniform_real_distribution<double> u(0.01, 1.0);
  std::vector<double> w(n);
  std::vector<std::string> labels(n);
  for (std::size_t i = 0; i < n; ++i) {
    w[i] = u(gen);
    labels[i] = prefix + std::to_string(i);
  }
  return normalize(w, labels);
}

}  // namespace

TEST_CASE("flattening nested mixtures matches product weights") {
  std::mt19937_64 gen(2024);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<FiniteDistribution> ds;
    for (int k = 0; k < 4; ++k) ds.push_back(random_distribution(gen, 3, "o"));
    const auto w_inner_a = random_distribution(gen, 2, "i");
    const auto w_inner_b = random_distribution(gen, 2, "i");
    const auto w_outer = random_distribution(gen, 2, "m");

    const auto nested = mix({mix({ds[0], ds[1]}, w_inner_a), mix({ds[2], ds[3]}, w_inner_b)},
                            w_outer);
    const auto flat = mix(
        ds, FiniteDistribution({"0", "1", "2", "3"},
                               {w_outer.mass()[0] * w_inner_a.mass()[0],
                                w_outer.mass()[0] * w_inner_a.mass()[1],
                                w_outer.mass()[1] * w_inner_b.mass()[0],
                                w_outer.mass()[1] * w_inner_b.mass()[1]}));
    for (std::size_t j = 0; j < flat.size(); ++j) {
      CHECK(nested.mass()[j] == Catch::Approx(flat.mass()[j]).margin(1e-12));
    }
  }
}

TEST_CASE("expectation is linear over mixtures") {
  std::mt19937_64 gen(77);
  std::uniform_real_distribution<double> uv(-5.0, 5.0);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<FiniteDistribution> ds;
    for (int k = 0; k < 3; ++k) ds.push_back(random_distribution(gen, 4, "o"));
    const auto w = random_distribution(gen, 3, "w");
    std::map<std::string, double> value;
    for (const auto& label : ds[0].support()) value[label] = uv(gen);

    const double mixed = expectation(mix(ds, w), value);
    double by_parts = 0.0;
    for (std::size_t k = 0; k < ds.size(); ++k) {
      by_parts += w.mass()[k] * expectation(ds[k], value);
    }
    CHECK(mixed == Catch::Approx(by_parts).margin(1e-12));
  }
}
