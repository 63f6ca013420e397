#include <doctest.h>

#include <cmath>
#include <random>

#include "test_support.hpp"
#include "uavplan/channel.hpp"
#include "uavplan/errors.hpp"
#include "uavplan/units.hpp"

using namespace uavplan;
using uavplan::testing::rel_err;

namespace {

const Environment kUrban = *preset("urban");

}  // namespace

TEST_CASE("presets carry the tabulated parameters") {
  const auto envs = all_presets();
  REQUIRE(envs.size() == 4);
  const double expected[4][4] = {
      {4.88, 0.43, 0.1, 21}, {9.61, 0.16, 1, 20}, {12.08, 0.11, 1.6, 23}, {27.23, 0.08, 2.3, 34}};
  const char* names[4] = {"suburban", "urban", "dense-urban", "high-rise-urban"};
  for (int i = 0; i < 4; ++i) {
    CHECK(envs[i].name == names[i]);
    CHECK(envs[i].a == expected[i][0]);
    CHECK(envs[i].b == expected[i][1]);
    CHECK(envs[i].eta_los_db == expected[i][2]);
    CHECK(envs[i].eta_nlos_db == expected[i][3]);
    CHECK(envs[i].eta_nlos_db > envs[i].eta_los_db);
  }
}

TEST_CASE("preset names are case and separator insensitive") {
  CHECK(preset("Dense Urban")->name == "dense-urban");
  CHECK(preset("HIGH_RISE_URBAN")->name == "high-rise-urban");
  CHECK(preset("high-rise urban")->name == "high-rise-urban");
  CHECK(preset("Suburban")->name == "suburban");
  CHECK_FALSE(preset("rural").has_value());
  CHECK(preset("urban", 5.8e9)->carrier_hz == 5.8e9);
}

TEST_CASE("custom environments are validated") {
  CHECK_NOTHROW(make_environment("x", 5, 0.2, 1, 20));
  CHECK_NOTHROW(make_environment("flat", 5, 0.2, 3, 3));
  CHECK_THROWS_AS(make_environment("x", 0, 0.2, 1, 20), DomainError);
  CHECK_THROWS_AS(make_environment("x", 5, -1, 1, 20), DomainError);
  CHECK_THROWS_AS(make_environment("x", 5, 0.2, 20, 1), DomainError);
  CHECK_THROWS_AS(make_environment("x", 5, 0.2, 1, 20, 0.0), DomainError);
}

TEST_CASE("los_probability examples") {
  SUBCASE("elevation equal to a cancels the exponent") {
    const double r = 100.0;
    const double h = r * std::tan(kUrban.a / kDegPerRad);
    CHECK(rel_err(los_probability(kUrban, {r, h}), 1.0 / 10.61) < 1e-12);
  }
  SUBCASE("ground level") {
    // 1 / (1 + 9.61 e^{0.16 * 9.61}), evaluated in 30-digit arithmetic.
    CHECK(rel_err(los_probability(kUrban, {100.0, 0.0}), 0.0218726212332834075790633) < 1e-13);
  }
  SUBCASE("directly overhead is 90 degrees") {
    CHECK(elevation_deg({0.0, 50.0}) == 90.0);
    const double expected[4] = {0.999999999999999379778, 0.999975074537903020174,
                                0.997716247081093902799, 0.847778240792489623896};
    const auto envs = all_presets();
    for (int i = 0; i < 4; ++i) {
      CHECK(rel_err(los_probability(envs[i], {0.0, 50.0}), expected[i]) < 1e-13);
    }
  }
  CHECK_THROWS_AS(los_probability(kUrban, {0.0, 0.0}), DomainError);
  CHECK_THROWS_AS(los_probability(kUrban, {-1.0, 3.0}), DomainError);
}

TEST_CASE("altitude derivative of the LOS probability") {
  CHECK(los_probability_altitude_derivative(kUrban, {0.0, 30.0}) == 0.0);
  CHECK(los_probability_altitude_derivative(kUrban, {100.0, 1e9}) < 1e-12);
  CHECK_THROWS_AS(los_probability_altitude_derivative(kUrban, {0.0, 0.0}), DomainError);

  // Central finite difference, step 1e-4 m.
  const double dh = 1e-4;
  const double fd = (los_probability(kUrban, {100.0, 50.0 + dh}) -
                     los_probability(kUrban, {100.0, 50.0 - dh})) /
                    (2 * dh);
  CHECK(rel_err(los_probability_altitude_derivative(kUrban, {100.0, 50.0}), fd) < 1e-4);
}

TEST_CASE("path loss") {
  const Environment unit = make_environment("unit", 5, 0.2, 0.0, 0.0, 2.4e9);
  const double identity_distance = kSpeedOfLight / (4 * kPi * unit.carrier_hz);
  CHECK(rel_err(path_loss(unit, {identity_distance, 0.0}, Link::Los), 1.0) < 1e-14);
  CHECK(rel_err(path_loss(unit, {0.0, identity_distance}, Link::Nlos), 1.0) < 1e-14);

  const LinkGeometry g{120.0, 80.0};
  CHECK(rel_err(path_loss(kUrban, g, Link::Nlos) / (kUrban.fspl_constant() * 20800.0),
                100.0) < 1e-12);
  CHECK(rel_err(path_loss(kUrban, {240.0, 160.0}, Link::Los), 4.0 * path_loss(kUrban, g, Link::Los)) <
        1e-14);
  CHECK_THROWS_AS(path_loss(kUrban, {0.0, 0.0}, Link::Los), DomainError);
}

TEST_CASE("average path loss") {
  SUBCASE("recomposes the two branches") {
    const LinkGeometry g{200.0, 100.0};
    const double p = los_probability(kUrban, g);
    const double mix =
        p * path_loss(kUrban, g, Link::Los) + (1 - p) * path_loss(kUrban, g, Link::Nlos);
    CHECK(rel_err(average_path_loss(kUrban, g), mix) < 1e-12);
  }
  SUBCASE("endpoints of the convex combination") {
    // Low a: LOS probability saturates overhead.
    const Environment open = make_environment("open", 0.01, 1.0, 1.0, 30.0);
    const LinkGeometry over{0.0, 10.0};
    CHECK(rel_err(average_path_loss(open, over), path_loss(open, over, Link::Los)) < 1e-12);
    // Huge a: LOS essentially impossible.
    const Environment closed = make_environment("closed", 700.0, 1.0, 1.0, 30.0);
    const LinkGeometry low{100.0, 1.0};
    CHECK(rel_err(average_path_loss(closed, low), path_loss(closed, low, Link::Nlos)) < 1e-12);
  }
  CHECK_THROWS_AS(average_path_loss(kUrban, {0.0, 0.0}), DomainError);
}

TEST_CASE("randomized channel properties") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> dist(0.5, 2000.0);
  const auto envs = all_presets();
  for (int i = 0; i < 400; ++i) {
    const auto& env = envs[i % 4];
    const LinkGeometry g{dist(rng), dist(rng)};
    const double p = los_probability(env, g);
    CHECK(p > 0.0);
    CHECK(p < 1.0);
    CHECK(los_probability(env, {g.r_u, g.h * 1.1}) >= p);
    CHECK(los_probability(env, {g.r_u * 1.1, g.h}) <= p);

    const double step = 1e-4 * std::max(1.0, g.h);
    const double fd = (los_probability(env, {g.r_u, g.h + step}) -
                       los_probability(env, {g.r_u, g.h - step})) /
                      (2 * step);
    const double analytic = los_probability_altitude_derivative(env, g);
    CHECK(analytic >= 0.0);
    // Skip points where the sigmoid is saturated and the difference is all rounding.
    if (analytic > 1e-8) CHECK(rel_err(analytic, fd) < 1e-4);

    const double lo = path_loss(env, g, Link::Los);
    const double hi = path_loss(env, g, Link::Nlos);
    const double avg = average_path_loss(env, g);
    CHECK(avg >= std::min(lo, hi));
    CHECK(avg <= std::max(lo, hi));
    CHECK(rel_err(avg, p * lo + (1 - p) * hi) < 1e-12);

    // Scaling used by the kernel decomposition.
    const double r_b = dist(rng);
    const double scaled = r_b * r_b * average_path_loss(env, {g.r_u / r_b, g.h / r_b});
    CHECK(rel_err(avg, scaled) < 1e-12);
  }
}
