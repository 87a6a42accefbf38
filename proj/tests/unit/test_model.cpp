#include <catch_amalgamated.hpp>

#include <dispmap/error.hpp>
#include <dispmap/model.hpp>

#include "oracles/oracles.hpp"

#include <cmath>
#include <limits>

using namespace dispmap;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {
SystemParams fig4() { return {-2005.0, -5.0, -200.0, -1.0, 1.0, 2, 14}; }
}  // namespace

TEST_CASE("SystemParams validation") {
  CHECK_NOTHROW(validate(fig4()));
  auto p = fig4();
  p.kappa_c = -1.0;
  CHECK_THROWS_AS(validate(p), DomainError);
  p = fig4();
  p.n_c = 1;
  CHECK_THROWS_AS(validate(p), DomainError);
  p = fig4();
  p.n_a = 1;
  CHECK_THROWS_AS(validate(p), DomainError);
  p = fig4();
  p.delta_cd = std::numeric_limits<double>::infinity();
  CHECK_THROWS_AS(validate(p), DomainError);
  p = fig4();
  p.chi_ac = 1.5;
  CHECK_NOTHROW(validate(p));
}

TEST_CASE("pulse construction rejects bad square-gaussian timings") {
  CHECK_THROWS_AS(PulseSpec::square_gaussian(10, 100, 60, 10), DomainError);
  CHECK_THROWS_AS(PulseSpec::square_gaussian(10, 100, 0, 10), DomainError);
  CHECK_THROWS_AS(PulseSpec::square_gaussian(10, 100, 20, 0), DomainError);
  CHECK_NOTHROW(PulseSpec::square_gaussian(10, 100, 50, 10));
}

TEST_CASE("sg_envelope values at branch points") {
  const auto sg = PulseSpec::square_gaussian(1.0, 1000, 100, 50);
  CHECK(sg_envelope(0.0, sg) == 0.0);
  CHECK_THAT(sg_envelope(100.0, sg), WithinAbs(1.0, 1e-15));
  CHECK(sg_envelope(500.0, sg) == 1.0);
  CHECK(sg_envelope(1000.0, sg) == 0.0);
  CHECK(sg_envelope(-1.0, sg) == 0.0);
  CHECK(sg_envelope(1000.5, sg) == 0.0);
  const auto c = PulseSpec::constant(3.0);
  CHECK(sg_envelope(12345.0, c) == 1.0);
  CHECK(c.amplitude(7.0) == 3.0);
}

TEST_CASE("sg_envelope is continuous and bounded") {
  const auto sg = PulseSpec::square_gaussian(1.0, 1000, 100, 50);
  for (double edge : {100.0, 900.0}) {
    const double below = sg_envelope(std::nextafter(edge, 0.0), sg);
    const double above = sg_envelope(std::nextafter(edge, 2000.0), sg);
    CHECK(std::abs(below - above) < 1e-12);
  }
  for (int i = 0; i <= 10000; ++i) {
    const double v = sg_envelope(0.1 * i, sg);
    REQUIRE(v >= 0.0);
    REQUIRE(v <= 1.0);
  }
}

TEST_CASE("envelope derivatives vanish on the plateau and for constant drive") {
  const auto sg = PulseSpec::square_gaussian(1.0, 1000, 100, 50);
  const auto c = PulseSpec::constant(1.0);
  for (int k = 1; k <= 3; ++k) {
    CHECK(envelope_derivatives(500.0, sg, k) == 0.0);
    CHECK(envelope_derivatives(17.0, c, k) == 0.0);
  }
  CHECK_THROWS_AS(envelope_derivatives(10.0, sg, 4), UnsupportedOrderError);
  CHECK_THROWS_AS(envelope_derivatives(10.0, sg, 0), UnsupportedOrderError);
}

TEST_CASE("first derivative at mid-ramp matches a central difference") {
  const auto sg = PulseSpec::square_gaussian(1.0, 1000, 100, 50);
  const double fd =
      oracle::central_difference([&](double t) { return sg_envelope(t, sg); }, 50.0, 1e-3);
  CHECK_THAT(envelope_derivatives(50.0, sg, 1), WithinRel(fd, 1e-8));
}

TEST_CASE("derivatives of every order match finite differences across the ramps") {
  const auto sg = PulseSpec::square_gaussian(1.0, 1000, 100, 30);
  auto env = [&](double t) { return sg_envelope(t, sg); };
  auto d1 = [&](double t) { return envelope_derivatives(t, sg, 1); };
  auto d2 = [&](double t) { return envelope_derivatives(t, sg, 2); };
  const double h = 1e-3;
  int checked = 0;
  for (int i = 0; i < 1000; ++i) {
    const double t = 1000.0 * (i + 0.5) / 1000.0;
    const bool near_edge = std::abs(t - 100) < 1 || std::abs(t - 900) < 1 || t < 1 || t > 999;
    if (near_edge || (t > 100 && t < 900)) continue;
    const std::pair<double, double> cases[] = {
        {envelope_derivatives(t, sg, 1), oracle::central_difference(env, t, h)},
        {envelope_derivatives(t, sg, 2), oracle::central_difference(d1, t, h)},
        {envelope_derivatives(t, sg, 3), oracle::central_difference(d2, t, h)},
    };
    for (const auto& [analytic, numeric] : cases) {
      const double scale = std::max(std::abs(numeric), 1e-6);
      REQUIRE(std::abs(analytic - numeric) / scale < 1e-6);
    }
    ++checked;
  }
  CHECK(checked > 150);
}

TEST_CASE("level detunings are exact conjugates") {
  const auto p = fig4();
  for (int n = 0; n < 4; ++n) {
    const auto d = level_detuning(p, n, n);
    CHECK(d.value_r == std::conj(d.value_l));
    CHECK(d.value_l == Complex(p.delta_cd + 2 * p.chi_ac * n, -0.5 * p.kappa_c));
  }
}

TEST_CASE("validity margin") {
  auto p = fig4();
  CHECK_THAT(validity_margin(p, 10.0), WithinRel(10.0 / (std::sqrt(25.25) * std::sqrt(49.25)), 1e-14));
  CHECK_THAT(validity_margin(p, 10.0), WithinAbs(0.284, 5e-4));
  p.chi_ac = 0.0;
  CHECK(validity_margin(p, 10.0) == 0.0);

  // Delta = -chi centres the two detunings: RHS = chi^2 + (kappa/2)^2.
  p = fig4();
  p.delta_cd = -p.chi_ac;
  const double rhs = p.chi_ac * p.chi_ac + 0.25 * p.kappa_c * p.kappa_c;
  CHECK_THAT(validity_margin(p, 3.0), WithinRel(std::abs(p.chi_ac * 3.0) / rhs, 1e-14));

  p = fig4();
  p.kappa_c = 0.0;
  p.delta_cd = 0.0;
  CHECK_THROWS_AS(validity_margin(p, 1.0), SingularityError);
}
