#include <stdexcept>
#include <cmath>
#include <random>

#include "chemo/operators.hpp"
#include "chemo/oracle.hpp"
#include "doctest.h"
#include "test_support.hpp"

using namespace chemo;
using chemo::testing::box;
using chemo::testing::line;
using chemo::testing::random_field;
using chemo::testing::trapezoid_reference;

TEST_CASE("laplacian of a constant is zero") {
  for (const DomainSpec& d : {line(21), box(9, 13, 1.0, 3.0)}) {
    const Field lap = laplacian(Field(d, 5.0));
    CHECK(lap.max_abs() == 0.0);
  }
}

TEST_CASE("laplacian matches the interior central stencil and the reflected ghost at walls") {
  std::mt19937_64 rng(3);
  const DomainSpec d = line(15, 1.4);
  const Field f = random_field(d, rng);
  const Field lap = laplacian(f);
  const double h2 = d.h[0] * d.h[0];
  CHECK(lap[0] == doctest::Approx((2.0 * f[1] - 2.0 * f[0]) / h2).epsilon(1e-12));
  CHECK(lap[14] == doctest::Approx((2.0 * f[13] - 2.0 * f[14]) / h2).epsilon(1e-12));
  for (std::size_t i = 1; i < 14; ++i) {
    CHECK(lap[i] == doctest::Approx((f[i + 1] - 2.0 * f[i] + f[i - 1]) / h2).epsilon(1e-12));
  }
}

TEST_CASE("laplacian of the Neumann cosine mode") {
  const DomainSpec d = line(201);
  const Field f = Field::from_function(d, [](double x, double) { return std::cos(M_PI * x); });
  const Field lap = laplacian(f);
  for (std::size_t i = 0; i < f.size(); ++i) {
    CHECK(std::abs(lap[i] + M_PI * M_PI * f[i]) < 2e-3);
  }
}

TEST_CASE("laplacian converges at second order") {
  double previous = 0.0;
  for (int level = 0; level < 4; ++level) {
    const DomainSpec d = line(20 * (1u << level) + 1);
    const Field f = Field::from_function(d, [](double x, double) { return std::cos(M_PI * x); });
    const Field lap = laplacian(f);
    double err = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) err = std::max(err, std::abs(lap[i] + M_PI * M_PI * f[i]));
    if (level > 0) CHECK(std::log2(previous / err) >= 1.9);
    previous = err;
  }
}

TEST_CASE("discrete divergence theorem for laplacian and chemotaxis flux") {
  std::mt19937_64 rng(42);
  for (int trial = 0; trial < 40; ++trial) {
    const DomainSpec d = trial % 2 ? box(17, 23, 1.0, 0.6) : line(57, 3.0);
    const Field f = random_field(d, rng, 0.0, 2.0);
    const Field g = random_field(d, rng, -1.0, 1.0);
    const Field lap = laplacian(f);
    const double scale = lap.max_abs() * d.measure();
    // direct summation, independent of integrate()
    CHECK(std::abs(trapezoid_reference(lap)) <= 1e-12 * scale);
    for (auto scheme : {AdvectionScheme::Central, AdvectionScheme::Upwind}) {
      const Field flux = chemo_divergence(f, g, 2.5, scheme);
      CHECK(std::abs(trapezoid_reference(flux)) <= 1e-12 * flux.max_abs() * d.measure());
    }
  }
}

TEST_CASE("chemotaxis term vanishes for a flat signal") {
  std::mt19937_64 rng(5);
  const DomainSpec d = box(11, 11);
  const Field u = random_field(d, rng, 0.0, 3.0);
  CHECK(chemo_divergence(u, Field(d, 4.0), 1.7).max_abs() == 0.0);
  CHECK(chemo_divergence(u, Field(d, 4.0), 1.7, AdvectionScheme::Upwind).max_abs() == 0.0);
}

TEST_CASE("chemotaxis term with unit density is -chi * laplacian(v)") {
  std::mt19937_64 rng(6);
  for (const DomainSpec& d : {line(31), box(9, 12, 2.0, 1.0)}) {
    const Field v = random_field(d, rng);
    const Field out = chemo_divergence(Field(d, 1.0), v, 1.0);
    const Field lap = laplacian(v);
    for (std::size_t k = 0; k < v.size(); ++k) CHECK(out[k] + lap[k] == 0.0);
    const Field scaled = chemo_divergence(Field(d, 1.0), v, 3.0);
    for (std::size_t k = 0; k < v.size(); ++k) {
      CHECK(std::abs(scaled[k] + 3.0 * lap[k]) <= 1e-13 * lap.max_abs());
    }
  }
}

TEST_CASE("chemotaxis rejects mismatched grids") {
  CHECK_THROWS_AS(chemo_divergence(Field(line(11), 1.0), Field(line(12), 1.0), 1.0),
                  std::invalid_argument);
}

TEST_CASE("gradient power") {
  const DomainSpec d = line(101);
  CHECK(grad_magnitude_pow(Field(d, 2.0), 2.0).max_abs() == 0.0);
  const Field x = Field::from_function(d, [](double xx, double) { return xx; });
  for (double gamma : {1.0, 1.5, 2.0}) {
    const Field g = grad_magnitude_pow(x, gamma);
    for (std::size_t i = 1; i + 1 < g.size(); ++i) CHECK(g[i] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(g[0] == 0.0);  // Neumann wall
    CHECK(g[100] == 0.0);
  }
  CHECK_THROWS_AS(grad_magnitude_pow(x, 0.5), std::invalid_argument);

  // 2D: tangential derivative survives on walls
  const DomainSpec b = box(11, 11);
  const Field plane = Field::from_function(b, [](double xx, double yy) { return 3.0 * xx + 4.0 * yy; });
  const Field g = grad_magnitude_pow(plane, 2.0);
  CHECK(g(5, 5) == doctest::Approx(25.0).epsilon(1e-12));
  CHECK(g(0, 5) == doctest::Approx(16.0).epsilon(1e-12));
  CHECK(g(5, 0) == doctest::Approx(9.0).epsilon(1e-12));
  CHECK(g(0, 0) == 0.0);

  std::mt19937_64 rng(9);
  const Field r = random_field(b, rng);
  for (double v : grad_magnitude_pow(r, 1.3).values()) CHECK(v >= 0.0);
}

TEST_CASE("nonlocal term") {
  const DomainSpec d = line(51);
  CHECK(nonlocal_term(Field(d, 1.0), 2.7, 3.1, 0.4) == doctest::Approx(0.4).epsilon(1e-14));
  CHECK(nonlocal_term(Field(d, 2.0), 2.0, 2.0, 1.0) == doctest::Approx(16.0).epsilon(1e-14));
  CHECK(nonlocal_term(Field(d, 0.0), 2.0, 2.0, 1.0) == 0.0);
  // negative values are clamped inside the power
  CHECK(nonlocal_term(Field(d, -1.0), 1.5, 2.0, 1.0) == 0.0);
}

TEST_CASE("reaction assembly") {
  const DomainSpec d = line(41);
  ModelParams p;
  p.a = 2.0;
  p.b = 1.0;
  p.c = 0.7;
  p.rho = 1.8;
  p.beta = 1.3;
  p.delta = 2.2;
  p.gamma = 1.5;
  CHECK(reaction(Field(d, 0.0), p).total.max_abs() == 0.0);
  const ReactionBreakdown one = reaction(Field(d, 1.0), p);
  for (double v : one.total.values()) CHECK(v == doctest::Approx(1.0).epsilon(1e-14));

  std::mt19937_64 rng(12);
  const Field u = random_field(d, rng, -0.2, 2.0);
  const ReactionBreakdown r = reaction(u, p);
  for (std::size_t k = 0; k < u.size(); ++k) {
    CHECK(r.total[k] == r.growth[k] - r.nonlocal_sink - r.gradient_sink[k]);
    CHECK(r.growth[k] >= 0.0);
    CHECK(r.gradient_sink[k] >= 0.0);
  }
}

TEST_CASE("reaction on constants agrees with the scalar oracle") {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> coef(0.1, 5.0);
  std::uniform_real_distribution<double> expo(1.0, 3.0);
  for (int draw = 0; draw < 10; ++draw) {
    const double len = coef(rng);
    const DomainSpec d = draw % 2 ? line(31, len) : box(9, 7, len, 1.3);
    ModelParams p;
    p.a = coef(rng);
    p.b = coef(rng);
    p.c = coef(rng);
    p.rho = expo(rng);
    p.beta = expo(rng);
    p.delta = expo(rng);
    p.gamma = expo(rng);
    const double u0 = coef(rng) / 3.0;
    oracle::HomogeneousParams hp{p.a, p.b, p.rho, p.beta, p.delta, d.measure()};
    const double expected = oracle::homogeneous_rhs(u0, hp);
    const ReactionBreakdown r = reaction(Field(d, u0), p);
    const double scale = p.a * std::pow(u0, p.rho) + r.nonlocal_sink;
    for (double v : r.total.values()) CHECK(std::abs(v - expected) <= 1e-12 * scale);
  }
}
