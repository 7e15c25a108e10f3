#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "bcmf/errors.hpp"
#include "bcmf/measure.hpp"

using namespace bcmf;

namespace {

// ν_{1/2}^p of the dyadic cell [k/2^n, (k+1)/2^n]: the binary digits of k are the
// first n coin flips.
double binomial_cell(double p, std::uint32_t k, int n) {
  const int ones = std::popcount(k);
  return std::pow(p, n - ones) * std::pow(1.0 - p, ones);
}

// Level-n cylinder images [π(w), π(w) + λ^n L] and their weights.
struct Cylinders {
  std::vector<double> left;
  std::vector<double> weight;
  double width = 0.0;
};

Cylinders cylinders(double lambda, double p, int n) {
  Cylinders c;
  c.left = {0.0};
  c.weight = {1.0};
  double power = 1.0;
  for (int level = 0; level < n; ++level) {
    power *= lambda;
    std::vector<double> left, weight;
    left.reserve(2 * c.left.size());
    weight.reserve(2 * c.left.size());
    for (std::size_t i = 0; i < c.left.size(); ++i) {
      left.push_back(c.left[i]);
      weight.push_back(c.weight[i] * p);
      left.push_back(c.left[i] + power);
      weight.push_back(c.weight[i] * (1.0 - p));
    }
    c.left.swap(left);
    c.weight.swap(weight);
  }
  c.width = power * lambda / (1.0 - lambda);
  return c;
}

}  // namespace

TEST_CASE("exact binomial oracle at lambda = 1/2") {
  for (double p : {1.0 / 3.0, 0.5, 0.8}) {
    const Params params(0.5, p);
    for (int n = 1; n <= 8; ++n)
      for (std::uint32_t k = 0; k < (1U << n); ++k) {
        const double a = std::ldexp(static_cast<double>(k), -n);
        const double b = std::ldexp(static_cast<double>(k + 1), -n);
        const Enclosure e = nu_enclosure(params, Interval(a, b), 40);
        const double exact = binomial_cell(p, k, n);
        CHECK(e.contains(exact));
        CHECK(e.width() <= 1e-9);
      }
  }
}

TEST_CASE("enclosure matches the brute-force cylinder bracket") {
  const int n = 12;
  for (auto [lambda, p] : {std::pair{0.6, 0.5}, std::pair{0.57, 1.0 / 3.0}, std::pair{0.7, 0.2}}) {
    const Params params(lambda, p);
    const Cylinders c = cylinders(lambda, p, n);
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(0.0, params.support_right());
    for (int t = 0; t < 20; ++t) {
      double a = u(rng), b = u(rng);
      if (a > b) std::swap(a, b);
      double inside = 0.0, touching = 0.0;
      for (std::size_t i = 0; i < c.left.size(); ++i) {
        const double l = c.left[i], r = l + c.width;
        if (a <= l && r <= b) inside += c.weight[i];
        if (l <= b && a <= r) touching += c.weight[i];
      }
      const Enclosure e = nu_enclosure(params, Interval(a, b), n);
      CHECK(e.lo >= inside - 1e-12);
      CHECK(e.hi <= touching + 1e-12);
      CHECK(e.lo <= e.hi);
    }
  }
}

TEST_CASE("enclosures tighten with depth") {
  const Params params(0.62, 0.35);
  const Interval J(0.4, 0.9);
  Enclosure prev = nu_enclosure(params, J, 0);
  CHECK(prev.lo == 0.0);
  CHECK(prev.hi == 1.0);
  for (int d = 1; d <= 24; ++d) {
    const Enclosure e = nu_enclosure(params, J, d);
    CHECK(e.lo >= prev.lo - 1e-15);
    CHECK(e.hi <= prev.hi + 1e-15);
    prev = e;
  }
  CHECK(prev.width() < 0.05);
}

TEST_CASE("whole support and empty pieces") {
  const Params params(0.7, 0.4);
  const Enclosure all = nu_enclosure(params, params.support(), 10);
  CHECK(all.lo == 1.0);
  CHECK(all.hi == 1.0);
  const Enclosure left = nu_enclosure(params, Interval(-2.0, 0.0), 10);
  CHECK(left.hi == 0.0);
  CHECK_THROWS_AS(nu_enclosure(params, Interval(0.0, 1.0), -1), DomainError);
  CHECK_THROWS_AS(Interval(1.0, 0.0), DomainError);
}

TEST_CASE("reflection symmetry swaps p and 1-p") {
  const double lambda = 0.58;
  const Params a(lambda, 0.3), b(lambda, 0.7);
  const double right = a.support_right();
  for (auto [x, y] : {std::pair{0.1, 0.4}, std::pair{0.5, 1.2}, std::pair{0.0, 0.7}}) {
    const Enclosure e1 = nu_enclosure(a, Interval(x, y), 22);
    const Enclosure e2 = nu_enclosure(b, Interval(right - y, right - x), 22);
    CHECK(e1.overlaps(e2));
  }
}

TEST_CASE("mesh profile") {
  const Params half(0.5, 1.0 / 3.0);
  const MeshProfile m = mesh_profile(half, std::ldexp(1.0, -5), 40, 1);
  CHECK(m.cells.size() == 16);
  const auto [lo, hi] = m.totals();
  CHECK(lo <= 1.0 + 1e-12);
  CHECK(hi >= 1.0 - 1e-12);
  CHECK(hi - lo < 1e-9);

  const Params params(0.6, 0.4);
  const MeshProfile one = mesh_profile(params, 0.01, 20, 1);
  const MeshProfile many = mesh_profile(params, 0.01, 20, 3);
  REQUIRE(one.cells.size() == many.cells.size());
  for (std::size_t i = 0; i < one.cells.size(); ++i) {
    CHECK(one.cells[i].mass.lo == many.cells[i].mass.lo);
    CHECK(one.cells[i].mass.hi == many.cells[i].mass.hi);
  }
  const auto [plo, phi] = one.totals();
  CHECK(plo <= 1.0);
  CHECK(phi >= 1.0);
  CHECK_THROWS_AS(mesh_profile(params, 0.0), DomainError);
}

TEST_CASE("symbolic ball bracket contains the numeric enclosure") {
  const Params params(0.58, 0.5);
  const auto seq = EPSequence::parse("|10");
  const double x = pi(seq, 0.58);
  for (std::size_t n = 1; n <= 15; ++n) {
    const CylinderBounds b = cylinder_ball_bounds(params, seq, n);
    CHECK(b.lo <= b.hi);
    const Enclosure e = nu_ball(params, x, b.radius, 40);
    CHECK(e.hi >= b.lo);
    CHECK(e.lo <= b.hi);
  }
}

TEST_CASE("local dimension regression") {
  const auto seq = EPSequence::parse("|10");
  const DimEstimate a = local_dim_estimate(Params(0.58, 0.5), seq, 5, 25);
  CHECK(a.slope == doctest::Approx(1.27246).epsilon(1e-3));
  const DimEstimate b = local_dim_estimate(Params(0.57, 1.0 / 3.0), seq, 5, 25);
  CHECK(b.slope == doctest::Approx(1.33786).epsilon(1e-3));
  CHECK(b.predicted == doctest::Approx(1.33786).epsilon(1e-5));
  CHECK_THROWS_AS(local_dim_estimate(Params(0.58, 0.5), seq, 10, 5), DomainError);
  CHECK_THROWS_AS(local_dim_estimate(Params(0.65, 0.5), seq, 5, 10), PreconditionError);
}

TEST_CASE("sampling") {
  std::mt19937_64 a(5), b(5);
  for (int i = 0; i < 10; ++i) CHECK(sample_point(0.6, 0.3, 50, a) == sample_point(0.6, 0.3, 50, b));
  CHECK(sample_point(0.6, 1.0, 30, a) == 0.0);
  CHECK(sample_point(0.5, 0.0, 40, a) == doctest::Approx(1.0 - std::ldexp(1.0, -40)));
  CHECK_THROWS_AS(sample_point(0.6, 1.5, 10, a), DomainError);
}

TEST_CASE("line fit") {
  const LineFit f = fit_line({0.0, 1.0, 2.0, 3.0}, {1.0, 3.0, 5.0, 7.0});
  CHECK(f.slope == doctest::Approx(2.0));
  CHECK(f.intercept == doctest::Approx(1.0));
  CHECK(f.residual < 1e-12);
  CHECK_THROWS_AS(fit_line({1.0}, {2.0}), DomainError);
}
