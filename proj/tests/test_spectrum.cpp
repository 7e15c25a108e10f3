#include <doctest.h>

#include <cmath>
#include <random>

#include "bcmf/errors.hpp"
#include "bcmf/expansions.hpp"
#include "bcmf/spectrum.hpp"

using namespace bcmf;

namespace {

Eigen::ArrayXd weights(std::initializer_list<double> w) {
  Eigen::ArrayXd a(static_cast<Eigen::Index>(w.size()));
  Eigen::Index i = 0;
  for (double v : w) a(i++) = v;
  return a;
}

double h_bits(double t) { return -t * std::log2(t) - (1.0 - t) * std::log2(1.0 - t); }

}  // namespace

TEST_CASE("Legendre point identities") {
  const auto w = weights({1.0 / 3.0, 2.0 / 3.0});
  const auto one = osc_spectrum_point(w, 0.5, 1.0);
  CHECK(one.alpha == doctest::Approx(h_bits(1.0 / 3.0)).epsilon(1e-12));
  CHECK(one.f == doctest::Approx(one.alpha).epsilon(1e-12));
  const auto zero = osc_spectrum_point(w, 0.5, 0.0);
  CHECK(zero.f == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(zero.alpha == doctest::Approx(1.084963).epsilon(1e-6));
  CHECK(osc_spectrum_point(w, 0.5, 40.0).alpha == doctest::Approx(0.584963).epsilon(1e-3));
  CHECK(osc_spectrum_point(w, 0.5, -40.0).alpha == doctest::Approx(1.584963).epsilon(1e-3));

  const auto clipped = osc_spectrum_point(w, 0.5, 1e6);
  CHECK(clipped.q == 40.0);
  CHECK((clipped.flags & kPointClipped) != 0);

  const auto three = weights({0.2, 0.3, 0.5});
  CHECK(osc_spectrum_point(three, 0.25, 0.0).f ==
        doctest::Approx(std::log(3.0) / -std::log(0.25)).epsilon(1e-12));
  for (double q : {-3.0, 0.0, 2.5}) {
    const auto u = osc_spectrum_point(weights({0.5, 0.5}), 0.5, q);
    CHECK(u.alpha == doctest::Approx(1.0));
    CHECK(u.f == doctest::Approx(1.0));
  }
  CHECK_THROWS_AS(osc_spectrum_point(weights({0.0, 1.0}), 0.5, 1.0), DomainError);
}

TEST_CASE("curve matches the closed-form binomial spectrum") {
  for (double p : {0.2, 1.0 / 3.0, 0.45}) {
    const auto curve = spectrum_curve(weights({p, 1.0 - p}), 0.5, default_q_grid());
    CHECK(curve.is_concave());
    CHECK(curve.max_f() == doctest::Approx(1.0).epsilon(1e-9));
    for (std::size_t i = 1; i < curve.points.size(); ++i)
      CHECK(curve.points[i].alpha > curve.points[i - 1].alpha);
    for (const auto& pt : curve.points) {
      const auto f = binomial_spectrum(p, pt.alpha);
      REQUIRE(f);
      CHECK(pt.f == doctest::Approx(*f).epsilon(1e-9));
      CHECK(pt.f <= pt.alpha + 1e-12);
      CHECK(pt.f <= 1.0 + 1e-12);
    }
  }
  CHECK_FALSE(binomial_spectrum(1.0 / 3.0, 0.5));
  CHECK(binomial_spectrum(0.5, 1.0) == 1.0);
}

TEST_CASE("q grid") {
  const auto g = default_q_grid();
  CHECK(g.size() == kDefaultQPoints);
  CHECK(g.front() == -kDefaultQBound);
  CHECK(g.back() == kDefaultQBound);
  CHECK(g[g.size() / 2] == 0.0);
  // Finer spacing near 0 than at the ends.
  CHECK(g[g.size() / 2 + 1] - g[g.size() / 2] < g.back() - g[g.size() - 2]);
}

TEST_CASE("eta") {
  CHECK(eta_k(1.0 / 3.0, 2) == doctest::Approx(std::log(2.0) / std::log(4.5)).epsilon(1e-10));
  CHECK(eta_k(0.5, 2) == doctest::Approx(0.5).epsilon(1e-10));
  double prev = 0.0;
  for (int m = 2; m <= 10; ++m) {
    const double e = eta_k(1.0 / 3.0, m);
    CHECK(e > prev);
    CHECK(e < 1.0);
    prev = e;
  }
  CHECK(eta_k(1.0 / 3.0, 60) > 0.99);
  CHECK_THROWS_AS(eta_k(0.3, 1), DomainError);
}

TEST_CASE("Lambda_k") {
  CHECK(lambda_k_max(0.51) == 5);
  CHECK(*lambda_k_max(0.5001) > *lambda_k_max(0.501));
  CHECK(*lambda_k_max(0.501) > *lambda_k_max(0.51));
  CHECK_FALSE(lambda_k_max(0.66));
  int prev = 1000;
  for (double l = 0.5005; l < 0.618; l += 0.0025) {
    const auto k = lambda_k_max(l);
    REQUIRE(k);
    CHECK(*k <= prev);
    prev = *k;
  }
}

TEST_CASE("lower bound curve") {
  const double lambda = 0.501;
  const auto curve = lower_bound_curve(lambda, 0.5, 0, default_q_grid());
  const int k = static_cast<int>(multinacci_order(lambda, 40));
  const int m = k / 2;
  CHECK(curve.meta.kind == CurveKind::LowerBound);
  CHECK(curve.max_f() ==
        doctest::Approx(std::log(std::pow(2.0, m) - 2.0) / (m * std::abs(std::log(lambda)))).epsilon(1e-9));
  const auto third = lower_bound_curve(lambda, 1.0 / 3.0, 0, default_q_grid());
  CHECK(third.is_concave());
  CHECK(third.max_f() < 1.0);
  CHECK_THROWS_AS(lower_bound_curve(lambda, 0.5, 3, default_q_grid()), RangeError);
  CHECK_THROWS_AS(lower_bound_curve(0.53, 0.5, 6, default_q_grid()), RangeError);
}

TEST_CASE("upper bound curve") {
  const double p = 1.0 / 3.0;
  const auto grid = default_alpha_grid(p);
  const auto up = upper_bound_curve(0.501, p, grid);
  CHECK(up.max_f() == 1.0);
  bool flagged = false;
  for (const auto& pt : up.points) {
    CHECK(std::isnan(pt.q));
    if (pt.flags & kPointOutOfSupport) {
      flagged = true;
      CHECK(pt.f == 0.0);
    }
    const auto exact = binomial_spectrum(p, pt.alpha);
    if (exact) CHECK(pt.f >= *exact - 1e-12);
  }
  CHECK(flagged);
  CHECK_THROWS_AS(upper_bound_curve(0.66, p, grid), RangeError);
}

TEST_CASE("bounds order and converge") {
  const double p = 1.0 / 3.0;
  double gaps[2];
  int i = 0;
  for (double lambda : {0.501, 0.5001}) {
    const auto b = spectrum_bounds(lambda, p, default_alpha_grid(p));
    for (std::size_t j = 0; j < b.alpha.size(); ++j) CHECK(b.lower_on_grid[j] <= b.upper_on_grid[j] + 1e-12);
    gaps[i++] = b.gap;
  }
  CHECK(gaps[1] < gaps[0]);
  const auto b2 = spectrum_bounds(0.501, 0.5, default_alpha_grid(0.5));
  for (std::size_t j = 0; j < b2.alpha.size(); ++j) CHECK(b2.lower_on_grid[j] <= b2.upper_on_grid[j] + 1e-12);
  REQUIRE(b2.lower.points.size() == 1);
  const auto& pt = b2.lower.points.front();
  CHECK(pt.f <= upper_bound_curve(0.501, 0.5, {pt.alpha}).points.front().f);
  CHECK(b2.gap >= 0.0);
}

TEST_CASE("coarse counts") {
  const Params params(0.5, 1.0 / 3.0);
  const MeshProfile m = mesh_profile(params, std::ldexp(1.0, -9), 40, 1);
  const auto all = coarse_counts(m, 50.0, 0.0);
  CHECK(all.n_minus == m.cells.size());
  CHECK(all.n_plus == m.cells.size());
  CHECK(coarse_counts(m, 0.0, 0.0).n_plus <= 1);
  CHECK(coarse_counts(m, 0.0, 50.0).n_minus == 0);
  std::size_t prev_plus = 0;
  std::size_t prev_minus = m.cells.size();
  for (double a = 0.4; a <= 1.8; a += 0.05) {
    const auto c = coarse_counts(m, a, a);
    CHECK(c.n_plus >= prev_plus);
    CHECK(c.n_minus <= prev_minus);
    CHECK(c.n_joint == std::min(c.n_plus, c.n_minus));
    prev_plus = c.n_plus;
    prev_minus = c.n_minus;
  }
  const auto peak = coarse_value(m, 1.085, 0.05);
  REQUIRE(peak);
  CHECK(*peak == doctest::Approx(1.0).epsilon(0.1));
}

TEST_CASE("coarse spectrum") {
  const Params params(0.5, 0.5);
  const auto cs = coarse_spectrum(params, {1.0 / 64, 1.0 / 256}, linspace(0.8, 1.2, 9), 0.05, 40, 1);
  CHECK(cs.curve.meta.kind == CurveKind::Coarse);
  CHECK(cs.table.size() == 18);
  REQUIRE(cs.curve.value_at(1.0));
  CHECK(*cs.curve.value_at(1.0) == doctest::Approx(1.0).epsilon(1e-9));
  CHECK_THROWS_AS(coarse_spectrum(params, {1.0 / 256, 1.0 / 64}, {1.0}, 0.05), DomainError);
}

TEST_CASE("Hoelder bound") {
  const auto h = holder_bound(0.51);
  CHECK(h.delta == doctest::Approx(0.823527).epsilon(1e-6));
  CHECK(h.k_used == 5);
  CHECK(h.boost == 1);
  const auto near = holder_bound(0.708);
  CHECK(near.boost == 2);
  CHECK(near.delta > holder_bound(0.6).delta);
  // Approaching 2^{-1/2} from above, the j = 2 bound tends to 1.
  CHECK(holder_bound(0.70712).delta > holder_bound(0.7072).delta);
  CHECK(holder_bound(0.7072).delta > near.delta);
  CHECK(holder_bound(0.70712).delta > 0.84);
  CHECK(holder_bound(0.9).delta >= 0.0);
  CHECK_THROWS_AS(holder_bound(0.5), DomainError);
}

TEST_CASE("mesh maxima decay at least at the Hoelder rate") {
  for (double lambda : {0.51, 0.55, 0.6}) {
    const Params params(lambda, 0.5);
    std::vector<double> log_r, log_m;
    for (int n = 6; n <= 12; ++n) {
      const double r = std::ldexp(1.0, -n);
      log_r.push_back(std::log(r));
      log_m.push_back(std::log(mesh_profile(params, r, 40, 0).max_hi()));
    }
    INFO(lambda);
    CHECK(fit_line(log_r, log_m).slope >= holder_bound(lambda).delta - 0.02);
  }
}

TEST_CASE("typical dimension") {
  const auto t = typical_dim(0.6, 1.0 / 3.0, 0.5);
  CHECK(t.j_lo == doctest::Approx(0.793745).epsilon(1e-6));
  CHECK(t.j_hi == 1.0);
  const auto half = typical_dim(0.5, 0.5, 0.5);
  CHECK(half.predicted == 1.0);
  const double p = 0.3;
  const auto same = typical_dim(0.55, p, p);
  const double hp = -p * std::log(p) - (1 - p) * std::log(1 - p);
  CHECK(same.entropy == doctest::Approx(hp));
  CHECK(same.predicted == doctest::Approx(std::min(hp / -std::log(0.55), 1.0)));
  CHECK(typical_dim(0.2, 0.5, 0.5).regime == DimRegime::Singularity);
  CHECK(typical_dim(0.7, 0.5, 0.5).regime == DimRegime::DimensionOne);
  CHECK_THROWS_AS(typical_dim(0.6, 1.2, 0.5), DomainError);
}

TEST_CASE("typical dimension Monte-Carlo is reproducible") {
  std::vector<double> radii;
  for (int n = 4; n <= 16; ++n) radii.push_back(std::ldexp(1.0, -n));
  std::mt19937_64 a(3), b(3);
  const auto x = typical_dim_mc(0.5, 1.0 / 3.0, 0.25, 40, 60, radii, 40, a);
  const auto y = typical_dim_mc(0.5, 1.0 / 3.0, 0.25, 40, 60, radii, 40, b);
  CHECK(x.mean_slope == y.mean_slope);
  CHECK(x.slopes == y.slopes);
  CHECK(x.diagnostic_only);
}
