#include "bcmf/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "bcmf/errors.hpp"
#include "bcmf/expansions.hpp"

namespace bcmf {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

void require_unit(double v, const char* name) {
  if (!(v > 0.0 && v < 1.0)) throw DomainError(std::string(name) + " must lie in (0,1)");
}

double binary_entropy_bits(double t) {
  auto term = [](double v) { return v > 0.0 ? -v * std::log2(v) : 0.0; };
  return term(t) + term(1.0 - t);
}

double log_binomial(int n, int j) {
  return std::lgamma(n + 1.0) - std::lgamma(j + 1.0) - std::lgamma(n - j + 1.0);
}

}  // namespace

const char* to_string(CurveKind kind) {
  switch (kind) {
    case CurveKind::Exact: return "exact";
    case CurveKind::LowerBound: return "lower_bound";
    case CurveKind::UpperBound: return "upper_bound";
    case CurveKind::Coarse: return "coarse";
  }
  return "unknown";
}

const char* to_string(DimRegime regime) {
  return regime == DimRegime::Singularity ? "singularity" : "dimension_one";
}

std::optional<double> SpectrumCurve::value_at(double alpha) const {
  if (points.empty() || alpha < points.front().alpha || alpha > points.back().alpha)
    return std::nullopt;
  auto it = std::lower_bound(points.begin(), points.end(), alpha,
                             [](const SpectrumPoint& pt, double a) { return pt.alpha < a; });
  if (it->alpha == alpha || it == points.begin()) return it->f;
  const auto& right = *it;
  const auto& left = *(it - 1);
  const double t = (alpha - left.alpha) / (right.alpha - left.alpha);
  return left.f + t * (right.f - left.f);
}

bool SpectrumCurve::is_concave(double tol) const {
  for (std::size_t i = 1; i + 1 < points.size(); ++i) {
    const auto& a = points[i - 1];
    const auto& b = points[i];
    const auto& c = points[i + 1];
    const double chord = a.f + (c.f - a.f) * (b.alpha - a.alpha) / (c.alpha - a.alpha);
    if (b.f < chord - tol) return false;
  }
  return true;
}

double SpectrumCurve::max_f() const {
  double m = -std::numeric_limits<double>::infinity();
  for (const auto& pt : points) m = std::max(m, pt.f);
  return m;
}

std::vector<double> default_q_grid(std::size_t points, double bound) {
  if (points < 2) throw DomainError("q grid needs at least two points");
  constexpr double kStretch = 3.0;
  std::vector<double> grid(points);
  const double scale = bound / std::sinh(kStretch);
  for (std::size_t i = 0; i < points; ++i) {
    const double t = -1.0 + 2.0 * static_cast<double>(i) / static_cast<double>(points - 1);
    grid[i] = scale * std::sinh(kStretch * t);
  }
  grid.front() = -bound;
  grid.back() = bound;
  if (points % 2 == 1) grid[points / 2] = 0.0;
  return grid;
}

std::vector<double> linspace(double a, double b, std::size_t n) {
  if (n == 0) return {};
  if (n == 1) return {a};
  std::vector<double> v(n);
  for (std::size_t i = 0; i < n; ++i)
    v[i] = a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1);
  v.back() = b;
  return v;
}

SpectrumPoint osc_spectrum_point(const Eigen::ArrayXd& weights, const Eigen::ArrayXd& multiplicity,
                                 double rho, double q, double q_bound) {
  if (weights.size() == 0 || weights.size() != multiplicity.size())
    throw DomainError("osc_spectrum_point: weights and multiplicities must be nonempty and match");
  if ((weights <= 0.0).any() || (weights >= 1.0).any())
    throw DomainError("osc_spectrum_point: weights must lie in (0,1)");
  if ((multiplicity <= 0.0).any()) throw DomainError("osc_spectrum_point: multiplicities must be positive");
  require_unit(rho, "rho");
  SpectrumPoint pt;
  if (std::abs(q) > q_bound) {
    q = std::copysign(q_bound, q);
    pt.flags |= kPointClipped;
  }
  pt.q = q;
  // Log-sum-exp over t_i = log c_i + q log w_i keeps W(q) finite for any q.
  const Eigen::ArrayXd logw = weights.log();
  const Eigen::ArrayXd t = multiplicity.log() + q * logw;
  const double tmax = t.maxCoeff();
  const Eigen::ArrayXd e = (t - tmax).exp();
  const double sum = e.sum();
  const double log_w = tmax + std::log(sum);
  const double log_rho = std::log(rho);
  pt.alpha = (e * logw).sum() / (sum * log_rho);
  pt.f = q * pt.alpha - log_w / log_rho;
  return pt;
}

SpectrumPoint osc_spectrum_point(const Eigen::ArrayXd& weights, double rho, double q, double q_bound) {
  return osc_spectrum_point(weights, Eigen::ArrayXd::Ones(weights.size()), rho, q, q_bound);
}

SpectrumCurve spectrum_curve(const Eigen::ArrayXd& weights, const Eigen::ArrayXd& multiplicity,
                             double rho, const std::vector<double>& q_grid) {
  if (!std::is_sorted(q_grid.begin(), q_grid.end()))
    throw DomainError("spectrum_curve: q grid must be sorted");
  std::vector<SpectrumPoint> raw;
  raw.reserve(q_grid.size());
  for (double q : q_grid) raw.push_back(osc_spectrum_point(weights, multiplicity, rho, q));
  // α(q) is nonincreasing in q; walk the grid backwards and keep strict increases.
  SpectrumCurve curve;
  curve.meta.kind = CurveKind::Exact;
  curve.meta.params = {{"rho", rho}, {"maps", static_cast<double>(multiplicity.sum())}};
  for (auto it = raw.rbegin(); it != raw.rend(); ++it)
    if (curve.points.empty() || it->alpha > curve.points.back().alpha) curve.points.push_back(*it);
  return curve;
}

SpectrumCurve spectrum_curve(const Eigen::ArrayXd& weights, double rho, const std::vector<double>& q_grid) {
  return spectrum_curve(weights, Eigen::ArrayXd::Ones(weights.size()), rho, q_grid);
}

std::optional<double> binomial_spectrum(double p, double alpha) {
  require_unit(p, "p");
  const double a0 = -std::log2(p);
  const double a1 = -std::log2(1.0 - p);
  if (a0 == a1) return alpha == a0 ? std::optional<double>(1.0) : std::nullopt;
  const double t = (alpha - a1) / (a0 - a1);
  if (t < 0.0 || t > 1.0) return std::nullopt;
  return binary_entropy_bits(t);
}

double eta_k(double p, int m) {
  require_unit(p, "p");
  if (m < 2) throw DomainError("eta_k: m must be >= 2 (Sigma_1 is empty)");
  // Weights depend only on the number j of zeros: C(m,j) words of weight p^j (1−p)^{m−j}.
  auto excess = [&](double eta) {
    double sum = 0.0;
    for (int j = 1; j < m; ++j)
      sum += std::exp(log_binomial(m, j) + eta * (j * std::log(p) + (m - j) * std::log(1.0 - p)));
    return sum - 1.0;
  };
  double lo = 0.0;
  double hi = 1.0;
  while (hi - lo > 1e-14) {
    const double mid = 0.5 * (lo + hi);
    (excess(mid) > 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

SpectrumCurve lower_bound_curve(double lambda, double p, int k, const std::vector<double>& q_grid) {
  require_unit(p, "p");
  constexpr int kMaxOrder = 40;
  if (k == 0) {
    k = static_cast<int>(multinacci_order(lambda, kMaxOrder));
  } else {
    if (k < 4) throw RangeError("lower_bound_curve: k must be >= 4 so that m = floor(k/2) >= 2");
    const double gk = solve_constant(ConstantKind::Multinacci, 1e-15, k);
    if (!(lambda > 0.5 && lambda < gk))
      throw RangeError("lower_bound_curve: require 1/2 < lambda < g_k");
  }
  const int m = k / 2;
  if (m < 2)
    throw RangeError("lower_bound_curve: lambda too large; needs lambda < g_4 so that m >= 2");
  const double eta = eta_k(p, m);
  Eigen::ArrayXd weights(m - 1);
  Eigen::ArrayXd mult(m - 1);
  for (int j = 1; j < m; ++j) {
    weights(j - 1) = std::exp(eta * (j * std::log(p) + (m - j) * std::log(1.0 - p)));
    mult(j - 1) = std::exp(log_binomial(m, j));
  }
  const double rho = std::pow(lambda, m);
  SpectrumCurve sub = spectrum_curve(weights, mult, rho, q_grid);
  SpectrumCurve curve;
  curve.meta.kind = CurveKind::LowerBound;
  curve.meta.params = {{"lambda", lambda}, {"p", p}, {"k", static_cast<double>(k)},
                       {"m", static_cast<double>(m)}, {"eta", eta}};
  curve.points.reserve(sub.points.size());
  for (auto pt : sub.points) {
    pt.alpha /= eta;
    curve.points.push_back(pt);
  }
  return curve;
}

std::optional<int> lambda_k_max(double lambda) {
  if (!(lambda > 0.5 && lambda < 1.0)) throw DomainError("lambda_k_max: lambda must lie in (1/2,1)");
  const double lhs = 2.0 * lambda - 1.0;
  auto in_lambda_k = [&](int k) { return lhs < std::pow(lambda, k - 1) * (1.0 - lambda); };
  if (!in_lambda_k(2)) return std::nullopt;
  int k = 2;
  while (in_lambda_k(k + 1)) ++k;
  return k;
}

SpectrumCurve upper_bound_curve(double lambda, double p, const std::vector<double>& alpha_grid) {
  require_unit(p, "p");
  const auto k = lambda_k_max(lambda);
  if (!k) throw RangeError("upper_bound_curve: lambda lies in no Lambda_k (requires lambda < g)");
  if (!std::is_sorted(alpha_grid.begin(), alpha_grid.end()))
    throw DomainError("upper_bound_curve: alpha grid must be sorted");
  const double a0 = -std::log2(p);
  const double a1 = -std::log2(1.0 - p);
  const double amin = std::min(a0, a1);
  const double amax = std::max(a0, a1);
  const double peak = 0.5 * (a0 + a1);
  const double scale = std::abs(std::log2(lambda));
  const double window = 1.0 / *k;

  SpectrumCurve curve;
  curve.meta.kind = CurveKind::UpperBound;
  curve.meta.params = {{"lambda", lambda}, {"p", p}, {"k", static_cast<double>(*k)}};
  bool any_out = false;
  for (double alpha : alpha_grid) {
    SpectrumPoint pt;
    pt.q = kNaN;
    pt.alpha = alpha;
    const double left = scale * alpha;
    const double right = left + window;
    if (right < amin || left > amax) {
      pt.f = 0.0;
      pt.flags |= kPointOutOfSupport;
      any_out = true;
    } else if (left <= peak && peak <= right) {
      pt.f = 1.0;
    } else {
      pt.f = *binomial_spectrum(p, right < peak ? right : left);
    }
    if (curve.points.empty() || alpha > curve.points.back().alpha) curve.points.push_back(pt);
  }
  if (any_out) curve.meta.flags.emplace_back("out_of_support");
  return curve;
}

std::vector<double> default_alpha_grid(double p, std::size_t points) {
  require_unit(p, "p");
  const double a0 = -std::log2(p);
  const double a1 = -std::log2(1.0 - p);
  return linspace(std::min(a0, a1) - 0.05, std::max(a0, a1) + 0.05, points);
}

SpectrumBounds spectrum_bounds(double lambda, double p, const std::vector<double>& alpha_grid, int k) {
  SpectrumBounds b;
  const auto q_grid = default_q_grid();
  b.lower = lower_bound_curve(lambda, p, k, q_grid);
  b.upper = upper_bound_curve(lambda, p, alpha_grid);
  Eigen::ArrayXd w(2);
  w << p, 1.0 - p;
  b.exact = spectrum_curve(w, 0.5, q_grid);
  b.exact.meta.params = {{"lambda", 0.5}, {"p", p}};
  b.alpha = alpha_grid;
  b.gap = 0.0;
  b.common_min = std::numeric_limits<double>::infinity();
  b.common_max = -std::numeric_limits<double>::infinity();
  auto compare = [&b](double alpha, double lo, double hi) {
    b.gap = std::max(b.gap, hi - lo);
    b.common_min = std::min(b.common_min, alpha);
    b.common_max = std::max(b.common_max, alpha);
  };
  for (double alpha : alpha_grid) {
    const auto lo = b.lower.value_at(alpha);
    b.lower_on_grid.push_back(lo.value_or(0.0));
    const auto hi = b.upper.value_at(alpha);
    b.upper_on_grid.push_back(hi.value_or(0.0));
    b.exact_on_grid.push_back(binomial_spectrum(p, alpha).value_or(0.0));
    if (lo && hi) compare(alpha, *lo, *hi);
  }
  // A degenerate lower curve (p = 1/2 collapses it to one point) may fall between grid nodes,
  // where interpolating the upper curve is meaningless; evaluate it there directly.
  for (const auto& pt : b.lower.points)
    if (pt.alpha >= alpha_grid.front() && pt.alpha <= alpha_grid.back())
      compare(pt.alpha, pt.f, upper_bound_curve(lambda, p, {pt.alpha}).points.front().f);
  if (b.common_min > b.common_max) throw PreconditionError("spectrum_bounds: curves share no alpha");
  return b;
}

CoarseCounts coarse_counts(const MeshProfile& profile, double alpha_plus, double alpha_minus,
                           CountMode mode) {
  if (profile.cells.empty()) throw PreconditionError("coarse_counts: empty mesh profile");
  CoarseCounts c;
  c.r = profile.r;
  c.alpha_plus = alpha_plus;
  c.alpha_minus = alpha_minus;
  c.cells = profile.cells.size();
  // Thresholds compared in log space so that huge exponents do not underflow.
  const double log_scale = std::log(2.0 * profile.r);
  const double log_plus = alpha_plus * log_scale;
  const double log_minus = alpha_minus * log_scale;
  for (const auto& cell : profile.cells) {
    const double mid = 0.5 * (cell.mass.lo + cell.mass.hi);
    const double for_plus = mode == CountMode::Certified ? cell.mass.lo : mid;
    const double for_minus = mode == CountMode::Certified ? cell.mass.hi : mid;
    if (for_plus > 0.0 && std::log(for_plus) >= log_plus) ++c.n_plus;
    if (for_minus <= 0.0 || std::log(for_minus) <= log_minus) ++c.n_minus;
  }
  c.n_joint = std::min(c.n_plus, c.n_minus);
  return c;
}

std::optional<double> coarse_value(const MeshProfile& profile, double alpha, double eps, CountMode mode) {
  const auto c = coarse_counts(profile, alpha + eps, alpha - eps, mode);
  if (c.n_joint == 0) return std::nullopt;
  return std::log(static_cast<double>(c.n_joint)) / -std::log(2.0 * profile.r);
}

CoarseSpectrum coarse_spectrum(const Params& params, const std::vector<double>& r_list,
                               const std::vector<double>& alpha_grid, double eps, int depth,
                               unsigned threads, CountMode mode) {
  if (r_list.empty()) throw DomainError("coarse_spectrum: empty r list");
  for (std::size_t i = 1; i < r_list.size(); ++i)
    if (!(r_list[i] < r_list[i - 1])) throw DomainError("coarse_spectrum: r list must be decreasing");
  if (!(eps > 0.0)) throw DomainError("coarse_spectrum: eps must be positive");
  CoarseSpectrum out;
  std::vector<double> best(alpha_grid.size(), -std::numeric_limits<double>::infinity());
  for (double r : r_list) {
    const MeshProfile profile = mesh_profile(params, r, depth, threads);
    for (std::size_t i = 0; i < alpha_grid.size(); ++i) {
      const auto c = coarse_counts(profile, alpha_grid[i] + eps, alpha_grid[i] - eps, mode);
      double v = kNaN;
      if (c.n_joint > 0) {
        v = std::log(static_cast<double>(c.n_joint)) / -std::log(2.0 * r);
        best[i] = std::max(best[i], v);
      }
      out.table.push_back({r, alpha_grid[i], c.n_joint, v});
    }
  }
  auto& curve = out.curve;
  curve.meta.kind = CurveKind::Coarse;
  curve.meta.params = {{"lambda", params.lambda()}, {"p", params.p()}, {"eps", eps},
                       {"depth", static_cast<double>(depth)}};
  for (std::size_t i = 0; i < r_list.size(); ++i)
    curve.meta.params.emplace_back("r" + std::to_string(i), r_list[i]);
  curve.meta.flags.emplace_back(mode == CountMode::Certified ? "certified_counts" : "midpoint_counts");
  curve.meta.flags.emplace_back("empirical");
  std::size_t empty = 0;
  for (std::size_t i = 0; i < alpha_grid.size(); ++i) {
    if (!std::isfinite(best[i])) {
      ++empty;
      continue;
    }
    if (curve.points.empty() || alpha_grid[i] > curve.points.back().alpha)
      curve.points.push_back({kNaN, alpha_grid[i], best[i], 0});
  }
  if (empty > 0) curve.meta.flags.emplace_back("empty_levels_omitted");
  return out;
}

HolderBound holder_bound(double lambda) {
  if (!(lambda > 0.5 && lambda < 1.0)) throw DomainError("holder_bound: lambda must lie in (1/2,1)");
  HolderBound best;
  double mu = lambda;
  for (int j = 1; mu > 0.5; ++j, mu *= lambda) {
    const auto k = lambda_k_max(mu);
    if (!k) continue;
    const double base = (*k - 1) * std::log(2.0) / (*k * std::abs(std::log(mu)));
    const double boosted = j * base - (j - 1);
    if (best.boost == 0 || boosted > best.delta) {
      best.delta = boosted;
      best.k_used = *k;
      best.boost = j;
    }
  }
  best.delta = std::max(best.delta, 0.0);
  return best;
}

TypicalDim typical_dim(double lambda, double p, double q) {
  require_unit(lambda, "lambda");
  require_unit(p, "p");
  require_unit(q, "q");
  TypicalDim t;
  const double log_lambda = std::log(lambda);
  t.entropy = -q * std::log(p) - (1.0 - q) * std::log(1.0 - p);
  t.predicted = std::min(t.entropy / std::abs(log_lambda), 1.0);
  t.j_lo = std::log(1.0 - p) / log_lambda;
  t.j_hi = 1.0;
  t.regime = lambda < std::pow(p, q) * std::pow(1.0 - p, 1.0 - q) ? DimRegime::Singularity
                                                                  : DimRegime::DimensionOne;
  t.alpha = (q * std::log(p) + (1.0 - q) * std::log(1.0 - p)) / log_lambda;
  const double hq = -q * std::log(q) - (1.0 - q) * std::log(1.0 - q);
  t.spectrum_lower = hq / std::abs(log_lambda);
  return t;
}

TypicalDimMc typical_dim_mc(double lambda, double p, double q, std::size_t samples,
                            std::size_t n_digits, const std::vector<double>& radii, int depth,
                            std::mt19937_64& rng) {
  require_unit(q, "q");
  if (samples == 0) throw DomainError("typical_dim_mc: need at least one sample");
  if (radii.size() < 2) throw DomainError("typical_dim_mc: need at least two radii");
  const Params params(lambda, p);
  TypicalDimMc out;
  std::vector<double> xs;
  std::vector<double> ys;
  for (std::size_t s = 0; s < samples; ++s) {
    const double x = sample_point(lambda, q, n_digits, rng);
    xs.clear();
    ys.clear();
    for (double r : radii) {
      const Enclosure e = nu_ball(params, x, r, depth);
      if (e.lo <= 0.0) continue;
      xs.push_back(std::log(r));
      ys.push_back(0.5 * (std::log(std::max(e.lo, 1e-300)) + std::log(e.hi)));
    }
    if (xs.size() >= 2) out.slopes.push_back(fit_line(xs, ys).slope);
  }
  if (out.slopes.empty()) throw PreconditionError("typical_dim_mc: no sample produced a usable fit");
  const double n = static_cast<double>(out.slopes.size());
  out.mean_slope = std::accumulate(out.slopes.begin(), out.slopes.end(), 0.0) / n;
  double ss = 0.0;
  for (double s : out.slopes) ss += (s - out.mean_slope) * (s - out.mean_slope);
  out.sd = out.slopes.size() > 1 ? std::sqrt(ss / (n - 1.0)) : 0.0;
  return out;
}

}  // namespace bcmf
