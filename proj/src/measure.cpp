#include "bcmf/measure.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <thread>

#include "bcmf/errors.hpp"

namespace bcmf {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double next_down(double v) { return std::nextafter(v, -kInf); }
double next_up(double v) { return std::nextafter(v, kInf); }

// Directed quotient x/λ: fma gives the exact sign of q·λ − x.
double div_down(double x, double lambda) {
  const double q = x / lambda;
  return std::fma(q, lambda, -x) > 0.0 ? next_down(q) : q;
}
double div_up(double x, double lambda) {
  const double q = x / lambda;
  return std::fma(q, lambda, -x) < 0.0 ? next_up(q) : q;
}

// Error term of s = a + b (TwoSum): a + b = s + err exactly.
double two_sum_error(double a, double b, double s) {
  const double bb = s - a;
  return (a - (s - bb)) + (b - bb);
}
double sub_down(double y, double j) {
  if (j == 0.0) return y;
  const double s = y - j;
  return two_sum_error(y, -j, s) < 0.0 ? next_down(s) : s;
}
double sub_up(double y, double j) {
  if (j == 0.0) return y;
  const double s = y - j;
  return two_sum_error(y, -j, s) > 0.0 ? next_up(s) : s;
}

double mul_down(double a, double b) {
  const double q = a * b;
  return std::fma(a, b, -q) < 0.0 ? next_down(q) : q;
}
double mul_up(double a, double b) {
  const double q = a * b;
  return std::fma(a, b, -q) > 0.0 ? next_up(q) : q;
}

// Neumaier-compensated accumulator.
struct CompensatedSum {
  double sum = 0.0;
  double carry = 0.0;
  std::size_t terms = 0;
  void add(double v) {
    const double t = sum + v;
    carry += std::abs(sum) >= std::abs(v) ? (sum - t) + v : (v - t) + sum;
    sum = t;
    ++terms;
  }
  double value() const { return sum + carry; }
  // Compensated summation of nonnegative terms is accurate to a couple of ulps;
  // two steps outward make the bound directed.
  double lower() const { return terms > 1 ? next_down(next_down(value())) : value(); }
  double upper() const { return terms > 1 ? next_up(next_up(value())) : value(); }
};

class EnclosureRecursion {
 public:
  explicit EnclosureRecursion(const Params& params)
      : lambda_(params.lambda()), p_(params.p()), q_lo_(sub_down(1.0, p_)), q_hi_(sub_up(1.0, p_)) {
    // Upper bound of L = λ/(1−λ).
    const double one_minus = 1.0 - lambda_;
    const double err = two_sum_error(1.0, -lambda_, one_minus);
    const double denom_down = err < 0.0 ? next_down(one_minus) : one_minus;
    right_up_ = div_up(lambda_, denom_down);
  }

  Enclosure run(Interval J, int depth) {
    lo_ = {};
    hi_ = {};
    descend(J.a, J.b, J.a, J.b, 1.0, 1.0, depth);
    const double lo = std::clamp(lo_.lower(), 0.0, 1.0);
    const double hi = std::clamp(hi_.upper(), lo, 1.0);
    return {lo, hi};
  }

 private:
  // [olo, ohi] ⊇ true pulled-back interval ⊇ [ilo, ihi] (inner may be empty);
  // wlo ≤ cylinder weight ≤ whi.
  void descend(double olo, double ohi, double ilo, double ihi, double wlo, double whi, int depth) {
    if (ohi <= 0.0 || olo >= right_up_) return;
    if (ilo <= 0.0 && ihi >= right_up_) {
      lo_.add(wlo);
      hi_.add(whi);
      return;
    }
    if (depth == 0) {
      hi_.add(whi);
      return;
    }
    for (int j = 0; j < 2; ++j) {
      const double jd = j;
      descend(sub_down(div_down(olo, lambda_), jd), sub_up(div_up(ohi, lambda_), jd),
              sub_up(div_up(ilo, lambda_), jd), sub_down(div_down(ihi, lambda_), jd),
              mul_down(wlo, j == 0 ? p_ : q_lo_), mul_up(whi, j == 0 ? p_ : q_hi_), depth - 1);
    }
  }

  double lambda_;
  double p_;
  double q_lo_;  // 1 − p rounded down and up
  double q_hi_;
  double right_up_ = 0.0;
  CompensatedSum lo_;
  CompensatedSum hi_;
};

}  // namespace

Enclosure nu_enclosure(const Params& params, Interval J, int depth) {
  if (depth < 0) throw DomainError("nu_enclosure: depth must be >= 0");
  return EnclosureRecursion(params).run(J, depth);
}

Enclosure nu_ball(const Params& params, double x, double r, int depth) {
  if (!(r > 0.0)) throw DomainError("nu_ball: radius must be positive");
  return nu_enclosure(params, Interval(x - r, x + r), depth);
}

CylinderBounds cylinder_ball_bounds(const Params& params, const EPSequence& seq, std::size_t n) {
  const double lambda = params.lambda();
  const double p = params.p();
  CylinderBounds b;
  b.delta = gap_distance(seq, lambda);
  b.radius = b.delta * std::pow(lambda, static_cast<double>(n));
  const BitWord head = seq.prefix(n);
  b.zeros = head.count(0);
  b.ones = head.count(1);
  b.hi = std::pow(p, static_cast<double>(b.zeros)) * std::pow(1.0 - p, static_cast<double>(b.ones));
  const double ratio = std::log(1.0 / (b.delta * (1.0 - lambda))) / std::log(1.0 / lambda);
  b.steps = ratio < 0.0 ? 0 : static_cast<int>(std::floor(ratio)) + 1;
  b.c_delta = std::pow(std::min(p, 1.0 - p), b.steps);
  b.lo = b.c_delta * b.hi;
  return b;
}

LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) throw DomainError("fit_line: need at least two points");
  const auto n = static_cast<Eigen::Index>(x.size());
  Eigen::MatrixXd design(n, 2);
  design.col(0) = Eigen::Map<const Eigen::VectorXd>(x.data(), n);
  design.col(1).setOnes();
  const Eigen::Map<const Eigen::VectorXd> rhs(y.data(), n);
  const Eigen::Vector2d coef = design.colPivHouseholderQr().solve(rhs);
  const double rms = std::sqrt((design * coef - rhs).squaredNorm() / static_cast<double>(n));
  return {coef(0), coef(1), rms};
}

DimEstimate local_dim_estimate(const Params& params, const EPSequence& seq, std::size_t nmin,
                               std::size_t nmax, BracketSource source, int depth) {
  if (!(nmin < nmax)) throw DomainError("local_dim_estimate: require nmin < nmax");
  DimEstimate est;
  std::vector<double> xs;
  std::vector<double> ys;
  for (std::size_t n = nmin; n <= nmax; ++n) {
    const CylinderBounds b = cylinder_ball_bounds(params, seq, n);
    double lo = b.lo;
    double hi = b.hi;
    if (source == BracketSource::Enclosure) {
      const Enclosure e = nu_ball(params, pi(seq, params.lambda()), b.radius, depth);
      lo = e.lo;
      hi = e.hi;
      if (lo == 0.0) {
        ++est.dropped;
        continue;
      }
    }
    lo = std::max(lo, 1e-300);
    DimSample s{n, std::log(b.radius), std::log(lo), std::log(hi)};
    est.points.push_back(s);
    xs.push_back(s.log_r);
    ys.push_back(0.5 * (s.log_lo + s.log_hi));
  }
  if (xs.size() < 2) throw PreconditionError("local_dim_estimate: fewer than two usable radii");
  const LineFit fit = fit_line(xs, ys);
  est.slope = fit.slope;
  est.intercept = fit.intercept;
  est.residual = fit.residual;
  est.predicted = local_dim_at_frequency(digit_freq(seq).value(), params.lambda(), params.p());
  return est;
}

double sample_point(double lambda, double q, std::size_t n, std::mt19937_64& rng) {
  if (!(lambda > 0.0 && lambda < 1.0)) throw DomainError("sample_point: lambda must lie in (0,1)");
  if (!(q >= 0.0 && q <= 1.0)) throw DomainError("sample_point: q must lie in [0,1]");
  if (n == 0) throw DomainError("sample_point: need at least one digit");
  std::vector<int> digits(n);
  for (auto& d : digits) {
    const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    d = u < q ? 0 : 1;
  }
  double x = 0.0;
  for (auto it = digits.rbegin(); it != digits.rend(); ++it) x = lambda * (x + *it);
  return x;
}

std::pair<double, double> MeshProfile::totals() const {
  CompensatedSum lo;
  CompensatedSum hi;
  for (const auto& c : cells) {
    lo.add(c.mass.lo);
    hi.add(c.mass.hi);
  }
  return {lo.value(), hi.value()};
}

double MeshProfile::max_hi() const {
  double m = 0.0;
  for (const auto& c : cells) m = std::max(m, c.mass.hi);
  return m;
}

MeshProfile mesh_profile(const Params& params, double r, int depth, unsigned threads) {
  const double width = params.support_right();
  if (!(r > 0.0 && r < width / 2.0))
    throw DomainError("mesh_profile: require 0 < r < |I_lambda|/2");
  MeshProfile profile;
  profile.r = r;
  profile.depth = depth;
  const auto count = static_cast<std::size_t>(std::ceil(width / (2.0 * r)));
  profile.cells.resize(count);

  auto work = [&](std::size_t begin, std::size_t end) {
    EnclosureRecursion rec(params);
    for (std::size_t i = begin; i < end; ++i) {
      const double jd = static_cast<double>(i + 1);
      auto& cell = profile.cells[i];
      cell.j = i + 1;
      cell.center = (2.0 * jd - 1.0) * r;
      cell.mass = rec.run(Interval((2.0 * jd - 2.0) * r, 2.0 * jd * r), depth);
    }
  };

  if (threads == 0) threads = std::max(1U, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, count));
  if (threads <= 1) {
    work(0, count);
    return profile;
  }
  {
    std::vector<std::jthread> pool;
    const std::size_t chunk = (count + threads - 1) / threads;
    for (std::size_t begin = 0; begin < count; begin += chunk)
      pool.emplace_back(work, begin, std::min(count, begin + chunk));
  }
  return profile;
}

}  // namespace bcmf
