#include "bcmf/expansions.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "bcmf/errors.hpp"

namespace bcmf {

namespace {

void require_overlap_range(double lambda, const char* what) {
  if (!(lambda > 0.5 && lambda < 1.0))
    throw DomainError(std::string(what) + ": lambda must lie in (1/2, 1)");
}

}  // namespace

double pi(const BitWord& word, double lambda) {
  double sum = 0.0;
  double power = lambda;
  for (std::size_t i = 0; i < word.size(); ++i) {
    if (word[i]) sum += power;
    power *= lambda;
  }
  return sum;
}

double pi(const EPSequence& seq, double lambda) {
  const auto& pre = seq.preperiod();
  const auto& per = seq.period();
  const double head = pi(pre, lambda);
  const double lead = std::pow(lambda, static_cast<double>(pre.size()));
  const double cycle = pi(per, lambda) / (1.0 - std::pow(lambda, static_cast<double>(per.size())));
  return head + lead * cycle;
}

BitWord beta_digits(double x, double lambda, ExpansionMode mode, std::size_t n) {
  require_overlap_range(lambda, "beta_digits");
  const double right = lambda / (1.0 - lambda);
  if (!(x >= 0.0 && x <= right))
    throw DomainError("beta_digits: x = " + std::to_string(x) + " lies outside I_lambda");
  // Greedy takes digit 1 on [λ, L]; lazy only on (λ²/(1−λ), L].
  const double lazy_cut = lambda * lambda / (1.0 - lambda);
  BitWord digits;
  for (std::size_t k = 0; k < n; ++k) {
    const int d = mode == ExpansionMode::Greedy ? (x >= lambda ? 1 : 0) : (x > lazy_cut ? 1 : 0);
    digits.push_back(d);
    x = std::clamp(x / lambda - d, 0.0, right);
  }
  return digits;
}

BitWord greedy_one(double lambda, std::size_t n, bool quasi) {
  require_overlap_range(lambda, "greedy_one");
  const long double beta = 1.0L / static_cast<long double>(lambda);
  const long double tol = kTerminationTolerance;
  long double x = 1.0L;
  BitWord digits;
  for (std::size_t k = 0; k < n; ++k) {
    const long double y = beta * x;
    if (y >= 1.0L - tol) {
      digits.push_back(1);
      x = y - 1.0L;
      if (x < tol) {
        if (!quasi)
          throw FiniteExpansionAmbiguous("greedy expansion of 1 terminates after " +
                                         std::to_string(k + 1) + " digits");
        BitWord block = digits;
        BitWord cycle = block.prefix(block.size() - 1);
        cycle.push_back(0);
        BitWord out;
        while (out.size() < n) out.append(cycle);
        return out.prefix(n);
      }
    } else {
      digits.push_back(0);
      x = y;
    }
  }
  return digits;
}

namespace {

// Compares tail = seq shifted by `shift` (optionally flipped) with d. Returns the
// first differing position and whether tail < d there; nullopt when tied through d.
struct Comparison {
  std::size_t position;
  bool below;
};

std::optional<Comparison> compare_tail(const EPSequence& seq, std::size_t shift, bool flip,
                                       const BitWord& d) {
  for (std::size_t i = 0; i < d.size(); ++i) {
    const int digit = seq.digit(shift + i) ^ (flip ? 1 : 0);
    if (digit != d[i]) return Comparison{i, digit < d[i]};
  }
  return std::nullopt;
}

}  // namespace

MembershipVerdict membership_u(const EPSequence& seq, double lambda, std::size_t depth) {
  require_overlap_range(lambda, "membership_u");
  const BitWord d = greedy_one(lambda, depth, /*quasi=*/true);
  MembershipVerdict verdict;
  verdict.depth = depth;
  std::optional<MembershipWitness> tie;
  // Tails σ^n seq for n = 1 … |pre|+|per| cover every distinct tail.
  for (std::size_t n = 1; n <= seq.orbit_size(); ++n) {
    const bool flip = seq.digit(n - 1) == 1;
    const auto cmp = compare_tail(seq, n, flip, d);
    if (!cmp) {
      if (!tie) tie = MembershipWitness{n, depth, flip};
      continue;
    }
    if (!cmp->below) {
      verdict.status = Membership::Out;
      verdict.witness = MembershipWitness{n, cmp->position, flip};
      return verdict;
    }
  }
  if (tie) {
    verdict.status = Membership::Undecided;
    verdict.witness = tie;
  } else {
    verdict.status = Membership::In;
  }
  return verdict;
}

double gap_distance(const EPSequence& seq, double lambda, std::size_t depth) {
  const auto verdict = membership_u(seq, lambda, depth);
  if (!verdict.in())
    throw PreconditionError("gap_distance: sequence " + seq.str() +
                            " is not certified as a unique expansion");
  const Interval gap = Params(lambda, 0.5).gap();
  double delta = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < seq.orbit_size(); ++k)
    delta = std::min(delta, gap.distance(pi(seq.shifted(k), lambda)));
  return delta;
}

double guaranteed_gap(double lambda1, double lambda2) {
  const double golden = solve_constant(ConstantKind::Golden);
  if (!(0.5 < lambda1 && lambda1 < lambda2 && lambda2 < golden))
    throw DomainError("guaranteed_gap: require 1/2 < lambda1 < lambda2 < g");
  const double first = (lambda2 - lambda1) * (lambda1 + lambda2 - 1.0);
  const double second = lambda1 * (1.0 - lambda1 - lambda1 * lambda1) / (1.0 - lambda1);
  return std::min(first, second);
}

Rational make_rational(std::int64_t num, std::int64_t den) {
  if (den == 0) throw DomainError("rational with zero denominator");
  const std::int64_t g = std::gcd(num, den);
  if (den < 0) return {-num / g, -den / g};
  return {num / g, den / g};
}

Rational digit_freq(const EPSequence& seq) {
  const auto& per = seq.period();
  return make_rational(static_cast<std::int64_t>(per.count(0)), static_cast<std::int64_t>(per.size()));
}

StreamFrequency digit_freq(const std::function<int(std::size_t)>& digit, std::size_t n,
                           double tolerance) {
  if (n < 2) throw DomainError("digit_freq: need at least two digits");
  std::size_t zeros = 0;
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  double ratio = 0.0;
  for (std::size_t m = 1; m <= n; ++m) {
    if (digit(m - 1) == 0) ++zeros;
    ratio = static_cast<double>(zeros) / static_cast<double>(m);
    if (m >= n / 2) {
      lo = std::min(lo, ratio);
      hi = std::max(hi, ratio);
    }
  }
  return {ratio, hi - lo > tolerance};
}

int thue_morse(std::uint64_t n) { return std::popcount(n) & 1; }

namespace {

// Sign of (series(x) − 1) for the defining series of each constant on the base side.
// Partial sums of nonnegative terms plus a geometric tail bound decide the sign
// without truncation error; `residual` receives the truncated value.
int series_sign(ConstantKind kind, double x, int k, double* residual = nullptr) {
  const long double y = 1.0L / static_cast<long double>(x);
  if (kind == ConstantKind::Golden || kind == ConstantKind::Multinacci) {
    const int order = kind == ConstantKind::Golden ? 2 : k;
    long double sum = 0.0L;
    long double power = 1.0L;
    for (int i = 1; i <= order; ++i) {
      power *= y;
      sum += power;
    }
    if (residual) *residual = static_cast<double>(sum - 1.0L);
    return sum > 1.0L ? 1 : (sum < 1.0L ? -1 : 0);
  }
  // Term n (n ≥ 1) of 1 = Σ a_n y^n; KL: a_n = t_n (Thue–Morse, t_0 = 0 contributes
  // nothing); β₁: a_1 = 1 and a_{2j} = 1.
  auto coeff = [kind](std::uint64_t n) {
    if (kind == ConstantKind::KomornikLoreti) return thue_morse(n);
    return (n == 1 || n % 2 == 0) ? 1 : 0;
  };
  const long double tail_factor = 1.0L / (1.0L - y);
  long double sum = 0.0L;
  long double power = 1.0L;
  constexpr std::uint64_t kMaxTerms = 1'000'000;
  for (std::uint64_t n = 1; n <= kMaxTerms; ++n) {
    power *= y;
    if (coeff(n)) sum += power;
    const long double tail = power * y * tail_factor;
    if (sum > 1.0L && !residual) return 1;
    if (sum + tail < 1.0L && !residual) return -1;
    if (tail < 1e-19L) {
      if (residual) *residual = static_cast<double>(sum - 1.0L);
      return sum > 1.0L ? 1 : (sum < 1.0L ? -1 : 0);
    }
  }
  throw NonConvergence("constant series did not converge");
}

}  // namespace

double constant_residual(ConstantKind kind, double lambda, int k) {
  if (!(lambda > 0.0 && lambda < 1.0)) throw DomainError("constant_residual: lambda must lie in (0,1)");
  double r = 0.0;
  series_sign(kind, 1.0 / lambda, k, &r);
  return r;
}

double solve_constant(ConstantKind kind, double tol, int k) {
  if (!(tol > 0.0)) throw DomainError("solve_constant: tolerance must be positive");
  if (kind == ConstantKind::Multinacci && k < 2)
    throw DomainError("solve_constant: multinacci order must be >= 2");
  double lo = 1.0 + 1e-9;
  double hi = 2.0;
  if (series_sign(kind, lo, k) <= 0 || series_sign(kind, hi, k) > 0)
    throw NonConvergence("solve_constant: root not bracketed by [1+1e-9, 2]");
  if (series_sign(kind, hi, k) == 0) return 1.0 / hi;
  // The λ-side width 1/lo − 1/hi is at most the base-side width.
  while (hi - lo > tol * 0.25) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const int s = series_sign(kind, mid, k);
    if (s == 0) return 1.0 / mid;
    (s > 0 ? lo : hi) = mid;
  }
  return 1.0 / (0.5 * (lo + hi));
}

namespace {

double beta_one_reciprocal() {
  static const double value = solve_constant(ConstantKind::BetaOne, 1e-15);
  return value;
}

double golden() {
  static const double value = solve_constant(ConstantKind::Golden, 1e-15);
  return value;
}

}  // namespace

FrequencyWords freq_words(double lambda) {
  if (!(lambda > 0.5 && lambda < beta_one_reciprocal()))
    throw RangeError("freq_words: requires 1/2 < lambda < 1/beta_1 = 0.554958...");
  // Digits past ~45 are unreliable in floating point; the prefix 1(10)^k 11 must
  // appear before that.
  constexpr std::size_t kReliableDigits = 45;
  const BitWord d = greedy_one(lambda, kReliableDigits, /*quasi=*/true);
  for (std::size_t k = 0; 2 * k + 3 <= d.size(); ++k) {
    const BitWord expected = BitWord{1} + BitWord{1, 0}.repeated(k) + BitWord{1, 1};
    if (d.prefix(2 * k + 3) == expected) {
      FrequencyWords words;
      words.k = k;
      words.u0 = BitWord{1} + BitWord{1, 0}.repeated(k + 1);
      // Mirror image of u0 (flipped and reversed). The flip 0(01)^{k+1} alone is not
      // admissible: in u1 u0 the 0 before u1's last digit is followed by 11(10)^{k+1}…,
      // which exceeds the expansion of 1.
      words.u1 = BitWord{1, 0}.repeated(k + 1) + BitWord{0};
      const auto den = static_cast<std::int64_t>(2 * k + 3);
      words.freq_lo = make_rational(static_cast<std::int64_t>(k + 1), den);
      words.freq_hi = make_rational(static_cast<std::int64_t>(k + 2), den);
      return words;
    }
    if (d.prefix(2 * k + 2) != BitWord{1} + BitWord{1, 0}.repeated(k) + BitWord{1}) break;
  }
  throw RangeError("freq_words: no prefix 1(10)^k11 within reliable digits of the expansion of 1");
}

MultinacciWords multinacci_words(double lambda) {
  if (!(lambda > 0.5 && lambda < golden()))
    throw RangeError("multinacci_words: requires 1/2 < lambda < g = 0.618034...");
  const std::size_t k = multinacci_order(lambda);
  MultinacciWords words;
  words.k = k;
  for (std::size_t i = 0; i + 1 < k; ++i) words.v0.push_back(0);
  words.v0.push_back(1);
  words.v1.push_back(0);
  for (std::size_t i = 0; i + 1 < k; ++i) words.v1.push_back(1);
  const auto kk = static_cast<std::int64_t>(k);
  words.freq_lo = make_rational(1, kk);
  words.freq_hi = make_rational(kk - 1, kk);
  words.dim_bound = static_cast<double>(k - 2) / static_cast<double>(k) * std::log(2.0) /
                    std::abs(std::log(lambda));
  return words;
}

std::size_t multinacci_order(double lambda, std::size_t cap) {
  if (!(lambda > 0.5 && lambda < golden()))
    throw RangeError("multinacci_order: requires 1/2 < lambda < g = 0.618034...");
  std::size_t k = 2;
  while (k < cap && lambda < solve_constant(ConstantKind::Multinacci, 1e-15, static_cast<int>(k + 1)))
    ++k;
  return k;
}

double r_lambda(double lambda) {
  const auto fw = freq_words(lambda);
  const auto mw = multinacci_words(lambda);
  return std::min(fw.freq_lo.value(), mw.freq_lo.value());
}

double local_dim_at_frequency(double freq0, double lambda, double p) {
  return (freq0 * std::log(p) + (1.0 - freq0) * std::log(1.0 - p)) / std::log(lambda);
}

}  // namespace bcmf
