#pragma once

#include <algorithm>

#include "bcmf/errors.hpp"

namespace bcmf {

/// Closed interval [a, b].
struct Interval {
  double a = 0.0;
  double b = 0.0;

  Interval() = default;
  Interval(double lo, double hi) : a(lo), b(hi) {
    if (!(lo <= hi)) throw DomainError("Interval: require a <= b");
  }

  double length() const { return b - a; }
  bool empty_interior() const { return !(a < b); }
  bool contains(double x) const { return a <= x && x <= b; }

  /// Euclidean distance from x to the interval (0 inside).
  double distance(double x) const { return x < a ? a - x : (x > b ? x - b : 0.0); }
};

/// Contraction ratio λ and digit-0 probability p of the Bernoulli convolution ν_λ^p,
/// with the derived support I_λ = [0, λ/(1−λ)] and overlap gap C_λ = [λ, λ²/(1−λ)].
class Params {
 public:
  Params(double lambda, double p) : lambda_(lambda), p_(p) {
    if (!(lambda > 0.0 && lambda < 1.0)) throw DomainError("lambda must lie in (0,1)");
    if (!(p > 0.0 && p < 1.0)) throw DomainError("p must lie in (0,1)");
  }

  double lambda() const { return lambda_; }
  double p() const { return p_; }
  double weight(int digit) const { return digit == 0 ? p_ : 1.0 - p_; }

  double support_right() const { return lambda_ / (1.0 - lambda_); }
  Interval support() const { return {0.0, support_right()}; }

  /// C_λ; nonempty only for λ > 1/2 (otherwise its endpoints are reversed).
  bool has_gap() const { return lambda_ > 0.5; }
  Interval gap() const {
    if (!has_gap()) throw DomainError("gap C_lambda is empty for lambda <= 1/2");
    return {lambda_, lambda_ * lambda_ / (1.0 - lambda_)};
  }

  /// S_j(x) = λ(x + j).
  double contract(int digit, double x) const { return lambda_ * (x + digit); }

 private:
  double lambda_;
  double p_;
};

}  // namespace bcmf
