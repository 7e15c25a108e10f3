#pragma once

// Evaluation of the Bernoulli convolution ν_λ^p: rigorous enclosures of interval
// masses through the self-similarity recursion ν = p·ν∘S_0^{-1} + (1−p)·ν∘S_1^{-1},
// symbolic ball brackets at unique-expansion points, local-dimension regression,
// biased sampling and mesh profiles.

#include <cstddef>
#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "bcmf/expansions.hpp"
#include "bcmf/params.hpp"
#include "bcmf/words.hpp"

namespace bcmf {

/// Certified bracket lo ≤ ν(J) ≤ hi.
struct Enclosure {
  double lo = 0.0;
  double hi = 1.0;

  double width() const { return hi - lo; }
  bool contains(double v) const { return lo <= v && v <= hi; }
  bool overlaps(const Enclosure& o) const { return lo <= o.hi && o.lo <= hi; }
};

inline constexpr int kDefaultDepth = 40;

/// Encloses ν_λ^p(J) by at most `depth` pull-backs S_j^{-1}. A branch whose pulled-back
/// interval provably contains I_λ contributes its full weight; one that provably meets
/// I_λ in at most a point contributes nothing (ν has no atoms); a branch still
/// straddling when depth runs out contributes [0, weight]. Endpoints, weights and the
/// final sums are rounded outward, so the bracket is sound in floating point.
Enclosure nu_enclosure(const Params& params, Interval J, int depth = kDefaultDepth);

/// ν of the ball B(x, r), evaluated on the closed interval [x−r, x+r].
Enclosure nu_ball(const Params& params, double x, double r, int depth = kDefaultDepth);

/// Symbolic bracket c_δ p^{ℓ0}(1−p)^{ℓ1} ≤ ν(B(x, δλ^n)) ≤ p^{ℓ0}(1−p)^{ℓ1} at
/// x = Π_λ(seq), with δ the gap distance of seq and c_δ = min(p,1−p)^N for the
/// smallest N with N log(1/λ) > log(1/(δ(1−λ))).
struct CylinderBounds {
  double delta = 0.0;
  double radius = 0.0;  ///< δλ^n
  double lo = 0.0;
  double hi = 0.0;
  double c_delta = 0.0;
  int steps = 0;  ///< the N above
  std::size_t zeros = 0;
  std::size_t ones = 0;
};

CylinderBounds cylinder_ball_bounds(const Params& params, const EPSequence& seq, std::size_t n);

/// One regression sample: log r and the log of the measure bracket at that radius.
struct DimSample {
  std::size_t n = 0;
  double log_r = 0.0;
  double log_lo = 0.0;
  double log_hi = 0.0;
};

struct DimEstimate {
  double slope = 0.0;
  double intercept = 0.0;
  double residual = 0.0;    ///< root-mean-square residual of the fit
  double predicted = 0.0;   ///< exact limit from the digit frequency
  std::size_t dropped = 0;  ///< samples discarded because the lower bound was 0
  std::vector<DimSample> points;
};

enum class BracketSource { Symbolic, Enclosure };

/// Least-squares slope of log ν(B(x, δλ^n)) against log(δλ^n) for n in [nmin, nmax],
/// fitted to the geometric mean of the bracket. `Symbolic` uses the cylinder bracket;
/// `Enclosure` uses nu_ball at `depth`.
DimEstimate local_dim_estimate(const Params& params, const EPSequence& seq, std::size_t nmin,
                               std::size_t nmax, BracketSource source = BracketSource::Symbolic,
                               int depth = kDefaultDepth);

/// Least-squares fit y = slope·x + intercept; returns {slope, intercept, rms residual}.
struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double residual = 0.0;
};
LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y);

/// Truncated random series Σ_{k ≤ n} i_k λ^k with i.i.d. digits, P(i_k = 0) = q.
/// q may be 0 or 1 (deterministic digits).
double sample_point(double lambda, double q, std::size_t n, std::mt19937_64& rng);

struct MeshCell {
  std::size_t j = 0;  ///< 1-based cell index
  double center = 0.0;
  Enclosure mass;
};

/// Enclosures of ν(I_j) on the mesh I_j = [(2j−2)r, 2jr], j = 1…⌈|I_λ|/(2r)⌉.
struct MeshProfile {
  double r = 0.0;
  int depth = 0;
  std::vector<MeshCell> cells;

  /// Compensated sums of the cell lower and upper bounds.
  std::pair<double, double> totals() const;
  double max_hi() const;
};

/// Cells are evaluated in parallel on `threads` workers (0 = hardware concurrency);
/// the result does not depend on the thread count.
MeshProfile mesh_profile(const Params& params, double r, int depth = kDefaultDepth,
                         unsigned threads = 0);

}  // namespace bcmf
