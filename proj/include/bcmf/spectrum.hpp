#pragma once

// Multifractal spectra: exact Legendre spectra of strong-separation self-similar
// measures, lower/upper bound curves for ν_λ^p as λ → 1/2, coarse (mesh-count)
// spectrum estimates, uniform Hölder exponents and typical-dimension predictions.

#include <Eigen/Core>

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "bcmf/measure.hpp"
#include "bcmf/params.hpp"

namespace bcmf {

enum PointFlag : std::uint8_t {
  kPointClipped = 1U << 0,       ///< |q| was clipped to the grid bound
  kPointOutOfSupport = 1U << 1,  ///< window missed the λ = 1/2 spectrum support
};

struct SpectrumPoint {
  double q = 0.0;  ///< Legendre parameter; NaN for curves parametrized by α
  double alpha = 0.0;
  double f = 0.0;
  std::uint8_t flags = 0;
};

enum class CurveKind { Exact, LowerBound, UpperBound, Coarse };

const char* to_string(CurveKind kind);

struct CurveMeta {
  CurveKind kind = CurveKind::Exact;
  std::vector<std::pair<std::string, double>> params;
  std::vector<std::string> flags;
};

/// Points sorted by strictly increasing α.
struct SpectrumCurve {
  std::vector<SpectrumPoint> points;
  CurveMeta meta;

  /// Linear interpolation in α; nullopt outside [α_first, α_last].
  std::optional<double> value_at(double alpha) const;
  /// Every interior point lies on or above the chord of its neighbours, within tol.
  bool is_concave(double tol = 1e-9) const;
  double max_f() const;
};

inline constexpr double kDefaultQBound = 40.0;
inline constexpr std::size_t kDefaultQPoints = 801;

/// Grid on [−bound, bound] with `points` entries, refined geometrically near q = 0
/// (q = bound·sinh(3t)/sinh(3), t uniform); contains 0 and ±bound for odd `points`.
std::vector<double> default_q_grid(std::size_t points = kDefaultQPoints,
                                   double bound = kDefaultQBound);

std::vector<double> linspace(double a, double b, std::size_t n);

/// Legendre spectrum point of the self-similar measure with weights w_i and common
/// ratio ρ under strong separation. With W(q) = Σ c_i w_i^q (c_i the multiplicity of
/// weight w_i): α(q) = Σ c_i w_i^q log w_i / (W log ρ) and f(q) = qα(q) − log W / log ρ.
SpectrumPoint osc_spectrum_point(const Eigen::ArrayXd& weights, const Eigen::ArrayXd& multiplicity,
                                 double rho, double q, double q_bound = kDefaultQBound);
SpectrumPoint osc_spectrum_point(const Eigen::ArrayXd& weights, double rho, double q,
                                 double q_bound = kDefaultQBound);

SpectrumCurve spectrum_curve(const Eigen::ArrayXd& weights, const Eigen::ArrayXd& multiplicity,
                             double rho, const std::vector<double>& q_grid);
SpectrumCurve spectrum_curve(const Eigen::ArrayXd& weights, double rho,
                             const std::vector<double>& q_grid);

/// Closed form of f_{1/2,p}(α): with a_0 = −log₂p, a_1 = −log₂(1−p) and
/// α = t·a_0 + (1−t)·a_1, the value is the binary entropy of t. nullopt outside the support.
std::optional<double> binomial_spectrum(double p, double alpha);

/// η solving Σ_{i ∈ Σ_m} p_i^η = 1, where Σ_m is {0,1}^m minus 0^m and 1^m.
double eta_k(double p, int m);

/// Lower bound α ↦ F̃(η_k α) from the strong-separation sub-system of 2^m − 2 maps
/// S_i, i ∈ Σ_m, m = ⌊k/2⌋, with weights p_i^{η_k} and ratio λ^m. `k` = 0 selects the
/// largest k with λ < g_k, capped at 40.
SpectrumCurve lower_bound_curve(double lambda, double p, int k, const std::vector<double>& q_grid);

/// Largest k ≥ 2 with 2λ−1 < λ^{k−1}(1−λ); nullopt when even k = 2 fails.
std::optional<int> lambda_k_max(double lambda);

/// Upper bound α ↦ sup of f_{1/2,p} over [|log₂λ|α, |log₂λ|α + 1/k], k = lambda_k_max(λ).
SpectrumCurve upper_bound_curve(double lambda, double p, const std::vector<double>& alpha_grid);

/// Lower, upper and exact (λ = 1/2) curves sampled on a common α-grid.
struct SpectrumBounds {
  SpectrumCurve lower;
  SpectrumCurve upper;
  SpectrumCurve exact;
  std::vector<double> alpha;
  std::vector<double> lower_on_grid;  ///< 0 outside the lower curve's α-range
  std::vector<double> upper_on_grid;
  std::vector<double> exact_on_grid;  ///< 0 outside the support
  double common_min = 0.0;            ///< α-range on which both bound curves are defined
  double common_max = 0.0;
  double gap = 0.0;                   ///< max of upper − lower over that common range
};

SpectrumBounds spectrum_bounds(double lambda, double p, const std::vector<double>& alpha_grid,
                               int k = 0);

/// Default α-grid for bound curves: the λ = 1/2 support widened by 0.05 on each side.
std::vector<double> default_alpha_grid(double p, std::size_t points = 200);

enum class CountMode { Certified, Midpoint };

/// Mesh-cell counts with threshold s^α, s = 2r the cell diameter:
/// N⁺ = #{cells with mass ≥ s^{α+}}, N⁻ = #{cells with mass ≤ s^{α−}}, joint = min.
/// Certified mode tests the lower bound for N⁺ and the upper bound for N⁻, so both
/// counts are lower bounds of the true counts.
struct CoarseCounts {
  std::size_t n_plus = 0;
  std::size_t n_minus = 0;
  std::size_t n_joint = 0;
  std::size_t cells = 0;
  double r = 0.0;
  double alpha_plus = 0.0;
  double alpha_minus = 0.0;
};

CoarseCounts coarse_counts(const MeshProfile& profile, double alpha_plus, double alpha_minus,
                           CountMode mode = CountMode::Certified);

/// log N(α+ε, α−ε) / (−log s) for one mesh; nullopt when the joint count is 0.
std::optional<double> coarse_value(const MeshProfile& profile, double alpha, double eps,
                                   CountMode mode = CountMode::Certified);

struct CoarseRow {
  double r = 0.0;
  double alpha = 0.0;
  std::size_t joint = 0;
  double value = 0.0;  ///< NaN when joint = 0
};

struct CoarseSpectrum {
  SpectrumCurve curve;  ///< per α, the max over r of the normalized joint count
  std::vector<CoarseRow> table;
};

CoarseSpectrum coarse_spectrum(const Params& params, const std::vector<double>& r_list,
                               const std::vector<double>& alpha_grid, double eps,
                               int depth = kDefaultDepth, unsigned threads = 0,
                               CountMode mode = CountMode::Certified);

/// Uniform Hölder exponent: δ₀(μ) = (k−1) log 2/(k |log μ|) with k = lambda_k_max(μ),
/// boosted through ν_λ being a convolution of scaled copies of ν_{λ^j}:
/// δ(λ) = max_j j·δ₀(λ^j) − (j−1) over j ≥ 1 with λ^j > 1/2, floored at 0.
struct HolderBound {
  double delta = 0.0;
  int k_used = 0;  ///< 0 when no admissible j exists
  int boost = 0;   ///< maximizing j
};

HolderBound holder_bound(double lambda);

enum class DimRegime { Singularity, DimensionOne };

const char* to_string(DimRegime regime);

struct TypicalDim {
  double entropy = 0.0;    ///< H_p^q = −q log p − (1−q) log(1−p)
  double predicted = 0.0;  ///< min(H_p^q/|log λ|, 1)
  double j_lo = 0.0;       ///< J(p,λ) = [log(1−p)/log λ, 1]
  double j_hi = 1.0;
  DimRegime regime = DimRegime::DimensionOne;
  double alpha = 0.0;             ///< α with log λ·α = q log p + (1−q) log(1−p)
  double spectrum_lower = 0.0;    ///< h(q)/|log λ|
};

TypicalDim typical_dim(double lambda, double p, double q);

inline constexpr double kTransversalityBound = 0.66847;

/// Monte-Carlo diagnostic: regression slopes of log ν(B(x,r)) against log r at points
/// x drawn from ν_λ^q. Not a certified check.
struct TypicalDimMc {
  double mean_slope = 0.0;
  double sd = 0.0;
  std::vector<double> slopes;
  bool diagnostic_only = true;
};

TypicalDimMc typical_dim_mc(double lambda, double p, double q, std::size_t samples,
                            std::size_t n_digits, const std::vector<double>& radii, int depth,
                            std::mt19937_64& rng);

}  // namespace bcmf
