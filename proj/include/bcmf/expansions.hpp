#pragma once

// Symbolic β-expansion machinery for base β = 1/λ with digits {0,1}: digit
// generation by the greedy and lazy β-transformations, certification of unique
// expansions, orbit distance to the overlap gap C_λ, digit frequencies and the
// algebraic constants (golden ratio, multinacci, Komornik–Loreti, β₁).

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>

#include "bcmf/params.hpp"
#include "bcmf/words.hpp"

namespace bcmf {

/// Π_λ(i) = Σ i_n λ^n in closed form (preperiod sum plus geometric period sum).
double pi(const EPSequence& seq, double lambda);
/// Finite sum Σ_{n ≤ |w|} w_n λ^n.
double pi(const BitWord& word, double lambda);

enum class ExpansionMode { Greedy, Lazy };

/// First n digits of x ∈ I_λ under the greedy (G_β) or lazy (L_β) β-transformation.
/// Requires λ ∈ (1/2, 1).
BitWord beta_digits(double x, double lambda, ExpansionMode mode, std::size_t n);

/// Residual below which the greedy expansion of 1 is declared finite.
inline constexpr double kTerminationTolerance = 1e-12;

/// First n digits of the greedy expansion 1 = Σ d_k λ^k. If the expansion
/// terminates and `quasi` is set, the quasi-greedy expansion (d_1…d_{m−1}(d_m−1))^∞
/// is returned instead; without `quasi` a finite expansion raises FiniteExpansionAmbiguous.
BitWord greedy_one(double lambda, std::size_t n, bool quasi);

enum class Membership { In, Out, Undecided };

/// Where a comparison against the expansion of 1 failed (Out) or stayed tied (Undecided).
/// `shift` is the number of leading symbols dropped; `position` is the 0-based digit
/// index inside the compared tail; `flipped` tells whether the flipped tail was compared.
struct MembershipWitness {
  std::size_t shift = 0;
  std::size_t position = 0;
  bool flipped = false;
};

struct MembershipVerdict {
  Membership status = Membership::Undecided;
  std::optional<MembershipWitness> witness;
  std::size_t depth = 0;  ///< comparison depth that was available

  bool in() const { return status == Membership::In; }
};

inline constexpr std::size_t kDefaultMembershipDepth = 200;

/// Lexicographic unique-expansion test against the quasi-greedy expansion d of 1:
/// every tail following a 0 must be ≺ d and every flipped tail following a 1 must
/// be ≺ d. Each comparison is decided at the first differing digit within `depth`
/// digits; a comparison tied through `depth` yields Undecided.
MembershipVerdict membership_u(const EPSequence& seq, double lambda,
                               std::size_t depth = kDefaultMembershipDepth);

/// δ = min over the shift orbit of dist(Π_λ(σ^n seq), C_λ). Throws
/// PreconditionError unless membership_u certifies the sequence.
double gap_distance(const EPSequence& seq, double lambda,
                    std::size_t depth = kDefaultMembershipDepth);

/// δ(λ₁, λ₂) = min{(λ₂−λ₁)(λ₁+λ₂−1), λ₁(1−λ₁−λ₁²)/(1−λ₁)} for 1/2 < λ₁ < λ₂ < g:
/// every sequence unique at λ₂ projects under Π_{λ₁} at distance ≥ δ from C_{λ₁}.
double guaranteed_gap(double lambda1, double lambda2);

struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  friend bool operator==(const Rational&, const Rational&) = default;
};

Rational make_rational(std::int64_t num, std::int64_t den);

/// Frequency of the digit 0; for an eventually periodic sequence this is exact.
Rational digit_freq(const EPSequence& seq);

/// Running-frequency estimate for a digit stream that need not be eventually periodic.
struct StreamFrequency {
  double estimate = 0.0;  ///< ℓ₀(n)/n at the last inspected n
  bool oscillates = false;
};

/// Inspects ℓ₀(m)/m for m in [n/2, n]; reports oscillation when the spread of the
/// running frequency over that window exceeds `tolerance`.
StreamFrequency digit_freq(const std::function<int(std::size_t)>& digit, std::size_t n,
                           double tolerance = 1e-2);

enum class ConstantKind { Golden, Multinacci, KomornikLoreti, BetaOne };

inline constexpr double kDefaultConstantTolerance = 1e-12;

/// λ-side value (reciprocal of the base) of the named constant, by bisection on the
/// base over [1+1e−9, 2]. `k` selects the multinacci order (k ≥ 2, ignored otherwise).
double solve_constant(ConstantKind kind, double tol = kDefaultConstantTolerance, int k = 0);

/// Value of the defining series minus 1 at the λ-side point `lambda`.
double constant_residual(ConstantKind kind, double lambda, int k = 0);

/// Thue–Morse sequence t_0 t_1 … = 0110 1001 …
int thue_morse(std::uint64_t n);

/// Word pair of the frequency construction for 1/2 < λ < β₁^{-1}: the greedy
/// expansion of 1 begins 1(10)^k 11, and every concatenation of u0 = 1(10)^{k+1},
/// u1 = (10)^{k+1}0 is a unique expansion. Frequencies of 0 in [freq_lo, freq_hi]
/// are achievable.
struct FrequencyWords {
  std::size_t k = 0;
  BitWord u0;
  BitWord u1;
  Rational freq_lo;
  Rational freq_hi;
};

FrequencyWords freq_words(double lambda);

/// Multinacci construction for λ ∈ (1/2, g): k is the largest integer with λ < g_k,
/// v0 = 0^{k−1}1, v1 = 01^{k−1}; frequencies in the open interval (1/k, (k−1)/k)
/// and the dimension lower bound (k−2)/k · log 2/|log λ|.
struct MultinacciWords {
  std::size_t k = 0;
  BitWord v0;
  BitWord v1;
  Rational freq_lo;
  Rational freq_hi;
  double dim_bound = 0.0;
};

MultinacciWords multinacci_words(double lambda);

/// Largest k ≤ cap with λ < g_k (multinacci order); requires 1/2 < λ < g.
std::size_t multinacci_order(double lambda, std::size_t cap = 60);

/// One admissible r_λ for the frequency interval (r_λ, 1−r_λ): the smaller left
/// endpoint of the two word constructions. Requires 1/2 < λ < β₁^{-1}.
double r_lambda(double lambda);

/// Local dimension (r log p + (1−r) log(1−p)) / log λ at a unique-expansion point whose
/// coding has 0-frequency r.
double local_dim_at_frequency(double freq0, double lambda, double p);

}  // namespace bcmf
