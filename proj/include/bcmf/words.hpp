#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <string_view>
#include <vector>

namespace bcmf {

/// Finite word over {0,1}. The empty word is allowed.
class BitWord {
 public:
  BitWord() = default;
  BitWord(std::initializer_list<int> bits);
  explicit BitWord(std::vector<std::uint8_t> bits);

  /// Parses a string of '0'/'1' characters; throws DomainError on anything else.
  static BitWord parse(std::string_view text);

  std::size_t size() const { return bits_.size(); }
  bool empty() const { return bits_.empty(); }
  int operator[](std::size_t i) const { return bits_[i]; }

  /// ℓ_j: number of occurrences of digit j among the first n symbols (all if n exceeds size).
  std::size_t count(int digit, std::size_t n) const;
  std::size_t count(int digit) const { return count(digit, bits_.size()); }

  BitWord flipped() const;
  BitWord prefix(std::size_t n) const;
  BitWord repeated(std::size_t times) const;
  void push_back(int digit);
  void append(const BitWord& other);

  const std::vector<std::uint8_t>& bits() const { return bits_; }
  std::string str() const;

  friend bool operator==(const BitWord&, const BitWord&) = default;
  friend BitWord operator+(BitWord lhs, const BitWord& rhs) {
    lhs.append(rhs);
    return lhs;
  }

 private:
  std::vector<std::uint8_t> bits_;
};

/// Eventually periodic infinite 0-1 sequence: preperiod followed by the period
/// repeated forever. Always held in canonical form: the period is primitive and
/// the preperiod cannot be shortened by rotating the period.
class EPSequence {
 public:
  EPSequence(BitWord preperiod, BitWord period);

  /// Text literal `PRE|PER`, e.g. `|10` or `1|0`.
  static EPSequence parse(std::string_view text);
  static EPSequence periodic(BitWord period) { return {BitWord{}, std::move(period)}; }

  const BitWord& preperiod() const { return pre_; }
  const BitWord& period() const { return per_; }

  /// Digit at 0-based position i (i.e. i_{i+1} in 1-based notation).
  int digit(std::size_t i) const;
  BitWord prefix(std::size_t n) const;

  /// σ^k: drop the first k symbols.
  EPSequence shifted(std::size_t k) const;
  EPSequence flipped() const;

  /// Number of distinct sequences in the shift orbit {σ^k s : k ≥ 0}.
  std::size_t orbit_size() const { return pre_.size() + per_.size(); }

  std::string str() const { return pre_.str() + "|" + per_.str(); }

  friend bool operator==(const EPSequence&, const EPSequence&) = default;

 private:
  BitWord pre_;
  BitWord per_;
};

/// Length of the longest common prefix |i ∧ j|, capped at `limit`.
std::size_t common_prefix_length(const EPSequence& a, const EPSequence& b, std::size_t limit);

}  // namespace bcmf
