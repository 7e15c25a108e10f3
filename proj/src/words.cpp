#include "bcmf/words.hpp"

#include <algorithm>
#include <utility>

#include "bcmf/errors.hpp"

namespace bcmf {

BitWord::BitWord(std::initializer_list<int> bits) {
  bits_.reserve(bits.size());
  for (int b : bits) push_back(b);
}

BitWord::BitWord(std::vector<std::uint8_t> bits) : bits_(std::move(bits)) {
  for (auto b : bits_)
    if (b > 1) throw DomainError("BitWord: digits must be 0 or 1");
}

BitWord BitWord::parse(std::string_view text) {
  BitWord w;
  w.bits_.reserve(text.size());
  for (char c : text) {
    if (c != '0' && c != '1')
      throw DomainError("BitWord: invalid character '" + std::string(1, c) + "'");
    w.bits_.push_back(static_cast<std::uint8_t>(c - '0'));
  }
  return w;
}

std::size_t BitWord::count(int digit, std::size_t n) const {
  n = std::min(n, bits_.size());
  return static_cast<std::size_t>(
      std::count(bits_.begin(), bits_.begin() + static_cast<std::ptrdiff_t>(n), digit));
}

BitWord BitWord::flipped() const {
  BitWord w = *this;
  for (auto& b : w.bits_) b ^= 1U;
  return w;
}

BitWord BitWord::prefix(std::size_t n) const {
  n = std::min(n, bits_.size());
  return BitWord(std::vector<std::uint8_t>(bits_.begin(), bits_.begin() + static_cast<std::ptrdiff_t>(n)));
}

BitWord BitWord::repeated(std::size_t times) const {
  BitWord w;
  w.bits_.reserve(bits_.size() * times);
  for (std::size_t i = 0; i < times; ++i) w.append(*this);
  return w;
}

void BitWord::push_back(int digit) {
  if (digit != 0 && digit != 1) throw DomainError("BitWord: digits must be 0 or 1");
  bits_.push_back(static_cast<std::uint8_t>(digit));
}

void BitWord::append(const BitWord& other) {
  bits_.insert(bits_.end(), other.bits_.begin(), other.bits_.end());
}

std::string BitWord::str() const {
  std::string s;
  s.reserve(bits_.size());
  for (auto b : bits_) s.push_back(static_cast<char>('0' + b));
  return s;
}

namespace {

// Shortest u with per == u^m.
std::vector<std::uint8_t> primitive_root(const std::vector<std::uint8_t>& per) {
  const std::size_t n = per.size();
  for (std::size_t d = 1; d < n; ++d) {
    if (n % d != 0) continue;
    bool ok = true;
    for (std::size_t i = d; i < n && ok; ++i) ok = per[i] == per[i - d];
    if (ok) return {per.begin(), per.begin() + static_cast<std::ptrdiff_t>(d)};
  }
  return per;
}

}  // namespace

EPSequence::EPSequence(BitWord preperiod, BitWord period) {
  if (period.empty()) throw DomainError("EPSequence: period must be nonempty");
  auto pre = preperiod.bits();
  auto per = primitive_root(period.bits());
  // Absorb trailing preperiod symbols into a rotation of the period.
  while (!pre.empty() && pre.back() == per.back()) {
    pre.pop_back();
    std::rotate(per.rbegin(), per.rbegin() + 1, per.rend());
  }
  pre_ = BitWord(std::move(pre));
  per_ = BitWord(std::move(per));
}

EPSequence EPSequence::parse(std::string_view text) {
  const auto bar = text.find('|');
  if (bar == std::string_view::npos || text.find('|', bar + 1) != std::string_view::npos)
    throw DomainError("EPSequence literal must have the form PRE|PER, got '" + std::string(text) + "'");
  return {BitWord::parse(text.substr(0, bar)), BitWord::parse(text.substr(bar + 1))};
}

int EPSequence::digit(std::size_t i) const {
  if (i < pre_.size()) return pre_[i];
  return per_[(i - pre_.size()) % per_.size()];
}

BitWord EPSequence::prefix(std::size_t n) const {
  BitWord w;
  for (std::size_t i = 0; i < n; ++i) w.push_back(digit(i));
  return w;
}

EPSequence EPSequence::shifted(std::size_t k) const {
  if (k <= pre_.size()) {
    const auto& b = pre_.bits();
    return {BitWord(std::vector<std::uint8_t>(b.begin() + static_cast<std::ptrdiff_t>(k), b.end())), per_};
  }
  const std::size_t r = (k - pre_.size()) % per_.size();
  auto per = per_.bits();
  std::rotate(per.begin(), per.begin() + static_cast<std::ptrdiff_t>(r), per.end());
  return {BitWord{}, BitWord(std::move(per))};
}

EPSequence EPSequence::flipped() const { return {pre_.flipped(), per_.flipped()}; }

std::size_t common_prefix_length(const EPSequence& a, const EPSequence& b, std::size_t limit) {
  for (std::size_t i = 0; i < limit; ++i)
    if (a.digit(i) != b.digit(i)) return i;
  return limit;
}

}  // namespace bcmf
