#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace gar {

// Exact non-negative rational. Every threshold comparison in the library goes
// through cross-multiplication on these, never through floating point.
class Ratio {
 public:
  constexpr Ratio() = default;
  Ratio(std::uint64_t num, std::uint64_t den);

  // Accepts "0.15", "1", ".5", "3/20". Throws ThresholdError on malformed text.
  static Ratio parse(std::string_view text);

  std::uint64_t num() const { return num_; }
  std::uint64_t den() const { return den_; }

  double value() const { return static_cast<double>(num_) / static_cast<double>(den_); }

  // count / total >= *this, with total > 0.
  bool admits(std::uint64_t count, std::uint64_t total) const {
    return static_cast<unsigned __int128>(count) * den_ >=
           static_cast<unsigned __int128>(num_) * total;
  }

  bool in_unit_interval() const { return num_ > 0 && num_ <= den_; }

  std::string str() const;  // "num/den"
  std::string decimal(int digits = 3) const;

  friend bool operator==(const Ratio& a, const Ratio& b) {
    return static_cast<unsigned __int128>(a.num_) * b.den_ ==
           static_cast<unsigned __int128>(b.num_) * a.den_;
  }
  friend std::strong_ordering operator<=>(const Ratio& a, const Ratio& b) {
    auto lhs = static_cast<unsigned __int128>(a.num_) * b.den_;
    auto rhs = static_cast<unsigned __int128>(b.num_) * a.den_;
    return lhs <=> rhs;
  }

 private:
  std::uint64_t num_ = 0;
  std::uint64_t den_ = 1;
};

}  // namespace gar
