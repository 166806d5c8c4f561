#include "gar/ratio.hpp"

#include <cctype>
#include <numeric>

#include "gar/errors.hpp"

namespace gar {

namespace {

std::uint64_t parse_digits(std::string_view digits, std::string_view whole) {
  if (digits.empty() || digits.size() > 18)
    throw ThresholdError("malformed ratio '" + std::string(whole) + "'");
  std::uint64_t v = 0;
  for (char c : digits) {
    if (!std::isdigit(static_cast<unsigned char>(c)))
      throw ThresholdError("malformed ratio '" + std::string(whole) + "'");
    v = v * 10 + static_cast<std::uint64_t>(c - '0');
  }
  return v;
}

}  // namespace

Ratio::Ratio(std::uint64_t num, std::uint64_t den) {
  if (den == 0) throw UndefinedMeasureError("ratio with zero denominator");
  std::uint64_t g = std::gcd(num, den);
  num_ = num / g;
  den_ = den / g;
}

Ratio Ratio::parse(std::string_view text) {
  if (auto slash = text.find('/'); slash != std::string_view::npos)
    return Ratio(parse_digits(text.substr(0, slash), text), parse_digits(text.substr(slash + 1), text));

  auto dot = text.find('.');
  if (dot == std::string_view::npos) return Ratio(parse_digits(text, text), 1);

  std::string_view int_part = text.substr(0, dot);
  std::string_view frac_part = text.substr(dot + 1);
  if (frac_part.empty() || frac_part.size() > 17)
    throw ThresholdError("malformed ratio '" + std::string(text) + "'");
  std::uint64_t scale = 1;
  for (std::size_t i = 0; i < frac_part.size(); ++i) scale *= 10;
  std::uint64_t whole = int_part.empty() ? 0 : parse_digits(int_part, text);
  return Ratio(whole * scale + parse_digits(frac_part, text), scale);
}

std::string Ratio::str() const { return std::to_string(num_) + "/" + std::to_string(den_); }

std::string Ratio::decimal(int digits) const {
  unsigned __int128 scale = 1;
  for (int i = 0; i < digits; ++i) scale *= 10;
  // round half up
  unsigned __int128 scaled = (static_cast<unsigned __int128>(num_) * scale * 2 + den_) / (2 * den_);
  auto whole = static_cast<std::uint64_t>(scaled / scale);
  auto frac = static_cast<std::uint64_t>(scaled % scale);
  std::string out = std::to_string(whole);
  if (digits > 0) {
    std::string f = std::to_string(frac);
    out += "." + std::string(static_cast<std::size_t>(digits) - f.size(), '0') + f;
  }
  return out;
}

}  // namespace gar
