#include "gar/granules.hpp"

#include <algorithm>

#include "gar/errors.hpp"

namespace gar {

namespace {

void check_mincov(const Ratio& mincov) {
  if (!mincov.in_unit_interval())
    throw ThresholdError("coverage threshold " + mincov.str() + " is outside (0, 1]");
}

bool same_prefix(const GranuleDescriptor& a, const GranuleDescriptor& b) {
  const auto& ta = a.terms();
  const auto& tb = b.terms();
  return std::equal(ta.begin(), ta.end() - 1, tb.begin());
}

}  // namespace

std::string_view to_string(MiningMode mode) {
  return mode == MiningMode::positive_only ? "positive-only" : "all-granules";
}

std::optional<MiningMode> parse_mining_mode(std::string_view text) {
  if (text == "positive-only" || text == "positive") return MiningMode::positive_only;
  if (text == "all-granules" || text == "all") return MiningMode::all_granules;
  return std::nullopt;
}

GranuleLevel seed_granules(const InformationSystem& is, const Ratio& mincov, MiningMode mode) {
  check_mincov(mincov);
  if (is.size() == 0) throw UndefinedMeasureError("support is undefined on an empty universe");

  GranuleLevel level{1, {}};
  for (std::size_t a = 0; a < is.attribute_count(); ++a) {
    const auto& attr = is.attribute(a);
    for (ValueCode v = 0; v < attr.domain.size(); ++v) {
      if (mode == MiningMode::positive_only && attr.kind == AttributeKind::scaled &&
          v != kScaledTrue)
        continue;
      const Bitset& block = is.value_block(a, v);
      const std::size_t n = block.count();
      if (n == 0 || !mincov.admits(n, is.size())) continue;
      level.granules.push_back(
          {GranuleDescriptor({{static_cast<std::uint32_t>(a), v}}), block, Ratio(n, is.size())});
    }
  }
  return level;
}

GranuleLevel extend_level(const GranuleLevel& prev, const InformationSystem& is,
                          const Ratio& mincov, MiningMode /*mode*/) {
  // Positivity is closed under the join: both parents are already filtered.
  check_mincov(mincov);
  GranuleLevel next{prev.length + 1, {}};
  const auto& g = prev.granules;
  for (std::size_t i = 0; i < g.size(); ++i) {
    for (std::size_t j = i + 1; j < g.size(); ++j) {
      if (!same_prefix(g[i].descriptor, g[j].descriptor)) break;
      const Term& left = g[i].descriptor.terms().back();
      const Term& right = g[j].descriptor.terms().back();
      if (left.attribute == right.attribute) continue;

      Bitset ext = g[i].extension & g[j].extension;
      const std::size_t n = ext.count();
      if (n == 0 || !mincov.admits(n, is.size())) continue;

      std::vector<Term> terms = g[i].descriptor.terms();
      terms.push_back(right);
      next.granules.push_back({GranuleDescriptor(std::move(terms)), std::move(ext), Ratio(n, is.size())});
    }
  }
  // Prefix groups are contiguous and joined in order, so this is already sorted.
  return next;
}

std::vector<Granule> enumerate_granules(const InformationSystem& is, const Ratio& mincov,
                                        MiningMode mode, std::optional<std::size_t> max_length) {
  std::vector<Granule> out;
  if (max_length && *max_length == 0) return out;
  GranuleLevel level = seed_granules(is, mincov, mode);
  while (!level.granules.empty()) {
    out.insert(out.end(), level.granules.begin(), level.granules.end());
    if (max_length && level.length >= *max_length) break;
    level = extend_level(level, is, mincov, mode);
  }
  return out;
}

}  // namespace gar
