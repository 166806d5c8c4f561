#pragma once

#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

#include "gar/mmer.hpp"

namespace gar {

enum class MiningMode {
  positive_only,  // scaled attributes only ever appear with value 1
  all_granules,   // every observed value of every attribute is a candidate
};

std::string_view to_string(MiningMode mode);
std::optional<MiningMode> parse_mining_mode(std::string_view text);

// Granules of one descriptor length, sorted by descriptor, no duplicates.
struct GranuleLevel {
  std::size_t length = 0;
  std::vector<Granule> granules;
};

// Single-term granules with support >= mincov.
GranuleLevel seed_granules(const InformationSystem& is, const Ratio& mincov, MiningMode mode);

// Apriori join: pairs sharing their first k-1 terms and differing in the last
// attribute; extension is the intersection of the parents' extensions.
GranuleLevel extend_level(const GranuleLevel& prev, const InformationSystem& is,
                          const Ratio& mincov, MiningMode mode);

// All granules of length >= 1 (and <= max_length, if given) meeting mincov,
// level by level.
std::vector<Granule> enumerate_granules(const InformationSystem& is, const Ratio& mincov,
                                        MiningMode mode,
                                        std::optional<std::size_t> max_length = std::nullopt);

}  // namespace gar
