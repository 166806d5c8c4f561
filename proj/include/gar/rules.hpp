#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "gar/granules.hpp"
#include "gar/mmer.hpp"

namespace gar {

struct RuleMeasures {
  Ratio scov;
  Ratio tcov;
  Ratio sconf;
  Ratio tc_used;  // also reported as tconf

  friend bool operator==(const RuleMeasures&, const RuleMeasures&) = default;
};

struct Rule {
  GranuleDescriptor source;
  GranuleDescriptor target;
  std::size_t lh_size = 0;
  std::size_t rh_size = 0;
  RuleMeasures measures;

  friend bool operator==(const Rule&, const Rule&) = default;
};

struct MineOptions {
  std::optional<std::size_t> max_length;
  // Compute X = R⁻¹_tc(Y) once per target granule. Off re-evaluates each
  // source object's hit ratio inside the inner loop; results are identical.
  bool precompute_lower_approximation = true;
  unsigned threads = 1;
};

// |{x ∈ lh : |R(x) ∩ rh| / |rh| >= tc}| / |lh|
Ratio source_confidence(const Mmer& es, const Bitset& lh, const Bitset& rh, const Ratio& tc);

// Backward mining: every rule i(g) ⇒ i(g') with g ∈ SG(ms), g' ∈ TG(mt) and
// source confidence >= sc at target-confidence threshold tc. Sorted by
// (source, target) descriptor.
std::vector<Rule> mine(const Mmer& es, const Thresholds& t, MiningMode mode,
                       const MineOptions& options = {});

// Measures recomputed from the descriptors alone, sharing nothing with mine().
RuleMeasures evaluate_rule(const Mmer& es, const GranuleDescriptor& source,
                           const GranuleDescriptor& target, const Ratio& tc);

}  // namespace gar
