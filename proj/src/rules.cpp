#include "gar/rules.hpp"

#include <algorithm>
#include <thread>

#include "gar/errors.hpp"

namespace gar {

namespace {

std::size_t count_within(const Mmer& es, const Bitset& lh, const Bitset& rh, const Ratio& tc) {
  const std::size_t rh_size = rh.count();
  std::size_t n = 0;
  for (std::size_t x : lh.indices())
    if (tc.admits(intersect_count(es.relation().neighborhood(x), rh), rh_size)) ++n;
  return n;
}

void rules_for_target(const Mmer& es, const Thresholds& t, const std::vector<Granule>& sources,
                      const Granule& target, const MineOptions& options, std::vector<Rule>& out) {
  const Bitset& y = target.extension;
  std::optional<Bitset> x;
  if (options.precompute_lower_approximation) x = lower_approx_inverse(es.relation(), y, t.tc);

  for (const Granule& g : sources) {
    const std::size_t lh_size = g.extension.count();
    const std::size_t hits = x ? intersect_count(*x, g.extension)
                               : count_within(es, g.extension, y, t.tc);
    if (!t.sc.admits(hits, lh_size)) continue;
    out.push_back({g.descriptor, target.descriptor, lh_size, y.count(),
                   {g.support, target.support, Ratio(hits, lh_size), t.tc}});
  }
}

}  // namespace

Ratio source_confidence(const Mmer& es, const Bitset& lh, const Bitset& rh, const Ratio& tc) {
  if (!tc.in_unit_interval()) throw ThresholdError("tc = " + tc.str() + " is outside (0, 1]");
  const std::size_t lh_size = lh.count();
  if (lh_size == 0 || rh.none())
    throw UndefinedMeasureError("source confidence needs nonempty left and right extensions");
  return Ratio(count_within(es, lh, rh, tc), lh_size);
}

std::vector<Rule> mine(const Mmer& es, const Thresholds& t, MiningMode mode,
                       const MineOptions& options) {
  t.validate();
  const auto sources = enumerate_granules(es.source(), t.ms, mode, options.max_length);
  const auto targets = enumerate_granules(es.target(), t.mt, mode, options.max_length);

  std::vector<std::vector<Rule>> per_target(targets.size());
  const unsigned threads = std::max(1U, std::min<unsigned>(options.threads,
                                                           static_cast<unsigned>(targets.size())));
  if (threads <= 1) {
    for (std::size_t i = 0; i < targets.size(); ++i)
      rules_for_target(es, t, sources, targets[i], options, per_target[i]);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < threads; ++w)
      pool.emplace_back([&, w] {
        for (std::size_t i = w; i < targets.size(); i += threads)
          rules_for_target(es, t, sources, targets[i], options, per_target[i]);
      });
  }

  std::vector<Rule> rules;
  for (auto& chunk : per_target)
    std::move(chunk.begin(), chunk.end(), std::back_inserter(rules));
  std::sort(rules.begin(), rules.end(), [](const Rule& a, const Rule& b) {
    if (a.source != b.source) return a.source < b.source;
    return a.target < b.target;
  });
  return rules;
}

RuleMeasures evaluate_rule(const Mmer& es, const GranuleDescriptor& source,
                           const GranuleDescriptor& target, const Ratio& tc) {
  const Bitset lh = block_of(es.source(), source);
  const Bitset rh = block_of(es.target(), target);
  if (lh.none() || rh.none())
    throw UndefinedMeasureError("rule has an empty left- or right-hand extension");
  return {Ratio(lh.count(), es.source().size()), Ratio(rh.count(), es.target().size()),
          source_confidence(es, lh, rh, tc), tc};
}

}  // namespace gar
