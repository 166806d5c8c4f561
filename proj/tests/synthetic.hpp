#pragma once

// Random small MMERs and a brute-force oracle that works on the raw tables
// only: every descriptor in the attribute-value lattice is enumerated, blocks
// come from row scans, and the confidence test is a per-object count with
// integer cross-multiplication.

#include <cstdint>
#include <iterator>
#include <random>
#include <set>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "gar/granules.hpp"
#include "gar/mmer.hpp"
#include "gar/rules.hpp"

namespace gar::testing {

struct RawTable {
  std::vector<bool> scaled;                       // per attribute
  std::vector<std::uint32_t> domain_size;         // per attribute
  std::vector<std::vector<std::uint32_t>> rows;   // rows[x][a]

  std::size_t size() const { return rows.size(); }
  std::size_t attributes() const { return scaled.size(); }

  InformationSystem to_system(const std::string& prefix) const {
    std::vector<std::string> ids;
    std::vector<AttributeSchema> schema;
    std::vector<std::vector<ValueCode>> columns(attributes());
    for (std::size_t x = 0; x < size(); ++x) ids.push_back(prefix + std::to_string(x));
    for (std::size_t a = 0; a < attributes(); ++a) {
      if (scaled[a]) {
        schema.push_back(AttributeSchema::scaled(prefix + "b" + std::to_string(a)));
      } else {
        std::vector<std::string> dom;
        for (std::uint32_t v = 0; v < domain_size[a]; ++v) dom.push_back("v" + std::to_string(v));
        schema.push_back(AttributeSchema::nominal(prefix + "n" + std::to_string(a), dom));
      }
      for (std::size_t x = 0; x < size(); ++x) columns[a].push_back(rows[x][a]);
    }
    return InformationSystem(ids, schema, columns);
  }
};

struct SyntheticCase {
  RawTable source;
  RawTable target;
  std::vector<std::vector<bool>> related;  // related[x][y]

  Mmer to_mmer() const {
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t x = 0; x < related.size(); ++x)
      for (std::size_t y = 0; y < related[x].size(); ++y)
        if (related[x][y]) pairs.emplace_back(x, y);
    return Mmer(source.to_system("s"), target.to_system("t"),
                BinaryRelation(source.size(), target.size(), pairs));
  }
};

inline RawTable random_table(std::mt19937_64& rng, std::size_t max_objects, std::size_t max_attrs) {
  RawTable t;
  std::uniform_int_distribution<std::size_t> n_obj(1, max_objects);
  std::uniform_int_distribution<std::size_t> n_attr(1, max_attrs);
  std::bernoulli_distribution coin(0.5);
  std::uniform_int_distribution<std::uint32_t> dom(1, 3);
  const std::size_t n = n_obj(rng);
  const std::size_t m = n_attr(rng);
  for (std::size_t a = 0; a < m; ++a) {
    bool s = coin(rng);
    t.scaled.push_back(s);
    t.domain_size.push_back(s ? 2 : dom(rng));
  }
  for (std::size_t x = 0; x < n; ++x) {
    std::vector<std::uint32_t> row;
    for (std::size_t a = 0; a < m; ++a)
      row.push_back(std::uniform_int_distribution<std::uint32_t>(0, t.domain_size[a] - 1)(rng));
    t.rows.push_back(row);
  }
  return t;
}

inline SyntheticCase random_case(std::mt19937_64& rng, std::size_t max_objects = 10,
                                 std::size_t max_attrs = 4) {
  SyntheticCase c;
  c.source = random_table(rng, max_objects, max_attrs);
  c.target = random_table(rng, max_objects, max_attrs);
  std::bernoulli_distribution edge(std::uniform_real_distribution<double>(0.1, 0.9)(rng));
  c.related.assign(c.source.size(), std::vector<bool>(c.target.size()));
  for (auto& row : c.related)
    for (std::size_t y = 0; y < row.size(); ++y) row[y] = edge(rng);
  return c;
}

// Ratio pick from a small grid of "nice" thresholds, so ties with exact
// counts happen often.
inline Ratio random_threshold(std::mt19937_64& rng) {
  static const std::uint64_t dens[] = {2, 3, 4, 5, 6, 7, 8, 9, 10, 12, 20};
  std::uint64_t den = dens[std::uniform_int_distribution<std::size_t>(0, std::size(dens) - 1)(rng)];
  std::uint64_t num = std::uniform_int_distribution<std::uint64_t>(1, den)(rng);
  return Ratio(num, den);
}

// Descriptor as a sorted list of (attribute, value).
using RawDescriptor = std::vector<std::pair<std::uint32_t, std::uint32_t>>;

inline std::vector<RawDescriptor> all_descriptors(const RawTable& t) {
  std::vector<RawDescriptor> out{{}};
  for (std::uint32_t a = 0; a < t.attributes(); ++a) {
    std::vector<RawDescriptor> next;
    for (const auto& d : out) {
      next.push_back(d);
      for (std::uint32_t v = 0; v < t.domain_size[a]; ++v) {
        auto e = d;
        e.emplace_back(a, v);
        next.push_back(e);
      }
    }
    out = std::move(next);
  }
  return out;
}

inline std::vector<std::size_t> scan_block(const RawTable& t, const RawDescriptor& d) {
  std::vector<std::size_t> out;
  for (std::size_t x = 0; x < t.size(); ++x) {
    bool ok = true;
    for (auto [a, v] : d) ok = ok && t.rows[x][a] == v;
    if (ok) out.push_back(x);
  }
  return out;
}

inline bool raw_positive(const RawTable& t, const RawDescriptor& d) {
  for (auto [a, v] : d)
    if (t.scaled[a] && v != 1) return false;
  return true;
}

inline bool meets(std::uint64_t count, std::uint64_t total, const Ratio& r) {
  return count * r.den() >= r.num() * total;
}

inline std::set<RawDescriptor> oracle_granules(const RawTable& t, const Ratio& mincov,
                                               MiningMode mode) {
  std::set<RawDescriptor> out;
  for (const auto& d : all_descriptors(t)) {
    if (d.empty()) continue;
    if (mode == MiningMode::positive_only && !raw_positive(t, d)) continue;
    if (meets(scan_block(t, d).size(), t.size(), mincov)) out.insert(d);
  }
  return out;
}

// (source, target, hits, lh size)
using RawRule = std::tuple<RawDescriptor, RawDescriptor, std::size_t, std::size_t>;

inline std::size_t oracle_hits(const SyntheticCase& c, const std::vector<std::size_t>& lh,
                               const std::vector<std::size_t>& rh, const Ratio& tc) {
  std::size_t hits = 0;
  for (std::size_t x : lh) {
    std::size_t common = 0;
    for (std::size_t y : rh) common += c.related[x][y] ? 1 : 0;
    if (meets(common, rh.size(), tc)) ++hits;
  }
  return hits;
}

inline std::set<RawRule> oracle_rules(const SyntheticCase& c, const Thresholds& t, MiningMode mode) {
  std::set<RawRule> out;
  const auto sg = oracle_granules(c.source, t.ms, mode);
  const auto tg = oracle_granules(c.target, t.mt, mode);
  for (const auto& s : sg) {
    const auto lh = scan_block(c.source, s);
    for (const auto& g : tg) {
      const auto rh = scan_block(c.target, g);
      const std::size_t hits = oracle_hits(c, lh, rh, t.tc);
      if (meets(hits, lh.size(), t.sc)) out.emplace(s, g, hits, lh.size());
    }
  }
  return out;
}

inline RawDescriptor to_raw(const GranuleDescriptor& d) {
  RawDescriptor out;
  for (const auto& term : d.terms()) out.emplace_back(term.attribute, term.value);
  return out;
}

inline GranuleDescriptor from_raw(const RawDescriptor& d) {
  std::vector<Term> terms;
  for (auto [a, v] : d) terms.push_back({a, v});
  return GranuleDescriptor(terms);
}

inline std::set<RawRule> as_raw(const std::vector<Rule>& rules) {
  std::set<RawRule> out;
  for (const auto& r : rules)
    out.emplace(to_raw(r.source), to_raw(r.target),
                static_cast<std::size_t>(r.measures.sconf.num() * r.lh_size / r.measures.sconf.den()),
                r.lh_size);
  return out;
}

}  // namespace gar::testing
