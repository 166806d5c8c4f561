#include "gar/mmer.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

#include "gar/errors.hpp"

namespace gar {

AttributeSchema AttributeSchema::nominal(std::string name, std::vector<std::string> domain) {
  return {std::move(name), AttributeKind::nominal, std::move(domain)};
}

AttributeSchema AttributeSchema::scaled(std::string name) {
  return {std::move(name), AttributeKind::scaled, {"0", "1"}};
}

std::optional<ValueCode> AttributeSchema::find_value(std::string_view label) const {
  auto it = std::find(domain.begin(), domain.end(), label);
  if (it == domain.end()) return std::nullopt;
  return static_cast<ValueCode>(it - domain.begin());
}

InformationSystem::InformationSystem(std::vector<std::string> objects,
                                     std::vector<AttributeSchema> schema,
                                     std::vector<std::vector<ValueCode>> columns)
    : objects_(std::move(objects)), schema_(std::move(schema)), columns_(std::move(columns)) {
  if (columns_.size() != schema_.size())
    throw ModelError("column count does not match schema");

  std::set<std::string_view> names;
  for (const auto& attr : schema_) {
    if (!names.insert(attr.name).second)
      throw ModelError("duplicate attribute name '" + attr.name + "'");
    if (attr.kind == AttributeKind::scaled &&
        attr.domain != std::vector<std::string>{"0", "1"})
      throw ModelError("scaled attribute '" + attr.name + "' must have domain {0, 1}");
    std::set<std::string_view> labels(attr.domain.begin(), attr.domain.end());
    if (labels.size() != attr.domain.size())
      throw ModelError("attribute '" + attr.name + "' has repeated domain values");
  }

  std::set<std::string_view> ids;
  for (const auto& id : objects_)
    if (!ids.insert(id).second) throw DuplicateKeyError("duplicate object id '" + id + "'");

  blocks_.resize(schema_.size());
  for (std::size_t a = 0; a < schema_.size(); ++a) {
    const auto& col = columns_[a];
    if (col.size() != objects_.size())
      throw ModelError("attribute '" + schema_[a].name + "' has a missing cell");
    blocks_[a].assign(schema_[a].domain.size(), Bitset(objects_.size()));
    for (std::size_t x = 0; x < col.size(); ++x) {
      if (col[x] >= schema_[a].domain.size())
        throw ModelError("value code outside the domain of '" + schema_[a].name + "'");
      blocks_[a][col[x]].set(x);
    }
  }
}

std::optional<std::size_t> InformationSystem::find_attribute(std::string_view name) const {
  for (std::size_t a = 0; a < schema_.size(); ++a)
    if (schema_[a].name == name) return a;
  return std::nullopt;
}

std::optional<std::size_t> InformationSystem::find_object(std::string_view id) const {
  auto it = std::find(objects_.begin(), objects_.end(), id);
  if (it == objects_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - objects_.begin());
}

bool InformationSystem::same_schema(const InformationSystem& other) const {
  if (schema_.size() != other.schema_.size()) return false;
  for (std::size_t a = 0; a < schema_.size(); ++a) {
    const auto& l = schema_[a];
    const auto& r = other.schema_[a];
    if (l.name != r.name || l.kind != r.kind || l.domain != r.domain) return false;
  }
  return true;
}

InformationSystemBuilder& InformationSystemBuilder::nominal(std::string name) {
  columns_.push_back({AttributeSchema::nominal(std::move(name), {}), false});
  return *this;
}

InformationSystemBuilder& InformationSystemBuilder::nominal(std::string name,
                                                            std::vector<std::string> domain) {
  columns_.push_back({AttributeSchema::nominal(std::move(name), std::move(domain)), true});
  return *this;
}

InformationSystemBuilder& InformationSystemBuilder::scaled(std::string name) {
  columns_.push_back({AttributeSchema::scaled(std::move(name)), true});
  return *this;
}

InformationSystemBuilder& InformationSystemBuilder::row(std::string object_id,
                                                        std::vector<std::string> values) {
  if (values.size() != columns_.size())
    throw ModelError("row '" + object_id + "' has " + std::to_string(values.size()) +
                     " values, expected " + std::to_string(columns_.size()));
  objects_.push_back(std::move(object_id));
  rows_.push_back(std::move(values));
  return *this;
}

InformationSystem InformationSystemBuilder::build() const {
  std::vector<AttributeSchema> schema;
  std::vector<std::vector<ValueCode>> codes(columns_.size());
  for (std::size_t a = 0; a < columns_.size(); ++a) {
    AttributeSchema attr = columns_[a].schema;
    if (!columns_[a].fixed_domain) {
      std::set<std::string> seen;
      for (const auto& r : rows_) seen.insert(r[a]);
      attr.domain.assign(seen.begin(), seen.end());
    }
    std::map<std::string_view, ValueCode> index;
    for (std::size_t v = 0; v < attr.domain.size(); ++v)
      index.emplace(attr.domain[v], static_cast<ValueCode>(v));
    codes[a].reserve(rows_.size());
    for (std::size_t x = 0; x < rows_.size(); ++x) {
      auto it = index.find(rows_[x][a]);
      if (it == index.end())
        throw DescriptorError("object '" + objects_[x] + "' has value '" + rows_[x][a] +
                              "' outside the domain of '" + attr.name + "'");
      codes[a].push_back(it->second);
    }
    schema.push_back(std::move(attr));
  }
  return InformationSystem(objects_, std::move(schema), std::move(codes));
}

GranuleDescriptor::GranuleDescriptor(std::vector<Term> terms) : terms_(std::move(terms)) {
  std::sort(terms_.begin(), terms_.end());
  for (std::size_t i = 1; i < terms_.size(); ++i)
    if (terms_[i].attribute == terms_[i - 1].attribute)
      throw DescriptorError("descriptor has two terms on attribute " +
                            std::to_string(terms_[i].attribute));
}

GranuleDescriptor GranuleDescriptor::parse(const InformationSystem& is, std::string_view text) {
  std::vector<Term> terms;
  while (!text.empty()) {
    // commas inside brackets belong to interval labels such as [18,24]
    std::size_t comma = std::string_view::npos;
    int depth = 0;
    for (std::size_t i = 0; i < text.size() && comma == std::string_view::npos; ++i) {
      char c = text[i];
      if (c == '[' || c == '(') ++depth;
      else if ((c == ']' || c == ')') && depth > 0) --depth;
      else if (c == ',' && depth == 0) comma = i;
    }
    std::string_view item = text.substr(0, comma);
    text = comma == std::string_view::npos ? std::string_view{} : text.substr(comma + 1);
    auto eq = item.find('=');
    if (eq == std::string_view::npos)
      throw DescriptorError("term '" + std::string(item) + "' is not of the form name=value");
    std::string_view name = item.substr(0, eq);
    std::string_view label = item.substr(eq + 1);
    auto a = is.find_attribute(name);
    if (!a) throw DescriptorError("unknown attribute '" + std::string(name) + "'");
    auto v = is.attribute(*a).find_value(label);
    if (!v)
      throw DescriptorError("value '" + std::string(label) + "' not in the domain of '" +
                            std::string(name) + "'");
    terms.push_back({static_cast<std::uint32_t>(*a), *v});
  }
  return GranuleDescriptor(std::move(terms));
}

bool GranuleDescriptor::contains(const GranuleDescriptor& sub) const {
  return std::includes(terms_.begin(), terms_.end(), sub.terms_.begin(), sub.terms_.end());
}

void GranuleDescriptor::validate(const InformationSystem& is) const {
  for (const auto& t : terms_) {
    if (t.attribute >= is.attribute_count())
      throw DescriptorError("attribute index " + std::to_string(t.attribute) + " out of range");
    if (t.value >= is.attribute(t.attribute).domain.size())
      throw DescriptorError("value code " + std::to_string(t.value) +
                            " outside the domain of '" + is.attribute(t.attribute).name + "'");
  }
}

std::string GranuleDescriptor::render(const InformationSystem& is) const {
  std::string out;
  for (const auto& t : terms_) {
    if (!out.empty()) out += " ∧ ";
    const auto& attr = is.attribute(t.attribute);
    out += "⟨" + attr.name + ", " + attr.domain[t.value] + "⟩";
  }
  return out;
}

BinaryRelation::BinaryRelation(std::size_t source_size, std::size_t target_size,
                               const std::vector<std::pair<std::size_t, std::size_t>>& pairs)
    : target_size_(target_size),
      forward_(source_size, Bitset(target_size)),
      backward_(target_size, Bitset(source_size)) {
  for (auto [x, y] : pairs) {
    if (x >= source_size || y >= target_size)
      throw ModelError("relation pair (" + std::to_string(x) + ", " + std::to_string(y) +
                       ") outside " + std::to_string(source_size) + "x" +
                       std::to_string(target_size));
    if (!forward_[x].test(y)) ++pairs_;
    forward_[x].set(y);
    backward_[y].set(x);
  }
}

const Bitset& BinaryRelation::neighborhood(std::size_t x) const {
  if (x >= forward_.size())
    throw std::out_of_range("source index " + std::to_string(x) + " out of range");
  return forward_[x];
}

const Bitset& BinaryRelation::inverse_neighborhood(std::size_t y) const {
  if (y >= backward_.size())
    throw std::out_of_range("target index " + std::to_string(y) + " out of range");
  return backward_[y];
}

std::vector<std::pair<std::size_t, std::size_t>> BinaryRelation::pairs() const {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  out.reserve(pairs_);
  for (std::size_t x = 0; x < forward_.size(); ++x)
    for (std::size_t y : forward_[x].indices()) out.emplace_back(x, y);
  return out;
}

Mmer::Mmer(InformationSystem source, InformationSystem target, BinaryRelation relation)
    : source_(std::move(source)), target_(std::move(target)), relation_(std::move(relation)) {
  if (relation_.source_size() != source_.size() || relation_.target_size() != target_.size())
    throw ModelError("relation is " + std::to_string(relation_.source_size()) + "x" +
                     std::to_string(relation_.target_size()) + " but universes are " +
                     std::to_string(source_.size()) + "x" + std::to_string(target_.size()));
}

void Thresholds::validate() const {
  const std::pair<const char*, const Ratio*> all[] = {{"ms", &ms}, {"mt", &mt}, {"sc", &sc}, {"tc", &tc}};
  for (auto [name, r] : all)
    if (!r->in_unit_interval())
      throw ThresholdError(std::string(name) + " = " + r->str() + " is outside (0, 1]");
}

Bitset block_of(const InformationSystem& is, const GranuleDescriptor& d) {
  d.validate(is);
  Bitset out = Bitset::full(is.size());
  for (const auto& t : d.terms()) out &= is.value_block(t.attribute, t.value);
  return out;
}

Ratio support(const InformationSystem& is, const GranuleDescriptor& d) {
  if (is.size() == 0) throw UndefinedMeasureError("support is undefined on an empty universe");
  return Ratio(block_of(is, d).count(), is.size());
}

const Bitset& neighborhood(const BinaryRelation& r, std::size_t x) { return r.neighborhood(x); }

const Bitset& inverse_neighborhood(const BinaryRelation& r, std::size_t y) {
  return r.inverse_neighborhood(y);
}

Bitset lower_approx_inverse(const BinaryRelation& r, const Bitset& target_set, const Ratio& beta) {
  if (!beta.in_unit_interval()) throw ThresholdError("beta = " + beta.str() + " is outside (0, 1]");
  if (target_set.size() != r.target_size())
    throw ModelError("target set size does not match the relation");
  const std::size_t y_size = target_set.count();
  if (y_size == 0) throw UndefinedMeasureError("lower approximation of an empty set");
  Bitset out(r.source_size());
  for (std::size_t x = 0; x < r.source_size(); ++x)
    if (beta.admits(intersect_count(r.neighborhood(x), target_set), y_size)) out.set(x);
  return out;
}

bool is_positive(const std::vector<AttributeSchema>& schema, const GranuleDescriptor& d) {
  for (const auto& t : d.terms()) {
    if (t.attribute >= schema.size())
      throw DescriptorError("attribute index " + std::to_string(t.attribute) + " out of range");
    const auto& attr = schema[t.attribute];
    if (t.value >= attr.domain.size())
      throw DescriptorError("value code outside the domain of '" + attr.name + "'");
    if (attr.kind == AttributeKind::scaled && t.value != kScaledTrue) return false;
  }
  return true;
}

}  // namespace gar
