#pragma once

// Data model for many-to-many entity-relationship systems: two information
// systems (object tables with nominal or scaled-boolean columns) joined by a
// binary relation between their universes. Everything here is immutable once
// built and safe to share across threads.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "gar/bitset.hpp"
#include "gar/ratio.hpp"

namespace gar {

enum class AttributeKind { nominal, scaled };

using ValueCode = std::uint32_t;

// Scaled attributes always carry the domain {"0", "1"}; code 1 means "has it".
inline constexpr ValueCode kScaledFalse = 0;
inline constexpr ValueCode kScaledTrue = 1;

struct AttributeSchema {
  std::string name;
  AttributeKind kind = AttributeKind::nominal;
  std::vector<std::string> domain;

  static AttributeSchema nominal(std::string name, std::vector<std::string> domain);
  static AttributeSchema scaled(std::string name);

  std::optional<ValueCode> find_value(std::string_view label) const;
};

class InformationSystem {
 public:
  InformationSystem() = default;

  // `columns[a][x]` is the value code of object x on attribute a.
  InformationSystem(std::vector<std::string> objects, std::vector<AttributeSchema> schema,
                    std::vector<std::vector<ValueCode>> columns);

  std::size_t size() const { return objects_.size(); }
  std::size_t attribute_count() const { return schema_.size(); }

  const std::vector<std::string>& objects() const { return objects_; }
  const std::string& object_id(std::size_t x) const { return objects_[x]; }
  const std::vector<AttributeSchema>& schema() const { return schema_; }
  const AttributeSchema& attribute(std::size_t a) const { return schema_[a]; }

  ValueCode value(std::size_t x, std::size_t a) const { return columns_[a][x]; }
  const std::string& value_label(std::size_t x, std::size_t a) const {
    return schema_[a].domain[columns_[a][x]];
  }
  const std::vector<ValueCode>& column(std::size_t a) const { return columns_[a]; }

  // Objects holding `code` on attribute `a`.
  const Bitset& value_block(std::size_t a, ValueCode code) const { return blocks_[a][code]; }

  std::optional<std::size_t> find_attribute(std::string_view name) const;
  std::optional<std::size_t> find_object(std::string_view id) const;

  friend bool operator==(const InformationSystem& a, const InformationSystem& b) {
    return a.objects_ == b.objects_ && a.columns_ == b.columns_ && a.same_schema(b);
  }

 private:
  bool same_schema(const InformationSystem& other) const;

  std::vector<std::string> objects_;
  std::vector<AttributeSchema> schema_;
  std::vector<std::vector<ValueCode>> columns_;
  std::vector<std::vector<Bitset>> blocks_;
};

// Row-oriented construction from string labels. Nominal domains not given
// up front are collected from the rows and sorted.
class InformationSystemBuilder {
 public:
  InformationSystemBuilder& nominal(std::string name);
  InformationSystemBuilder& nominal(std::string name, std::vector<std::string> domain);
  InformationSystemBuilder& scaled(std::string name);

  InformationSystemBuilder& row(std::string object_id, std::vector<std::string> values);

  InformationSystem build() const;

 private:
  struct Column {
    AttributeSchema schema;
    bool fixed_domain = false;
  };
  std::vector<Column> columns_;
  std::vector<std::string> objects_;
  std::vector<std::vector<std::string>> rows_;
};

struct Term {
  std::uint32_t attribute = 0;
  ValueCode value = 0;

  friend auto operator<=>(const Term&, const Term&) = default;
};

// Conjunction of attribute-value terms, at most one per attribute, kept in
// ascending attribute order. Ordering is lexicographic over the term list.
class GranuleDescriptor {
 public:
  GranuleDescriptor() = default;
  explicit GranuleDescriptor(std::vector<Term> terms);

  // "Gender=M,Occupation=student"; empty text gives the empty descriptor.
  // Commas inside [] or () stay part of the value, so "Age-bin=[18,24]" works.
  static GranuleDescriptor parse(const InformationSystem& is, std::string_view text);

  const std::vector<Term>& terms() const { return terms_; }
  std::size_t length() const { return terms_.size(); }
  bool empty() const { return terms_.empty(); }

  bool contains(const GranuleDescriptor& sub) const;

  // Throws DescriptorError if any term is out of range for `is`.
  void validate(const InformationSystem& is) const;

  // ⟨Gender, M⟩ ∧ ⟨Occupation, student⟩
  std::string render(const InformationSystem& is) const;

  friend auto operator<=>(const GranuleDescriptor&, const GranuleDescriptor&) = default;
  friend bool operator==(const GranuleDescriptor&, const GranuleDescriptor&) = default;

 private:
  std::vector<Term> terms_;
};

struct Granule {
  GranuleDescriptor descriptor;
  Bitset extension;
  Ratio support;
};

class BinaryRelation {
 public:
  BinaryRelation() = default;
  BinaryRelation(std::size_t source_size, std::size_t target_size,
                 const std::vector<std::pair<std::size_t, std::size_t>>& pairs);

  std::size_t source_size() const { return forward_.size(); }
  std::size_t target_size() const { return target_size_; }
  std::size_t pair_count() const { return pairs_; }

  bool contains(std::size_t x, std::size_t y) const { return forward_[x].test(y); }

  // R(x); throws std::out_of_range.
  const Bitset& neighborhood(std::size_t x) const;
  // R⁻¹(y); throws std::out_of_range.
  const Bitset& inverse_neighborhood(std::size_t y) const;

  std::vector<std::pair<std::size_t, std::size_t>> pairs() const;

  friend bool operator==(const BinaryRelation& a, const BinaryRelation& b) {
    return a.target_size_ == b.target_size_ && a.forward_ == b.forward_;
  }

 private:
  std::size_t target_size_ = 0;
  std::size_t pairs_ = 0;
  std::vector<Bitset> forward_;
  std::vector<Bitset> backward_;
};

class Mmer {
 public:
  Mmer(InformationSystem source, InformationSystem target, BinaryRelation relation);

  const InformationSystem& source() const { return source_; }
  const InformationSystem& target() const { return target_; }
  const BinaryRelation& relation() const { return relation_; }

  friend bool operator==(const Mmer&, const Mmer&) = default;

 private:
  InformationSystem source_;
  InformationSystem target_;
  BinaryRelation relation_;
};

struct Thresholds {
  Ratio ms;  // minimal source coverage
  Ratio mt;  // minimal target coverage
  Ratio sc;  // minimal source confidence
  Ratio tc;  // minimal target confidence

  // Throws ThresholdError unless every value lies in (0, 1].
  void validate() const;
};

// Objects matching every term of `d`. The empty descriptor gives the whole universe.
Bitset block_of(const InformationSystem& is, const GranuleDescriptor& d);

// |block_of(is, d)| / |U|; throws UndefinedMeasureError on an empty universe.
Ratio support(const InformationSystem& is, const GranuleDescriptor& d);

const Bitset& neighborhood(const BinaryRelation& r, std::size_t x);
const Bitset& inverse_neighborhood(const BinaryRelation& r, std::size_t y);

// {x ∈ U : |R(x) ∩ Y| / |Y| >= beta}
Bitset lower_approx_inverse(const BinaryRelation& r, const Bitset& target_set, const Ratio& beta);

// True iff every term on a scaled attribute carries value 1.
bool is_positive(const std::vector<AttributeSchema>& schema, const GranuleDescriptor& d);

}  // namespace gar
