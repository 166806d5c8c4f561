#pragma once

// Loaders for the MovieLens ml-100k files and for a generic typed-CSV corpus.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gar/mmer.hpp"

namespace gar::ingest {

// Numeric-to-nominal binning. Bin i covers (upper_bounds[i-1], upper_bounds[i]];
// the first bin starts at `lower` and the last bin is unbounded above.
struct DiscretizationSpec {
  std::string attribute = "Age-bin";
  std::int64_t lower = 0;
  std::vector<std::int64_t> upper_bounds;

  // Throws ThresholdError unless the bounds are strictly increasing and >= lower.
  void validate() const;
  std::vector<std::string> labels() const;  // "[0,17]", "[18,24]", ..., "[56,inf)"
  // Bin index of `value`; nullopt below `lower`.
  std::optional<std::size_t> bin_of(std::int64_t value) const;
};

// [0,17] [18,24] [25,34] [35,44] [45,49] [50,55] [56,inf)
DiscretizationSpec default_age_bins();

// Highest priority first. Genres not listed rank after the listed ones, in
// file declaration order.
struct PrioritySpec {
  std::vector<std::string> order;

  void validate() const;  // names must be ml-100k genres, no repeats
};

enum class Preprocess { scaling, priority };
std::string_view to_string(Preprocess p);
std::optional<Preprocess> parse_preprocess(std::string_view text);

// Where the Release-decade of a movie comes from. The title year "(1995)" is
// tried first in title_year mode and the release-date field is the fallback;
// release_date mode uses only the date field.
enum class DecadeSource { title_year, release_date };
std::string_view to_string(DecadeSource s);
std::optional<DecadeSource> parse_decade_source(std::string_view text);

inline constexpr std::string_view kUnknownDecade = "unknown-decade";
inline constexpr std::string_view kUnknownGenre = "unknown";

// The 18 named ml-100k genres in file order (the "unknown" flag excluded).
const std::vector<std::string>& genre_names();

struct MovieOptions {
  Preprocess mode = Preprocess::scaling;
  PrioritySpec priority;
  DecadeSource decade_source = DecadeSource::title_year;
};

// One u.item line after field validation.
struct RawMovie {
  std::string id;
  std::string title;
  std::string release_date;
  bool unknown_flag = false;
  std::vector<bool> genres;  // genre_names() order
};

std::vector<RawMovie> parse_items(const std::filesystem::path& path);

// Decade label ("1990s") for a movie; kUnknownDecade when no year is available.
std::string decade_of(const RawMovie& movie, DecadeSource source);

// Genre kept by priority preprocessing; kUnknownGenre when no named flag is set.
std::string priority_genre(const RawMovie& movie, const PrioritySpec& priority);

InformationSystem load_users(const std::filesystem::path& path,
                             const DiscretizationSpec& bins = default_age_bins());

InformationSystem load_movies(const std::filesystem::path& path, const MovieOptions& options = {});
InformationSystem build_movies(const std::vector<RawMovie>& movies, const MovieOptions& options);

// u.data; user id k and item id k map to positions k-1.
BinaryRelation load_ratings(const std::filesystem::path& path, int min_rating, std::size_t n_users,
                            std::size_t n_movies);

struct Ml100kOptions {
  DiscretizationSpec bins = default_age_bins();
  MovieOptions movies;
  int min_rating = 1;
};

// Loads u.user, u.item and u.data from `dir`.
Mmer load_ml100k(const std::filesystem::path& dir, const Ml100kOptions& options = {});

// Directory with source.csv, target.csv and relation.csv. Object tables have a
// header "id,<name>:<nominal|scaled>,..."; relation.csv has the header
// "source,target" followed by id pairs.
Mmer load_generic(const std::filesystem::path& dir);
void dump_generic(const Mmer& es, const std::filesystem::path& dir);

}  // namespace gar::ingest
