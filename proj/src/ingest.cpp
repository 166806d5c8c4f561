#include "gar/ingest.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <fstream>
#include <future>
#include <map>
#include <set>
#include <unordered_map>

#include <spdlog/spdlog.h>

#include "gar/errors.hpp"

namespace gar::ingest {

namespace fs = std::filesystem;

namespace {

constexpr std::size_t kItemFields = 24;
constexpr std::size_t kItemFlagOffset = 5;  // id|title|release|video|url|unknown|18 genres

std::ifstream open_input(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  return in;
}

// Reads lines, stripping a trailing '\r'. Blank lines are skipped.
template <typename Fn>
void for_each_line(const fs::path& path, Fn&& fn) {
  auto in = open_input(path);
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    fn(line, number);
  }
}

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    auto pos = line.find(sep, start);
    if (pos == std::string_view::npos) {
      out.push_back(line.substr(start));
      return out;
    }
    out.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
}

std::optional<std::int64_t> to_int(std::string_view s) {
  std::int64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty()) return std::nullopt;
  return v;
}

std::string decade_label(std::int64_t year) { return std::to_string(year - year % 10) + "s"; }

// Year in the last "(YYYY)" of a title.
std::optional<std::int64_t> title_year(std::string_view title) {
  for (std::size_t pos = title.rfind('('); pos != std::string_view::npos;
       pos = pos == 0 ? std::string_view::npos : title.rfind('(', pos - 1)) {
    if (pos + 5 < title.size() && title[pos + 5] == ')') {
      auto year = to_int(title.substr(pos + 1, 4));
      if (year) return year;
    }
  }
  return std::nullopt;
}

// DD-MMM-YYYY; empty is allowed and yields nullopt.
std::optional<std::int64_t> release_year(std::string_view date, const fs::path& path,
                                         std::size_t line) {
  if (date.empty()) return std::nullopt;
  static constexpr std::array<std::string_view, 12> kMonths = {
      "Jan", "Feb", "Mar", "Apr", "May", "Jun", "Jul", "Aug", "Sep", "Oct", "Nov", "Dec"};
  auto parts = split(date, '-');
  auto day = parts.size() == 3 ? to_int(parts[0]) : std::nullopt;
  auto year = parts.size() == 3 && parts[2].size() == 4 ? to_int(parts[2]) : std::nullopt;
  bool month_ok = parts.size() == 3 &&
                  std::find(kMonths.begin(), kMonths.end(), parts[1]) != kMonths.end();
  if (!day || *day < 1 || *day > 31 || !month_ok || !year)
    throw ParseError(path.string(), line, "malformed release date '" + std::string(date) + "'");
  return year;
}

// Minimal RFC 4180: quoted fields may contain commas and doubled quotes.
std::vector<std::string> split_csv(std::string_view line, const fs::path& path, std::size_t number) {
  std::vector<std::string> out;
  std::string field;
  bool quoted = false;
  bool was_quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        field += c;
      }
    } else if (c == ',') {
      out.push_back(std::move(field));
      field.clear();
      was_quoted = false;
    } else if (c == '"' && field.empty() && !was_quoted) {
      quoted = was_quoted = true;
    } else {
      field += c;
    }
  }
  if (quoted) throw ParseError(path.string(), number, "unterminated quoted field");
  out.push_back(std::move(field));
  return out;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

InformationSystem load_generic_table(const fs::path& path) {
  InformationSystemBuilder builder;
  std::vector<bool> scaled;
  std::size_t columns = 0;
  bool header = true;
  for_each_line(path, [&](const std::string& line, std::size_t number) {
    auto fields = split_csv(line, path, number);
    if (header) {
      header = false;
      if (fields.empty() || fields[0] != "id")
        throw ParseError(path.string(), number, "header must start with 'id'");
      for (std::size_t i = 1; i < fields.size(); ++i) {
        auto colon = fields[i].rfind(':');
        if (colon == std::string::npos)
          throw ParseError(path.string(), number, "column '" + fields[i] + "' has no type");
        std::string name = fields[i].substr(0, colon);
        std::string kind = fields[i].substr(colon + 1);
        scaled.push_back(kind == "scaled");
        if (kind == "nominal")
          builder.nominal(name);
        else if (kind == "scaled")
          builder.scaled(name);
        else
          throw ParseError(path.string(), number, "unknown column type '" + kind + "'");
      }
      columns = fields.size();
      return;
    }
    if (fields.size() != columns)
      throw ParseError(path.string(), number,
                       "expected " + std::to_string(columns) + " fields, got " +
                           std::to_string(fields.size()));
    std::string id = std::move(fields[0]);
    fields.erase(fields.begin());
    for (std::size_t i = 0; i < fields.size(); ++i)
      if (scaled[i] && fields[i] != "0" && fields[i] != "1")
        throw ParseError(path.string(), number,
                         "scaled column " + std::to_string(i + 1) + " holds '" + fields[i] + "'");
    try {
      builder.row(std::move(id), std::move(fields));
    } catch (const Error& e) {
      throw ParseError(path.string(), number, e.what());
    }
  });
  if (header) throw ParseError(path.string(), 1, "missing header");
  try {
    return builder.build();
  } catch (const DuplicateKeyError&) {
    throw;
  } catch (const Error& e) {
    throw ParseError(path.string(), 0, e.what());
  }
}

void write_generic_table(const InformationSystem& is, const fs::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  out << "id";
  for (const auto& attr : is.schema())
    out << ',' << csv_field(attr.name + (attr.kind == AttributeKind::scaled ? ":scaled" : ":nominal"));
  out << '\n';
  for (std::size_t x = 0; x < is.size(); ++x) {
    out << csv_field(is.object_id(x));
    for (std::size_t a = 0; a < is.attribute_count(); ++a) out << ',' << csv_field(is.value_label(x, a));
    out << '\n';
  }
}

}  // namespace

void DiscretizationSpec::validate() const {
  std::int64_t prev = lower - 1;
  for (auto b : upper_bounds) {
    if (b <= prev) throw ThresholdError("bin bounds must be strictly increasing and >= lower");
    prev = b;
  }
}

std::vector<std::string> DiscretizationSpec::labels() const {
  std::vector<std::string> out;
  std::int64_t lo = lower;
  for (auto b : upper_bounds) {
    out.push_back("[" + std::to_string(lo) + "," + std::to_string(b) + "]");
    lo = b + 1;
  }
  out.push_back("[" + std::to_string(lo) + ",inf)");
  return out;
}

std::optional<std::size_t> DiscretizationSpec::bin_of(std::int64_t value) const {
  if (value < lower) return std::nullopt;
  auto it = std::lower_bound(upper_bounds.begin(), upper_bounds.end(), value);
  return static_cast<std::size_t>(it - upper_bounds.begin());
}

DiscretizationSpec default_age_bins() { return {"Age-bin", 0, {17, 24, 34, 44, 49, 55}}; }

const std::vector<std::string>& genre_names() {
  static const std::vector<std::string> kGenres = {
      "Action",  "Adventure", "Animation", "Children's", "Comedy",  "Crime",
      "Documentary", "Drama", "Fantasy",   "Film-Noir",  "Horror",  "Musical",
      "Mystery", "Romance",   "Sci-Fi",    "Thriller",   "War",     "Western"};
  return kGenres;
}

void PrioritySpec::validate() const {
  std::set<std::string_view> seen;
  for (const auto& g : order) {
    if (std::find(genre_names().begin(), genre_names().end(), g) == genre_names().end())
      throw ThresholdError("priority list names unknown genre '" + g + "'");
    if (!seen.insert(g).second) throw ThresholdError("priority list repeats '" + g + "'");
  }
}

std::string_view to_string(Preprocess p) { return p == Preprocess::scaling ? "scaling" : "priority"; }

std::optional<Preprocess> parse_preprocess(std::string_view text) {
  if (text == "scaling") return Preprocess::scaling;
  if (text == "priority") return Preprocess::priority;
  return std::nullopt;
}

std::string_view to_string(DecadeSource s) {
  return s == DecadeSource::title_year ? "title-year" : "release-date";
}

std::optional<DecadeSource> parse_decade_source(std::string_view text) {
  if (text == "title-year") return DecadeSource::title_year;
  if (text == "release-date") return DecadeSource::release_date;
  return std::nullopt;
}

std::vector<RawMovie> parse_items(const fs::path& path) {
  std::vector<RawMovie> movies;
  std::set<std::string> ids;
  for_each_line(path, [&](const std::string& line, std::size_t number) {
    auto f = split(line, '|');
    if (f.size() != kItemFields)
      throw ParseError(path.string(), number,
                       "expected " + std::to_string(kItemFields) + " fields, got " +
                           std::to_string(f.size()));
    if (!to_int(f[0])) throw ParseError(path.string(), number, "non-integer movie id");
    RawMovie m;
    m.id = std::string(f[0]);
    m.title = std::string(f[1]);
    m.release_date = std::string(f[2]);
    release_year(m.release_date, path, number);
    for (std::size_t i = kItemFlagOffset; i < kItemFields; ++i)
      if (f[i] != "0" && f[i] != "1")
        throw ParseError(path.string(), number, "genre flag '" + std::string(f[i]) + "' is not 0/1");
    m.unknown_flag = f[kItemFlagOffset] == "1";
    for (std::size_t i = kItemFlagOffset + 1; i < kItemFields; ++i) m.genres.push_back(f[i] == "1");
    if (!ids.insert(m.id).second) throw DuplicateKeyError("duplicate movie id " + m.id);
    movies.push_back(std::move(m));
  });
  return movies;
}

std::string decade_of(const RawMovie& movie, DecadeSource source) {
  std::optional<std::int64_t> year;
  if (source == DecadeSource::title_year) year = title_year(movie.title);
  if (!year) year = release_year(movie.release_date, "u.item", 0);
  return year ? decade_label(*year) : std::string(kUnknownDecade);
}

std::string priority_genre(const RawMovie& movie, const PrioritySpec& priority) {
  const auto& names = genre_names();
  for (const auto& g : priority.order) {
    auto i = static_cast<std::size_t>(std::find(names.begin(), names.end(), g) - names.begin());
    if (movie.genres[i]) return g;
  }
  for (std::size_t i = 0; i < names.size(); ++i)
    if (movie.genres[i]) return names[i];
  return std::string(kUnknownGenre);
}

InformationSystem load_users(const fs::path& path, const DiscretizationSpec& bins) {
  bins.validate();
  const auto labels = bins.labels();
  InformationSystemBuilder builder;
  builder.nominal(bins.attribute, labels).nominal("Gender").nominal("Occupation");
  std::set<std::string> ids;
  for_each_line(path, [&](const std::string& line, std::size_t number) {
    auto f = split(line, '|');
    if (f.size() != 5)
      throw ParseError(path.string(), number, "expected 5 fields, got " + std::to_string(f.size()));
    if (!to_int(f[0])) throw ParseError(path.string(), number, "non-integer user id");
    auto age = to_int(f[1]);
    if (!age) throw ParseError(path.string(), number, "non-integer age '" + std::string(f[1]) + "'");
    auto bin = bins.bin_of(*age);
    if (!bin) throw ParseError(path.string(), number, "age below the first bin");
    std::string id(f[0]);
    if (!ids.insert(id).second) throw DuplicateKeyError("duplicate user id " + id);
    builder.row(std::move(id), {labels[*bin], std::string(f[2]), std::string(f[3])});
  });
  return builder.build();
}

InformationSystem build_movies(const std::vector<RawMovie>& movies, const MovieOptions& options) {
  InformationSystemBuilder builder;
  builder.nominal("Release-decade");
  if (options.mode == Preprocess::scaling) {
    for (const auto& g : genre_names()) builder.scaled(g);
  } else {
    options.priority.validate();
    builder.nominal("Genre");
  }
  for (const auto& m : movies) {
    std::vector<std::string> row{decade_of(m, options.decade_source)};
    if (options.mode == Preprocess::scaling) {
      for (bool flag : m.genres) row.emplace_back(flag ? "1" : "0");
    } else {
      row.push_back(priority_genre(m, options.priority));
      if (row.back() == kUnknownGenre && !m.unknown_flag)
        spdlog::warn("movie {} has no genre flag set; assigned Genre=unknown", m.id);
    }
    builder.row(m.id, std::move(row));
  }
  return builder.build();
}

InformationSystem load_movies(const fs::path& path, const MovieOptions& options) {
  return build_movies(parse_items(path), options);
}

BinaryRelation load_ratings(const fs::path& path, int min_rating, std::size_t n_users,
                            std::size_t n_movies) {
  if (min_rating < 1 || min_rating > 5)
    throw ThresholdError("min_rating " + std::to_string(min_rating) + " is outside [1, 5]");
  std::unordered_map<std::uint64_t, int> best;
  std::vector<std::pair<std::size_t, std::size_t>> order;
  std::size_t duplicates = 0;
  for_each_line(path, [&](const std::string& line, std::size_t number) {
    auto f = split(line, '\t');
    if (f.size() != 4)
      throw ParseError(path.string(), number, "expected 4 fields, got " + std::to_string(f.size()));
    std::array<std::int64_t, 4> v{};
    for (std::size_t i = 0; i < 4; ++i) {
      auto n = to_int(f[i]);
      if (!n) throw ParseError(path.string(), number, "non-integer field '" + std::string(f[i]) + "'");
      v[i] = *n;
    }
    if (v[0] < 1 || static_cast<std::size_t>(v[0]) > n_users)
      throw ParseError(path.string(), number, "user id " + std::to_string(v[0]) + " out of range");
    if (v[1] < 1 || static_cast<std::size_t>(v[1]) > n_movies)
      throw ParseError(path.string(), number, "item id " + std::to_string(v[1]) + " out of range");
    if (v[2] < 1 || v[2] > 5)
      throw ParseError(path.string(), number, "rating " + std::to_string(v[2]) + " outside 1-5");
    auto x = static_cast<std::size_t>(v[0] - 1);
    auto y = static_cast<std::size_t>(v[1] - 1);
    auto [it, fresh] = best.try_emplace(static_cast<std::uint64_t>(x) * n_movies + y, static_cast<int>(v[2]));
    if (fresh) {
      order.emplace_back(x, y);
    } else {
      ++duplicates;
      it->second = std::max(it->second, static_cast<int>(v[2]));
    }
  });
  if (duplicates > 0)
    spdlog::warn("{}: merged {} duplicate (user, item) ratings, keeping the maximum", path.string(),
                 duplicates);

  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  pairs.reserve(order.size());
  for (auto [x, y] : order)
    if (best.at(static_cast<std::uint64_t>(x) * n_movies + y) >= min_rating) pairs.emplace_back(x, y);
  return BinaryRelation(n_users, n_movies, pairs);
}

Mmer load_ml100k(const fs::path& dir, const Ml100kOptions& options) {
  auto users = std::async(std::launch::async, [&] { return load_users(dir / "u.user", options.bins); });
  auto movies =
      std::async(std::launch::async, [&] { return load_movies(dir / "u.item", options.movies); });
  InformationSystem u = users.get();
  InformationSystem v = movies.get();
  // u.data refers to users and items by their 1-based position.
  for (std::size_t i = 0; i < u.size(); ++i)
    if (u.object_id(i) != std::to_string(i + 1))
      throw ParseError((dir / "u.user").string(), i + 1, "user ids must be 1..n in order");
  for (std::size_t i = 0; i < v.size(); ++i)
    if (v.object_id(i) != std::to_string(i + 1))
      throw ParseError((dir / "u.item").string(), i + 1, "item ids must be 1..n in order");
  BinaryRelation r = load_ratings(dir / "u.data", options.min_rating, u.size(), v.size());
  return Mmer(std::move(u), std::move(v), std::move(r));
}

Mmer load_generic(const fs::path& dir) {
  InformationSystem source = load_generic_table(dir / "source.csv");
  InformationSystem target = load_generic_table(dir / "target.csv");

  std::unordered_map<std::string_view, std::size_t> source_index;
  std::unordered_map<std::string_view, std::size_t> target_index;
  for (std::size_t i = 0; i < source.size(); ++i) source_index.emplace(source.object_id(i), i);
  for (std::size_t i = 0; i < target.size(); ++i) target_index.emplace(target.object_id(i), i);

  const fs::path rel = dir / "relation.csv";
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  bool header = true;
  for_each_line(rel, [&](const std::string& line, std::size_t number) {
    auto f = split_csv(line, rel, number);
    if (f.size() != 2) throw ParseError(rel.string(), number, "expected 2 fields");
    if (header) {
      header = false;
      if (f[0] != "source" || f[1] != "target")
        throw ParseError(rel.string(), number, "header must be 'source,target'");
      return;
    }
    auto x = source_index.find(f[0]);
    auto y = target_index.find(f[1]);
    if (x == source_index.end())
      throw ParseError(rel.string(), number, "unknown source object '" + f[0] + "'");
    if (y == target_index.end())
      throw ParseError(rel.string(), number, "unknown target object '" + f[1] + "'");
    pairs.emplace_back(x->second, y->second);
  });
  if (header) throw ParseError(rel.string(), 1, "missing header");
  BinaryRelation relation(source.size(), target.size(), pairs);
  return Mmer(std::move(source), std::move(target), std::move(relation));
}

void dump_generic(const Mmer& es, const fs::path& dir) {
  fs::create_directories(dir);
  write_generic_table(es.source(), dir / "source.csv");
  write_generic_table(es.target(), dir / "target.csv");
  std::ofstream out(dir / "relation.csv", std::ios::binary);
  if (!out) throw Error("cannot write " + (dir / "relation.csv").string());
  out << "source,target\n";
  for (auto [x, y] : es.relation().pairs())
    out << csv_field(es.source().object_id(x)) << ',' << csv_field(es.target().object_id(y)) << '\n';
}

}  // namespace gar::ingest
