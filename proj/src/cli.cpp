#include "gar/cli.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>
#include <spdlog/spdlog.h>

#include "gar/errors.hpp"
#include "gar/rules.hpp"

namespace gar::cli {

namespace {

using nlohmann::json;

std::string corpus_kind_name(CorpusKind k) { return k == CorpusKind::ml100k ? "ml-100k" : "generic"; }

json terms_json(const InformationSystem& is, const GranuleDescriptor& d) {
  json out = json::array();
  for (const auto& t : d.terms())
    out.push_back({is.attribute(t.attribute).name, is.attribute(t.attribute).domain[t.value]});
  return out;
}

json config_json(const RunConfig& c) {
  json bins = json::array();
  for (auto b : c.bins.upper_bounds) bins.push_back(b);
  json j = {
      {"corpus_kind", corpus_kind_name(c.corpus_kind)},
      {"corpus", c.corpus.generic_string()},
      {"mode", std::string(to_string(c.mode))},
      {"ms", c.thresholds.ms.str()},
      {"mt", c.thresholds.mt.str()},
      {"sc", c.thresholds.sc.str()},
      {"tc", c.thresholds.tc.str()},
      {"max_len", c.max_length ? json(*c.max_length) : json(nullptr)},
  };
  if (c.corpus_kind == CorpusKind::ml100k) {
    j["preprocess"] = std::string(ingest::to_string(c.preprocess));
    j["decade_source"] = std::string(ingest::to_string(c.decade_source));
    j["min_rating"] = c.min_rating;
    j["age_bins"] = bins;
    j["priority"] = c.priority.order;
  }
  return j;
}

std::string render_rule(const Mmer& es, const Rule& r) {
  const auto& m = r.measures;
  std::ostringstream s;
  s << r.source.render(es.source()) << '(' << r.lh_size << ") ⇒ " << r.target.render(es.target())
    << '(' << r.rh_size << ") [scov = " << m.scov.decimal() << ", tcov = " << m.tcov.decimal()
    << ", sconf = " << m.sconf.decimal() << ", tconf = " << m.tc_used.decimal() << ']';
  return s.str();
}

json rule_json(const Mmer& es, const Rule& r) {
  const auto& m = r.measures;
  return {{"record", "rule"},
          {"source", terms_json(es.source(), r.source)},
          {"target", terms_json(es.target(), r.target)},
          {"lh_size", r.lh_size},
          {"rh_size", r.rh_size},
          {"scov", m.scov.str()},
          {"tcov", m.tcov.str()},
          {"sconf", m.sconf.str()},
          {"tconf", m.tc_used.str()}};
}

Thresholds with_value(Thresholds t, SweepParam p, const Ratio& v) {
  switch (p) {
    case SweepParam::ms: t.ms = v; break;
    case SweepParam::mt: t.mt = v; break;
    case SweepParam::sc: t.sc = v; break;
    case SweepParam::tc: t.tc = v; break;
    case SweepParam::ms_mt: t.ms = t.mt = v; break;
  }
  return t;
}

std::size_t count_rules(const Mmer& es, const RunConfig& c, const Thresholds& t) {
  MineOptions opts;
  opts.max_length = c.max_length;
  opts.threads = c.threads;
  return mine(es, t, c.mode, opts).size();
}

std::vector<std::int64_t> parse_int_list(const std::string& text) {
  std::vector<std::int64_t> out;
  std::stringstream s(text);
  std::string item;
  while (std::getline(s, item, ',')) out.push_back(std::stoll(item));
  return out;
}

std::vector<std::string> parse_name_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream s(text);
  std::string item;
  while (std::getline(s, item, ',')) out.push_back(item);
  return out;
}

}  // namespace

std::optional<SweepParam> parse_sweep_param(std::string_view text) {
  if (text == "ms") return SweepParam::ms;
  if (text == "mt") return SweepParam::mt;
  if (text == "sc") return SweepParam::sc;
  if (text == "tc") return SweepParam::tc;
  if (text == "ms=mt" || text == "ms-mt") return SweepParam::ms_mt;
  return std::nullopt;
}

std::string_view to_string(SweepParam p) {
  switch (p) {
    case SweepParam::ms: return "ms";
    case SweepParam::mt: return "mt";
    case SweepParam::sc: return "sc";
    case SweepParam::tc: return "tc";
    case SweepParam::ms_mt: return "ms=mt";
  }
  return "?";
}

std::vector<Ratio> parse_sweep_values(std::string_view text) {
  std::vector<Ratio> out;
  if (text.find(':') != std::string_view::npos) {
    auto a = text.find(':');
    auto b = text.find(':', a + 1);
    if (b == std::string_view::npos) throw ThresholdError("range must be FROM:TO:STEP");
    Ratio from = Ratio::parse(text.substr(0, a));
    Ratio to = Ratio::parse(text.substr(a + 1, b - a - 1));
    Ratio step = Ratio::parse(text.substr(b + 1));
    if (step.num() == 0) throw ThresholdError("range step must be positive");
    // from + k * step over the common denominator
    const std::uint64_t den = from.den() * step.den();
    for (std::uint64_t k = 0;; ++k) {
      Ratio v(from.num() * step.den() + k * step.num() * from.den(), den);
      if (v > to) break;
      out.push_back(v);
      if (out.size() > 10000) throw ThresholdError("range has too many values");
    }
    return out;
  }
  while (!text.empty()) {
    auto comma = text.find(',');
    out.push_back(Ratio::parse(text.substr(0, comma)));
    text = comma == std::string_view::npos ? std::string_view{} : text.substr(comma + 1);
  }
  return out;
}

Mmer load_corpus(const RunConfig& config) {
  if (config.corpus_kind == CorpusKind::generic) return ingest::load_generic(config.corpus);
  ingest::Ml100kOptions opts;
  opts.bins = config.bins;
  opts.min_rating = config.min_rating;
  opts.movies.mode = config.preprocess;
  opts.movies.priority = config.priority;
  opts.movies.decade_source = config.decade_source;
  return ingest::load_ml100k(config.corpus, opts);
}

int cmd_mine(const RunConfig& config, std::ostream& out) {
  config.thresholds.validate();
  const Mmer es = load_corpus(config);
  MineOptions opts;
  opts.max_length = config.max_length;
  opts.threads = config.threads;
  const auto rules = mine(es, config.thresholds, config.mode, opts);

  if (config.format == OutputFormat::structured) {
    out << json{{"record", "header"},
                {"command", "mine"},
                {"config", config_json(config)},
                {"total", rules.size()}}
               .dump()
        << '\n';
    for (const auto& r : rules) out << rule_json(es, r).dump() << '\n';
  } else {
    for (const auto& r : rules) out << render_rule(es, r) << '\n';
    out << "total: " << rules.size() << '\n';
  }
  return kOk;
}

int cmd_sweep(const RunConfig& config, SweepParam vary, const std::vector<Ratio>& values,
              bool both_preprocess, std::ostream& out) {
  if (both_preprocess && config.corpus_kind != CorpusKind::ml100k)
    throw ThresholdError("--both-preprocess needs an ml-100k corpus");
  for (const auto& v : values) with_value(config.thresholds, vary, v).validate();

  std::vector<std::pair<std::string, Mmer>> corpora;
  if (both_preprocess) {
    RunConfig scaled = config;
    scaled.preprocess = ingest::Preprocess::scaling;
    RunConfig prio = config;
    prio.preprocess = ingest::Preprocess::priority;
    corpora.emplace_back("scaling", load_corpus(scaled));
    corpora.emplace_back("priority", load_corpus(prio));
  } else {
    corpora.emplace_back("count", load_corpus(config));
  }

  std::vector<std::vector<std::size_t>> counts(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    const Thresholds t = with_value(config.thresholds, vary, values[i]);
    for (const auto& [name, es] : corpora) counts[i].push_back(count_rules(es, config, t));
  }

  if (config.format == OutputFormat::structured) {
    json columns = json::array();
    for (const auto& c : corpora) columns.push_back(c.first);
    out << json{{"record", "header"},
                {"command", "sweep"},
                {"vary", std::string(to_string(vary))},
                {"columns", columns},
                {"config", config_json(config)},
                {"rows", values.size()}}
               .dump()
        << '\n';
    for (std::size_t i = 0; i < values.size(); ++i) {
      json row = {{"record", "row"}, {"value", values[i].str()}};
      for (std::size_t c = 0; c < corpora.size(); ++c) row[corpora[c].first] = counts[i][c];
      out << row.dump() << '\n';
    }
  } else {
    out << to_string(vary);
    for (const auto& c : corpora) out << '\t' << c.first;
    out << '\n';
    for (std::size_t i = 0; i < values.size(); ++i) {
      out << values[i].decimal(4);
      for (auto n : counts[i]) out << '\t' << n;
      out << '\n';
    }
  }
  return kOk;
}

int cmd_granules(const RunConfig& config, Side side, std::ostream& out) {
  config.thresholds.validate();
  const Mmer es = load_corpus(config);
  const InformationSystem& is = side == Side::source ? es.source() : es.target();
  const Ratio& mincov = side == Side::source ? config.thresholds.ms : config.thresholds.mt;
  const auto granules = enumerate_granules(is, mincov, config.mode, config.max_length);

  if (config.format == OutputFormat::structured) {
    out << json{{"record", "header"},
                {"command", "granules"},
                {"side", side == Side::source ? "source" : "target"},
                {"config", config_json(config)},
                {"total", granules.size()}}
               .dump()
        << '\n';
    for (const auto& g : granules)
      out << json{{"record", "granule"},
                  {"terms", terms_json(is, g.descriptor)},
                  {"size", g.extension.count()},
                  {"support", g.support.str()}}
                 .dump()
          << '\n';
  } else {
    for (const auto& g : granules)
      out << g.descriptor.render(is) << '(' << g.extension.count()
          << ") support = " << g.support.decimal() << '\n';
    out << "total: " << granules.size() << '\n';
  }
  return kOk;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Granular association rule miner for many-to-many entity-relationship systems"};
  app.require_subcommand(1);

  RunConfig config;
  std::string corpus_kind = "ml-100k";
  std::string preprocess = "scaling";
  std::string decade_source = "title-year";
  std::string mode = "positive-only";
  std::string ms = "0.1", mt = "0.1", sc = "0.12", tc = "0.15";
  std::string format = "text";
  std::string out_path;
  std::string age_bins;
  std::string priority;
  std::size_t max_len = 0;
  bool verbose = false;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("corpus", config.corpus, "ml-100k directory or generic corpus directory")
        ->required();
    cmd->add_option("--corpus-kind", corpus_kind, "ml-100k | generic")
        ->check(CLI::IsMember({"ml-100k", "generic"}));
    cmd->add_option("--ms", ms, "minimal source coverage");
    cmd->add_option("--mt", mt, "minimal target coverage");
    cmd->add_option("--sc", sc, "minimal source confidence");
    cmd->add_option("--tc", tc, "minimal target confidence");
    cmd->add_option("--mode", mode, "positive-only | all-granules")
        ->check(CLI::IsMember({"positive-only", "all-granules"}));
    cmd->add_option("--preprocess", preprocess, "genre handling: scaling | priority")
        ->check(CLI::IsMember({"scaling", "priority"}));
    cmd->add_option("--decade-source", decade_source, "title-year | release-date")
        ->check(CLI::IsMember({"title-year", "release-date"}));
    cmd->add_option("--min-rating", config.min_rating, "ratings below this are not relations")
        ->check(CLI::Range(1, 5));
    cmd->add_option("--max-len", max_len, "cap on descriptor length (0 = none)");
    cmd->add_option("--age-bins", age_bins, "inclusive upper bounds, e.g. 17,24,34,44,49,55");
    cmd->add_option("--priority", priority, "genre priority list, highest first");
    cmd->add_option("--format", format, "text | structured")
        ->check(CLI::IsMember({"text", "structured"}));
    cmd->add_option("--out", out_path, "write the report here instead of stdout");
    cmd->add_option("--threads", config.threads, "worker threads for rule mining");
    cmd->add_flag("-v,--verbose", verbose, "log ingest warnings");
  };

  auto* mine_cmd = app.add_subcommand("mine", "mine rules and print them with a total");
  add_common(mine_cmd);

  auto* sweep_cmd = app.add_subcommand("sweep", "count rules while varying one threshold");
  add_common(sweep_cmd);
  std::string vary;
  std::string values;
  bool both = false;
  sweep_cmd->add_option("--vary", vary, "ms | mt | sc | tc | ms=mt")->required();
  sweep_cmd->add_option("--values", values, "comma list or FROM:TO:STEP")->required();
  sweep_cmd->add_flag("--both-preprocess", both, "one count column per genre preprocessing");

  auto* gran_cmd = app.add_subcommand("granules", "list SG(ms) or TG(mt)");
  add_common(gran_cmd);
  std::string side = "source";
  gran_cmd->add_option("--side", side, "source | target")
      ->check(CLI::IsMember({"source", "target"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << '\n';
    return kUsageError;
  }

  spdlog::set_level(verbose ? spdlog::level::info : spdlog::level::err);

  std::optional<SweepParam> sweep_param;
  std::vector<Ratio> sweep_values;
  try {
    config.corpus_kind = corpus_kind == "generic" ? CorpusKind::generic : CorpusKind::ml100k;
    config.preprocess = *ingest::parse_preprocess(preprocess);
    config.decade_source = *ingest::parse_decade_source(decade_source);
    config.mode = *parse_mining_mode(mode);
    config.thresholds = {Ratio::parse(ms), Ratio::parse(mt), Ratio::parse(sc), Ratio::parse(tc)};
    config.thresholds.validate();
    config.format = format == "structured" ? OutputFormat::structured : OutputFormat::text;
    if (max_len > 0) config.max_length = max_len;
    if (!age_bins.empty()) config.bins.upper_bounds = parse_int_list(age_bins);
    config.bins.validate();
    if (!priority.empty()) config.priority.order = parse_name_list(priority);
    config.priority.validate();
    if (sweep_cmd->parsed()) {
      sweep_param = parse_sweep_param(vary);
      if (!sweep_param) throw ThresholdError("--vary must be one of ms, mt, sc, tc, ms=mt");
      sweep_values = parse_sweep_values(values);
    }
  } catch (const std::exception& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsageError;
  }

  std::ofstream file;
  std::ostream* sink = &out;
  if (!out_path.empty()) {
    file.open(out_path, std::ios::binary);
    if (!file) {
      err << "cannot write " << out_path << '\n';
      return kUsageError;
    }
    sink = &file;
  }

  try {
    if (mine_cmd->parsed()) return cmd_mine(config, *sink);
    if (sweep_cmd->parsed()) return cmd_sweep(config, *sweep_param, sweep_values, both, *sink);
    return cmd_granules(config, side == "source" ? Side::source : Side::target, *sink);
  } catch (const ThresholdError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsageError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kCorpusError;
  }
}

}  // namespace gar::cli
