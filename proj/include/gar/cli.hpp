#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gar/granules.hpp"
#include "gar/ingest.hpp"
#include "gar/mmer.hpp"

namespace gar::cli {

enum class CorpusKind { ml100k, generic };
enum class OutputFormat { text, structured };
enum class Side { source, target };

// Exit statuses.
inline constexpr int kOk = 0;
inline constexpr int kUsageError = 1;
inline constexpr int kCorpusError = 2;

struct RunConfig {
  CorpusKind corpus_kind = CorpusKind::ml100k;
  std::filesystem::path corpus;
  ingest::Preprocess preprocess = ingest::Preprocess::scaling;
  ingest::DecadeSource decade_source = ingest::DecadeSource::title_year;
  MiningMode mode = MiningMode::positive_only;
  Thresholds thresholds{Ratio(1, 10), Ratio(1, 10), Ratio(3, 25), Ratio(3, 20)};
  std::optional<std::size_t> max_length;
  int min_rating = 1;
  ingest::DiscretizationSpec bins = ingest::default_age_bins();
  ingest::PrioritySpec priority;
  OutputFormat format = OutputFormat::text;
  unsigned threads = 1;
};

// Which thresholds a sweep varies. `ms_mt` moves ms and mt together.
enum class SweepParam { ms, mt, sc, tc, ms_mt };
std::optional<SweepParam> parse_sweep_param(std::string_view text);
std::string_view to_string(SweepParam p);

// "0.05,0.06,0.1" or an inclusive range "0.05:0.12:0.01".
std::vector<Ratio> parse_sweep_values(std::string_view text);

Mmer load_corpus(const RunConfig& config);

// Each command writes its report to `out` and returns an exit status.
// Corpus and threshold errors propagate as gar::Error; run() maps them.
int cmd_mine(const RunConfig& config, std::ostream& out);
int cmd_sweep(const RunConfig& config, SweepParam vary, const std::vector<Ratio>& values,
              bool both_preprocess, std::ostream& out);
int cmd_granules(const RunConfig& config, Side side, std::ostream& out);

// Full command line: `gar <mine|sweep|granules> CORPUS [flags]`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace gar::cli
