#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "degx/experiments.hpp"
#include "degx/theory.hpp"

namespace degx {

using Json = nlohmann::ordered_json;

// 17 significant digits, '.' decimal point -- round-trips any double and is
// byte-stable, which the reproducibility contract relies on.
std::string fmt_real(double v);

// "1..100,128,256" -> {1..100,128,256}; sorted, deduplicated, validated
// against [1, n] when n > 0.
std::vector<std::int64_t> parse_ranks(const std::string& text, std::int64_t n);

// Display default: {1..100} plus powers of two up to n.
std::vector<std::int64_t> default_ranks(std::int64_t n);

struct TheoryRow {
  std::int64_t rank = 0;
  TheoryPrediction pred;
  double beta_decay = 0.0;  // NaN on the min side (max-side curve)
};

void write_summary_csv(std::ostream& os, const MCSummary& s, const Json& config);
Json summary_to_json(const MCSummary& s, const Json& config);

void write_comparison_csv(std::ostream& os, const std::vector<ComparisonRow>& rows,
                          const Json& config);
Json comparison_to_json(const std::vector<ComparisonRow>& rows, const Json& config);

void write_theory_csv(std::ostream& os, const std::vector<TheoryRow>& rows,
                      const Json& config);
Json theory_to_json(const std::vector<TheoryRow>& rows, const Json& config);

void write_fit_csv(std::ostream& os, const PowerLawFit& fit, const Json& config);
Json fit_to_json(const PowerLawFit& fit, const Json& config);

void write_scalar_csv(std::ostream& os, const char* name, double value,
                      const Json& config);
Json scalar_to_json(const char* name, double value, const Json& config);

void write_histogram_csv(std::ostream& os, const Histogram& h, const Json& config);

// Reads a summary written by write_summary_csv or summary_to_json (detected
// by content); returns the summary plus its embedded config echo.
std::pair<MCSummary, Json> read_summary_file(const std::string& path);

// Loose CSV reader for fit input: picks a rank column ("rank") and a mean
// column ("empirical_mean" or "mean"), ignoring '#' comment lines.
void read_rank_mean_csv(const std::string& path, std::vector<std::int64_t>& ranks,
                        std::vector<double>& means);

}  // namespace degx
