#include "degx/tables.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

namespace degx {

std::string fmt_real(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::vector<std::int64_t> parse_ranks(const std::string& text, std::int64_t n) {
  std::vector<std::int64_t> out;
  std::stringstream ss(text);
  std::string piece;
  while (std::getline(ss, piece, ',')) {
    if (piece.empty()) throw std::invalid_argument("--ranks: empty list element");
    const auto dots = piece.find("..");
    try {
      if (dots == std::string::npos) {
        out.push_back(std::stoll(piece));
      } else {
        const std::int64_t lo = std::stoll(piece.substr(0, dots));
        const std::int64_t hi = std::stoll(piece.substr(dots + 2));
        if (hi < lo) throw std::invalid_argument("--ranks: descending range " + piece);
        if (hi - lo > 1000000) throw std::invalid_argument("--ranks: range too large");
        for (std::int64_t r = lo; r <= hi; ++r) out.push_back(r);
      }
    } catch (const std::invalid_argument&) {
      throw;
    } catch (const std::exception&) {
      throw std::invalid_argument("--ranks: cannot parse '" + piece + "'");
    }
  }
  if (out.empty()) throw std::invalid_argument("--ranks: empty rank list");
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  for (std::int64_t r : out) {
    if (r < 1 || (n > 0 && r > n))
      throw std::invalid_argument("--ranks: rank " + std::to_string(r) +
                                  " outside [1, n]");
  }
  return out;
}

std::vector<std::int64_t> default_ranks(std::int64_t n) {
  std::vector<std::int64_t> out;
  for (std::int64_t r = 1; r <= std::min<std::int64_t>(100, n); ++r) out.push_back(r);
  for (std::int64_t p = 128; p <= n; p *= 2) out.push_back(p);
  return out;
}

namespace {

void write_config_lines(std::ostream& os, const char* kind, const Json& config) {
  os << "# degx " << kind << "\n";
  os << "# config: " << config.dump() << "\n";
}

}  // namespace

void write_summary_csv(std::ostream& os, const MCSummary& s, const Json& config) {
  write_config_lines(os, "summary", config);
  os << "rank,empirical_mean,empirical_var,empirical_stderr\n";
  for (size_t r = 0; r < s.ranks.size(); ++r) {
    const auto i = Eigen::Index(r);
    os << s.ranks[r] << "," << fmt_real(s.empirical_mean[i]) << ","
       << fmt_real(s.empirical_var[i]) << "," << fmt_real(s.empirical_stderr[i])
       << "\n";
  }
}

Json summary_to_json(const MCSummary& s, const Json& config) {
  Json j;
  j["kind"] = "degx-summary";
  j["config"] = config;
  Json rows = Json::array();
  for (size_t r = 0; r < s.ranks.size(); ++r) {
    const auto i = Eigen::Index(r);
    Json row;
    row["rank"] = s.ranks[r];
    row["empirical_mean"] = s.empirical_mean[i];
    row["empirical_var"] = s.empirical_var[i];
    row["empirical_stderr"] = s.empirical_stderr[i];
    rows.push_back(std::move(row));
  }
  j["rows"] = std::move(rows);
  return j;
}

void write_comparison_csv(std::ostream& os, const std::vector<ComparisonRow>& rows,
                          const Json& config) {
  write_config_lines(os, "comparison", config);
  os << "rank,empirical_mean,predicted_mean_beta_ratio,predicted_mean_simplified,"
        "abs_error,rel_tail_error\n";
  for (const auto& r : rows) {
    os << r.rank << "," << fmt_real(r.empirical_mean) << ","
       << fmt_real(r.predicted_mean_beta_ratio) << ","
       << fmt_real(r.predicted_mean_simplified) << "," << fmt_real(r.abs_error)
       << "," << fmt_real(r.rel_tail_error) << "\n";
  }
}

Json comparison_to_json(const std::vector<ComparisonRow>& rows, const Json& config) {
  Json j;
  j["kind"] = "degx-comparison";
  j["config"] = config;
  Json arr = Json::array();
  for (const auto& r : rows) {
    Json row;
    row["rank"] = r.rank;
    row["empirical_mean"] = r.empirical_mean;
    row["predicted_mean_beta_ratio"] = r.predicted_mean_beta_ratio;
    row["predicted_mean_simplified"] = r.predicted_mean_simplified;
    row["abs_error"] = r.abs_error;
    row["rel_tail_error"] = r.rel_tail_error;
    arr.push_back(std::move(row));
  }
  j["rows"] = std::move(arr);
  return j;
}

void write_theory_csv(std::ostream& os, const std::vector<TheoryRow>& rows,
                      const Json& config) {
  write_config_lines(os, "theory", config);
  os << "rank,mean_beta_ratio,mean_simplified,var_beta_ratio,var_simplified,"
        "beta_decay\n";
  for (const auto& r : rows) {
    os << r.rank << "," << fmt_real(r.pred.mean_beta_ratio) << ","
       << fmt_real(r.pred.mean_simplified) << "," << fmt_real(r.pred.var_beta_ratio)
       << "," << fmt_real(r.pred.var_simplified) << "," << fmt_real(r.beta_decay)
       << "\n";
  }
}

Json theory_to_json(const std::vector<TheoryRow>& rows, const Json& config) {
  Json j;
  j["kind"] = "degx-theory";
  j["config"] = config;
  Json arr = Json::array();
  for (const auto& r : rows) {
    Json row;
    row["rank"] = r.rank;
    row["mean_beta_ratio"] = r.pred.mean_beta_ratio;
    row["mean_simplified"] = r.pred.mean_simplified;
    row["var_beta_ratio"] = r.pred.var_beta_ratio;
    row["var_simplified"] = r.pred.var_simplified;
    if (std::isnan(r.beta_decay))
      row["beta_decay"] = nullptr;
    else
      row["beta_decay"] = r.beta_decay;
    arr.push_back(std::move(row));
  }
  j["rows"] = std::move(arr);
  return j;
}

void write_fit_csv(std::ostream& os, const PowerLawFit& fit, const Json& config) {
  write_config_lines(os, "fit", config);
  os << "c,s,gamma,sse,degenerate\n";
  os << fmt_real(fit.c) << "," << fmt_real(fit.s) << "," << fmt_real(fit.gamma)
     << "," << fmt_real(fit.sse) << "," << (fit.degenerate ? 1 : 0) << "\n";
}

Json fit_to_json(const PowerLawFit& fit, const Json& config) {
  Json j;
  j["kind"] = "degx-fit";
  j["config"] = config;
  Json f;
  f["c"] = fit.c;
  f["s"] = fit.s;
  f["gamma"] = fit.gamma;
  f["sse"] = fit.sse;
  f["degenerate"] = fit.degenerate;
  j["fit"] = std::move(f);
  return j;
}

void write_scalar_csv(std::ostream& os, const char* name, double value,
                      const Json& config) {
  write_config_lines(os, "scalar", config);
  os << name << "\n" << fmt_real(value) << "\n";
}

Json scalar_to_json(const char* name, double value, const Json& config) {
  Json j;
  j["kind"] = "degx-scalar";
  j["config"] = config;
  j[name] = value;
  return j;
}

void write_histogram_csv(std::ostream& os, const Histogram& h, const Json& config) {
  write_config_lines(os, "histogram", config);
  os << "bin_lo,bin_hi,count\n";
  const double width = 1.0 / h.bins;
  for (int b = 0; b < h.bins; ++b) {
    os << fmt_real(b * width) << "," << fmt_real((b + 1) * width) << ","
       << h.counts[b] << "\n";
  }
}

namespace {

Side side_from(const std::string& s) {
  if (s == "max") return Side::MaxSide;
  if (s == "min") return Side::MinSide;
  throw std::invalid_argument("unknown side '" + s + "' (expected max|min)");
}

SequenceSource source_from(const std::string& s) {
  if (s == "graph") return SequenceSource::GraphDegrees;
  if (s == "weights") return SequenceSource::WeightsOnly;
  throw std::invalid_argument("unknown source '" + s + "' (expected graph|weights)");
}

MCSummary summary_from_parts(const Json& config,
                             const std::vector<std::int64_t>& ranks,
                             const std::vector<double>& mean,
                             const std::vector<double>& var,
                             const std::vector<double>& se) {
  MCSummary s;
  s.params.a = config.at("a").get<double>();
  s.params.b = config.at("b").get<double>();
  s.n = config.at("n").get<std::int64_t>();
  s.trials = config.value("trials", std::int64_t(0));
  s.side = side_from(config.at("side").get<std::string>());
  s.source = source_from(config.value("source", std::string("weights")));
  s.ranks = ranks;
  const auto R = Eigen::Index(ranks.size());
  s.empirical_mean.resize(R);
  s.empirical_var.resize(R);
  s.empirical_stderr.resize(R);
  for (Eigen::Index i = 0; i < R; ++i) {
    s.empirical_mean[i] = mean[size_t(i)];
    s.empirical_var[i] = var[size_t(i)];
    s.empirical_stderr[i] = se[size_t(i)];
  }
  return s;
}

}  // namespace

std::pair<MCSummary, Json> read_summary_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open summary file: " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();

  std::vector<std::int64_t> ranks;
  std::vector<double> mean, var, se;
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') {
    const Json j = Json::parse(text);
    if (j.value("kind", std::string()) != "degx-summary")
      throw std::invalid_argument("not a summary file: " + path);
    const Json& config = j.at("config");
    for (const auto& row : j.at("rows")) {
      ranks.push_back(row.at("rank").get<std::int64_t>());
      mean.push_back(row.at("empirical_mean").get<double>());
      var.push_back(row.at("empirical_var").get<double>());
      se.push_back(row.at("empirical_stderr").get<double>());
    }
    return {summary_from_parts(config, ranks, mean, var, se), config};
  }

  // CSV with the embedded "# config: {...}" line
  std::istringstream lines(text);
  std::string line;
  Json config;
  bool have_config = false, have_header = false;
  while (std::getline(lines, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line.rfind("# config:", 0) == 0) {
      config = Json::parse(line.substr(9));
      have_config = true;
      continue;
    }
    if (line[0] == '#') continue;
    if (!have_header) {
      if (line.rfind("rank,empirical_mean", 0) != 0)
        throw std::invalid_argument("unexpected summary CSV header: " + line);
      have_header = true;
      continue;
    }
    std::stringstream row(line);
    std::string cell;
    std::vector<std::string> cells;
    while (std::getline(row, cell, ',')) cells.push_back(cell);
    if (cells.size() != 4)
      throw std::invalid_argument("malformed summary CSV row: " + line);
    ranks.push_back(std::stoll(cells[0]));
    mean.push_back(std::stod(cells[1]));
    var.push_back(std::stod(cells[2]));
    se.push_back(std::stod(cells[3]));
  }
  if (!have_config)
    throw std::invalid_argument("summary CSV is missing its '# config:' line: " + path);
  return {summary_from_parts(config, ranks, mean, var, se), config};
}

void read_rank_mean_csv(const std::string& path, std::vector<std::int64_t>& ranks,
                        std::vector<double>& means) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open fit input: " + path);
  ranks.clear();
  means.clear();
  std::string line;
  int rank_col = -1, mean_col = -1;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    std::stringstream row(line);
    std::string cell;
    std::vector<std::string> cells;
    while (std::getline(row, cell, ',')) cells.push_back(cell);
    if (rank_col < 0) {  // header row
      for (size_t c = 0; c < cells.size(); ++c) {
        if (cells[c] == "rank") rank_col = int(c);
        if (cells[c] == "empirical_mean" || cells[c] == "mean") mean_col = int(c);
      }
      if (rank_col < 0 || mean_col < 0)
        throw std::invalid_argument(
            "fit input needs 'rank' and 'mean'/'empirical_mean' columns: " + path);
      continue;
    }
    if (int(cells.size()) <= std::max(rank_col, mean_col))
      throw std::invalid_argument("malformed fit input row: " + line);
    ranks.push_back(std::stoll(cells[size_t(rank_col)]));
    means.push_back(std::stod(cells[size_t(mean_col)]));
  }
  if (ranks.empty()) throw std::invalid_argument("fit input has no data rows: " + path);
}

}  // namespace degx
