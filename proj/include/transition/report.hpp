#ifndef TRANSITION_REPORT_HPP
#define TRANSITION_REPORT_HPP

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "transition/multiperiod.hpp"
#include "transition/optimizer.hpp"
#include "transition/sensitivity.hpp"

namespace transition {

/// Seven significant digits, trailing zeros kept (0.3758660, 50.43508).
inline std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (v == 0.0) v = 0.0; // drop the sign of -0
  char buf[64];
  std::snprintf(buf, sizeof buf, "%#.7g", v);
  std::string s = buf;
  if (s.back() == '.') s.pop_back();
  return s;
}

/// Value rounded to seven significant digits, for JSON output.
inline double round7(double v) {
  if (!std::isfinite(v)) return v;
  return std::stod(format_number(v));
}

inline constexpr std::string_view kSweepCsvHeader =
    "parameter,parameter_value,optimal_alpha,max_objective,alpha_change_rate_pct,"
    "profit_change_rate_pct";

/// Rows of string cells rendered as CSV or a right-aligned text table.
class Table {
public:
  explicit Table(std::vector<std::string> header) : header_(std::move(header)) {}

  void add(std::vector<std::string> row) { rows_.push_back(std::move(row)); }

  void write_csv(std::ostream& out) const {
    write_line(out, header_);
    for (const auto& r : rows_) write_line(out, r);
  }

  void write_pretty(std::ostream& out) const {
    std::vector<std::size_t> width(header_.size());
    for (std::size_t i = 0; i < header_.size(); ++i) width[i] = header_[i].size();
    for (const auto& r : rows_)
      for (std::size_t i = 0; i < r.size() && i < width.size(); ++i)
        width[i] = std::max(width[i], r[i].size());
    auto line = [&](const std::vector<std::string>& cells) {
      for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) out << "  ";
        out << std::string(width[i] - cells[i].size(), ' ') << cells[i];
      }
      out << '\n';
    };
    line(header_);
    std::size_t total = 0;
    for (auto w : width) total += w;
    out << std::string(total + 2 * (width.size() - 1), '-') << '\n';
    for (const auto& r : rows_) line(r);
  }

private:
  static void write_line(std::ostream& out, const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) out << (i ? "," : "") << cells[i];
    out << '\n';
  }

  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

inline Table sweep_table(const std::vector<SweepRow>& rows) {
  Table t({"parameter", "parameter_value", "optimal_alpha", "max_objective",
           "alpha_change_rate_pct", "profit_change_rate_pct"});
  for (const SweepRow& r : rows)
    t.add({std::string(to_string(r.parameter)), format_number(r.parameter_value),
           format_number(r.optimal_alpha), format_number(r.max_objective),
           format_number(r.alpha_change_rate_pct), format_number(r.profit_change_rate_pct)});
  return t;
}

inline nlohmann::json sweep_json(const std::vector<SweepRow>& rows) {
  nlohmann::json arr = nlohmann::json::array();
  for (const SweepRow& r : rows)
    arr.push_back({{"parameter", std::string(to_string(r.parameter))},
                   {"parameter_value", round7(r.parameter_value)},
                   {"optimal_alpha", round7(r.optimal_alpha)},
                   {"max_objective", round7(r.max_objective)},
                   {"alpha_change_rate_pct", round7(r.alpha_change_rate_pct)},
                   {"profit_change_rate_pct", round7(r.profit_change_rate_pct)}});
  return arr;
}

inline nlohmann::json optimization_json(const OptimizationResult& r) {
  return {{"alpha_star", round7(r.alpha_star)},
          {"objective_value", round7(r.objective_value)},
          {"iterations", r.iterations},
          {"bracket_width_final", round7(r.bracket_width_final)},
          {"stationarity_residual", round7(r.stationarity_residual)},
          {"soc_sign", std::string(to_string(r.soc_sign))}};
}

inline std::string join_numbers(const std::vector<double>& v, char sep = ';') {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += sep;
    out += format_number(v[i]);
  }
  return out;
}

inline nlohmann::json rounded(const std::vector<double>& v) {
  nlohmann::json a = nlohmann::json::array();
  for (double x : v) a.push_back(round7(x));
  return a;
}

} // namespace transition

#endif // TRANSITION_REPORT_HPP
