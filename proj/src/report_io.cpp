#include "hajlasz/report_io.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <fmt/format.h>

#include "hajlasz/io.hpp"

namespace hajlasz {

namespace {

std::string csv_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return format_double(v);
}

std::string csv_text(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c == '\n' ? ' ' : c;
  }
  return out + '"';
}

nlohmann::json json_number(double v) {
  return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr);
}

nlohmann::json stats_json(const RatioStats& st) {
  return {{"count", st.count},
          {"min", json_number(st.min)},
          {"max", json_number(st.max)},
          {"mean", json_number(st.mean)},
          {"spread", json_number(st.spread)}};
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        cell += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        cell += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      cells.push_back(std::move(cell));
      cell.clear();
    } else {
      cell += c;
    }
  }
  cells.push_back(std::move(cell));
  return cells;
}

}  // namespace

std::string report_csv(const EquivalenceReport& report) {
  const std::size_t m = kFunctionalNames.size();
  std::ostringstream out;
  out << "name,norm_f";
  for (const char* name : kFunctionalNames) out << ",N_" << name;
  out << ",hajlasz_bound";
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i + 1; j < m; ++j) out << ',' << ratio_name(i, j);
  }
  out << ",h_is_gradient,psi_feasible,w_le_b,a_le_b,sharp_dominated,thm1_forward"
         ",chain_a,chain_b_lower,chain_b_upper,error\n";
  for (const auto& row : report.rows) {
    out << csv_text(row.name) << ',' << csv_number(row.norm_f);
    for (double v : row.functionals) out << ',' << csv_number(v);
    out << ',' << csv_number(row.hajlasz_bound);
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = i + 1; j < m; ++j) {
        const double b = row.functionals[j];
        out << ',' << csv_number(b > 0.0 ? row.functionals[i] / b : std::nan(""));
      }
    }
    for (bool flag : {row.h_is_gradient, row.psi_feasible, row.w_le_b, row.a_le_b,
                      row.sharp_dominated, row.thm1_forward, row.chain_a,
                      row.chain_b_lower, row.chain_b_upper}) {
      out << ',' << (flag ? 1 : 0);
    }
    out << ',' << csv_text(row.error) << '\n';
  }
  return out.str();
}

nlohmann::json report_summary(const EquivalenceReport& report) {
  nlohmann::json doc;
  doc["parameters"] = {{"s", report.options.s},
                       {"u", report.options.u},
                       {"q", report.options.q},
                       {"tol", report.options.tol},
                       {"quasi_constant", report.quasi_constant}};
  doc["rows"] = report.rows.size();
  doc["failed_rows"] = report.failed_rows;
  nlohmann::json ratios = nlohmann::json::object();
  for (const auto& st : report.ratios) ratios[st.name] = stats_json(st);
  doc["ratios"] = ratios;
  doc["hajlasz_bound"] = stats_json(report.hajlasz_bound);

  auto all_of = [&](auto member) {
    return std::all_of(report.rows.begin(), report.rows.end(),
                       [&](const EquivalenceRow& r) { return r.*member; });
  };
  doc["assertions"] = {{"h_is_gradient", all_of(&EquivalenceRow::h_is_gradient)},
                       {"psi_feasible", all_of(&EquivalenceRow::psi_feasible)},
                       {"w_le_b", all_of(&EquivalenceRow::w_le_b)},
                       {"a_le_b", all_of(&EquivalenceRow::a_le_b)},
                       {"sharp_dominated", all_of(&EquivalenceRow::sharp_dominated)},
                       {"thm1_forward", all_of(&EquivalenceRow::thm1_forward)},
                       {"chain_a", all_of(&EquivalenceRow::chain_a)},
                       {"chain_b_lower", all_of(&EquivalenceRow::chain_b_lower)},
                       {"all", report.asserted_ok}};
  doc["reported"] = {{"chain_b_upper", all_of(&EquivalenceRow::chain_b_upper)}};
  return doc;
}

std::string render_table(const std::string& csv_text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(csv_text);
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    rows.push_back(split_csv_line(line));
  }
  if (rows.empty()) return {};
  std::size_t cols = 0;
  for (const auto& r : rows) cols = std::max(cols, r.size());
  std::vector<std::size_t> width(cols, 0);
  auto shown = [](const std::string& cell) {
    // long numbers are shortened for display only
    char* end = nullptr;
    const double v = std::strtod(cell.c_str(), &end);
    if (!cell.empty() && end == cell.c_str() + cell.size() && cell.size() > 10) {
      return fmt::format("{:.6g}", v);
    }
    return cell;
  };
  for (auto& r : rows) {
    for (auto& cell : r) cell = shown(cell);
    for (std::size_t c = 0; c < r.size(); ++c) width[c] = std::max(width[c], r[c].size());
  }
  std::string out;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t c = 0; c < rows[i].size(); ++c) {
      if (c > 0) out += "  ";
      out += fmt::format("{:>{}}", rows[i][c], width[c]);
    }
    out += '\n';
    if (i == 0) {
      std::size_t total = 0;
      for (std::size_t w : width) total += w + 2;
      out += std::string(total > 2 ? total - 2 : 0, '-') + '\n';
    }
  }
  return out;
}

}  // namespace hajlasz
