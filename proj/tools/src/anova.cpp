#include "yates/app/anova.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "yates/app/csv.hpp"
#include "yates/errors.hpp"
#include "yates/inference.hpp"

namespace yates::app {
namespace {

std::vector<std::string> split_list(std::string_view text) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto comma = text.find(',', start);
    const auto piece = text.substr(start, comma == std::string_view::npos ? text.npos
                                                                          : comma - start);
    std::string item(piece);
    item.erase(0, item.find_first_not_of(' '));
    item.erase(item.find_last_not_of(' ') + 1);
    if (!item.empty()) out.push_back(item);
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

double method_value(const SumOfSquaresReport& r, Method m) {
  switch (m) {
    case Method::yates:
      return r.yates_general;
    case Method::rmfm:
      return r.rmfm;
    case Method::pearson:
      return r.pearson;
    case Method::geometric:
      return r.geometric;
    case Method::mwsm:
      return r.mwsm.value_or(0.0);
  }
  return 0.0;
}

std::string_view format_name(OutputFormat f) { return f == OutputFormat::json ? "json" : "text"; }

}  // namespace

std::string_view to_string(Method m) {
  switch (m) {
    case Method::yates:
      return "yates";
    case Method::rmfm:
      return "rmfm";
    case Method::pearson:
      return "pearson";
    case Method::geometric:
      return "geometric";
    case Method::mwsm:
      return "mwsm";
  }
  return "?";
}

std::optional<Method> parse_method(std::string_view text) {
  for (Method m : {Method::yates, Method::rmfm, Method::pearson, Method::geometric,
                   Method::mwsm}) {
    if (text == to_string(m)) return m;
  }
  return std::nullopt;
}

std::vector<Effect> parse_effect_list(std::string_view text) {
  if (text == "all") return {Effect::A, Effect::B, Effect::AB};
  std::vector<Effect> out;
  for (const auto& item : split_list(text)) {
    const auto e = parse_effect(item);
    if (!e) throw std::invalid_argument("unknown effect '" + item + "' (expected A, B, AB)");
    if (std::find(out.begin(), out.end(), *e) == out.end()) out.push_back(*e);
  }
  if (out.empty()) throw std::invalid_argument("no effects requested");
  return out;
}

std::vector<Method> parse_method_list(std::string_view text) {
  if (text == "all") {
    return {Method::rmfm, Method::geometric, Method::pearson, Method::yates, Method::mwsm};
  }
  std::vector<Method> out;
  for (const auto& item : split_list(text)) {
    const auto m = parse_method(item);
    if (!m) {
      throw std::invalid_argument("unknown method '" + item +
                                  "' (expected yates, rmfm, pearson, geometric, mwsm)");
    }
    if (std::find(out.begin(), out.end(), *m) == out.end()) out.push_back(*m);
  }
  if (out.empty()) throw std::invalid_argument("no methods requested");
  return out;
}

bool AnovaReport::complete() const {
  return std::all_of(effects.begin(), effects.end(),
                     [](const EffectRow& r) { return r.agrees && r.f && r.p; });
}

AnovaReport run_anova(const RunConfig& cfg) {
  std::ifstream in(cfg.input_path);
  if (!in) throw Error("cannot open '" + cfg.input_path + "'");
  const CsvTable table = parse_csv(in);
  return run_anova(cfg, load_dataset(table, cfg.response_column, cfg.factor_columns[0],
                                     cfg.factor_columns[1]));
}

AnovaReport run_anova(const RunConfig& cfg, const Dataset& data) {
  if (!(cfg.tol > 0.0) || !(cfg.agreement_tol > 0.0)) {
    throw std::invalid_argument("tolerances must be positive");
  }
  AnovaReport report;
  report.config = cfg;
  report.levels_a = data.levels_a();
  report.levels_b = data.levels_b();
  report.n_total = data.n_total();

  const Matrix k = cell_means_design(data);
  const ModelFit full = fit(k, data.responses(), cfg.tol);
  report.error = ErrorRow{full.sse, full.df_error, full.mse};
  report.saturated = full.df_error == 0;

  for (Effect effect : cfg.effects) {
    EffectRow row;
    row.effect = effect;
    SumOfSquaresReport ss;
    try {
      ss = sum_of_squares(data, effect, data.responses(), cfg.tol);
    } catch (const ZeroHypothesis&) {
      row.note = "factor has a single level; no hypothesis degrees of freedom";
      report.effects.push_back(std::move(row));
      continue;
    }
    row.df = ss.df;
    for (Method m : cfg.methods) {
      if (m == Method::mwsm && !ss.mwsm) continue;
      row.ss.emplace_back(m, method_value(ss, m));
    }
    row.discrepancy = ss.max_discrepancy;
    row.agrees = ss.agrees(cfg.agreement_tol);
    if (!row.agrees) {
      row.note = "methods disagree beyond tolerance; F uses the rmfm value";
    }
    if (report.saturated) {
      row.note = "saturated model: no error degrees of freedom, F and p not computed";
    } else {
      const TestResult t = f_test(ss, full);
      row.f = t.f_statistic;
      row.p = t.p_value;
    }
    report.effects.push_back(std::move(row));
  }
  return report;
}

std::string format_number(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  if (ec != std::errc{}) return "nan";
  return std::string(buf, ptr);
}

std::string render_text(const AnovaReport& report) {
  std::vector<Method> methods;
  for (const auto& row : report.effects) {
    for (const auto& [m, v] : row.ss) {
      if (std::find(methods.begin(), methods.end(), m) == methods.end()) methods.push_back(m);
    }
  }

  std::vector<std::vector<std::string>> cells;
  std::vector<std::string> header{"Source", "df"};
  for (Method m : methods) header.push_back("SS[" + std::string(to_string(m)) + "]");
  for (const char* h : {"discrepancy", "F", "p"}) header.emplace_back(h);
  cells.push_back(header);

  for (const auto& row : report.effects) {
    std::vector<std::string> line{std::string(to_string(row.effect)), std::to_string(row.df)};
    for (Method m : methods) {
      const auto it = std::find_if(row.ss.begin(), row.ss.end(),
                                   [m](const auto& p) { return p.first == m; });
      line.push_back(it == row.ss.end() ? "-" : format_number(it->second));
    }
    line.push_back(format_number(row.discrepancy));
    line.push_back(row.f ? format_number(*row.f) : "-");
    line.push_back(row.p ? format_number(*row.p) : "-");
    cells.push_back(std::move(line));
  }

  std::vector<std::size_t> width(header.size(), 0);
  for (const auto& line : cells) {
    for (std::size_t c = 0; c < line.size(); ++c) width[c] = std::max(width[c], line[c].size());
  }

  std::ostringstream out;
  out << "Two-factor ANOVA: response '" << report.config.response_column << "', A = '"
      << report.config.factor_columns[0] << "' (" << report.levels_a.size()
      << " levels), B = '" << report.config.factor_columns[1] << "' ("
      << report.levels_b.size() << " levels), n = " << report.n_total << "\n\n";
  for (const auto& line : cells) {
    for (std::size_t c = 0; c < line.size(); ++c) {
      out << line[c];
      if (c + 1 < line.size()) out << std::string(width[c] - line[c].size() + 2, ' ');
    }
    out << '\n';
  }
  out << "\nError  SS " << format_number(report.error.ss) << "  df " << report.error.df
      << "  MSE " << (report.error.mse ? format_number(*report.error.mse) : "-") << '\n';
  for (const auto& row : report.effects) {
    if (!row.note.empty()) out << "note (" << to_string(row.effect) << "): " << row.note << '\n';
  }
  return out.str();
}

nlohmann::json to_json(const AnovaReport& report) {
  using nlohmann::json;
  json effects = json::array();
  for (const auto& row : report.effects) {
    json ss = json::object();
    for (const auto& [m, v] : row.ss) ss[std::string(to_string(m))] = v;
    json e{{"name", to_string(row.effect)},
           {"df", row.df},
           {"ss", ss},
           {"discrepancy", row.discrepancy},
           {"agrees", row.agrees},
           {"f", row.f ? json(*row.f) : json(nullptr)},
           {"p", row.p ? json(*row.p) : json(nullptr)}};
    if (!row.note.empty()) e["note"] = row.note;
    effects.push_back(std::move(e));
  }

  json effect_names = json::array();
  for (Effect e : report.config.effects) effect_names.push_back(to_string(e));
  json method_names = json::array();
  for (Method m : report.config.methods) method_names.push_back(to_string(m));

  json out{
      {"effects", effects},
      {"error",
       {{"ss", report.error.ss},
        {"df", report.error.df},
        {"mse", report.error.mse ? json(*report.error.mse) : json(nullptr)}}},
      {"config",
       {{"input", report.config.input_path},
        {"response", report.config.response_column},
        {"factors", {report.config.factor_columns[0], report.config.factor_columns[1]}},
        {"effects", effect_names},
        {"methods", method_names},
        {"format", format_name(report.config.format)},
        {"tol", report.config.tol},
        {"agreement_tol", report.config.agreement_tol}}},
      {"levels", {{"A", report.levels_a}, {"B", report.levels_b}}},
      {"n", report.n_total},
  };
  if (report.saturated) {
    out["saturated"] = true;
    out["note"] = "saturated model: no error degrees of freedom, F and p not computed";
  }
  return out;
}

}  // namespace yates::app
