#include "gb3reg/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace gb3reg {

namespace {

[[noreturn]] void fail(const std::string& origin, const std::string& what) {
  throw InputError(origin + ": " + what);
}

[[noreturn]] void fail_at(const std::string& origin, std::size_t record,
                          const std::string& column, const std::string& what) {
  throw InputError(origin + ": record " + std::to_string(record) + ", column '" + column +
                   "': " + what);
}

// Splits RFC-4180 content into records of fields.  Quoted fields may
// contain commas, doubled quotes, and line breaks.
std::vector<std::vector<std::string>> parse_csv_records(const std::string& text,
                                                        const std::string& origin) {
  std::vector<std::vector<std::string>> records;
  std::vector<std::string> fields;
  std::string field;
  bool quoted = false;
  bool field_started = false;

  auto end_field = [&] {
    if (!quoted && !field.empty()) {
      // trim unquoted surrounding whitespace
      const auto b = field.find_first_not_of(" \t");
      const auto e = field.find_last_not_of(" \t");
      field = (b == std::string::npos) ? std::string() : field.substr(b, e - b + 1);
    }
    fields.push_back(field);
    field.clear();
    quoted = false;
    field_started = false;
  };
  auto end_record = [&] {
    end_field();
    // skip fully blank records (trailing newline, stray blank lines)
    if (!(fields.size() == 1 && fields[0].empty())) records.push_back(fields);
    fields.clear();
  };

  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        field += c;
      }
      continue;
    }
    switch (c) {
      case '"':
        if (!field_started && field.empty()) {
          quoted = true;
          field_started = true;
        } else {
          field += c;
        }
        break;
      case ',':
        end_field();
        break;
      case '\r':
        break;
      case '\n':
        end_record();
        break;
      default:
        field += c;
        field_started = true;
        break;
    }
  }
  if (quoted) fail(origin, "unterminated quoted field at end of file");
  if (field_started || !field.empty() || !fields.empty()) end_record();
  return records;
}

double parse_number(const std::string& s, const std::string& origin, std::size_t record,
                    const std::string& column) {
  if (s.empty()) fail_at(origin, record, column, "empty cell");
  const char* begin = s.c_str();
  char* end = nullptr;
  const double v = std::strtod(begin, &end);
  if (end != begin + s.size())
    fail_at(origin, record, column, "cannot parse '" + s + "' as a number");
  if (!std::isfinite(v)) fail_at(origin, record, column, "value is not finite");
  return v;
}

}  // namespace

Dataset ingest_csv(std::istream& in, const IngestOptions& opt, const std::string& origin) {
  if (opt.response.empty()) fail(origin, "no response column designated");
  std::ostringstream buf;
  buf << in.rdbuf();
  const auto records = parse_csv_records(buf.str(), origin);
  if (records.empty()) fail(origin, "empty file (a header row is required)");
  const std::vector<std::string>& header = records.front();
  if (records.size() < 2) fail(origin, "no data rows after the header");

  for (std::size_t j = 0; j < header.size(); ++j) {
    if (header[j].empty()) fail(origin, "empty column name at position " + std::to_string(j + 1));
    for (std::size_t k = j + 1; k < header.size(); ++k)
      if (header[j] == header[k]) fail(origin, "duplicate column name '" + header[j] + "'");
  }

  auto find_column = [&](const std::string& name) -> std::size_t {
    const auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end()) fail(origin, "no column named '" + name + "'");
    return static_cast<std::size_t>(it - header.begin());
  };
  const std::size_t y_col = find_column(opt.response);

  std::vector<bool> log_flag(header.size(), false);
  for (const std::string& name : opt.log_columns) {
    const std::size_t j = find_column(name);
    if (j == y_col) fail(origin, "cannot log-transform the response column '" + name + "'");
    log_flag[j] = true;
  }

  const std::size_t n = records.size() - 1;
  const std::size_t n_cov = header.size() - 1;
  std::vector<double> y(n);
  Eigen::MatrixXd cov(n, n_cov);
  std::vector<std::string> names;
  names.reserve(n_cov);
  for (std::size_t j = 0; j < header.size(); ++j)
    if (j != y_col) names.push_back(log_flag[j] ? "log_" + header[j] : header[j]);

  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t record = i + 2;  // header is record 1
    const std::vector<std::string>& row = records[i + 1];
    if (row.size() != header.size())
      fail(origin, "record " + std::to_string(record) + " has " + std::to_string(row.size()) +
                       " fields, expected " + std::to_string(header.size()));
    std::size_t out_j = 0;
    for (std::size_t j = 0; j < row.size(); ++j) {
      double v = parse_number(row[j], origin, record, header[j]);
      if (j == y_col) {
        if (!(v > 0.0 && v < 1.0))
          fail_at(origin, record, header[j],
                  "response value " + row[j] + " is outside the open interval (0, 1)");
        y[i] = v;
        continue;
      }
      if (log_flag[j]) {
        if (!(v > 0.0))
          fail_at(origin, record, header[j],
                  "cannot log-transform the non-positive value " + row[j]);
        v = std::log(v);
      }
      cov(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(out_j)) = v;
      ++out_j;
    }
  }
  return Dataset(std::move(y), std::move(cov), std::move(names));
}

Dataset ingest_csv(const std::string& path, const IngestOptions& opt) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError(path + ": cannot open file");
  return ingest_csv(in, opt, path);
}

namespace {

Eigen::VectorXd parse_vector(const std::string& value, const std::string& origin,
                             std::size_t line) {
  std::vector<double> items;
  std::stringstream ss(value);
  std::string piece;
  while (std::getline(ss, piece, ',')) {
    const auto b = piece.find_first_not_of(" \t");
    if (b == std::string::npos)
      fail(origin, "line " + std::to_string(line) + ": empty vector entry");
    const auto e = piece.find_last_not_of(" \t");
    piece = piece.substr(b, e - b + 1);
    char* end = nullptr;
    const double v = std::strtod(piece.c_str(), &end);
    if (end != piece.c_str() + piece.size() || !std::isfinite(v))
      fail(origin, "line " + std::to_string(line) + ": cannot parse '" + piece + "' as a number");
    items.push_back(v);
  }
  if (items.empty()) fail(origin, "line " + std::to_string(line) + ": empty vector");
  Eigen::VectorXd out(static_cast<Eigen::Index>(items.size()));
  for (std::size_t i = 0; i < items.size(); ++i) out[static_cast<Eigen::Index>(i)] = items[i];
  return out;
}

}  // namespace

ScenarioConfig parse_scenario(std::istream& in, const std::string& origin) {
  ScenarioConfig cfg;
  bool seen[8] = {};
  const char* keys[8] = {"n", "tau", "link", "replications", "seed", "theta", "nu", "eta"};

  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      fail(origin, "line " + std::to_string(line_no) + ": expected key = value");
    auto trim = [](std::string s) {
      const auto b = s.find_first_not_of(" \t\r");
      if (b == std::string::npos) return std::string();
      const auto e = s.find_last_not_of(" \t\r");
      return s.substr(b, e - b + 1);
    };
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (value.empty()) fail(origin, "line " + std::to_string(line_no) + ": empty value");

    auto as_long = [&](const std::string& v) {
      char* end = nullptr;
      const long long x = std::strtoll(v.c_str(), &end, 10);
      if (end != v.c_str() + v.size())
        fail(origin, "line " + std::to_string(line_no) + ": cannot parse '" + v +
                         "' as an integer");
      return x;
    };

    int idx = -1;
    for (int k = 0; k < 8; ++k)
      if (key == keys[k]) idx = k;
    switch (idx) {
      case 0:
        cfg.n = static_cast<int>(as_long(value));
        break;
      case 1: {
        const Eigen::VectorXd v = parse_vector(value, origin, line_no);
        if (v.size() != 1)
          fail(origin, "line " + std::to_string(line_no) + ": tau must be a single value");
        cfg.tau = v[0];
        break;
      }
      case 2:
        try {
          cfg.true_link = parse_link(value);
        } catch (const std::invalid_argument& e) {
          fail(origin, "line " + std::to_string(line_no) + ": " + e.what());
        }
        break;
      case 3:
        cfg.replications = static_cast<int>(as_long(value));
        break;
      case 4: {
        char* end = nullptr;
        cfg.seed = std::strtoull(value.c_str(), &end, 10);
        if (end != value.c_str() + value.size())
          fail(origin,
               "line " + std::to_string(line_no) + ": cannot parse '" + value + "' as a seed");
        break;
      }
      case 5:
        cfg.theta = parse_vector(value, origin, line_no);
        break;
      case 6:
        cfg.nu = parse_vector(value, origin, line_no);
        break;
      case 7:
        cfg.eta = parse_vector(value, origin, line_no);
        break;
      default:
        fail(origin, "line " + std::to_string(line_no) + ": unknown key '" + key + "'");
    }
    seen[idx] = true;
  }
  for (int k = 0; k < 8; ++k)
    if (!seen[k]) fail(origin, std::string("missing required key '") + keys[k] + "'");
  validate(cfg);
  return cfg;
}

ScenarioConfig parse_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError(path + ": cannot open file");
  return parse_scenario(in, path);
}

std::string format_full(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string format_short(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::string dataset_hash(const Dataset& data) {
  std::uint64_t h = 1469598103934665603ULL;
  auto feed = [&h](const std::string& s) {
    for (unsigned char c : s) {
      h ^= c;
      h *= 1099511628211ULL;
    }
    h ^= 0x1f;
    h *= 1099511628211ULL;
  };
  for (const auto& name : data.names()) feed(name);
  for (int i = 0; i < data.n(); ++i) {
    feed(format_full(data.y()[static_cast<std::size_t>(i)]));
    for (int j = 0; j < data.covariates().cols(); ++j) feed(format_full(data.covariates()(i, j)));
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

namespace {

void dump_value(const Json& j, std::ostream& os, int indent, int depth) {
  const std::string pad(static_cast<std::size_t>(indent) * (depth + 1), ' ');
  const std::string close_pad(static_cast<std::size_t>(indent) * depth, ' ');
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        os << "{}";
        return;
      }
      os << "{\n";
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) os << ",\n";
        first = false;
        os << pad << Json(it.key()).dump() << ": ";
        dump_value(it.value(), os, indent, depth + 1);
      }
      os << "\n" << close_pad << "}";
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        os << "[]";
        return;
      }
      os << "[\n";
      bool first = true;
      for (const auto& item : j) {
        if (!first) os << ",\n";
        first = false;
        os << pad;
        dump_value(item, os, indent, depth + 1);
      }
      os << "\n" << close_pad << "]";
      return;
    }
    case Json::value_t::number_float: {
      const double v = j.get<double>();
      if (!std::isfinite(v))
        os << "null";
      else
        os << format_full(v);
      return;
    }
    default:
      os << j.dump();  // strings (escaped), integers, booleans, null
      return;
  }
}

}  // namespace

void json_dump(const Json& j, std::ostream& os, int indent) {
  dump_value(j, os, indent, 0);
  os << "\n";
}

namespace {

Json ci_json(const WaldRow& row) {
  return Json::array({row.ci_low, row.ci_high});
}

}  // namespace

Json fit_report_json(const FitResult& fr) {
  Json out;
  out["tau"] = fr.spec.tau;
  out["link"] = std::string(link_name(fr.spec.mu_link));
  out["n_obs"] = fr.n_obs;
  out["n_params"] = fr.n_params;
  out["convergence"] = Json{{"converged", fr.converged},
                            {"iterations", fr.iterations},
                            {"grad_norm", fr.grad_norm}};
  out["loglik"] = fr.loglik;
  out["aic"] = fr.aic;
  out["bic"] = fr.bic;

  Json coefs = Json::array();
  if (fr.has_std_errors) {
    const auto w90 = wald_inference(fr, 0.90);
    const auto w95 = wald_inference(fr, 0.95);
    const auto w99 = wald_inference(fr, 0.99);
    for (std::size_t r = 0; r < w95.size(); ++r) {
      Json c;
      c["name"] = w95[r].name;
      c["estimate"] = w95[r].estimate;
      c["se"] = w95[r].se;
      c["z"] = w95[r].z;
      c["p_value"] = w95[r].p_value;
      c["ci90"] = ci_json(w90[r]);
      c["ci95"] = ci_json(w95[r]);
      c["ci99"] = ci_json(w99[r]);
      coefs.push_back(std::move(c));
    }
  } else {
    Eigen::VectorXd est(fr.n_params);
    est << fr.coef.theta, fr.coef.nu, fr.coef.eta;
    for (int r = 0; r < fr.n_params; ++r) {
      Json c;
      c["name"] = fr.names[static_cast<std::size_t>(r)];
      c["estimate"] = est[r];
      c["se"] = nullptr;
      c["z"] = nullptr;
      c["p_value"] = nullptr;
      c["ci90"] = nullptr;
      c["ci95"] = nullptr;
      c["ci99"] = nullptr;
      coefs.push_back(std::move(c));
    }
  }
  out["coefficients"] = std::move(coefs);

  Json warnings = Json::array();
  if (!fr.converged) warnings.push_back("optimizer did not meet the convergence criteria");
  if (!fr.has_std_errors)
    warnings.push_back(
        "observed information is singular or indefinite; standard errors unavailable");
  out["warnings"] = std::move(warnings);
  return out;
}

Json trace_json(const EliminationTrace& trace, double threshold) {
  Json out;
  out["threshold"] = threshold;
  Json steps = Json::array();
  for (const EliminationStep& s : trace.steps) {
    steps.push_back(Json{{"component", s.component},
                         {"term", s.term},
                         {"p_value", s.p_value},
                         {"loglik", s.loglik},
                         {"aic", s.aic},
                         {"bic", s.bic}});
  }
  out["steps"] = std::move(steps);
  out["completed"] = trace.completed;
  if (!trace.completed) out["abort_reason"] = trace.abort_reason;
  out["final_spec"] = Json{{"tau", trace.final_spec.tau},
                           {"link", std::string(link_name(trace.final_spec.mu_link))},
                           {"mu_terms", trace.final_spec.mu_terms},
                           {"alpha_terms", trace.final_spec.alpha_terms},
                           {"beta_terms", trace.final_spec.beta_terms}};
  out["final_fit"] = fit_report_json(trace.final_fit);
  return out;
}

void write_residual_csv(const ResidualReport& rep, std::ostream& os) {
  os << "index,residual,theoretical,sample\n";
  for (std::size_t i = 0; i < rep.residuals.size(); ++i) {
    os << (i + 1) << ',' << format_full(rep.residuals[i]) << ','
       << format_full(rep.theoretical_quantiles[i]) << ','
       << format_full(rep.sample_quantiles[i]) << '\n';
  }
}

namespace {

void write_scenario_comment(const ScenarioConfig& cfg, int used, int dropped, std::ostream& os) {
  os << "# n=" << cfg.n << " tau=" << format_short(cfg.tau) << " link="
     << link_name(cfg.true_link) << " replications=" << cfg.replications << " used=" << used
     << " dropped=" << dropped << " seed=" << cfg.seed << "\n";
}

}  // namespace

void write_recovery_csv(const RecoveryReport& rep, const ScenarioConfig& cfg, std::ostream& os) {
  write_scenario_comment(cfg, rep.used, rep.dropped, os);
  os << "parameter,true_value,bias,mean_se,rmse,cp95\n";
  for (std::size_t j = 0; j < rep.names.size(); ++j) {
    const auto i = static_cast<Eigen::Index>(j);
    os << rep.names[j] << ',' << format_short(rep.truth[i]) << ',' << format_short(rep.bias[i])
       << ',' << format_short(rep.mean_se[i]) << ',' << format_short(rep.rmse[i]) << ','
       << format_short(rep.cp95[i]) << '\n';
  }
}

void write_link_choice_csv(const LinkChoiceReport& rep, const ScenarioConfig& cfg,
                           std::ostream& os) {
  write_scenario_comment(cfg, rep.used, rep.dropped, os);
  os << "criterion";
  for (Link l : LinkChoiceReport::kLinks) os << ',' << link_name(l);
  os << '\n';
  const char* criteria[3] = {"LL", "MSPE", "MAPE"};
  for (int c = 0; c < 3; ++c) {
    os << criteria[c];
    for (std::size_t k = 0; k < 4; ++k)
      os << ',' << format_short(rep.percent[static_cast<std::size_t>(c)][k]);
    os << '\n';
  }
}

void write_dataset_csv(const Dataset& data, const std::string& response_name, std::ostream& os) {
  os << response_name;
  for (const auto& name : data.names()) os << ',' << name;
  os << '\n';
  for (int i = 0; i < data.n(); ++i) {
    os << format_full(data.y()[static_cast<std::size_t>(i)]);
    for (int j = 0; j < data.covariates().cols(); ++j)
      os << ',' << format_full(data.covariates()(i, j));
    os << '\n';
  }
}

}  // namespace gb3reg
