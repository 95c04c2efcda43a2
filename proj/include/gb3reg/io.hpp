#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "gb3reg/diagnostics.hpp"
#include "gb3reg/regression.hpp"
#include "gb3reg/selection.hpp"
#include "gb3reg/simulation.hpp"

namespace gb3reg {

using Json = nlohmann::ordered_json;

// Input-file failure with the offending location already baked into
// the message ("<origin>: record N, column 'c': ...").
class InputError : public std::runtime_error {
 public:
  explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

struct IngestOptions {
  std::string response;                  // required column name
  std::vector<std::string> log_columns;  // replaced by log_<name> after transform
};

// CSV reader (RFC-4180 style: header row required, quoted fields with
// doubled quotes, CR/LF tolerated).  Every cell must parse as a finite
// number; the response must lie in (0, 1); log-transformed columns
// must be strictly positive.  Violations raise InputError naming the
// record and column.
Dataset ingest_csv(std::istream& in, const IngestOptions& opt, const std::string& origin);
Dataset ingest_csv(const std::string& path, const IngestOptions& opt);

// Flat key = value scenario files ('#' comments allowed); keys: n, tau,
// link, replications, seed, theta, nu, eta (vectors comma-separated).
ScenarioConfig parse_scenario(std::istream& in, const std::string& origin);
ScenarioConfig parse_scenario(const std::string& path);

// FNV-1a fingerprint of the full dataset content (column names plus
// 17-digit-rendered values), as 16 hex characters.  Reports embed it so
// outputs can be traced back to their exact input.
std::string dataset_hash(const Dataset& data);

// Fixed float renderings: 17 significant digits for machine output,
// 6 for human-facing tables.  Both are locale-independent.
std::string format_full(double v);
std::string format_short(double v);

// Deterministic JSON writer: keys keep insertion order, floats use
// format_full, non-finite floats become null.
void json_dump(const Json& j, std::ostream& os, int indent = 2);

// Report builders shared by the command-line tool and the tests.
Json fit_report_json(const FitResult& fr);
Json trace_json(const EliminationTrace& trace, double threshold);
void write_residual_csv(const ResidualReport& rep, std::ostream& os);
void write_recovery_csv(const RecoveryReport& rep, const ScenarioConfig& cfg, std::ostream& os);
void write_link_choice_csv(const LinkChoiceReport& rep, const ScenarioConfig& cfg,
                           std::ostream& os);
void write_dataset_csv(const Dataset& data, const std::string& response_name, std::ostream& os);

}  // namespace gb3reg
