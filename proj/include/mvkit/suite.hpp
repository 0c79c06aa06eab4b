#pragma once

// Seeded property suites and their reports.

#include "mvkit/generate.hpp"
#include "mvkit/model.hpp"

#include <string>
#include <vector>

namespace mvkit {

struct PropertyResult {
  std::string name;
  std::size_t checked = 0;
  std::size_t failed = 0;
  std::string first_failure;
};

/// A failing instance as a model file (or matrix file for the snf suite)
/// plus the failure lines the replay command prints.
struct Counterexample {
  std::size_t trial = 0;
  std::string property;
  std::vector<std::string> failures;
  std::string model;
  std::string replay;  // CLI command, with FILE standing for the dump path
};

struct ReportDocument {
  std::string suite;
  TrialConfig cfg;
  bool inject_fault = false;
  std::vector<PropertyResult> properties;
  std::vector<Counterexample> counterexamples;
  long long duration_ms = 0;

  bool passed() const;
};

const std::vector<std::string>& suite_names();
bool suite_supports_faults(const std::string& name);

/// Throws InputError for an unknown suite, or for inject_fault on a suite
/// without fault injection.
ReportDocument run_suite(const std::string& name, const TrialConfig& cfg, bool inject_fault = false);

enum class ReportFormat { human, machine };
/// The machine form is line records "@ key=value ..." with counterexample
/// dumps inlined, so it parses as a model file. The duration is always the
/// last line.
std::string emit_report(const ReportDocument& doc, ReportFormat format);
/// emit_report without the duration line.
std::string report_body(const ReportDocument& doc, ReportFormat format);

/// Everything `mvkit check` reports for a model: row exactness claims, ladder
/// violations and Milnor ladder validation, one line each prefixed with the
/// object's name. Restricted to one ladder when only is nonempty.
std::vector<std::string> check_model(const Model& m, const std::string& only = "");

/// Failure lines of one analysis ("mv1", "mv2" or "phi") of a valid ladder,
/// as printed by the matching command.
std::vector<std::string> analysis_failures(const MilnorAnalysis& m, const std::string& which);

/// Row with the map into node k replaced by zero.
ExactRow zero_map(const ExactRow& row, std::size_t k);

}  // namespace mvkit
