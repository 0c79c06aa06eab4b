#pragma once

// The mvkit subcommands as functions returning text and an exit status:
// 0 pass, 1 violation (details on out), 2 input error (message on err).

#include "mvkit/suite.hpp"

#include <string>

namespace mvkit {

struct CommandResult {
  int exit_code = 0;
  std::string out;
  std::string err;
};

CommandResult cmd_parse(const std::string& path);
/// ladder empty means every row and ladder of the file.
CommandResult cmd_check(const std::string& path, const std::string& ladder);
/// which is "mv1", "mv2" or "phi". An empty ladder name selects the file's
/// only Milnor ladder.
CommandResult cmd_analysis(const std::string& which, const std::string& path,
                           const std::string& ladder, ReportFormat format);
/// Counterexamples are also written to dump_dir when it is nonempty.
CommandResult cmd_props(const std::string& suite, const TrialConfig& cfg, ReportFormat format,
                        bool inject_fault, const std::string& dump_dir);
CommandResult cmd_snf(const std::string& path);

/// Text of one analysis on an already parsed ladder.
std::string analysis_text(const std::string& which, const std::string& name,
                          const MilnorAnalysis& m, ReportFormat format);

}  // namespace mvkit
