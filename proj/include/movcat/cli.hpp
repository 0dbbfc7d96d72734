#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "movcat/workspace.hpp"

namespace movcat {

/// 0 = holds / built, 1 = refuted (with certificate), 2 = invalid input.
struct CommandResult {
  int status = 0;
  std::string text;
  nlohmann::json report;
  bool json = false; // --json given

  std::string output() const; // the form selected by --json
};

/// Runs one command against an already loaded workspace. `args` excludes the
/// program name and any workspace option.
CommandResult run_command(const Workspace& ws, const std::vector<std::string>& args);

/// Full command line: loads the workspace named by -w/--workspace or the
/// shipped fixtures (directory from MOVCAT_FIXTURES), then runs the command.
CommandResult run_cli(const std::vector<std::string>& args);

/// Directory holding fixtures.ws.
std::string fixture_dir();
Workspace load_workspace(const std::string& path);

nlohmann::json to_json(const FinCategory& cat, const Witness& w);
nlohmann::json to_json(const FinCategory& cat, const CandidateFailure& f);

} // namespace movcat
