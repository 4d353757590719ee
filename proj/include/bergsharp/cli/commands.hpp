#pragma once

#include <functional>
#include <ostream>
#include <vector>

#include "bergsharp/cli/config.hpp"
#include "bergsharp/cli/report.hpp"

namespace bergsharp::cli {

using Task = std::function<std::vector<Record>()>;

/// Runs tasks on `jobs` workers; results come back in task order. Toolkit
/// errors thrown by a task become a single record carrying the mapped verdict.
std::vector<std::vector<Record>> run_tasks(const std::vector<std::pair<std::string, Task>>& tasks, unsigned jobs);

Report cmd_verify_exact(const RunConfig& cfg);
Report cmd_profile(const RunConfig& cfg);
Report cmd_fock(const RunConfig& cfg);
Report cmd_lemma22(const RunConfig& cfg);
Report cmd_isoperimetry(const RunConfig& cfg);
Report cmd_all(const RunConfig& cfg);

Report run_command(const RunConfig& cfg);

/// Runs cfg.command and writes the report to cfg.out (or `out`). Returns the exit code.
int execute(const RunConfig& cfg, std::ostream& out);

}  // namespace bergsharp::cli
