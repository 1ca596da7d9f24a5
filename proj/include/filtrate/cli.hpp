#pragma once

#include <json.hpp>

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace filtrate::cli {

inline constexpr const char* kVersion = "0.1.0";

enum ExitCode : int {
    kOk = 0,
    kParseError = 2,
    kPrecondition = 3,
    kRouteDisagreement = 4,
};

enum class Command { Member, Magnus, Rep, Sample, EmapCheck, Massey };

/// One unit of work, as given on the command line or as an entry of a batch
/// job file. `parameters` carries the command's flags by their long names
/// (e.g. "word", "emap", "level").
struct JobSpec {
    Command command = Command::Member;
    nlohmann::json parameters = nlohmann::json::object();
    std::uint64_t seed = 1;
    /// Report destination; empty means standard output.
    std::string output;
};

struct JobResult {
    int exit_code = kOk;
    nlohmann::json report;
};

Command parse_command(const std::string& name);
std::string command_name(Command c);

/// Builds a JobSpec from a batch-file entry such as
///   {"command": "member", "word": "[x1,x2]", "emap": "trivial", "level": 3}.
JobSpec job_from_json(const nlohmann::json& entry);

/// Runs one job. Never throws: errors become an exit code and a report with
/// an "error" field.
JobResult run(const JobSpec& job);

/// Runs all jobs (concurrently) and returns results in input order.
std::vector<JobResult> run_batch(const std::vector<JobSpec>& jobs);

/// Entry point shared by the `filtrate` executable and the end-to-end tests.
int main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace filtrate::cli
