#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "bvk/report.hpp"
#include "json.hpp"

namespace bvk {

// Suite files and CLI flags that cannot be used; line and column are 1-based
// and 0 when unknown.
struct ConfigError : std::runtime_error {
  ConfigError(const std::string& what, int line = 0, int column = 0);
  int line, column;
};

struct JobSpec {
  std::string name;
  std::string suite;
  int criterion = 0;  // 0 when the job is not tied to an acceptance criterion
  nlohmann::json params;
  int line = 0;
  std::map<std::string, std::pair<int, int>> marks;  // key -> value position
};

struct SuiteSpec {
  std::string source;
  std::vector<JobSpec> jobs;
};

SuiteSpec parse_suite(const std::string& text, const std::string& source = "<string>");
SuiteSpec load_suite(const std::string& path);
// one job of the given suite from a mapping of its parameters; each override
// is key=value with a YAML value
JobSpec parse_job(const std::string& text, const std::string& suite, const std::string& source = "<string>",
                  const std::vector<std::string>& overrides = {});
std::vector<std::string> suite_names();

struct RunOptions {
  int jobs = 1;
  std::optional<std::uint64_t> seed;  // overrides every job seed
  std::optional<int> cap;             // overrides every job cap
};

struct WitnessSummary {
  int arity = 0;
  std::vector<std::string> args;
  std::string value;
};

struct OrderSummary {
  std::string label;
  int r_max = 0;
  std::optional<int> order;
  std::string domain;
  long tuples = 0;
  std::vector<WitnessSummary> witnesses;
};

struct HomologyTable {
  std::string label;
  std::vector<std::pair<std::vector<int>, int>> dims;
};

enum class JobStatus { Pass, Fail, Error };

struct JobReport {
  std::string name, suite;
  int criterion = 0;
  JobStatus status = JobStatus::Pass;
  std::string error;
  std::string algebra;
  nlohmann::json params;  // enough to rerun the job alone
  std::vector<IdentityReport> identities;
  std::vector<OrderSummary> orders;
  std::vector<HomologyTable> homology;
  std::vector<std::pair<std::string, std::string>> values;
  std::vector<std::string> warnings;
  double seconds = 0;
};

struct RunReport {
  std::string source;
  std::vector<JobReport> jobs;
  std::vector<std::string> warnings;
  bool passed() const;
  int exit_code() const;  // 0 pass, 1 identity failure, 2 job refused its configuration
};

inline constexpr int kReportSchemaVersion = 1;

JobReport run_job(const JobSpec& job, const RunOptions& opts, const SuiteSpec* suite = nullptr);
RunReport run_suite(const SuiteSpec& suite, const RunOptions& opts);
RunReport run_suite_file(const std::string& path, const RunOptions& opts);

std::string emit_text(const RunReport& r, bool timing = false);
nlohmann::json to_json(const RunReport& r);
// format is "text" or "json"; empty path writes to stdout
void emit_report(const RunReport& r, const std::string& format, const std::string& path, bool timing = false);

}  // namespace bvk
