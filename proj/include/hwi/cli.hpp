#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "hwi/harness.hpp"

namespace hwi {

// Raised for invalid campaign configurations; the message names the field.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Environment variable naming the directory reports go to when no output
// path is given. Without it reports go to standard output.
inline constexpr const char* kOutputDirEnv = "HWI_OUTPUT_DIR";

// Everything a campaign depends on. JSON keys match the long flag names.
struct CampaignConfig {
  std::string command = "check-hypercube";
  std::vector<int> n{3};
  std::vector<std::string> family{"dirichlet:1"};
  std::size_t trials = 100;
  std::uint64_t seed = 0;
  std::vector<double> t;       // empty: command default
  std::string output;          // empty: $HWI_OUTPUT_DIR/<command>.<ext> or stdout
  std::string format = "csv";  // csv | jsonl
  double tol = kMarginTolerance;
  int threads = 1;
  std::string space = "hypercube";  // check-flow, transport, simulate
  std::string inequality = "hwi";   // check-hypercube: hwi | mlsi
  int n_max = 200;                  // check-bessel
  int d_max = 10;                   // check-bessel, unimodal laws
  std::size_t samples = 100000;     // simulate

  // Throws ConfigError naming the offending field.
  void validate() const;
  std::vector<double> effective_t() const;

  std::string to_json() const;
  // Missing keys keep their defaults; unknown keys are an error.
  static CampaignConfig from_json(const std::string& text);

  bool operator==(const CampaignConfig&) const = default;
};

// Parses "3..20", "4,8,16" or mixtures like "1..4,10".
std::vector<int> parse_size_list(const std::string& text);
// Comma-separated reals.
std::vector<double> parse_real_list(const std::string& text);

struct CampaignSummary {
  std::size_t pass = 0;
  std::size_t vacuous_pass = 0;
  std::size_t not_applicable = 0;
  std::size_t fail = 0;
  double min_margin = 0.0;  // over pass and FAIL records; inf if none

  void add(const InequalityReport& r);
  std::size_t total() const { return pass + vacuous_pass + not_applicable + fail; }
};

// Runs the configured campaign. Records come back in trial-index order and do
// not depend on config.threads.
std::vector<InequalityReport> run_campaign(const CampaignConfig& config);

void write_csv(std::ostream& out, const std::vector<InequalityReport>& records,
               const CampaignSummary& summary);
void write_jsonl(std::ostream& out, const std::vector<InequalityReport>& records,
                 const CampaignSummary& summary);

// Writes records and summary to the configured destination. Returns 0 when
// no record failed, 1 on any FAIL and 2 when the output cannot be written.
int write_report(const CampaignConfig& config,
                 const std::vector<InequalityReport>& records, std::ostream& out,
                 std::ostream& err, double seconds = 0.0);

// Validates, runs and writes the report. Returns 0 when no record failed,
// 1 on any FAIL and 2 on configuration or output errors.
int run(const CampaignConfig& config, std::ostream& out, std::ostream& err);

// Full command-line entry point: argv[1] is the subcommand.
int cli_main(int argc, const char* const* argv, std::ostream& out,
             std::ostream& err);

}  // namespace hwi
