#ifndef EFFDIM_CLI_COMMANDS_HPP
#define EFFDIM_CLI_COMMANDS_HPP

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "cli/config.hpp"
#include "cli/csv.hpp"
#include "effdim/effdim.hpp"
#include "effdim/error.hpp"

namespace effdim::cli {

struct CommandOptions {
  std::optional<std::uint64_t> seed;  // overrides the config
  unsigned threads = 0;               // 0 = hardware concurrency
  bool bits = false;                  // complexity in bits instead of nats
  std::optional<std::string> out;     // overrides output.csv / output.svg
};

enum ExitCode : int {
  kExitOk = 0,
  kExitValidation = 1,
  kExitNumerical = 2,
  kExitIo = 3,
};

int exit_code_for(ErrorCode code);

RunConfig with_overrides(RunConfig config, const CommandOptions& options);

EffDimReport run_compute(const RunConfig& config, unsigned threads);
// One report per configured n; all share one theta sample and one set of
// Fisher evaluations.
std::vector<EffDimReport> run_sweep_n(const RunConfig& config, unsigned threads);
std::vector<EffDimReport> run_sweep_d(const RunConfig& config, unsigned threads);

// Columns: n,d,dim_eff,log_integral,mc_std_error,num_theta_points,normalization_factor,degenerate
CsvTable compute_table(const EffDimReport& report);
// Columns: n,dim_eff,mc_std_error,d
CsvTable sweep_n_table(const std::vector<EffDimReport>& reports);
// Columns: d,dim_eff,n
CsvTable sweep_d_table(const std::vector<EffDimReport>& reports);

// Each command maps library errors to exit codes and reports them on err.
int cmd_compute(const RunConfig& config, const CommandOptions& options, std::ostream& out,
                std::ostream& err);
int cmd_sweep_n(const RunConfig& config, const CommandOptions& options, std::ostream& out,
                std::ostream& err);
int cmd_sweep_d(const RunConfig& config, const CommandOptions& options, std::ostream& out,
                std::ostream& err);
int cmd_validate(const CommandOptions& options, std::ostream& out, std::ostream& err);
int cmd_plot(const std::string& csv_path, const std::string& out_path, std::ostream& err);

struct SuiteResult {
  std::string name;
  bool passed;
  std::string detail;
};

// The oracle suites run by `validate`.
std::vector<SuiteResult> run_validation_suites(bool bits, unsigned threads);

}  // namespace effdim::cli

#endif  // EFFDIM_CLI_COMMANDS_HPP
