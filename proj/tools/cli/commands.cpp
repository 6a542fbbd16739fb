#include "cli/commands.hpp"

#include <cmath>
#include <numbers>

#include "cli/svg.hpp"
#include "effdim/complexity.hpp"

namespace effdim::cli {

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotPositiveDefinite:
    case ErrorCode::ConvergenceFailure:
      return kExitNumerical;
    case ErrorCode::Io:
      return kExitIo;
    default:
      return kExitValidation;
  }
}

RunConfig with_overrides(RunConfig config, const CommandOptions& options) {
  if (options.seed) config.seed = options.seed;
  return config;
}

EffDimReport run_compute(const RunConfig& config, unsigned threads) {
  require(config.n.has_value(), "config.n is required for compute");
  const auto problem = build_problem(config);
  return effective_dimension(problem.field, problem.domain, *config.n, config.num_theta_points,
                             require_seed(config), threads);
}

std::vector<EffDimReport> run_sweep_n(const RunConfig& config, unsigned threads) {
  require(!config.n_values.empty(), "config.n_sweep is required for sweep-n");
  const auto problem = build_problem(config);
  const auto thetas =
      ThetaSample::uniform(problem.domain, config.num_theta_points, require_seed(config));
  const auto spectra = NormalizedSpectra::compute(problem.field, problem.domain, thetas, threads);
  std::vector<EffDimReport> out;
  out.reserve(config.n_values.size());
  for (double n : config.n_values) out.push_back(spectra.at(n));
  return out;
}

std::vector<EffDimReport> run_sweep_d(const RunConfig& config, unsigned threads) {
  require(config.d_sweep.has_value(), "config.d_sweep is required for sweep-d");
  require(config.n.has_value(), "config.n is required for sweep-d");
  const auto seed = require_seed(config);
  std::vector<EffDimReport> out;
  for (std::size_t value : config.d_sweep->values) {
    const auto problem = build_problem(config, value);
    out.push_back(effective_dimension(problem.field, problem.domain, *config.n,
                                      config.num_theta_points, seed, threads));
  }
  return out;
}

CsvTable compute_table(const EffDimReport& r) {
  CsvTable t;
  t.header = {"n", "d", "dim_eff", "log_integral", "mc_std_error", "num_theta_points",
              "normalization_factor", "degenerate"};
  t.rows.push_back({format_double(r.n), std::to_string(r.d), format_double(r.dim_eff),
                    format_double(r.log_integral), format_double(r.mc_std_error),
                    std::to_string(r.num_theta_points), format_double(r.normalization_factor),
                    r.degenerate ? "1" : "0"});
  return t;
}

CsvTable sweep_n_table(const std::vector<EffDimReport>& reports) {
  CsvTable t;
  t.header = {"n", "dim_eff", "mc_std_error", "d"};
  for (const auto& r : reports) {
    t.rows.push_back({format_double(r.n), format_double(r.dim_eff),
                      format_double(r.mc_std_error), std::to_string(r.d)});
  }
  return t;
}

CsvTable sweep_d_table(const std::vector<EffDimReport>& reports) {
  CsvTable t;
  t.header = {"d", "dim_eff", "n"};
  for (const auto& r : reports) {
    t.rows.push_back({std::to_string(r.d), format_double(r.dim_eff), format_double(r.n)});
  }
  return t;
}

namespace {

template <typename Body>
int guarded(std::ostream& err, Body&& body) {
  try {
    return body();
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  }
}

// CSV goes to --out, then output.csv, then stdout. Returns whether it went
// to stdout.
bool emit_csv(const CsvTable& table, const RunConfig& config, const CommandOptions& options,
              std::ostream& out) {
  const auto text = to_csv(table);
  const auto path = options.out ? options.out : config.csv_path;
  if (path) {
    write_file(*path, text);
    return false;
  }
  out << text;
  return true;
}

void emit_svg(const CsvTable& table, const RunConfig& config) {
  if (config.svg_path) write_file(*config.svg_path, plot_csv(table));
}

double display(double nats, bool bits) { return bits ? nats / std::numbers::ln2 : nats; }

}  // namespace

int cmd_compute(const RunConfig& raw, const CommandOptions& options, std::ostream& out,
                std::ostream& err) {
  return guarded(err, [&] {
    const auto config = with_overrides(raw, options);
    const auto report = run_compute(config, options.threads);
    const bool csv_on_stdout = emit_csv(compute_table(report), config, options, out);
    std::ostream& summary = csv_on_stdout ? err : out;
    summary << "d = " << report.d << ", n = " << report.n << '\n';
    if (report.degenerate) {
      summary << "Fisher field is identically zero: effective dimension 0 (degenerate)\n";
    } else {
      summary << "effective dimension = " << report.dim_eff << " (MC std. error "
              << report.mc_std_error << ", " << report.num_theta_points << " theta points)\n";
    }

    // Parametric complexity for finite-support models.
    const auto problem = build_problem(config);
    if (problem.model && problem.model->finite_support() && problem.domain.dim() == 1 &&
        *config.n <= 1e6) {
      const auto n = static_cast<std::size_t>(std::llround(*config.n));
      const auto rule = complexity::graded_gauss_legendre(problem.domain);
      const auto c = complexity::complexity_report(*problem.model, problem.field, problem.domain,
                                                   n, rule, options.threads);
      const char* unit = options.bits ? "bits" : "nats";
      summary << "COMP_" << n << ": exact " << display(*c.exact, options.bits)
              << ", asymptotic " << display(c.asymptotic, options.bits) << ", gap "
              << display(*c.gap, options.bits) << " " << unit << '\n';
    }
    return kExitOk;
  });
}

int cmd_sweep_n(const RunConfig& raw, const CommandOptions& options, std::ostream& out,
                std::ostream& err) {
  return guarded(err, [&] {
    const auto config = with_overrides(raw, options);
    const auto table = sweep_n_table(run_sweep_n(config, options.threads));
    emit_csv(table, config, options, out);
    emit_svg(table, config);
    return kExitOk;
  });
}

int cmd_sweep_d(const RunConfig& raw, const CommandOptions& options, std::ostream& out,
                std::ostream& err) {
  return guarded(err, [&] {
    const auto config = with_overrides(raw, options);
    const auto table = sweep_d_table(run_sweep_d(config, options.threads));
    emit_csv(table, config, options, out);
    emit_svg(table, config);
    return kExitOk;
  });
}

int cmd_validate(const CommandOptions& options, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    bool ok = true;
    for (const auto& suite : run_validation_suites(options.bits, options.threads)) {
      out << (suite.passed ? "[PASS] " : "[FAIL] ") << suite.name << ": " << suite.detail << '\n';
      ok = ok && suite.passed;
    }
    return ok ? kExitOk : kExitValidation;
  });
}

int cmd_plot(const std::string& csv_path, const std::string& out_path, std::ostream& err) {
  return guarded(err, [&] {
    const auto table = parse_csv(read_file(csv_path));
    write_file(out_path, plot_csv(table));
    return kExitOk;
  });
}

}  // namespace effdim::cli
