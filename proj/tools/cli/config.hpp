#ifndef EFFDIM_CLI_CONFIG_HPP
#define EFFDIM_CLI_CONFIG_HPP

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "effdim/fisher.hpp"
#include "effdim/linalg.hpp"
#include "effdim/models.hpp"
#include "json.hpp"

namespace effdim::cli {

inline constexpr int kSchemaVersion = 1;

struct ModelSpec {
  enum class Kind { Constant, Gaussian, Bernoulli, Mlp };
  Kind kind = Kind::Constant;
  std::optional<linalg::SymMatrix> matrix;  // constant
  bool identity = false;                    // constant Id_d (resized by dims sweeps)
  std::size_t d = 0;                        // constant identity, gaussian
  double sigma = 1.0;                       // gaussian, mlp
  std::vector<std::size_t> layers;          // mlp
  InputDistribution input;                  // mlp
};

struct DomainSpec {
  std::optional<std::vector<double>> lower;
  std::optional<std::vector<double>> upper;
  std::optional<double> half_width;
  std::optional<double> clip;  // bernoulli
};

struct FisherSpec {
  enum class Source { ClosedForm, MonteCarlo };
  Source source = Source::ClosedForm;
  std::size_t samples_per_theta = 0;
};

struct DSweep {
  enum class Kind { Widths, Dims };
  Kind kind = Kind::Widths;
  std::vector<std::size_t> values;
};

struct RunConfig {
  int schema_version = kSchemaVersion;
  ModelSpec model;
  DomainSpec domain;
  FisherSpec fisher;
  std::optional<double> n;
  std::vector<double> n_values;  // sweep, strictly increasing
  std::optional<DSweep> d_sweep;
  std::size_t num_theta_points = 200;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> csv_path;
  std::optional<std::string> svg_path;
};

// Everything needed to evaluate one configuration.
struct Problem {
  ModelPtr model;  // null for constant fields
  FisherField field;
  ParamDomain domain;
};

// Strict parse: unknown keys, wrong types and out-of-range values throw
// Error(InvalidInput) naming the offending field.
RunConfig parse_config(const nlohmann::json& doc);
RunConfig load_config(const std::filesystem::path& path);

// n values min * 10^(k / points_per_decade), ending exactly at max.
std::vector<double> log_spaced(double min, double max, int points_per_decade);

std::uint64_t require_seed(const RunConfig& config);

// Builds the problem; sweep_value, when given, replaces the hidden widths
// (Widths sweeps) or the dimension (Dims sweeps).
Problem build_problem(const RunConfig& config, std::optional<std::size_t> sweep_value = {});

}  // namespace effdim::cli

#endif  // EFFDIM_CLI_CONFIG_HPP
