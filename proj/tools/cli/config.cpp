#include "cli/config.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>

#include "effdim/error.hpp"

namespace effdim::cli {

using nlohmann::json;

namespace {

void check_keys(const json& obj, const std::string& where, std::set<std::string> allowed) {
  require(obj.is_object(), where + " must be an object");
  for (const auto& [key, value] : obj.items()) {
    (void)value;
    require(allowed.count(key) == 1, "unknown key '" + where + "." + key + "'");
  }
}

double number(const json& obj, const std::string& key, const std::string& where) {
  const auto& v = obj.at(key);
  require(v.is_number(), where + "." + key + " must be a number");
  const double x = v.get<double>();
  require(std::isfinite(x), where + "." + key + " must be finite");
  return x;
}

std::size_t count(const json& v, const std::string& name) {
  require(v.is_number_integer() && v.get<long long>() >= 0,
          name + " must be a nonnegative integer");
  return v.get<std::size_t>();
}

std::vector<double> number_list(const json& v, const std::string& name) {
  require(v.is_array() && !v.empty(), name + " must be a nonempty array of numbers");
  std::vector<double> out;
  for (const auto& x : v) {
    require(x.is_number() && std::isfinite(x.get<double>()), name + " must contain numbers");
    out.push_back(x.get<double>());
  }
  return out;
}

std::vector<std::size_t> count_list(const json& v, const std::string& name) {
  require(v.is_array() && !v.empty(), name + " must be a nonempty array of integers");
  std::vector<std::size_t> out;
  for (const auto& x : v) out.push_back(count(x, name));
  return out;
}

template <typename T>
void require_increasing(const std::vector<T>& v, const std::string& name) {
  require(!v.empty(), name + " must not be empty");
  for (std::size_t i = 1; i < v.size(); ++i) {
    require(v[i - 1] < v[i], name + " must be strictly increasing");
  }
}

ModelSpec parse_model(const json& m) {
  require(m.is_object() && m.contains("kind") && m["kind"].is_string(),
          "model.kind must be a string");
  const auto kind = m["kind"].get<std::string>();
  ModelSpec spec;
  if (kind == "constant") {
    check_keys(m, "model", {"kind", "matrix", "diagonal", "identity"});
    const int forms = m.contains("matrix") + m.contains("diagonal") + m.contains("identity");
    require(forms == 1, "model: give exactly one of matrix, diagonal, identity");
    spec.kind = ModelSpec::Kind::Constant;
    if (m.contains("identity")) {
      spec.identity = true;
      spec.d = count(m["identity"], "model.identity");
      require(spec.d >= 1, "model.identity must be >= 1");
    } else if (m.contains("diagonal")) {
      const auto diag = number_list(m["diagonal"], "model.diagonal");
      spec.matrix = linalg::SymMatrix::diagonal(diag);
    } else {
      const auto& rows = m["matrix"];
      require(rows.is_array() && !rows.empty(), "model.matrix must be a nonempty array of rows");
      const std::size_t d = rows.size();
      std::vector<double> flat;
      for (const auto& row : rows) {
        const auto r = number_list(row, "model.matrix row");
        require(r.size() == d, "model.matrix must be square");
        flat.insert(flat.end(), r.begin(), r.end());
      }
      spec.matrix = linalg::SymMatrix::from_row_major(d, flat);
    }
    if (spec.matrix) spec.d = spec.matrix->dim();
  } else if (kind == "gaussian") {
    check_keys(m, "model", {"kind", "d", "sigma"});
    spec.kind = ModelSpec::Kind::Gaussian;
    spec.d = count(m.at("d"), "model.d");
    require(spec.d >= 1, "model.d must be >= 1");
    if (m.contains("sigma")) spec.sigma = number(m, "sigma", "model");
    require(spec.sigma > 0.0, "model.sigma must be positive");
  } else if (kind == "bernoulli") {
    check_keys(m, "model", {"kind"});
    spec.kind = ModelSpec::Kind::Bernoulli;
    spec.d = 1;
  } else if (kind == "mlp") {
    check_keys(m, "model", {"kind", "layers", "sigma", "input"});
    spec.kind = ModelSpec::Kind::Mlp;
    spec.layers = m.contains("layers") ? count_list(m["layers"], "model.layers")
                                       : default_mlp_layers();
    require(spec.layers.size() >= 2, "model.layers needs at least two entries");
    for (auto s : spec.layers) require(s >= 1, "model.layers entries must be >= 1");
    if (m.contains("sigma")) spec.sigma = number(m, "sigma", "model");
    require(spec.sigma > 0.0, "model.sigma must be positive");
    if (m.contains("input")) {
      const auto& in = m["input"];
      check_keys(in, "model.input", {"kind", "scale"});
      if (in.contains("kind")) {
        require(in["kind"].is_string(), "model.input.kind must be a string");
        const auto k = in["kind"].get<std::string>();
        require(k == "uniform" || k == "normal", "model.input.kind must be uniform or normal");
        spec.input.kind = k == "uniform" ? InputDistribution::Kind::Uniform
                                         : InputDistribution::Kind::Normal;
      }
      if (in.contains("scale")) spec.input.scale = number(in, "scale", "model.input");
      require(spec.input.scale > 0.0, "model.input.scale must be positive");
    }
    spec.d = MlpGaussian::parameter_count(spec.layers);
  } else {
    fail(ErrorCode::InvalidInput, "model.kind '" + kind +
                                      "' is not one of constant, gaussian, bernoulli, mlp");
  }
  return spec;
}

}  // namespace

std::vector<double> log_spaced(double min, double max, int points_per_decade) {
  require(min > 0.0 && max > min, "log sweep needs 0 < min < max");
  require(points_per_decade >= 1, "points_per_decade must be >= 1");
  const double lo = std::log10(min);
  const double hi = std::log10(max);
  const auto intervals = std::max<long long>(
      1, std::llround(static_cast<double>(points_per_decade) * (hi - lo)));
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(intervals) + 1);
  out.push_back(min);
  for (long long k = 1; k < intervals; ++k) {
    out.push_back(std::pow(10.0, lo + (hi - lo) * static_cast<double>(k) /
                                          static_cast<double>(intervals)));
  }
  out.push_back(max);
  return out;
}

RunConfig parse_config(const json& doc) {
  check_keys(doc, "config",
             {"schema_version", "model", "domain", "fisher", "n", "n_sweep", "d_sweep",
              "num_theta_points", "seed", "output"});
  RunConfig cfg;
  require(doc.contains("schema_version") && doc["schema_version"].is_number_integer(),
          "config.schema_version is required");
  cfg.schema_version = doc["schema_version"].get<int>();
  require(cfg.schema_version == kSchemaVersion,
          "config.schema_version " + std::to_string(cfg.schema_version) + " is not supported");

  require(doc.contains("model"), "config.model is required");
  cfg.model = parse_model(doc["model"]);

  if (doc.contains("domain")) {
    const auto& d = doc["domain"];
    check_keys(d, "domain", {"lower", "upper", "half_width", "clip"});
    if (d.contains("lower") || d.contains("upper")) {
      require(d.contains("lower") && d.contains("upper"), "domain needs both lower and upper");
      cfg.domain.lower = number_list(d["lower"], "domain.lower");
      cfg.domain.upper = number_list(d["upper"], "domain.upper");
    }
    if (d.contains("half_width")) cfg.domain.half_width = number(d, "half_width", "domain");
    if (d.contains("clip")) cfg.domain.clip = number(d, "clip", "domain");
    const int forms = cfg.domain.lower.has_value() + cfg.domain.half_width.has_value() +
                      cfg.domain.clip.has_value();
    require(forms <= 1, "domain: give one of lower/upper, half_width, clip");
    require(!cfg.domain.clip || cfg.model.kind == ModelSpec::Kind::Bernoulli,
            "domain.clip applies to the bernoulli model only");
  }

  const bool has_closed_form = cfg.model.kind != ModelSpec::Kind::Mlp;
  if (doc.contains("fisher")) {
    const auto& f = doc["fisher"];
    check_keys(f, "fisher", {"source", "samples_per_theta"});
    require(f.contains("source") && f["source"].is_string(), "fisher.source must be a string");
    const auto src = f["source"].get<std::string>();
    if (src == "closed_form") {
      require(has_closed_form, "fisher.source closed_form is unavailable for mlp models");
      require(!f.contains("samples_per_theta"), "fisher.samples_per_theta needs monte_carlo");
      cfg.fisher.source = FisherSpec::Source::ClosedForm;
    } else if (src == "monte_carlo") {
      require(cfg.model.kind != ModelSpec::Kind::Constant,
              "fisher.source monte_carlo needs a statistical model, not a constant field");
      cfg.fisher.source = FisherSpec::Source::MonteCarlo;
      require(f.contains("samples_per_theta"), "fisher.samples_per_theta is required");
      cfg.fisher.samples_per_theta = count(f["samples_per_theta"], "fisher.samples_per_theta");
      require(cfg.fisher.samples_per_theta >= 1, "fisher.samples_per_theta must be >= 1");
    } else {
      fail(ErrorCode::InvalidInput, "fisher.source must be closed_form or monte_carlo");
    }
  } else {
    require(has_closed_form, "config.fisher is required for mlp models");
  }

  const double two_pi = 2.0 * std::numbers::pi;
  if (doc.contains("n")) {
    cfg.n = number(doc, "n", "config");
    require(*cfg.n > two_pi, "config.n must exceed 2*pi");
  }
  if (doc.contains("n_sweep")) {
    const auto& s = doc["n_sweep"];
    check_keys(s, "n_sweep", {"min", "max", "points_per_decade", "values"});
    if (s.contains("values")) {
      require(!s.contains("min") && !s.contains("max") && !s.contains("points_per_decade"),
              "n_sweep: give either values or min/max");
      cfg.n_values = number_list(s["values"], "n_sweep.values");
    } else {
      require(s.contains("min") && s.contains("max"), "n_sweep needs min and max");
      int ppd = 25;
      if (s.contains("points_per_decade")) {
        ppd = static_cast<int>(count(s["points_per_decade"], "n_sweep.points_per_decade"));
      }
      cfg.n_values = log_spaced(number(s, "min", "n_sweep"), number(s, "max", "n_sweep"), ppd);
    }
    require_increasing(cfg.n_values, "n_sweep");
    require(cfg.n_values.front() > two_pi, "n_sweep values must exceed 2*pi");
  }
  if (doc.contains("d_sweep")) {
    const auto& s = doc["d_sweep"];
    check_keys(s, "d_sweep", {"widths", "dims"});
    require(s.contains("widths") != s.contains("dims"), "d_sweep: give one of widths, dims");
    DSweep sweep;
    if (s.contains("widths")) {
      require(cfg.model.kind == ModelSpec::Kind::Mlp, "d_sweep.widths applies to mlp models");
      require(cfg.model.layers.size() >= 3, "d_sweep.widths needs a hidden layer");
      sweep.kind = DSweep::Kind::Widths;
      sweep.values = count_list(s["widths"], "d_sweep.widths");
    } else {
      require(cfg.model.kind == ModelSpec::Kind::Gaussian ||
                  (cfg.model.kind == ModelSpec::Kind::Constant && cfg.model.identity),
              "d_sweep.dims applies to gaussian or constant identity models");
      sweep.kind = DSweep::Kind::Dims;
      sweep.values = count_list(s["dims"], "d_sweep.dims");
    }
    require_increasing(sweep.values, "d_sweep");
    require(sweep.values.front() >= 1, "d_sweep values must be >= 1");
    cfg.d_sweep = std::move(sweep);
  }
  if (doc.contains("num_theta_points")) {
    cfg.num_theta_points = count(doc["num_theta_points"], "config.num_theta_points");
    require(cfg.num_theta_points >= 1, "config.num_theta_points must be >= 1");
  }
  if (doc.contains("seed")) {
    const auto& seed = doc["seed"];
    require(seed.is_number_unsigned() || (seed.is_number_integer() && seed.get<std::int64_t>() >= 0),
            "config.seed must be a nonnegative integer");
    cfg.seed = doc["seed"].get<std::uint64_t>();
  }
  if (doc.contains("output")) {
    const auto& o = doc["output"];
    check_keys(o, "output", {"csv", "svg"});
    if (o.contains("csv")) {
      require(o["csv"].is_string(), "output.csv must be a string");
      cfg.csv_path = o["csv"].get<std::string>();
    }
    if (o.contains("svg")) {
      require(o["svg"].is_string(), "output.svg must be a string");
      cfg.svg_path = o["svg"].get<std::string>();
    }
  }
  return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::Io, "cannot open config " + path.string());
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    fail(ErrorCode::InvalidInput, "config is not valid JSON: " + std::string(e.what()));
  }
  return parse_config(doc);
}

std::uint64_t require_seed(const RunConfig& config) {
  require(config.seed.has_value(), "config.seed is required (or pass --seed)");
  return *config.seed;
}

Problem build_problem(const RunConfig& config, std::optional<std::size_t> sweep_value) {
  ModelSpec spec = config.model;
  if (sweep_value) {
    require(config.d_sweep.has_value(), "no d_sweep configured");
    if (config.d_sweep->kind == DSweep::Kind::Widths) {
      for (std::size_t l = 1; l + 1 < spec.layers.size(); ++l) spec.layers[l] = *sweep_value;
      spec.d = MlpGaussian::parameter_count(spec.layers);
    } else {
      spec.d = *sweep_value;
    }
  }

  ModelPtr model;
  switch (spec.kind) {
    case ModelSpec::Kind::Constant: break;
    case ModelSpec::Kind::Gaussian: model = gaussian_fixed_variance(spec.d, spec.sigma); break;
    case ModelSpec::Kind::Bernoulli: model = bernoulli(); break;
    case ModelSpec::Kind::Mlp: model = mlp_gaussian(spec.layers, spec.sigma, spec.input); break;
  }

  const auto& dom = config.domain;
  std::optional<ParamDomain> domain;
  if (dom.lower) {
    require(dom.lower->size() == spec.d && dom.upper->size() == spec.d,
            "domain bounds must have " + std::to_string(spec.d) + " entries");
    domain.emplace(*dom.lower, *dom.upper);
  } else if (dom.half_width) {
    domain.emplace(ParamDomain::symmetric(spec.d, *dom.half_width));
  } else if (spec.kind == ModelSpec::Kind::Bernoulli) {
    domain.emplace(bernoulli_domain(dom.clip.value_or(kBernoulliClip)));
  } else {
    domain.emplace(ParamDomain::symmetric(spec.d, 1.0));
  }

  if (spec.kind == ModelSpec::Kind::Constant) {
    auto matrix = spec.identity ? linalg::SymMatrix::identity(spec.d) : *spec.matrix;
    return Problem{nullptr, FisherField::constant(std::move(matrix)), std::move(*domain)};
  }
  if (config.fisher.source == FisherSpec::Source::MonteCarlo) {
    return Problem{model,
                   FisherField::monte_carlo(model, config.fisher.samples_per_theta,
                                            require_seed(config)),
                   std::move(*domain)};
  }
  return Problem{model, FisherField::closed_form(model), std::move(*domain)};
}

}  // namespace effdim::cli
