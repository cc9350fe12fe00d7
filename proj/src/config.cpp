#include "magloc/config.hpp"

#include <json.hpp>

#include <cctype>
#include <cmath>
#include <fstream>
#include <initializer_list>
#include <sstream>
#include <string>

namespace magloc {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& message) {
  throw ConfigError(ConfigError::Kind::kValidation, message);
}

std::string joined(const std::string& prefix, const std::string& key) {
  return prefix.empty() ? key : prefix + "." + key;
}

void check_keys(const json& obj, const std::string& prefix,
                std::initializer_list<const char*> allowed) {
  for (const auto& item : obj.items()) {
    bool known = false;
    for (const char* key : allowed) known |= item.key() == key;
    if (!known) fail("unknown key '" + joined(prefix, item.key()) + "'");
  }
}

const json* find(const json& obj, const std::string& key) {
  const auto it = obj.find(key);
  return it == obj.end() ? nullptr : &*it;
}

const json* find_section(const json& obj, const std::string& key) {
  const json* section = find(obj, key);
  if (section && !section->is_object()) {
    fail("'" + key + "' must be an object of settings");
  }
  return section;
}

double as_double(const json& value, const std::string& path) {
  if (!value.is_number()) fail("'" + path + "' must be a number");
  const double out = value.get<double>();
  if (!std::isfinite(out)) fail("'" + path + "' must be finite");
  return out;
}

int as_int(const json& value, const std::string& path) {
  if (!value.is_number_integer()) fail("'" + path + "' must be an integer");
  return value.get<int>();
}

bool as_bool(const json& value, const std::string& path) {
  if (!value.is_boolean()) fail("'" + path + "' must be true or false");
  return value.get<bool>();
}

std::uint64_t as_seed(const json& value, const std::string& path) {
  if (value.is_number_unsigned()) return value.get<std::uint64_t>();
  if (!value.is_number_integer() || value.get<std::int64_t>() < 0) {
    fail("'" + path + "' must be a non-negative integer");
  }
  return value.get<std::uint64_t>();
}

Vec3 as_vec3(const json& value, const std::string& path) {
  if (!value.is_array() || value.size() != 3) {
    fail("'" + path + "' must be an array of 3 numbers");
  }
  Vec3 out;
  for (int i = 0; i < 3; ++i) out[i] = as_double(value[i], path);
  return out;
}

Vec6 as_vec6(const json& value, const std::string& path) {
  if (!value.is_array() || value.size() != 6) {
    fail("'" + path + "' must be an array of 6 numbers");
  }
  Vec6 out;
  for (int i = 0; i < 6; ++i) out[i] = as_double(value[i], path);
  return out;
}

void read_workspace(const json& obj, ExperimentConfig& config) {
  check_keys(obj, "workspace", {"center", "side"});
  if (const json* v = find(obj, "center")) {
    config.workspace.center = as_vec3(*v, "workspace.center");
  }
  if (const json* v = find(obj, "side")) {
    config.workspace.side = as_double(*v, "workspace.side");
    if (config.workspace.side <= 0) fail("'workspace.side' must be positive");
  }
}

void read_epm(const json& obj, ExperimentConfig& config) {
  check_keys(obj, "epm",
             {"count", "moment", "plane_offset", "patch_half_extent"});
  if (const json* v = find(obj, "count")) {
    config.epm_count = as_int(*v, "epm.count");
    if (config.epm_count < 1 || config.epm_count > 6) {
      fail("'epm.count' must be between 1 and 6 (one plane per cube face)");
    }
  }
  if (const json* v = find(obj, "moment")) {
    config.moment_magnitude = as_double(*v, "epm.moment");
    if (config.moment_magnitude <= 0) fail("'epm.moment' must be positive");
  }
  if (const json* v = find(obj, "plane_offset")) {
    config.plane_offset = as_double(*v, "epm.plane_offset");
    if (config.plane_offset <= 0) fail("'epm.plane_offset' must be positive");
  }
  if (const json* v = find(obj, "patch_half_extent")) {
    const double extent = as_double(*v, "epm.patch_half_extent");
    if (extent <= 0) fail("'epm.patch_half_extent' must be positive");
    config.patch_half_extent = extent;
  }
}

void read_sensing(const json& obj, ExperimentConfig& config) {
  check_keys(obj, "sensing",
             {"n", "mag_std", "accel_std", "gyro_bias", "norm_mode"});
  if (const json* v = find(obj, "n")) {
    config.n = as_int(*v, "sensing.n");
    if (config.n < 2) {
      fail("'sensing.n' must be at least 2: a single EPM configuration "
           "leaves the pose unobservable");
    }
  }
  if (const json* v = find(obj, "mag_std")) {
    config.noise.mag_std = as_double(*v, "sensing.mag_std");
    if (config.noise.mag_std < 0) fail("'sensing.mag_std' must be >= 0");
  }
  if (const json* v = find(obj, "accel_std")) {
    config.noise.accel_std = as_double(*v, "sensing.accel_std");
    if (config.noise.accel_std < 0) fail("'sensing.accel_std' must be >= 0");
  }
  if (const json* v = find(obj, "gyro_bias")) {
    config.noise.gyro_bias = as_vec3(*v, "sensing.gyro_bias");
  }
  if (const json* v = find(obj, "norm_mode")) {
    if (!v->is_string()) fail("'sensing.norm_mode' must be a string");
    const std::string mode = v->get<std::string>();
    if (mode == "from_noisy_field") {
      config.norm_mode = NormSynthesis::kFromNoisyField;
    } else if (mode == "independent_noise") {
      config.norm_mode = NormSynthesis::kIndependentNoise;
    } else {
      fail("'sensing.norm_mode' must be 'from_noisy_field' or "
           "'independent_noise'");
    }
  }
}

void read_ekf(const json& obj, ExperimentConfig& config) {
  check_keys(obj, "ekf",
             {"initial_covariance", "process_noise", "timestep", "norm_scale",
              "mag_floor", "accel_floor", "max_condition", "block_diagonal"});
  if (const json* v = find(obj, "initial_covariance")) {
    const Vec6 diag = as_vec6(*v, "ekf.initial_covariance");
    if ((diag.array() <= 0).any()) {
      fail("'ekf.initial_covariance' entries must be positive");
    }
    config.filter.initial_covariance = diag.asDiagonal();
  }
  if (const json* v = find(obj, "process_noise")) {
    const Vec6 diag = as_vec6(*v, "ekf.process_noise");
    if ((diag.array() < 0).any()) {
      fail("'ekf.process_noise' entries must be >= 0");
    }
    config.filter.process_noise = diag.asDiagonal();
  }
  if (const json* v = find(obj, "timestep")) {
    config.filter.timestep = as_double(*v, "ekf.timestep");
    if (config.filter.timestep <= 0) fail("'ekf.timestep' must be positive");
  }
  if (const json* v = find(obj, "norm_scale")) {
    config.filter.noise_model.norm_scale = as_double(*v, "ekf.norm_scale");
    if (config.filter.noise_model.norm_scale <= 0) {
      fail("'ekf.norm_scale' must be positive");
    }
  }
  if (const json* v = find(obj, "mag_floor")) {
    config.filter.noise_model.mag_floor = as_double(*v, "ekf.mag_floor");
    if (config.filter.noise_model.mag_floor <= 0) {
      fail("'ekf.mag_floor' must be positive");
    }
  }
  if (const json* v = find(obj, "accel_floor")) {
    config.filter.noise_model.accel_floor = as_double(*v, "ekf.accel_floor");
    if (config.filter.noise_model.accel_floor <= 0) {
      fail("'ekf.accel_floor' must be positive");
    }
  }
  if (const json* v = find(obj, "max_condition")) {
    config.filter.max_innovation_condition =
        as_double(*v, "ekf.max_condition");
    if (config.filter.max_innovation_condition <= 1) {
      fail("'ekf.max_condition' must exceed 1");
    }
  }
  if (const json* v = find(obj, "block_diagonal")) {
    config.filter.block_diagonal_covariance =
        as_bool(*v, "ekf.block_diagonal");
  }
}

void read_sim(const json& obj, ExperimentConfig& config) {
  check_keys(obj, "sim",
             {"trials", "max_iterations", "pos_tol", "orient_tol",
              "hold_steps", "seed"});
  if (const json* v = find(obj, "trials")) {
    config.trials = as_int(*v, "sim.trials");
    if (config.trials < 1) fail("'sim.trials' must be at least 1");
  }
  if (const json* v = find(obj, "max_iterations")) {
    config.criteria.max_iterations = as_int(*v, "sim.max_iterations");
    if (config.criteria.max_iterations < 1) {
      fail("'sim.max_iterations' must be at least 1");
    }
  }
  if (const json* v = find(obj, "pos_tol")) {
    config.criteria.pos_tol_per_axis = as_double(*v, "sim.pos_tol");
    if (config.criteria.pos_tol_per_axis <= 0) {
      fail("'sim.pos_tol' must be positive");
    }
  }
  if (const json* v = find(obj, "orient_tol")) {
    config.criteria.orient_tol_trace = as_double(*v, "sim.orient_tol");
    if (config.criteria.orient_tol_trace <= 0) {
      fail("'sim.orient_tol' must be positive");
    }
  }
  if (const json* v = find(obj, "hold_steps")) {
    config.criteria.hold_steps = as_int(*v, "sim.hold_steps");
    if (config.criteria.hold_steps < 1) {
      fail("'sim.hold_steps' must be at least 1");
    }
  }
  if (const json* v = find(obj, "seed")) {
    config.seed = as_seed(*v, "sim.seed");
  }
}

void read_whitening(const json& obj, ExperimentConfig& config) {
  check_keys(obj, "whitening", {"mag_std", "accel_std"});
  if (const json* v = find(obj, "mag_std")) {
    config.whitening.mag_std = as_double(*v, "whitening.mag_std");
    if (config.whitening.mag_std <= 0) {
      fail("'whitening.mag_std' must be positive");
    }
  }
  if (const json* v = find(obj, "accel_std")) {
    config.whitening.accel_std = as_double(*v, "whitening.accel_std");
    if (config.whitening.accel_std <= 0) {
      fail("'whitening.accel_std' must be positive");
    }
  }
}

bool blank(const std::string& text) {
  for (const char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

}  // namespace

ExperimentConfig parse_config(const std::string& text) {
  ExperimentConfig config;
  if (blank(text)) return config;  // empty document means all defaults

  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& error) {
    throw ConfigError(ConfigError::Kind::kParse, error.what());
  }
  if (!root.is_object()) {
    fail("config must be a JSON object of sections");
  }

  check_keys(root, "",
             {"workspace", "epm", "sensing", "ekf", "sim", "whitening"});
  if (const json* section = find_section(root, "workspace")) {
    read_workspace(*section, config);
  }
  if (const json* section = find_section(root, "epm")) {
    read_epm(*section, config);
  }
  if (const json* section = find_section(root, "sensing")) {
    read_sensing(*section, config);
  }
  if (const json* section = find_section(root, "ekf")) {
    read_ekf(*section, config);
  }
  if (const json* section = find_section(root, "sim")) {
    read_sim(*section, config);
  }
  if (const json* section = find_section(root, "whitening")) {
    read_whitening(*section, config);
  }
  return config;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream file(path, std::ios::binary);
  if (!file) {
    throw ConfigError(ConfigError::Kind::kIo,
                      "cannot open config file: " + path);
  }
  std::ostringstream buffer;
  buffer << file.rdbuf();
  if (file.bad()) {
    throw ConfigError(ConfigError::Kind::kIo,
                      "cannot read config file: " + path);
  }
  return parse_config(buffer.str());
}

}  // namespace magloc
