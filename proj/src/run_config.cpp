#include "hokdv/run_config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace hokdv {

EquationParams RunConfig::equation() const {
  return EquationParams::make(n, p, sign, theorem_mode);
}

DataKind RunConfig::kind() const {
  if (data_kind == "gaussian") return DataKind::gaussian;
  if (data_kind == "sech") return DataKind::sech;
  throw std::invalid_argument("unknown data_kind: " + data_kind);
}

std::vector<double> RunConfig::sample_times() const {
  if (sample_count < 2 || t_end <= t_start || t_start <= 0.0) {
    throw std::invalid_argument("invalid sample-time window");
  }
  std::vector<double> times(sample_count);
  const double ratio = std::log(t_end / t_start);
  for (std::size_t k = 0; k < sample_count; ++k) {
    times[k] = t_start * std::exp(ratio * static_cast<double>(k) /
                                  static_cast<double>(sample_count - 1));
  }
  times.back() = t_end;
  return times;
}

std::string RunConfig::to_json() const {
  nlohmann::ordered_json j;
  j["format"] = kRunConfigFormat;
  j["data_center"] = data_center;
  j["data_kind"] = data_kind;
  j["data_width"] = data_width;
  j["domain_length"] = domain_length;
  j["dt"] = dt;
  j["epsilon"] = epsilon;
  j["epsilon_list"] = epsilon_list;
  j["grid_points"] = grid_points;
  j["n"] = n;
  j["p"] = p;
  j["sample_count"] = sample_count;
  j["seed"] = seed;
  j["sign"] = sign;
  j["t_end"] = t_end;
  j["t_start"] = t_start;
  j["theorem_mode"] = theorem_mode;
  return j.dump(2) + "\n";
}

RunConfig RunConfig::from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("config parse error: ") + e.what());
  }
  RunConfig cfg;
  if (j.contains("format") && j.at("format") != kRunConfigFormat) {
    throw std::invalid_argument("unsupported config format");
  }
  auto get = [&j](const char* key, auto& slot) {
    if (j.contains(key)) slot = j.at(key).get<std::decay_t<decltype(slot)>>();
  };
  get("n", cfg.n);
  get("p", cfg.p);
  get("sign", cfg.sign);
  get("theorem_mode", cfg.theorem_mode);
  get("domain_length", cfg.domain_length);
  get("grid_points", cfg.grid_points);
  get("data_kind", cfg.data_kind);
  get("epsilon", cfg.epsilon);
  get("data_center", cfg.data_center);
  get("data_width", cfg.data_width);
  get("t_start", cfg.t_start);
  get("t_end", cfg.t_end);
  get("sample_count", cfg.sample_count);
  get("dt", cfg.dt);
  get("epsilon_list", cfg.epsilon_list);
  get("seed", cfg.seed);
  return cfg;
}

RunConfig RunConfig::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return from_json(buf.str());
}

void RunConfig::save(const std::string& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write config: " + path);
  out << to_json();
}

}  // namespace hokdv
