#include "deflag/harness/config.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "deflag/errors.hpp"

namespace deflag {

std::string to_string(InitMode mode) {
  switch (mode) {
    case InitMode::riemann_oracle: return "riemann_oracle";
    case InitMode::uniform: return "uniform";
    case InitMode::profile: return "profile";
  }
  return "unknown";
}

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

double to_double(const std::string& key, const std::string& v) {
  double out = 0.0;
  const auto* end = v.data() + v.size();
  auto [ptr, ec] = std::from_chars(v.data(), end, out);
  if (ec != std::errc() || ptr != end) throw ConfigError("key '" + key + "': not a number: " + v);
  return out;
}

std::size_t to_count(const std::string& key, const std::string& v) {
  std::size_t out = 0;
  const auto* end = v.data() + v.size();
  auto [ptr, ec] = std::from_chars(v.data(), end, out);
  if (ec != std::errc() || ptr != end) throw ConfigError("key '" + key + "': not a count: " + v);
  return out;
}

bool to_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "on" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "off" || v == "0" || v == "no") return false;
  throw ConfigError("key '" + key + "': not a boolean: " + v);
}

const char* species_suffix[n_species] = {"fuel", "oxidant", "neutral", "product"};

}  // namespace

void CaseConfig::set(const std::string& key, const std::string& raw) {
  const std::string v = trim(raw);
  auto num = [&] { return to_double(key, v); };

  if (key == "n_cells") { n_cells = to_count(key, v); return; }
  if (key == "x_left") { x_left = num(); return; }
  if (key == "x_right") { x_right = num(); return; }
  if (key == "boundary") {
    if (v == "wall") boundary = BoundaryKind::wall;
    else if (v == "periodic") boundary = BoundaryKind::periodic;
    else throw ConfigError("boundary must be wall or periodic");
    return;
  }
  if (key == "gamma") { mixture.gamma = num(); return; }
  if (key == "nu_fuel") { mixture.nu_fuel = num(); return; }
  if (key == "nu_oxidant") { mixture.nu_oxidant = num(); return; }
  if (key == "nu_product") { mixture.nu_product = num(); return; }
  for (std::size_t i = 0; i < n_species; ++i) {
    const std::string s = species_suffix[i];
    if (key == "molar_mass_" + s) { mixture.molar_mass[i] = num(); return; }
    if (key == "formation_enthalpy_" + s) { mixture.formation_enthalpy[i] = num(); return; }
    if (key == "molar_" + s) { molar_right[i] = num(); return; }
  }
  if (key == "scheme") { limiter.scheme = parse_limiter_scheme(v); return; }
  if (key == "zeta_minus") { limiter.zeta_minus = num(); return; }
  if (key == "zeta_plus") { limiter.zeta_plus = num(); return; }
  if (key == "neighbor_policy") { limiter.neighbor_policy = parse_neighbor_policy(v); return; }
  if (key == "s_max") { limiter.s_max = num(); return; }
  if (key == "time_mode") {
    time_mode_auto = v == "auto";
    if (!time_mode_auto) time_mode = parse_time_mode(v);
    return;
  }
  if (key == "epsilon_per_h") { epsilon_per_h = num(); return; }
  if (key == "epsilon") { epsilon = num(); return; }
  if (key == "flame_speed") { flame_speed = num(); return; }
  if (key == "rho_unburnt") { rho_unburnt = num(); return; }
  if (key == "reaction") { reaction = to_bool(key, v); return; }
  if (key == "nonlinear_tol") { correction.nonlinear_tol = num(); return; }
  if (key == "max_iterations") { correction.max_iterations = static_cast<int>(to_count(key, v)); return; }
  if (key == "under_relaxation") { correction.under_relaxation = num(); return; }
  if (key == "cfl") { cfl = num(); return; }
  if (key == "dt") { dt = num(); return; }
  if (key == "t_start") { t_start = num(); return; }
  if (key == "t_end") { t_end = num(); return; }
  if (key == "init") {
    if (v == "riemann_oracle") init = InitMode::riemann_oracle;
    else if (v == "uniform") init = InitMode::uniform;
    else if (v == "profile") init = InitMode::profile;
    else throw ConfigError("init must be riemann_oracle, uniform or profile");
    return;
  }
  if (key == "p_right") { p_right = num(); return; }
  if (key == "T_right") { T_right = num(); return; }
  if (key == "u_left") { u_left = num(); return; }
  if (key == "x0") { x0 = num(); return; }
  if (key == "uniform_rho") { uniform_rho = num(); return; }
  if (key == "uniform_p") { uniform_p = num(); return; }
  if (key == "uniform_u") { uniform_u = num(); return; }
  if (key == "uniform_G") { uniform_G = num(); return; }
  if (key == "profile_path") { profile_path = v; return; }
  if (key == "energy_drift_tol") { energy_drift_tol = num(); return; }
  if (key == "output_every") { output_every = to_count(key, v); return; }
  if (key == "output_dir") { output_dir = v; return; }
  throw ConfigError("unknown configuration key '" + key + "'");
}

TimeMode CaseConfig::effective_time_mode() const {
  if (!time_mode_auto) return time_mode;
  return limiter.scheme == LimiterScheme::upwind ? TimeMode::implicit_upwind
                                                 : TimeMode::explicit_limited;
}

double CaseConfig::effective_epsilon() const {
  return epsilon_per_h > 0.0 ? epsilon_per_h * spacing() : epsilon;
}

ChemStepConfig CaseConfig::chemistry_config(double rho_u) const {
  ChemStepConfig c;
  c.epsilon = effective_epsilon();
  c.flame_speed_product = rho_u * flame_speed;
  c.time_mode = effective_time_mode();
  c.limiter = limiter;
  c.reaction_enabled = reaction;
  return c;
}

void CaseConfig::validate() const {
  if (n_cells < 3) throw ConfigError("n_cells must be at least 3");
  if (!(x_right > x_left)) throw ConfigError("x_right must exceed x_left");
  mixture.validate();
  limiter.validate();
  correction.validate();
  if (!(t_end > t_start)) throw ConfigError("t_end must exceed t_start");
  if (init == InitMode::riemann_oracle && !(t_start > 0.0)) {
    throw ConfigError("oracle initialisation needs t_start > 0");
  }
  if (!(cfl > 0.0)) throw ConfigError("cfl must be positive");
  if (effective_time_mode() == TimeMode::explicit_limited && cfl > 1.0) {
    throw ConfigError("explicit limited transport needs cfl <= 1");
  }
  if (dt < 0.0) throw ConfigError("dt must be non-negative");
  if (!(effective_epsilon() > 0.0)) throw ConfigError("epsilon must be positive");
  if (!(flame_speed >= 0.0)) throw ConfigError("flame_speed must be non-negative");
  if (rho_unburnt < 0.0) throw ConfigError("rho_unburnt must be non-negative");
  double sum = 0.0;
  for (double x : molar_right) {
    if (x < 0.0) throw ConfigError("molar fractions must be non-negative");
    sum += x;
  }
  if (!(sum > 0.0)) throw ConfigError("molar fractions must not all vanish");
  if (init == InitMode::uniform && !(uniform_rho > 0.0 && uniform_p > 0.0)) {
    throw ConfigError("uniform initial state needs positive density and pressure");
  }
  if (init == InitMode::profile && profile_path.empty()) {
    throw ConfigError("init = profile needs profile_path");
  }
  if (!(energy_drift_tol > 0.0)) throw ConfigError("energy_drift_tol must be positive");
}

std::vector<std::pair<std::string, std::string>> CaseConfig::resolved() const {
  std::vector<std::pair<std::string, std::string>> kv;
  auto add = [&](const std::string& k, const std::string& v) { kv.emplace_back(k, v); };
  auto addd = [&](const std::string& k, double v) { kv.emplace_back(k, format_double(v)); };
  add("n_cells", std::to_string(n_cells));
  addd("x_left", x_left);
  addd("x_right", x_right);
  add("boundary", boundary == BoundaryKind::wall ? "wall" : "periodic");
  addd("gamma", mixture.gamma);
  addd("nu_fuel", mixture.nu_fuel);
  addd("nu_oxidant", mixture.nu_oxidant);
  addd("nu_product", mixture.nu_product);
  for (std::size_t i = 0; i < n_species; ++i) {
    addd(std::string("molar_mass_") + species_suffix[i], mixture.molar_mass[i]);
  }
  for (std::size_t i = 0; i < n_species; ++i) {
    addd(std::string("formation_enthalpy_") + species_suffix[i], mixture.formation_enthalpy[i]);
  }
  add("scheme", to_string(limiter.scheme));
  addd("zeta_minus", limiter.zeta_minus);
  addd("zeta_plus", limiter.zeta_plus);
  add("neighbor_policy", to_string(limiter.neighbor_policy));
  addd("s_max", limiter.s_max);
  add("time_mode", time_mode_auto ? "auto" : to_string(time_mode));
  addd("epsilon_per_h", epsilon_per_h);
  addd("epsilon", epsilon);
  addd("flame_speed", flame_speed);
  addd("rho_unburnt", rho_unburnt);
  add("reaction", reaction ? "true" : "false");
  addd("nonlinear_tol", correction.nonlinear_tol);
  add("max_iterations", std::to_string(correction.max_iterations));
  addd("under_relaxation", correction.under_relaxation);
  addd("cfl", cfl);
  addd("dt", dt);
  addd("t_start", t_start);
  addd("t_end", t_end);
  add("init", to_string(init));
  addd("p_right", p_right);
  addd("T_right", T_right);
  for (std::size_t i = 0; i < n_species; ++i) {
    addd(std::string("molar_") + species_suffix[i], molar_right[i]);
  }
  addd("u_left", u_left);
  addd("x0", x0);
  addd("uniform_rho", uniform_rho);
  addd("uniform_p", uniform_p);
  addd("uniform_u", uniform_u);
  addd("uniform_G", uniform_G);
  add("profile_path", profile_path);
  addd("energy_drift_tol", energy_drift_tol);
  add("output_every", std::to_string(output_every));
  add("output_dir", output_dir);
  return kv;
}

CaseConfig parse_config(const std::string& text, CaseConfig base) {
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
    }
    base.set(trim(line.substr(0, eq)), line.substr(eq + 1));
  }
  return base;
}

CaseConfig load_config_file(const std::string& path, CaseConfig base) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str(), std::move(base));
}

}  // namespace deflag
