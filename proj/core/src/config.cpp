#include "catk/config.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "catk/errors.hpp"

namespace catk {

namespace {

using nlohmann::json;

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return {};
  const auto b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(trim(item));
  return out;
}

/// Flat key = value parse into a dotted-key map.
std::map<std::string, std::string> parse_kv(const std::string& text) {
  std::map<std::string, std::string> kv;
  std::stringstream ss(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(ss, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
    kv[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }
  return kv;
}

/// Flatten a JSON object into the same dotted-key map.
void flatten(const json& j, const std::string& prefix,
             std::map<std::string, std::string>& kv) {
  if (j.is_object()) {
    for (const auto& [k, v] : j.items())
      flatten(v, prefix.empty() ? k : prefix + "." + k, kv);
    return;
  }
  if (j.is_array()) {
    std::string s;
    for (std::size_t i = 0; i < j.size(); ++i) {
      if (i) s += ",";
      if (j[i].is_string())
        s += j[i].get<std::string>();
      else
        s += j[i].dump();
    }
    kv[prefix] = s;
    return;
  }
  if (j.is_string())
    kv[prefix] = j.get<std::string>();
  else
    kv[prefix] = j.dump();
}

double to_double(const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    const double d = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return d;
  } catch (const std::exception&) {
    throw ConfigError("bad numeric value for " + key + ": '" + v + "'");
  }
}

std::int64_t to_int(const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    const long long i = std::stoll(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return i;
  } catch (const std::exception&) {
    throw ConfigError("bad integer value for " + key + ": '" + v + "'");
  }
}

bool to_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw ConfigError("bad boolean value for " + key + ": '" + v + "'");
}

std::vector<double> to_doubles(const std::string& key, const std::string& v) {
  std::vector<double> out;
  for (const auto& part : split(v, ','))
    if (!part.empty()) out.push_back(to_double(key, part));
  return out;
}

std::vector<std::int64_t> to_ints(const std::string& key, const std::string& v) {
  std::vector<std::int64_t> out;
  for (const auto& part : split(v, ','))
    if (!part.empty()) out.push_back(to_int(key, part));
  return out;
}

ExperimentConfig from_kv(const std::map<std::string, std::string>& kv) {
  ExperimentConfig cfg;
  for (const auto& [key, val] : kv) {
    if (key == "space.kappa") cfg.kappa = to_double(key, val);
    else if (key == "space.dim") cfg.dim = static_cast<int>(to_int(key, val));
    else if (key == "ball.center") cfg.center = to_doubles(key, val);
    else if (key == "ball.radius") cfg.radius = to_double(key, val);
    else if (key == "map.kind") cfg.map_kind = val;
    else if (key == "map.rho") cfg.rho = to_double(key, val);
    else if (key == "map.angle") cfg.angle = to_double(key, val);
    else if (key == "map.anchor") cfg.anchor = to_doubles(key, val);
    else if (key == "map.start") cfg.start = to_doubles(key, val);
    else if (key == "schedule.kind") cfg.schedule_kind = val;
    else if (key == "schedule.lambda") cfg.lambda_kind = val;
    else if (key == "schedule.lambda_value") cfg.lambda_value = to_double(key, val);
    else if (key == "schedule.alpha_power") cfg.alpha_power = static_cast<int>(to_int(key, val));
    else if (key == "schedule.alpha_scale") cfg.alpha_scale = to_double(key, val);
    else if (key == "schedule.gamma_power") cfg.gamma_power = static_cast<int>(to_int(key, val));
    else if (key == "schedule.gamma_scale") cfg.gamma_scale = to_double(key, val);
    else if (key == "schedule.theta") cfg.theta_kind = val;
    else if (key == "schedule.theta_a") cfg.theta_a = to_int(key, val);
    else if (key == "schedule.theta_b") cfg.theta_b = to_int(key, val);
    else if (key == "schedule.theta_exponent") cfg.theta_exponent = static_cast<unsigned>(to_int(key, val));
    else if (key == "schedule.theta_shift") cfg.theta_shift = static_cast<unsigned>(to_int(key, val));
    else if (key == "epsilons") cfg.epsilons = to_doubles(key, val);
    else if (key == "g.kind") cfg.g_kind = val;
    else if (key == "g.c") cfg.g_c = to_int(key, val);
    else if (key == "g.a") cfg.g_a = to_int(key, val);
    else if (key == "g.b") cfg.g_b = to_int(key, val);
    else if (key == "g.values") cfg.g_values = to_ints(key, val);
    else if (key == "g.beyond") cfg.g_beyond = to_int(key, val);
    else if (key == "seed") cfg.seed = static_cast<std::uint64_t>(to_int(key, val));
    else if (key == "horizon") cfg.horizon = static_cast<std::uint64_t>(to_int(key, val));
    else if (key == "fuzz.accepted") cfg.fuzz_accepted = static_cast<std::uint64_t>(to_int(key, val));
    else if (key == "fuzz.oracles") cfg.oracles = split(val, ',');
    else if (key == "fuzz.kappas") cfg.fuzz_kappas = to_doubles(key, val);
    else if (key == "fuzz.msk") cfg.fuzz_msk = to_doubles(key, val);
    else if (key == "fuzz.trace_steps") cfg.fuzz_trace_steps = static_cast<std::uint64_t>(to_int(key, val));
    else if (key == "bigcount.digit_budget") cfg.digit_budget = to_int(key, val);
    else if (key == "bigcount.log_estimate") cfg.log_estimate = to_bool(key, val);
    else if (key == "browder.tol_scale") cfg.browder_tol_scale = to_double(key, val);
    else if (key == "browder.imax") cfg.browder_imax = static_cast<std::uint64_t>(to_int(key, val));
    else if (key == "out.dir") cfg.out_dir = val;
    else throw ConfigError("unknown configuration key: " + key);
  }
  return cfg;
}

} // namespace

ExperimentConfig parse_config_text(const std::string& text) {
  const std::string t = trim(text);
  if (!t.empty() && t.front() == '{') {
    json j;
    try {
      j = json::parse(t);
    } catch (const std::exception& e) {
      throw ConfigError(std::string("bad JSON configuration: ") + e.what());
    }
    std::map<std::string, std::string> kv;
    flatten(j, "", kv);
    return from_kv(kv);
  }
  return from_kv(parse_kv(text));
}

ExperimentConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open configuration file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str());
}

Curvature make_curvature(const ExperimentConfig& cfg) {
  return Curvature(cfg.kappa, cfg.dim);
}

ConvexBall make_ball(const ExperimentConfig& cfg) {
  const Curvature c = make_curvature(cfg);
  Eigen::VectorXd center(c.ambient_dim());
  if (cfg.center.empty()) {
    center.setZero();
    center[c.ambient_dim() - 1] = 1.0;
  } else {
    if (static_cast<int>(cfg.center.size()) != c.ambient_dim())
      throw ConfigError("ball.center has the wrong dimension");
    for (int i = 0; i < c.ambient_dim(); ++i) center[i] = cfg.center[i];
    center /= center.norm();
  }
  return ConvexBall(ModelPoint(center), cfg.radius, c);
}

namespace {

/// A point inside the ball at `fraction` of the radius along tangent axis k.
ModelPoint offset_point(const ConvexBall& ball, double fraction, int axis) {
  const int ambient = ball.curv.ambient_dim();
  Eigen::VectorXd t(ambient);
  t.setZero();
  t[axis % ambient] = 1.0;
  t -= t.dot(ball.center.direction) * ball.center.direction;
  if (t.norm() < 1e-9) {
    t.setZero();
    t[(axis + 1) % ambient] = 1.0;
    t -= t.dot(ball.center.direction) * ball.center.direction;
  }
  t /= t.norm();
  const double a = fraction * ball.radius * ball.curv.sqrt_kappa();
  Eigen::VectorXd dir = std::cos(a) * ball.center.direction + std::sin(a) * t;
  return ModelPoint(dir / dir.norm());
}

ModelPoint point_from(const ConvexBall& ball, const std::vector<double>& coords,
                      const char* what) {
  if (static_cast<int>(coords.size()) != ball.curv.ambient_dim())
    throw ConfigError(std::string(what) + " has the wrong dimension");
  Eigen::VectorXd v(ball.curv.ambient_dim());
  for (int i = 0; i < ball.curv.ambient_dim(); ++i) v[i] = coords[i];
  ModelPoint p = make_point_normalized(v);
  if (!ball.contains(p)) throw ConfigError(std::string(what) + " lies outside the ball");
  return p;
}

} // namespace

NonexpansiveMap make_map(const ExperimentConfig& cfg) {
  const ConvexBall ball = make_ball(cfg);
  if (cfg.map_kind == "rotation") return NonexpansiveMap::rotation(ball, cfg.angle);
  if (cfg.map_kind == "pull") {
    const ModelPoint anchor = cfg.anchor.empty()
                                  ? offset_point(ball, 0.6, 0)
                                  : point_from(ball, cfg.anchor, "map.anchor");
    return NonexpansiveMap::geodesic_pull(ball, anchor, cfg.rho);
  }
  if (cfg.map_kind == "composition") {
    std::vector<NonexpansiveMap> fs;
    fs.push_back(NonexpansiveMap::rotation(ball, cfg.angle));
    fs.push_back(NonexpansiveMap::geodesic_pull(ball, ball.center, cfg.rho));
    return NonexpansiveMap::composition(ball, std::move(fs));
  }
  throw ConfigError("unknown map.kind: " + cfg.map_kind);
}

ModelPoint make_start(const ExperimentConfig& cfg) {
  const ConvexBall ball = make_ball(cfg);
  if (cfg.start.empty()) return offset_point(ball, 0.8, 1);
  return point_from(ball, cfg.start, "map.start");
}

ModuliSchedule make_schedule(const ExperimentConfig& cfg) {
  if (cfg.schedule_kind == "harmonic") return harmonic_schedule();
  if (cfg.schedule_kind == "sqrt") return sqrt_schedule();
  if (cfg.schedule_kind != "custom")
    throw ConfigError("unknown schedule.kind: " + cfg.schedule_kind);

  std::function<double(std::uint64_t)> lambda;
  if (cfg.lambda_kind == "harmonic")
    lambda = [](std::uint64_t n) { return 1.0 / static_cast<double>(n + 1); };
  else if (cfg.lambda_kind == "inv_sqrt")
    lambda = [](std::uint64_t n) { return 1.0 / std::sqrt(static_cast<double>(n + 1)); };
  else if (cfg.lambda_kind == "constant") {
    const double v = cfg.lambda_value;
    if (!(v >= 0.0 && v <= 1.0)) throw ConfigError("schedule.lambda_value outside [0,1]");
    lambda = [v](std::uint64_t) { return v; };
  } else {
    throw ConfigError("unknown schedule.lambda: " + cfg.lambda_kind);
  }

  ThetaFn theta = ThetaFn::identity();
  if (cfg.theta_kind == "pow4") theta = ThetaFn::pow_base(4, 1);
  else if (cfg.theta_kind == "identity") theta = ThetaFn::identity();
  else if (cfg.theta_kind == "linear") theta = ThetaFn::linear(BigInt(cfg.theta_a), BigInt(cfg.theta_b));
  else if (cfg.theta_kind == "poly") theta = ThetaFn::poly(cfg.theta_exponent, cfg.theta_shift);
  else throw ConfigError("unknown schedule.theta: " + cfg.theta_kind);

  return custom_schedule("custom", std::move(lambda),
                         Modulus::ceil_inv_pow(cfg.alpha_power, cfg.alpha_scale),
                         Modulus::ceil_inv_pow(cfg.gamma_power, cfg.gamma_scale),
                         std::move(theta));
}

GFunction make_g(const ExperimentConfig& cfg) {
  if (cfg.g_kind == "constant") return GFunction::constant(BigInt(cfg.g_c));
  if (cfg.g_kind == "affine") return GFunction::affine(BigInt(cfg.g_a), BigInt(cfg.g_b));
  if (cfg.g_kind == "table") {
    std::vector<BigInt> vals;
    for (auto v : cfg.g_values) vals.emplace_back(v);
    return GFunction::table(std::move(vals), BigInt(cfg.g_beyond));
  }
  throw ConfigError("unknown g.kind: " + cfg.g_kind);
}

EvalPolicy make_policy(const ExperimentConfig& cfg) {
  EvalPolicy p;
  p.digit_budget = cfg.digit_budget;
  p.force_estimate = cfg.log_estimate;
  return p;
}

} // namespace catk
