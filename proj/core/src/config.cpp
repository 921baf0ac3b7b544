#include "thermo/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "thermo/error.hpp"

namespace thermo {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::string format_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

double parse_double(std::string_view key, std::string_view text, int line) {
  double x = 0.0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, x);
  if (text.empty() || ec != std::errc{} || ptr != end || !std::isfinite(x)) {
    throw ConfigError(line, "key '" + std::string(key) + "' expects a finite number, got '" + std::string(text) + "'");
  }
  return x;
}

template <class Int>
Int parse_integer(std::string_view key, std::string_view text, int line) {
  Int x{};
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, x);
  if (text.empty() || ec != std::errc{} || ptr != end) {
    throw ConfigError(line, "key '" + std::string(key) + "' expects an integer, got '" + std::string(text) + "'");
  }
  return x;
}

bool parse_bool(std::string_view key, std::string_view text, int line) {
  if (text == "true") return true;
  if (text == "false") return false;
  throw ConfigError(line, "key '" + std::string(key) + "' expects true or false, got '" + std::string(text) + "'");
}

const char* format_bool(bool b) { return b ? "true" : "false"; }

void require(bool ok, int line, const std::string& what) {
  if (!ok) throw ConfigError(line, what);
}

struct Key {
  std::string name;
  std::function<void(RunConfig&, std::string_view, int)> set;
  std::function<std::string(const RunConfig&)> get;
};

const std::vector<Key>& keys() {
  static const std::vector<Key> table = [] {
    std::vector<Key> k;
    auto real = [&](std::string name, auto access, auto check, std::string constraint) {
      k.push_back({name,
                   [=](RunConfig& c, std::string_view v, int line) {
                     const double x = parse_double(name, v, line);
                     require(check(x), line, name + " " + constraint);
                     access(c) = x;
                   },
                   [=](const RunConfig& c) { return format_double(access(c)); }});
    };
    auto positive = [](double x) { return x > 0.0; };
    auto nonnegative = [](double x) { return x >= 0.0; };
    auto any = [](double) { return true; };
    auto boolean = [&](std::string name, auto access) {
      k.push_back({name,
                   [=](RunConfig& c, std::string_view v, int line) { access(c) = parse_bool(name, v, line); },
                   [=](const RunConfig& c) { return std::string(format_bool(access(c))); }});
    };

    k.push_back({"d",
                 [](RunConfig& c, std::string_view v, int line) {
                   const int d = parse_integer<int>("d", v, line);
                   require(d == 2 || d == 3, line, "d must be 2 or 3");
                   c.scenario.d = d;
                 },
                 [](const RunConfig& c) { return std::to_string(c.scenario.d); }});
    k.push_back({"n",
                 [](RunConfig& c, std::string_view v, int line) {
                   const int n = parse_integer<int>("n", v, line);
                   require(n >= 4 && n % 2 == 0, line, "n must be even and >= 4");
                   c.scenario.n = n;
                 },
                 [](const RunConfig& c) { return std::to_string(c.scenario.n); }});
    real("length", [](auto& c) -> auto& { return c.scenario.length; }, positive, "must be > 0");
    real("mu", [](auto& c) -> auto& { return c.mu; }, positive,
         "must be > 0 (the coupling constant is positive)");
    k.push_back({"operator",
                 [](RunConfig& c, std::string_view v, int line) {
                   try {
                     c.scenario.operator_kind = operator_kind_from_string(std::string(v));
                   } catch (const InvalidArgument& e) {
                     throw ConfigError(line, e.what());
                   }
                 },
                 [](const RunConfig& c) { return to_string(c.scenario.operator_kind); }});
    real("zeta", [](auto& c) -> auto& { return c.lame.zeta; }, positive, "must be > 0");
    real("lambda", [](auto& c) -> auto& { return c.lame.lambda; }, any, "");
    real("dt", [](auto& c) -> auto& { return c.stepper.dt; }, positive, "must be > 0");
    real("t_end", [](auto& c) -> auto& { return c.stepper.t_end; }, nonnegative, "must be >= 0");
    real("positivity_floor", [](auto& c) -> auto& { return c.stepper.positivity_floor; }, positive,
         "must be > 0");
    k.push_back({"record_every",
                 [](RunConfig& c, std::string_view v, int line) {
                   const int r = parse_integer<int>("record_every", v, line);
                   require(r >= 1, line, "record_every must be >= 1");
                   c.stepper.record_every = r;
                 },
                 [](const RunConfig& c) { return std::to_string(c.stepper.record_every); }});
    boolean("dealias", [](auto& c) -> auto& { return c.stepper.dealias; });
    boolean("clamp_theta", [](auto& c) -> auto& { return c.stepper.clamp_theta; });
    k.push_back({"scenario",
                 [](RunConfig& c, std::string_view v, int line) {
                   ScenarioSpec probe = c.scenario;
                   probe.name = std::string(v);
                   const auto& names = scenario_names();
                   require(std::find(names.begin(), names.end(), probe.base_name()) != names.end(), line,
                           "unknown scenario '" + probe.name + "'");
                   c.scenario.name = probe.name;
                 },
                 [](const RunConfig& c) { return c.scenario.name; }});
    real("epsilon", [](auto& c) -> auto& { return c.scenario.epsilon; }, nonnegative,
         "must be >= 0");
    real("theta_baseline", [](auto& c) -> auto& { return c.scenario.theta_baseline; }, positive,
         "must be > 0");
    k.push_back({"seed",
                 [](RunConfig& c, std::string_view v, int line) {
                   c.scenario.seed = parse_integer<std::uint64_t>("seed", v, line);
                 },
                 [](const RunConfig& c) { return std::to_string(c.scenario.seed); }});
    k.push_back({"output_dir",
                 [](RunConfig& c, std::string_view v, int) { c.output_dir = std::string(v); },
                 [](const RunConfig& c) { return c.output_dir; }});
    boolean("deterministic", [](auto& c) -> auto& { return c.deterministic; });
    boolean("identity_residual", [](auto& c) -> auto& { return c.identity_residual; });
    real("dt_micro", [](auto& c) -> auto& { return c.dt_micro; }, nonnegative, "must be >= 0");
    k.push_back({"oracle_n",
                 [](RunConfig& c, std::string_view v, int line) {
                   const int n = parse_integer<int>("oracle_n", v, line);
                   require(n >= 0, line, "oracle_n must be >= 0");
                   c.oracle.n = n;
                 },
                 [](const RunConfig& c) { return std::to_string(c.oracle.n); }});
    real("oracle_rtol", [](auto& c) -> auto& { return c.oracle.rtol; }, positive, "must be > 0");
    real("oracle_atol", [](auto& c) -> auto& { return c.oracle.atol; }, positive, "must be > 0");
    real("oracle_tolerance", [](auto& c) -> auto& { return c.oracle.tolerance; }, nonnegative,
         "must be >= 0");
    return k;
  }();
  return table;
}

const Key* find_key(std::string_view name) {
  const auto& table = keys();
  const auto it = std::find_if(table.begin(), table.end(), [&](const Key& k) { return k.name == name; });
  return it == table.end() ? nullptr : &*it;
}

}  // namespace

ModelParams RunConfig::model_params() const {
  ModelParams p = ModelParams::laplacian(mu);
  if (scenario.effective_operator() == OperatorKind::Lame) p = ModelParams::lame_operator(mu, lame.zeta, lame.lambda);
  return p;
}

RecorderOptions RunConfig::recorder_options() const {
  RecorderOptions o;
  o.identity_residual = identity_residual;
  o.dt_micro = dt_micro > 0.0 ? dt_micro : 0.1 * stepper.dt;
  o.dealias = stepper.dealias;
  return o;
}

void RunConfig::validate() const {
  try {
    if (!(mu > 0.0)) throw InvalidArgument("mu must be > 0 (the coupling constant is positive)");
    model_params().validate(scenario.d);
    stepper.validate();
    scenario.validate();
    if (!(dt_micro >= 0.0)) throw InvalidArgument("dt_micro must be >= 0");
    if (output_dir.find_first_of("#\n\r") != std::string::npos) {
      throw InvalidArgument("output_dir must not contain '#' or line breaks");
    }
    if (output_dir != trim(output_dir)) throw InvalidArgument("output_dir must not have surrounding blanks");
    if (oracle.n < 0 || !(oracle.rtol > 0.0) || !(oracle.atol > 0.0) || !(oracle.tolerance >= 0.0)) {
      throw InvalidArgument("invalid oracle settings");
    }
  } catch (const InvalidArgument& e) {
    throw ConfigError(0, e.what());
  }
}

bool RunConfig::operator==(const RunConfig& o) const {
  const auto& a = stepper;
  const auto& b = o.stepper;
  const bool same_stepper = a.dt == b.dt && a.t_end == b.t_end && a.positivity_floor == b.positivity_floor &&
                            a.record_every == b.record_every && a.dealias == b.dealias &&
                            a.clamp_theta == b.clamp_theta;
  return mu == o.mu && lame.zeta == o.lame.zeta && lame.lambda == o.lame.lambda && same_stepper &&
         scenario == o.scenario && output_dir == o.output_dir && deterministic == o.deterministic &&
         identity_residual == o.identity_residual && dt_micro == o.dt_micro && oracle == o.oracle;
}

void apply_setting(RunConfig& cfg, std::string_view key, std::string_view value, int line) {
  const Key* k = find_key(key);
  if (k == nullptr) throw ConfigError(line, "unknown key '" + std::string(key) + "'");
  k->set(cfg, value, line);
}

RunConfig parse_config(std::string_view text) {
  RunConfig cfg;
  std::map<std::string, int> seen;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    std::string_view line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ConfigError(line_no, "expected 'key = value'");
    const auto key = trim(line.substr(0, eq));
    const auto value = trim(line.substr(eq + 1));
    if (key.empty()) throw ConfigError(line_no, "missing key before '='");
    if (find_key(key) == nullptr) throw ConfigError(line_no, "unknown key '" + std::string(key) + "'");
    if (const auto it = seen.find(std::string(key)); it != seen.end()) {
      throw ConfigError(line_no, "duplicate key '" + std::string(key) + "' (first set on line " +
                                     std::to_string(it->second) + ")");
    }
    seen.emplace(std::string(key), line_no);
    apply_setting(cfg, key, value, line_no);
  }
  try {
    cfg.validate();
  } catch (const ConfigError& e) {
    // Cross-key constraints are attributed to the last line that set any key.
    int last = 0;
    for (const auto& [k, l] : seen) last = std::max(last, l);
    throw ConfigError(last, e.what());
  }
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open config '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

std::string serialize_config(const RunConfig& cfg) {
  std::string out;
  for (const auto& k : keys()) out += k.name + " = " + k.get(cfg) + "\n";
  return out;
}

const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> n;
    for (const auto& k : keys()) n.push_back(k.name);
    return n;
  }();
  return names;
}

}  // namespace thermo
