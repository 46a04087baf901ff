#include "config.hpp"

#include <algorithm>
#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>

namespace pathfunc::cli {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double to_double(const std::string& key, const std::string& v) {
  const std::string s = trim(v);
  if (s == "inf" || s == "+inf") return INFINITY;
  if (s == "-inf") return -INFINITY;
  char* end = nullptr;
  errno = 0;
  const double d = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size() || errno == ERANGE || std::isnan(d)) {
    throw ConfigError(key, "expected a number, got '" + v + "'");
  }
  return d;
}

std::uint64_t to_unsigned(const std::string& key, const std::string& v) {
  const std::string s = trim(v);
  if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos) {
    throw ConfigError(key, "expected a nonnegative integer, got '" + v + "'");
  }
  errno = 0;
  const unsigned long long u = std::strtoull(s.c_str(), nullptr, 10);
  if (errno == ERANGE) throw ConfigError(key, "integer out of range");
  return u;
}

bool to_bool(const std::string& key, const std::string& v) {
  const std::string s = trim(v);
  if (s == "true" || s == "1" || s == "yes") return true;
  if (s == "false" || s == "0" || s == "no") return false;
  throw ConfigError(key, "expected true or false, got '" + v + "'");
}

std::vector<double> to_list(const std::string& key, const std::string& v) {
  std::vector<double> out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(to_double(key, item));
  if (out.empty()) throw ConfigError(key, "expected a comma-separated list");
  return out;
}

std::string fmt(double d) {
  if (std::isinf(d)) return d > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", d);
  return buf;
}

std::string fmt_list(const std::vector<double>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + fmt(v[i]);
  return s;
}

using Setter = std::function<void(RunConfig&, const std::string& key, const std::string& value)>;

const std::map<std::string, Setter>& setters() {
  static const std::map<std::string, Setter> table = [] {
    std::map<std::string, Setter> t;
    auto real = [&t](const std::string& key, auto proj) {
      t[key] = [proj](RunConfig& c, const std::string& k, const std::string& v) { proj(c) = to_double(k, v); };
    };
    auto count = [&t](const std::string& key, auto proj) {
      t[key] = [proj](RunConfig& c, const std::string& k, const std::string& v) {
        proj(c) = static_cast<std::size_t>(to_unsigned(k, v));
      };
    };
    auto choice = [&t](const std::string& key, auto proj, std::initializer_list<const char*> allowed) {
      std::vector<const char*> a(allowed);
      t[key] = [proj, a](RunConfig& c, const std::string& k, const std::string& v) {
        for (const char* x : a) {
          if (v == x) {
            proj(c) = v;
            return;
          }
        }
        std::string msg = "unknown value '" + v + "' (expected one of:";
        for (const char* x : a) msg += std::string(" ") + x;
        throw ConfigError(k, msg + ")");
      };
    };
    auto flag = [&t](const std::string& key, auto proj) {
      t[key] = [proj](RunConfig& c, const std::string& k, const std::string& v) { proj(c) = to_bool(k, v); };
    };
    auto list = [&t](const std::string& key, auto proj) {
      t[key] = [proj](RunConfig& c, const std::string& k, const std::string& v) { proj(c) = to_list(k, v); };
    };

    choice("model.kind", [](RunConfig& c) -> auto& { return c.model.kind; },
           {"gbm", "bessel3", "stoch_vol", "constant"});
    real("model.x0", [](RunConfig& c) -> auto& { return c.model.x0; });
    real("model.r", [](RunConfig& c) -> auto& { return c.model.r; });
    real("model.sigma", [](RunConfig& c) -> auto& { return c.model.sigma; });
    real("model.epsilon", [](RunConfig& c) -> auto& { return c.model.epsilon; });
    real("model.y0", [](RunConfig& c) -> auto& { return c.model.y0; });
    real("model.rho", [](RunConfig& c) -> auto& { return c.model.rho; });
    real("model.mu", [](RunConfig& c) -> auto& { return c.model.mu; });
    real("model.vol_of_vol", [](RunConfig& c) -> auto& { return c.model.vol_of_vol; });
    choice("model.sigma_fn", [](RunConfig& c) -> auto& { return c.model.sigma_fn; },
           {"constant", "linear", "sqrt"});
    real("model.drift", [](RunConfig& c) -> auto& { return c.model.drift; });
    real("model.diffusion", [](RunConfig& c) -> auto& { return c.model.diffusion; });

    choice("scheme.kind", [](RunConfig& c) -> auto& { return c.scheme.kind; },
           {"euler", "binomial_fixed", "binomial_variable", "log_exact", "tangency"});
    real("scheme.h", [](RunConfig& c) -> auto& { return c.scheme.h; });
    t["scheme.cap"] = [](RunConfig& c, const std::string& k, const std::string& v) {
      if (trim(v) == "1/h") {
        c.scheme.cap.reset();
        c.scheme.cap_inverse_h = true;
      } else {
        c.scheme.cap = to_double(k, v);
        c.scheme.cap_inverse_h = false;
      }
    };
    real("scheme.qu_lower", [](RunConfig& c) -> auto& { return c.scheme.qu_lower; });
    real("scheme.qu_upper", [](RunConfig& c) -> auto& { return c.scheme.qu_upper; });
    real("scheme.consistency_c", [](RunConfig& c) -> auto& { return c.scheme.consistency_c; });

    count("functional.coordinate", [](RunConfig& c) -> auto& { return c.functional.coordinate; });
    count("functional.m", [](RunConfig& c) -> auto& { return c.functional.m; });
    real("functional.lower", [](RunConfig& c) -> auto& { return c.functional.lower; });
    real("functional.upper", [](RunConfig& c) -> auto& { return c.functional.upper; });

    choice("payoff.kind", [](RunConfig& c) -> auto& { return c.payoff.kind; },
           {"up_in_call", "discrete_barrier_call", "custom_terminal", "hitting_time"});
    real("payoff.strike", [](RunConfig& c) -> auto& { return c.payoff.strike; });
    real("payoff.barrier", [](RunConfig& c) -> auto& { return c.payoff.barrier; });
    real("payoff.rate", [](RunConfig& c) -> auto& { return c.payoff.rate; });
    real("payoff.value", [](RunConfig& c) -> auto& { return c.payoff.value; });
    choice("payoff.terminal", [](RunConfig& c) -> auto& { return c.payoff.terminal; },
           {"value", "call", "put", "constant"});

    count("run.n_paths", [](RunConfig& c) -> auto& { return c.run.n_paths; });
    t["run.seed"] = [](RunConfig& c, const std::string& k, const std::string& v) { c.run.seed = to_unsigned(k, v); };
    count("run.workers", [](RunConfig& c) -> auto& { return c.run.workers; });
    list("run.h_grid", [](RunConfig& c) -> auto& { return c.run.h_grid; });
    t["run.oracle"] = [](RunConfig& c, const std::string& k, const std::string& v) {
      const std::string s = trim(v);
      if (s != "reflection" && s != "none") (void)to_double(k, s);
      c.run.oracle = s;
    };
    real("run.bias_c", [](RunConfig& c) -> auto& { return c.run.bias_c; });
    flag("run.ui_override", [](RunConfig& c) -> auto& { return c.run.ui_override; });
    count("run.ui_paths", [](RunConfig& c) -> auto& { return c.run.ui_paths; });
    count("run.n_draws", [](RunConfig& c) -> auto& { return c.run.n_draws; });
    list("run.probe_y", [](RunConfig& c) -> auto& { return c.run.probe_y; });
    list("run.probe_t", [](RunConfig& c) -> auto& { return c.run.probe_t; });

    choice("output.format", [](RunConfig& c) -> auto& { return c.output.format; }, {"table", "csv"});
    t["output.path"] = [](RunConfig& c, const std::string& k, const std::string& v) {
      if (trim(v).empty()) throw ConfigError(k, "empty path");
      c.output.path = trim(v);
    };
    flag("output.timing", [](RunConfig& c) -> auto& { return c.output.timing; });
    return t;
  }();
  return table;
}

void require_positive(const std::string& key, const std::optional<double>& v) {
  if (v && !(*v > 0.0)) throw ConfigError(key, "must be positive");
}

void check_ranges(const RunConfig& c) {
  require_positive("scheme.h", c.scheme.h);
  require_positive("scheme.cap", c.scheme.cap);
  require_positive("scheme.qu_lower", c.scheme.qu_lower);
  require_positive("scheme.qu_upper", c.scheme.qu_upper);
  if (c.scheme.consistency_c && *c.scheme.consistency_c < 0.0) throw ConfigError("scheme.consistency_c", "must be nonnegative");
  require_positive("model.x0", c.model.kind != std::optional<std::string>("constant") ? c.model.x0 : std::nullopt);
  require_positive("model.y0", c.model.y0);
  if (c.model.sigma && *c.model.sigma < 0.0) throw ConfigError("model.sigma", "must be nonnegative");
  if (c.model.epsilon && !(*c.model.epsilon > 0.0 && *c.model.epsilon < 1.0)) {
    throw ConfigError("model.epsilon", "must lie in (0,1)");
  }
  if (c.model.rho && !(std::abs(*c.model.rho) <= 1.0)) throw ConfigError("model.rho", "|rho| must not exceed 1");
  if (c.functional.m && *c.functional.m == 0) throw ConfigError("functional.m", "must be at least 1");
  if (c.run.n_paths && *c.run.n_paths < 2) throw ConfigError("run.n_paths", "must be at least 2");
  if (c.run.workers && *c.run.workers == 0) throw ConfigError("run.workers", "must be at least 1");
  if (c.run.n_draws && *c.run.n_draws < 2) throw ConfigError("run.n_draws", "must be at least 2");
  if (c.run.ui_paths && *c.run.ui_paths < 2) throw ConfigError("run.ui_paths", "must be at least 2");
  for (double h : c.run.h_grid) {
    if (!(h > 0.0)) throw ConfigError("run.h_grid", "entries must be positive");
  }
  for (double t : c.run.probe_t) {
    if (!(t >= 0.0 && t < 1.0)) throw ConfigError("run.probe_t", "entries must lie in [0,1)");
  }
}

}  // namespace

RunConfig parse_config(const std::string& text) {
  RunConfig c;
  std::set<std::string> seen;
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
      throw ConfigError("line " + std::to_string(lineno), "expected 'section.key = value'");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    const auto& table = setters();
    const auto it = table.find(key);
    if (it == table.end()) throw ConfigError(key, "unknown key");
    if (!seen.insert(key).second) throw ConfigError(key, "duplicate key");
    it->second(c, key, value);
  }
  check_ranges(c);
  return c;
}

RunConfig load_config(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError("file", "cannot open '" + path + "'");
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_config(ss.str());
}

std::string serialize_config(const RunConfig& c) {
  std::ostringstream os;
  auto put = [&os](const char* key, const auto& v) {
    if (v) {
      if constexpr (std::is_same_v<std::decay_t<decltype(*v)>, std::string>) {
        os << key << " = " << *v << "\n";
      } else if constexpr (std::is_same_v<std::decay_t<decltype(*v)>, bool>) {
        os << key << " = " << (*v ? "true" : "false") << "\n";
      } else if constexpr (std::is_floating_point_v<std::decay_t<decltype(*v)>>) {
        os << key << " = " << fmt(*v) << "\n";
      } else {
        os << key << " = " << *v << "\n";
      }
    }
  };
  auto put_list = [&os](const char* key, const std::vector<double>& v) {
    if (!v.empty()) os << key << " = " << fmt_list(v) << "\n";
  };
  put("model.kind", c.model.kind);
  put("model.x0", c.model.x0);
  put("model.r", c.model.r);
  put("model.sigma", c.model.sigma);
  put("model.epsilon", c.model.epsilon);
  put("model.y0", c.model.y0);
  put("model.rho", c.model.rho);
  put("model.mu", c.model.mu);
  put("model.vol_of_vol", c.model.vol_of_vol);
  put("model.sigma_fn", c.model.sigma_fn);
  put("model.drift", c.model.drift);
  put("model.diffusion", c.model.diffusion);
  put("scheme.kind", c.scheme.kind);
  put("scheme.h", c.scheme.h);
  if (c.scheme.cap_inverse_h) {
    os << "scheme.cap = 1/h\n";
  } else {
    put("scheme.cap", c.scheme.cap);
  }
  put("scheme.qu_lower", c.scheme.qu_lower);
  put("scheme.qu_upper", c.scheme.qu_upper);
  put("scheme.consistency_c", c.scheme.consistency_c);
  put("functional.coordinate", c.functional.coordinate);
  put("functional.m", c.functional.m);
  put("functional.lower", c.functional.lower);
  put("functional.upper", c.functional.upper);
  put("payoff.kind", c.payoff.kind);
  put("payoff.strike", c.payoff.strike);
  put("payoff.barrier", c.payoff.barrier);
  put("payoff.rate", c.payoff.rate);
  put("payoff.value", c.payoff.value);
  put("payoff.terminal", c.payoff.terminal);
  put("run.n_paths", c.run.n_paths);
  put("run.seed", c.run.seed);
  put("run.workers", c.run.workers);
  put_list("run.h_grid", c.run.h_grid);
  put("run.oracle", c.run.oracle);
  put("run.bias_c", c.run.bias_c);
  put("run.ui_override", c.run.ui_override);
  put("run.ui_paths", c.run.ui_paths);
  put("run.n_draws", c.run.n_draws);
  put_list("run.probe_y", c.run.probe_y);
  put_list("run.probe_t", c.run.probe_t);
  put("output.format", c.output.format);
  put("output.path", c.output.path);
  put("output.timing", c.output.timing);
  return os.str();
}

}  // namespace pathfunc::cli
