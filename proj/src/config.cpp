#include "sgtrack/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "sgtrack/errors.hpp"

namespace sgtrack {

namespace {

std::string trim(const std::string& s) {
  const size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  const size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

std::string format_double(double v) {
  char buf[40];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

double parse_double(const std::string& s, const std::string& key) {
  try {
    size_t pos = 0;
    const double v = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception&) {
    throw config_error("config: bad numeric value for " + key + ": '" + s + "'");
  }
}

long long parse_int(const std::string& s, const std::string& key) {
  try {
    size_t pos = 0;
    const long long v = std::stoll(s, &pos);
    if (pos != s.size()) throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception&) {
    throw config_error("config: bad integer value for " + key + ": '" + s + "'");
  }
}

// Splits "a, b, c" at top level (no nested brackets inside scalars).
std::vector<std::string> split_list(const std::string& body) {
  std::vector<std::string> out;
  int depth = 0;
  std::string current;
  for (char ch : body) {
    if (ch == '[') ++depth;
    if (ch == ']') --depth;
    if (ch == ',' && depth == 0) {
      out.push_back(trim(current));
      current.clear();
    } else {
      current += ch;
    }
  }
  if (!trim(current).empty()) out.push_back(trim(current));
  return out;
}

std::string strip_brackets(const std::string& s, const std::string& key) {
  const std::string t = trim(s);
  if (t.size() < 2 || t.front() != '[' || t.back() != ']')
    throw config_error("config: expected a bracketed list for " + key);
  return t.substr(1, t.size() - 2);
}

std::vector<double> parse_double_list(const std::string& s, const std::string& key) {
  std::vector<double> out;
  for (const std::string& item : split_list(strip_brackets(s, key)))
    out.push_back(parse_double(item, key));
  return out;
}

std::vector<std::vector<int>> parse_int_matrix(const std::string& s,
                                               const std::string& key) {
  std::vector<std::vector<int>> out;
  for (const std::string& row : split_list(strip_brackets(s, key))) {
    std::vector<int> r;
    for (const std::string& item : split_list(strip_brackets(row, key)))
      r.push_back(static_cast<int>(parse_int(item, key)));
    out.push_back(std::move(r));
  }
  return out;
}

std::string format_double_list(const std::vector<double>& v) {
  std::string out = "[";
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) out += ", ";
    out += format_double(v[i]);
  }
  return out + "]";
}

std::string format_int_matrix(const std::vector<std::vector<int>>& m) {
  std::string out = "[";
  for (size_t i = 0; i < m.size(); ++i) {
    if (i) out += ", ";
    out += "[";
    for (size_t j = 0; j < m[i].size(); ++j) {
      if (j) out += ", ";
      out += std::to_string(m[i][j]);
    }
    out += "]";
  }
  return out + "]";
}

struct KeyHandler {
  std::function<void(RunConfig&, const std::string&)> set;
  std::function<std::string(const RunConfig&)> get;
};

const std::vector<std::pair<std::string, KeyHandler>>& key_table() {
  static const std::vector<std::pair<std::string, KeyHandler>> table = [] {
    std::vector<std::pair<std::string, KeyHandler>> t;
    auto add = [&](const std::string& key,
                   std::function<void(RunConfig&, const std::string&)> set,
                   std::function<std::string(const RunConfig&)> get) {
      t.push_back({key, {std::move(set), std::move(get)}});
    };

    add("seed",
        [](RunConfig& c, const std::string& v) {
          c.tracker.seed = static_cast<uint64_t>(parse_int(v, "seed"));
        },
        [](const RunConfig& c) { return std::to_string(c.tracker.seed); });

    add("filter.particles",
        [](RunConfig& c, const std::string& v) {
          c.tracker.filter.particle_count =
              static_cast<int>(parse_int(v, "filter.particles"));
        },
        [](const RunConfig& c) { return std::to_string(c.tracker.filter.particle_count); });
    add("filter.sigma_u",
        [](RunConfig& c, const std::string& v) {
          c.tracker.filter.sigma_u = parse_double(v, "filter.sigma_u");
        },
        [](const RunConfig& c) { return format_double(c.tracker.filter.sigma_u); });
    add("filter.sigma_c",
        [](RunConfig& c, const std::string& v) {
          c.tracker.filter.sigma_c = parse_double(v, "filter.sigma_c");
        },
        [](const RunConfig& c) { return format_double(c.tracker.filter.sigma_c); });
    add("filter.alpha",
        [](RunConfig& c, const std::string& v) {
          c.tracker.filter.alpha = parse_double(v, "filter.alpha");
        },
        [](const RunConfig& c) { return format_double(c.tracker.filter.alpha); });
    add("filter.beta",
        [](RunConfig& c, const std::string& v) {
          c.tracker.filter.beta = parse_double(v, "filter.beta");
        },
        [](const RunConfig& c) { return format_double(c.tracker.filter.beta); });
    add("filter.tau_lambda",
        [](RunConfig& c, const std::string& v) {
          c.tracker.filter.tau_lambda = parse_double(v, "filter.tau_lambda");
        },
        [](const RunConfig& c) { return format_double(c.tracker.filter.tau_lambda); });
    add("filter.sigma_b",
        [](RunConfig& c, const std::string& v) {
          c.tracker.filter.sigma_b = parse_double(v, "filter.sigma_b");
        },
        [](const RunConfig& c) { return format_double(c.tracker.filter.sigma_b); });

    add("hist.angle_bins",
        [](RunConfig& c, const std::string& v) {
          c.tracker.angle_spec.bins = static_cast<int>(parse_int(v, "hist.angle_bins"));
        },
        [](const RunConfig& c) { return std::to_string(c.tracker.angle_spec.bins); });
    add("hist.angle_range",
        [](RunConfig& c, const std::string& v) {
          const auto r = parse_double_list(v, "hist.angle_range");
          if (r.size() != 2) throw config_error("config: hist.angle_range needs 2 values");
          c.tracker.angle_spec.min = r[0];
          c.tracker.angle_spec.max = r[1];
        },
        [](const RunConfig& c) {
          return format_double_list({c.tracker.angle_spec.min, c.tracker.angle_spec.max});
        });
    add("hist.distance_bins",
        [](RunConfig& c, const std::string& v) {
          c.tracker.distance_spec.bins =
              static_cast<int>(parse_int(v, "hist.distance_bins"));
        },
        [](const RunConfig& c) { return std::to_string(c.tracker.distance_spec.bins); });
    add("hist.distance_range",
        [](RunConfig& c, const std::string& v) {
          const auto r = parse_double_list(v, "hist.distance_range");
          if (r.size() != 2)
            throw config_error("config: hist.distance_range needs 2 values");
          c.tracker.distance_spec.min = r[0];
          c.tracker.distance_spec.max = r[1];
        },
        [](const RunConfig& c) {
          return format_double_list(
              {c.tracker.distance_spec.min, c.tracker.distance_spec.max});
        });

    add("graph.rho_A",
        [](RunConfig& c, const std::string& v) {
          c.tracker.weights.rho_A = parse_double(v, "graph.rho_A");
        },
        [](const RunConfig& c) { return format_double(c.tracker.weights.rho_A); });
    add("graph.rho_S",
        [](RunConfig& c, const std::string& v) {
          c.tracker.weights.rho_S = parse_double(v, "graph.rho_S");
        },
        [](const RunConfig& c) { return format_double(c.tracker.weights.rho_S); });
    add("graph.rho_O",
        [](RunConfig& c, const std::string& v) {
          c.tracker.weights.rho_O = parse_double(v, "graph.rho_O");
        },
        [](const RunConfig& c) { return format_double(c.tracker.weights.rho_O); });
    add("graph.rho_T",
        [](RunConfig& c, const std::string& v) {
          c.tracker.weights.rho_T = parse_double(v, "graph.rho_T");
        },
        [](const RunConfig& c) { return format_double(c.tracker.weights.rho_T); });
    add("graph.tau_S",
        [](RunConfig& c, const std::string& v) {
          c.tracker.tau_score = parse_double(v, "graph.tau_S");
        },
        [](const RunConfig& c) { return format_double(c.tracker.tau_score); });
    add("graph.tau_R",
        [](RunConfig& c, const std::string& v) {
          c.tracker.tau_remove = parse_double(v, "graph.tau_R");
        },
        [](const RunConfig& c) { return format_double(c.tracker.tau_remove); });
    add("graph.tau_O",
        [](RunConfig& c, const std::string& v) {
          c.tracker.tau_overlap = parse_double(v, "graph.tau_O");
        },
        [](const RunConfig& c) { return format_double(c.tracker.tau_overlap); });
    add("graph.tau_I",
        [](RunConfig& c, const std::string& v) {
          c.tracker.max_sweeps = static_cast<int>(parse_int(v, "graph.tau_I"));
        },
        [](const RunConfig& c) { return std::to_string(c.tracker.max_sweeps); });
    add("graph.restarts",
        [](RunConfig& c, const std::string& v) {
          c.tracker.restarts = static_cast<int>(parse_int(v, "graph.restarts"));
        },
        [](const RunConfig& c) { return std::to_string(c.tracker.restarts); });
    add("graph.adjacency",
        [](RunConfig& c, const std::string& v) {
          c.tracker.adjacency = parse_int_matrix(v, "graph.adjacency");
        },
        [](const RunConfig& c) { return format_int_matrix(c.tracker.adjacency); });

    add("candidates.matrix",
        [](RunConfig& c, const std::string& v) {
          c.tracker.candidate_counts = parse_int_matrix(v, "candidates.matrix");
        },
        [](const RunConfig& c) { return format_int_matrix(c.tracker.candidate_counts); });
    add("candidates.sigma_theta",
        [](RunConfig& c, const std::string& v) {
          c.tracker.noise.sigma_theta = parse_double(v, "candidates.sigma_theta");
        },
        [](const RunConfig& c) { return format_double(c.tracker.noise.sigma_theta); });
    add("candidates.sigma_d",
        [](RunConfig& c, const std::string& v) {
          c.tracker.noise.sigma_d = parse_double(v, "candidates.sigma_d");
        },
        [](const RunConfig& c) { return format_double(c.tracker.noise.sigma_d); });

    auto add_kernel = [&](const std::string& key, Kernel KernelSet::*member) {
      add(key,
          [key, member](RunConfig& c, const std::string& v) {
            try {
              c.tracker.kernels.*member = Kernel(parse_double_list(v, key));
            } catch (const std::invalid_argument& e) {
              throw config_error("config: " + key + ": " + e.what());
            }
          },
          [member](const RunConfig& c) {
            return format_double_list((c.tracker.kernels.*member).taps());
          });
    };
    add_kernel("kernel.high", &KernelSet::high);
    add_kernel("kernel.mid", &KernelSet::mid);
    add_kernel("kernel.low", &KernelSet::low);

    add("eval.iou_threshold",
        [](RunConfig& c, const std::string& v) {
          c.eval_iou_threshold = parse_double(v, "eval.iou_threshold");
        },
        [](const RunConfig& c) { return format_double(c.eval_iou_threshold); });
    return t;
  }();
  return table;
}

}  // namespace

void RunConfig::validate() const {
  try {
    tracker.filter.validate();
    tracker.weights.validate();
  } catch (const std::invalid_argument& e) {
    throw config_error(std::string("config: ") + e.what());
  }
  if (tracker.tau_score < 0.0 || tracker.tau_score > 1.0)
    throw config_error("config: graph.tau_S must be in [0, 1]");
  if (tracker.tau_overlap < 0.0 || tracker.tau_overlap > 1.0)
    throw config_error("config: graph.tau_O must be in [0, 1]");
  if (tracker.max_sweeps <= 0)
    throw config_error("config: graph.tau_I must be positive");
  if (tracker.restarts < 0)
    throw config_error("config: graph.restarts must be non-negative");
  if (tracker.angle_spec.bins <= 0 || tracker.distance_spec.bins <= 0)
    throw config_error("config: histogram bin counts must be positive");
  if (!(tracker.angle_spec.max > tracker.angle_spec.min) ||
      !(tracker.distance_spec.max > tracker.distance_spec.min))
    throw config_error("config: histogram ranges must be non-empty");
  if (tracker.noise.sigma_theta < 0.0 || tracker.noise.sigma_d < 0.0)
    throw config_error("config: candidate noise deviations must be non-negative");
  if (eval_iou_threshold <= 0.0 || eval_iou_threshold > 1.0)
    throw config_error("config: eval.iou_threshold must be in (0, 1]");
  if (!tracker.adjacency.empty()) {
    try {
      AdjacencyMatrix adjacency(tracker.adjacency);
      if (!tracker.candidate_counts.empty())
        CandidateMatrix counts(tracker.candidate_counts, adjacency);
    } catch (const std::invalid_argument& e) {
      throw config_error(std::string("config: ") + e.what());
    }
  } else if (!tracker.candidate_counts.empty()) {
    throw config_error("config: candidates.matrix requires graph.adjacency");
  }
}

void set_config_value(RunConfig& config, const std::string& key,
                      const std::string& value) {
  for (const auto& [name, handler] : key_table()) {
    if (name == key) {
      handler.set(config, trim(value));
      return;
    }
  }
  throw config_error("config: unknown key '" + key + "'");
}

std::string get_config_value(const RunConfig& config, const std::string& key) {
  for (const auto& [name, handler] : key_table())
    if (name == key) return handler.get(config);
  throw config_error("config: unknown key '" + key + "'");
}

RunConfig parse_config(std::istream& is) {
  RunConfig config;
  std::string line;
  int line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    const size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw config_error("config:" + std::to_string(line_no) +
                         ": expected 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    try {
      set_config_value(config, key, value);
    } catch (const config_error& e) {
      throw config_error("config:" + std::to_string(line_no) + ": " + e.what());
    }
  }
  config.validate();
  return config;
}

RunConfig parse_config_string(const std::string& text) {
  std::istringstream is(text);
  return parse_config(is);
}

RunConfig load_config(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw io_error("config: cannot open " + path);
  return parse_config(is);
}

std::string serialize_config(const RunConfig& config) {
  std::string out;
  for (const auto& [name, handler] : key_table()) {
    if ((name == "graph.adjacency" && config.tracker.adjacency.empty()) ||
        (name == "candidates.matrix" && config.tracker.candidate_counts.empty()))
      continue;
    out += name + " = " + handler.get(config) + "\n";
  }
  return out;
}

void save_config(const RunConfig& config, const std::string& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw io_error("config: cannot write " + path);
  os << serialize_config(config);
}

}  // namespace sgtrack
