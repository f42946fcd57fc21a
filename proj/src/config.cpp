#include "carleman/config.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <numbers>
#include <sstream>

#include <json.hpp>

namespace carleman {
namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, sep)) out.push_back(trim(item));
  return out;
}

double to_double(const std::string& key, const std::string& v) {
  // "pi" multiples are handy for box geometry: "pi/2", "3pi/2", "2pi".
  std::string s = trim(v);
  const auto p = s.find("pi");
  try {
    if (p == std::string::npos) {
      std::size_t used = 0;
      const double x = std::stod(s, &used);
      if (used != s.size()) throw std::invalid_argument(s);
      return x;
    }
    const std::string head = s.substr(0, p);
    const std::string tail = s.substr(p + 2);
    double x = std::numbers::pi;
    if (!head.empty() && head != "+") x *= head == "-" ? -1.0 : std::stod(head);
    if (!tail.empty()) {
      if (tail[0] != '/') throw std::invalid_argument(s);
      x /= std::stod(tail.substr(1));
    }
    return x;
  } catch (const std::exception&) {
    throw ConfigError("bad number for " + key + ": '" + v + "'");
  }
}

std::uint64_t to_unsigned(const std::string& key, const std::string& v) {
  const std::string s = trim(v);
  if (s.empty() || !std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); }))
    throw ConfigError("bad non-negative integer for " + key + ": '" + v + "'");
  return std::stoull(s);
}

Interval parse_interval(const std::string& text) {
  const auto parts = split(text, ':');
  if (parts.size() != 2) throw ConfigError("interval must read lo:hi, got '" + text + "'");
  return {to_double("interval", parts[0]), to_double("interval", parts[1])};
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

Box RunConfig::inner_box() const {
  if (inner) return *inner;
  const double pi = std::numbers::pi;
  return dim == 1 ? Box::interval(pi / 2, 3 * pi / 2) : Box::rect({pi / 2, 3 * pi / 2}, {pi / 2, 3 * pi / 2});
}

Box RunConfig::outer_box() const {
  if (outer) return *outer;
  const double pi = std::numbers::pi;
  return dim == 1 ? Box::interval(pi / 4, 7 * pi / 4) : Box::rect({pi / 4, 7 * pi / 4}, {pi / 4, 7 * pi / 4});
}

void RunConfig::validate() const {
  if (dim != 1 && dim != 2) throw ConfigError("dim must be 1 or 2");
  const std::size_t g = grid_size();
  if (g < 8 || (g & (g - 1)) != 0) throw ConfigError("grid size must be a power of two >= 8");
  if (k_lo < 1 || k_lo > k_hi) throw ConfigError("k-sweep must satisfy 1 <= k_lo <= k_hi");
  const Box v = inner_box();
  const Box u = outer_box();
  if (v.dim != dim || u.dim != dim) throw ConfigError("box dimension does not match dim");
  if (!(v.margin_inside(u) > 0.0)) throw ConfigError("V must lie strictly inside U");
  if (sigma && !(*sigma > 1.0)) throw ConfigError("sigma must exceed 1");
  if (gamma && !(*gamma > 0.0)) throw ConfigError("gamma must be positive");
  if (k_max < 2) throw ConfigError("k_max must be at least 2");
}

std::map<std::string, std::string> parse_key_values(std::istream& is) {
  std::map<std::string, std::string> kv;
  std::string line;
  std::string section;
  std::size_t lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#' || t[0] == ';') continue;
    if (t.front() == '[') {
      if (t.back() != ']') throw ConfigError("line " + std::to_string(lineno) + ": unterminated section");
      section = trim(t.substr(1, t.size() - 2));
      continue;
    }
    const auto eq = t.find('=');
    if (eq == std::string::npos) throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
    std::string key = trim(t.substr(0, eq));
    if (!section.empty()) key = section + "." + key;
    kv[key] = trim(t.substr(eq + 1));
  }
  return kv;
}

void apply_key_values(RunConfig& cfg, const std::map<std::string, std::string>& kv) {
  for (const auto& [raw_key, v] : kv) {
    // Sections are organizational only: "grid.n" and "n" mean the same.
    const auto dot = raw_key.rfind('.');
    const std::string key = dot == std::string::npos ? raw_key : raw_key.substr(dot + 1);
    if (key == "seq" || key == "sequence" || key == "sequences") {
      cfg.sequences = split(v, ';');
    } else if (key == "op" || key == "operator") {
      cfg.op = v;
    } else if (key == "n" || key == "N" || key == "grid") {
      cfg.n = to_unsigned(key, v);
    } else if (key == "dim") {
      cfg.dim = to_unsigned(key, v);
    } else if (key == "k_lo") {
      cfg.k_lo = static_cast<unsigned>(to_unsigned(key, v));
    } else if (key == "k_hi") {
      cfg.k_hi = static_cast<unsigned>(to_unsigned(key, v));
    } else if (key == "V" || key == "inner") {
      cfg.inner = parse_box(v);
    } else if (key == "U" || key == "outer") {
      cfg.outer = parse_box(v);
    } else if (key == "sigma") {
      cfg.sigma = to_double(key, v);
    } else if (key == "gamma") {
      cfg.gamma = to_double(key, v);
    } else if (key == "h") {
      cfg.h = to_double(key, v);
    } else if (key == "out" || key == "out_dir") {
      cfg.out_dir = v;
    } else if (key == "window") {
      cfg.window = parse_window(v);
    } else if (key == "k") {
      cfg.k = to_unsigned(key, v);
    } else if (key == "jmax" || key == "j_max") {
      cfg.j_max = to_unsigned(key, v);
    } else if (key == "samples") {
      cfg.samples = to_unsigned(key, v);
    } else if (key == "seed") {
      cfg.seed = to_unsigned(key, v);
    } else if (key == "band") {
      cfg.band = static_cast<long>(to_unsigned(key, v));
    } else if (key == "k_max") {
      cfg.k_max = to_unsigned(key, v);
    } else if (key == "input") {
      cfg.input = v;
    } else {
      throw ConfigError("unknown config key '" + raw_key + "'");
    }
  }
}

IndexWindow parse_window(const std::string& text) {
  const auto parts = split(text, ':');
  if (parts.size() != 2) throw ConfigError("window must read lo:hi, got '" + text + "'");
  const IndexWindow w{to_unsigned("window", parts[0]), to_unsigned("window", parts[1])};
  if (w.lo < 1 || w.lo > w.hi) throw ConfigError("window needs 1 <= lo <= hi");
  return w;
}

Box parse_box(const std::string& text) {
  const auto parts = split(text, ',');
  if (parts.size() == 1) {
    const Interval i = parse_interval(parts[0]);
    return Box::interval(i.lo, i.hi);
  }
  if (parts.size() == 2) return Box::rect(parse_interval(parts[0]), parse_interval(parts[1]));
  throw ConfigError("box must read a:b or a:b,c:d, got '" + text + "'");
}

WeightSequence sequence_from_json(const std::string& text, std::size_t k_max) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("sequence file is not valid JSON: ") + e.what());
  }
  try {
    const std::string family = j.at("family").get<std::string>();
    const std::size_t top = j.contains("k_max") ? j.at("k_max").get<std::size_t>() : k_max;
    const nlohmann::json params = j.value("params", nlohmann::json::object());
    auto param = [&](const char* name) {
      if (!params.contains(name)) throw ConfigError(std::string("missing parameter ") + name);
      return params.at(name).get<double>();
    };
    if (family == "gevrey") return make_gevrey(param("s"), top);
    if (family == "logfam") return make_log_family(param("s"), param("sigma"), top);
    if (family == "qfam") return make_q_family(param("q"), top);
    if (family == "table")
      return make_table(j.value("name", std::string("table")), j.at("log_m").get<std::vector<double>>());
    throw ConfigError("unknown family '" + family + "'");
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("malformed sequence file: ") + e.what());
  }
}

WeightSequence parse_sequence(const std::string& spec, std::size_t k_max) {
  const auto colon = spec.find(':');
  if (colon == std::string::npos) return sequence_from_json(read_file(spec), k_max);
  const std::string family = spec.substr(0, colon);
  const std::string rest = spec.substr(colon + 1);
  try {
    if (family == "table") return sequence_from_json(read_file(rest), k_max);
    const auto args = split(rest, ',');
    auto arg = [&](std::size_t i) { return to_double(spec, args.at(i)); };
    if (family == "gevrey" && args.size() == 1) return make_gevrey(arg(0), k_max);
    if (family == "logfam" && args.size() == 2) return make_log_family(arg(0), arg(1), k_max);
    if (family == "qfam" && args.size() == 1) return make_q_family(arg(0), k_max);
  } catch (const std::invalid_argument& e) {
    throw ConfigError("sequence '" + spec + "': " + e.what());
  }
  throw ConfigError("unrecognized sequence spec '" + spec + "' (gevrey:s, logfam:s,sigma, qfam:q, table:file)");
}

}  // namespace carleman
