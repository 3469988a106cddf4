#include "sqzres_cli/config.hpp"

#include <algorithm>
#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>

namespace sqzres::cli {
namespace {

enum class Unit { none, rate, time };

struct Field {
  std::string key;
  Unit unit = Unit::none;
  std::function<void(const std::string&)> set;
  // Serialized value without unit suffix; empty optional when unset.
  std::function<std::optional<std::string>()> get;
};

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

double parse_double(const std::string& text) {
  const std::string t = trim(text);
  if (t.empty()) throw ConfigError("expected a number");
  char* end = nullptr;
  errno = 0;
  const double v = std::strtod(t.c_str(), &end);
  if (end != t.c_str() + t.size() || errno == ERANGE) throw ConfigError("'" + t + "' is not a number");
  return v;
}

int parse_int(const std::string& text) {
  const std::string t = trim(text);
  char* end = nullptr;
  errno = 0;
  const long v = std::strtol(t.c_str(), &end, 10);
  if (t.empty() || end != t.c_str() + t.size() || errno == ERANGE || v < -2147483647L || v > 2147483647L) {
    throw ConfigError("'" + t + "' is not an integer");
  }
  return static_cast<int>(v);
}

template <class T, class F>
std::vector<T> parse_list(const std::string& text, F item) {
  std::vector<T> out;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ',')) out.push_back(item(part));
  if (out.empty()) throw ConfigError("expected a comma-separated list");
  return out;
}

template <class T, class F>
std::string join(const std::vector<T>& v, F item) {
  std::string out;
  for (std::size_t k = 0; k < v.size(); ++k) out += (k ? ", " : "") + item(v[k]);
  return out;
}

// Field builders bound to a config member.
Field real(std::string key, Unit unit, double& ref) {
  return {std::move(key), unit, [&ref](const std::string& v) { ref = parse_double(v); },
          [&ref]() -> std::optional<std::string> { return num(ref); }};
}

Field opt_real(std::string key, Unit unit, std::optional<double>& ref) {
  return {std::move(key), unit, [&ref](const std::string& v) { ref = parse_double(v); },
          [&ref]() -> std::optional<std::string> {
            if (!ref) return std::nullopt;
            return num(*ref);
          }};
}

Field integer(std::string key, int& ref) {
  return {std::move(key), Unit::none, [&ref](const std::string& v) { ref = parse_int(v); },
          [&ref]() -> std::optional<std::string> { return std::to_string(ref); }};
}

Field complex(std::string key, Unit unit, cplx& ref) {
  return {std::move(key), unit, [&ref](const std::string& v) { ref = parse_complex(v); },
          [&ref]() -> std::optional<std::string> { return format_complex(ref); }};
}

Field choice(std::string key, bool& ref, std::string off, std::string on) {
  return {std::move(key), Unit::none,
          [&ref, off, on](const std::string& v) {
            const std::string t = trim(v);
            if (t == off) {
              ref = false;
            } else if (t == on) {
              ref = true;
            } else {
              throw ConfigError("expected '" + off + "' or '" + on + "', got '" + t + "'");
            }
          },
          [&ref, off, on]() -> std::optional<std::string> { return ref ? on : off; }};
}

std::vector<Field> beam_fields(BeamSection& b, bool with_atoms) {
  std::vector<Field> f;
  if (with_atoms) f.push_back(integer("n_atoms", b.n_atoms));
  f.push_back(real("tau", Unit::time, b.tau));
  f.push_back(complex("lambda1", Unit::rate, b.lambda1));
  f.push_back(complex("lambda2", Unit::rate, b.lambda2));
  f.push_back(complex("beta", Unit::rate, b.beta));
  f.push_back(integer("n_max", b.n_max));
  f.push_back(real("r_at", Unit::rate, b.r_at));
  f.push_back(real("kappa", Unit::rate, b.kappa));
  f.push_back(choice("model", b.dispersive, "static", "dispersive"));
  f.push_back(choice("clock", b.reset_clock, "global", "reset"));
  f.push_back(opt_real("dt", Unit::time, b.dt));
  auto& d = b.drive;
  f.push_back(complex("g", Unit::rate, d.g));
  f.push_back(complex("omega1", Unit::rate, d.omega1));
  f.push_back(complex("omega2", Unit::rate, d.omega2));
  f.push_back(complex("omega3", Unit::rate, d.omega3));
  f.push_back(complex("omega4", Unit::rate, d.omega4));
  f.push_back(real("Delta1", Unit::rate, d.Delta1));
  f.push_back(real("Delta2", Unit::rate, d.Delta2));
  f.push_back(real("Delta3", Unit::rate, d.Delta3));
  f.push_back(opt_real("delta1", Unit::rate, d.delta1));
  f.push_back(opt_real("delta2", Unit::rate, d.delta2));
  f.push_back(opt_real("delta3", Unit::rate, d.delta3));
  return f;
}

std::vector<Field> bath_fields(BathSection& b) {
  std::vector<Field> f;
  f.push_back(complex("lambda", Unit::rate, b.lambda));
  f.push_back(real("Gamma", Unit::rate, b.Gamma));
  f.push_back(real("gamma", Unit::rate, b.gamma));
  f.push_back(real("r", Unit::none, b.r));
  f.push_back({"phis", Unit::none,
               [&b](const std::string& v) { b.phis = parse_list<double>(v, parse_double); },
               [&b]() -> std::optional<std::string> { return join(b.phis, num); }});
  f.push_back(integer("n_max", b.n_max));
  f.push_back(opt_real("t_end", Unit::time, b.t_end));
  f.push_back(integer("num_samples", b.num_samples));
  f.push_back(choice("model", b.static_model, "squeezed", "static"));
  f.push_back(opt_real("dt", Unit::time, b.dt));
  return f;
}

std::vector<Field> wigner_fields(WignerSection& w) {
  std::vector<Field> f = beam_fields(w.beam, false);
  f.push_back({"checkpoints", Unit::none,
               [&w](const std::string& v) { w.checkpoints = parse_list<int>(v, parse_int); },
               [&w]() -> std::optional<std::string> {
                 return join(w.checkpoints, [](int k) { return std::to_string(k); });
               }});
  f.push_back(real("x_min", Unit::none, w.x_min));
  f.push_back(real("x_max", Unit::none, w.x_max));
  f.push_back(integer("x_count", w.x_count));
  f.push_back(real("p_min", Unit::none, w.p_min));
  f.push_back(real("p_max", Unit::none, w.p_max));
  f.push_back(integer("p_count", w.p_count));
  return f;
}

std::vector<Field> design_fields(DesignSection& d) {
  return {real("r", Unit::none, d.r),
          real("phi", Unit::none, d.phi),
          complex("alpha", Unit::none, d.alpha),
          real("scale", Unit::rate, d.scale),
          complex("g", Unit::rate, d.g),
          real("Delta1", Unit::rate, d.Delta1),
          real("Delta2", Unit::rate, d.Delta2),
          real("Delta3", Unit::rate, d.Delta3),
          real("threshold", Unit::none, d.threshold)};
}

std::vector<Field> output_fields(RunConfig& cfg) {
  return {{"dir", Unit::none,
           [&cfg](const std::string& v) {
             cfg.output_dir = trim(v);
             if (cfg.output_dir.empty()) throw ConfigError("dir must not be empty");
           },
           [&cfg]() -> std::optional<std::string> { return cfg.output_dir; }}};
}

std::vector<Field> fields_for(RunConfig& cfg, Experiment e) {
  switch (e) {
    case Experiment::beam: return beam_fields(cfg.beam, true);
    case Experiment::bath: return bath_fields(cfg.bath);
    case Experiment::wigner: return wigner_fields(cfg.wigner);
    case Experiment::design: return design_fields(cfg.design);
    case Experiment::validate: return {};
  }
  return {};
}

const std::map<std::string, Experiment>& experiments() {
  static const std::map<std::string, Experiment> m = {{"beam", Experiment::beam},
                                                      {"bath", Experiment::bath},
                                                      {"wigner", Experiment::wigner},
                                                      {"design", Experiment::design},
                                                      {"validate", Experiment::validate}};
  return m;
}

// Required keys per experiment.
std::vector<std::string> required(Experiment e) {
  if (e == Experiment::design) return {"r", "scale"};
  return {};
}

// Splits a trailing unit suffix off a numeric value and checks it against the key.
std::string strip_unit(const std::string& raw, const Field& f) {
  std::string v = trim(raw);
  Unit found = Unit::none;
  if (v.size() >= 2 && v.compare(v.size() - 2, 2, "/g") == 0) {
    found = Unit::time;
    v = trim(v.substr(0, v.size() - 2));
  } else if (!v.empty() && v.back() == 'g') {
    found = Unit::rate;
    v = trim(v.substr(0, v.size() - 1));
  }
  if (found != Unit::none && found != f.unit) {
    const char* suffix = found == Unit::time ? "/g" : "g";
    if (f.unit == Unit::none) {
      throw ConfigError(std::string("unit suffix '") + suffix + "' on dimensionless key '" + f.key + "'");
    }
    throw ConfigError(std::string("unit suffix '") + suffix + "' on '" + f.key + "', which is a " +
                      (f.unit == Unit::rate ? "rate (use 'g')" : "time (use '/g')"));
  }
  return v;
}

}  // namespace

const char* experiment_name(Experiment e) {
  for (const auto& [name, value] : experiments()) {
    if (value == e) return name.c_str();
  }
  return "?";
}

cplx parse_complex(const std::string& text) {
  std::string t = trim(text);
  if (t.size() >= 2 && t.front() == '(' && t.back() == ')') t = trim(t.substr(1, t.size() - 2));
  if (t.empty()) throw ConfigError("expected a complex number");
  if (t.back() != 'i') return {parse_double(t), 0.0};
  const std::string body = t.substr(0, t.size() - 1);
  // Split before the last sign that is not an exponent sign or the leading sign.
  std::size_t split = std::string::npos;
  for (std::size_t k = body.size(); k-- > 1;) {
    if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
      split = k;
      break;
    }
  }
  const std::string re = split == std::string::npos ? "" : body.substr(0, split);
  std::string im = split == std::string::npos ? body : body.substr(split);
  if (im.empty() || im == "+") im = "1";
  if (im == "-") im = "-1";
  try {
    return {re.empty() ? 0.0 : parse_double(re), parse_double(im)};
  } catch (const ConfigError&) {
    throw ConfigError("'" + t + "' is not a complex number");
  }
}

std::string format_complex(cplx z) {
  if (z.imag() == 0.0) return num(z.real());
  char buf[96];
  std::snprintf(buf, sizeof buf, "(%.17g%+.17gi)", z.real(), z.imag());
  return buf;
}

RunConfig parse_config(const std::string& text) {
  RunConfig cfg;
  std::optional<Experiment> experiment;
  std::string section;
  std::vector<Field> fields;
  std::set<std::string> seen_sections;
  std::set<std::string> seen_keys;
  std::set<std::string> given;

  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  auto fail = [&](const std::string& msg) {
    throw ConfigError("line " + std::to_string(lineno) + ": " + msg);
  };
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;

    if (line.front() == '[') {
      if (line.back() != ']') fail("malformed section header '" + line + "'");
      section = trim(line.substr(1, line.size() - 2));
      if (!seen_sections.insert(section).second) fail("duplicate section [" + section + "]");
      seen_keys.clear();
      if (section == "output") {
        fields = output_fields(cfg);
      } else if (auto it = experiments().find(section); it != experiments().end()) {
        if (experiment) fail("more than one experiment section ([" + section + "])");
        experiment = it->second;
        fields = fields_for(cfg, it->second);
      } else {
        fail("unknown section [" + section + "]");
      }
      continue;
    }

    const auto eq = line.find('=');
    if (eq == std::string::npos) fail("expected 'key = value', got '" + line + "'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (section.empty()) fail("key '" + key + "' outside any section");
    const auto field = std::find_if(fields.begin(), fields.end(), [&](const Field& f) { return f.key == key; });
    if (field == fields.end()) fail("unknown key '" + key + "' in [" + section + "]");
    if (!seen_keys.insert(key).second) fail("duplicate key '" + key + "'");
    if (value.empty()) fail("missing value for '" + key + "'");
    try {
      field->set(strip_unit(value, *field));
    } catch (const ConfigError& ex) {
      fail(key + ": " + ex.what());
    }
    if (section != "output") given.insert(key);
  }
  if (!experiment) throw ConfigError("no experiment section");
  cfg.experiment = *experiment;

  for (const auto& key : required(*experiment)) {
    if (!given.count(key)) {
      throw ConfigError(std::string("missing required key '") + key + "' in [" + experiment_name(*experiment) + "]");
    }
  }
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

std::string serialize(const RunConfig& cfg) {
  RunConfig copy = cfg;
  std::string out = std::string("[") + experiment_name(cfg.experiment) + "]\n";
  for (const auto& f : fields_for(copy, cfg.experiment)) {
    const auto v = f.get();
    if (!v) continue;
    out += f.key + " = " + *v + (f.unit == Unit::rate ? "g" : f.unit == Unit::time ? "/g" : "") + "\n";
  }
  out += "\n[output]\ndir = " + cfg.output_dir + "\n";
  return out;
}

void override_n_max(RunConfig& cfg, int n_max) {
  cfg.beam.n_max = n_max;
  cfg.bath.n_max = n_max;
  cfg.wigner.beam.n_max = n_max;
}

void override_dt(RunConfig& cfg, double dt) {
  cfg.beam.dt = dt;
  cfg.bath.dt = dt;
  cfg.wigner.beam.dt = dt;
}

}  // namespace sqzres::cli
