#include "zac/config.hpp"

#include <cctype>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "zac/units.hpp"

namespace zac {

const char* experiment_name(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::co_oct: return "co-oct";
    case ExperimentKind::co_oct_sweep: return "co-oct-sweep";
    case ExperimentKind::surrogate_local: return "surrogate-local";
  }
  return "?";
}

namespace {

std::string trim(const std::string& s) {
  size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

std::string fmt17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

struct Entry {
  std::string value;
  std::string where;  // "file:line" or "--override"
};

class KeyTable {
 public:
  void set(const std::string& key, Entry entry) { entries_[key] = std::move(entry); }

  bool has(const std::string& key) const { return entries_.count(key) > 0; }

  double get_double(const std::string& key, double fallback) {
    auto it = entries_.find(key);
    if (it == entries_.end()) return fallback;
    used_.insert(key);
    return parse_double(it->second);
  }

  int get_int(const std::string& key, int fallback) {
    auto it = entries_.find(key);
    if (it == entries_.end()) return fallback;
    used_.insert(key);
    try {
      size_t pos = 0;
      const int v = std::stoi(it->second.value, &pos);
      if (pos != it->second.value.size()) throw std::invalid_argument("");
      return v;
    } catch (const std::exception&) {
      throw ConfigError(it->second.where + ": '" + key + "' expects an integer, got '" +
                        it->second.value + "'");
    }
  }

  std::string get_string(const std::string& key, std::string fallback) {
    auto it = entries_.find(key);
    if (it == entries_.end()) return fallback;
    used_.insert(key);
    return it->second.value;
  }

  std::vector<double> get_double_list(const std::string& key,
                                      std::vector<double> fallback) {
    auto it = entries_.find(key);
    if (it == entries_.end()) return fallback;
    used_.insert(key);
    std::vector<double> out;
    std::stringstream ss(it->second.value);
    std::string item;
    while (std::getline(ss, item, ',')) {
      Entry e{trim(item), it->second.where};
      if (e.value.empty())
        throw ConfigError(it->second.where + ": empty element in list '" + key + "'");
      out.push_back(parse_double(e));
    }
    if (out.empty())
      throw ConfigError(it->second.where + ": list '" + key + "' is empty");
    return out;
  }

  void fail_on_unused() const {
    for (const auto& [key, entry] : entries_) {
      if (!used_.count(key))
        throw ConfigError(entry.where + ": unknown key '" + key + "'");
    }
  }

  const std::string& where(const std::string& key) const {
    return entries_.at(key).where;
  }

 private:
  static double parse_double(const Entry& e) {
    try {
      size_t pos = 0;
      const double v = std::stod(e.value, &pos);
      if (pos != e.value.size()) throw std::invalid_argument("");
      return v;
    } catch (const std::exception&) {
      throw ConfigError(e.where + ": expected a number, got '" + e.value + "'");
    }
  }

  std::map<std::string, Entry> entries_;
  std::set<std::string> used_;
};

void insert_line(KeyTable& table, const std::string& section, const std::string& key,
                 const std::string& value, const std::string& where) {
  if (section.empty())
    throw ConfigError(where + ": key '" + key + "' appears before any [section]");
  table.set(section + "." + key, Entry{value, where});
}

}  // namespace

RunConfig RunConfig::load(const std::string& path,
                          const std::vector<std::string>& overrides) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse(ss.str(), path, overrides);
}

RunConfig RunConfig::parse(const std::string& text, const std::string& origin,
                           const std::vector<std::string>& overrides) {
  KeyTable table;
  std::string section;
  std::istringstream stream(text);
  std::string raw;
  int lineno = 0;
  while (std::getline(stream, raw)) {
    ++lineno;
    const std::string where = origin + ":" + std::to_string(lineno);
    std::string line = raw;
    const size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        throw ConfigError(where + ": malformed section header '" + trim(raw) + "'");
      section = trim(line.substr(1, line.size() - 2));
      if (section.empty()) throw ConfigError(where + ": empty section name");
      continue;
    }
    const size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError(where + ": expected 'key = value', got '" + line + "'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) throw ConfigError(where + ": empty key");
    if (value.empty()) throw ConfigError(where + ": empty value for key '" + key + "'");
    insert_line(table, section, key, value, where);
  }

  for (const std::string& ov : overrides) {
    const size_t eq = ov.find('=');
    if (eq == std::string::npos)
      throw ConfigError("--override '" + ov + "': expected section.key=value");
    const std::string key = trim(ov.substr(0, eq));
    const std::string value = trim(ov.substr(eq + 1));
    if (key.find('.') == std::string::npos)
      throw ConfigError("--override '" + ov + "': key must be section.key");
    if (value.empty()) throw ConfigError("--override '" + ov + "': empty value");
    table.set(key, Entry{value, "--override " + ov});
  }

  RunConfig cfg;

  const std::string type = table.get_string("experiment.type", "");
  if (type.empty())
    throw ConfigError(origin + ": missing required key 'type' in section [experiment]");
  if (type == "co-oct") cfg.experiment = ExperimentKind::co_oct;
  else if (type == "co-oct-sweep") cfg.experiment = ExperimentKind::co_oct_sweep;
  else if (type == "surrogate-local") cfg.experiment = ExperimentKind::surrogate_local;
  else
    throw ConfigError(table.where("experiment.type") + ": unknown experiment type '" +
                      type + "'");

  // [model], with cm^-1 / fs alternatives converted here
  if (table.has("model.B_au") && table.has("model.B_cm1"))
    throw ConfigError(table.where("model.B_cm1") + ": give B_au or B_cm1, not both");
  cfg.rotor.b = table.get_double("model.B_au", cfg.rotor.b);
  if (table.has("model.B_cm1"))
    cfg.rotor.b = table.get_double("model.B_cm1", 0.0) * units::cm1_to_au;
  cfg.rotor.d = table.get_double("model.d_au", cfg.rotor.d);
  cfg.rotor.j_max = table.get_int("model.j_max", cfg.rotor.j_max);
  cfg.rotor.j_opt = table.get_int("model.j_opt", cfg.rotor.j_opt);
  cfg.rotor.e_peak = table.get_double("model.e_peak_au", cfg.rotor.e_peak);
  if (table.has("model.fwhm_au") && table.has("model.fwhm_fs"))
    throw ConfigError(table.where("model.fwhm_fs") + ": give fwhm_au or fwhm_fs, not both");
  cfg.rotor.fwhm = table.get_double("model.fwhm_au", cfg.rotor.fwhm);
  if (table.has("model.fwhm_fs"))
    cfg.rotor.fwhm = table.get_double("model.fwhm_fs", 0.0) * units::fs_to_au;

  cfg.n_steps = table.get_int("grid.n_steps", cfg.n_steps);

  cfg.lambda = table.get_double("oct.lambda_au", cfg.lambda);
  cfg.mu_tf = table.get_double("oct.mu_tf", cfg.mu_tf);
  cfg.mu_tf_list = table.get_double_list("oct.mu_tf_list", cfg.mu_tf_list);
  cfg.mu_scale = table.get_double("oct.mu_scale", cfg.mu_scale);
  cfg.max_iterations = table.get_int("oct.max_iterations", cfg.max_iterations);
  cfg.target_fidelity = table.get_double("oct.target_fidelity", cfg.target_fidelity);

  cfg.epsilon = table.get_double("local.epsilon_au", cfg.epsilon);
  cfg.local_mu_list = table.get_double_list("local.mu_au_list", cfg.local_mu_list);
  cfg.local_tf = table.get_double("local.t_f_au", cfg.local_tf);
  cfg.local_n_steps = table.get_int("local.n_steps", cfg.local_n_steps);
  cfg.seed_admixture = table.get_double("local.seed_admixture", cfg.seed_admixture);
  cfg.filter_bins = table.get_int("local.filter_cutoff_bins", cfg.filter_bins);
  cfg.output_stride = table.get_int("local.output_stride", cfg.output_stride);

  cfg.out_dir = table.get_string("output.dir", cfg.out_dir);

  table.fail_on_unused();

  // Validation beyond what the domain types enforce themselves.
  auto require = [&origin](bool ok, const std::string& msg) {
    if (!ok) throw ConfigError(origin + ": " + msg);
  };
  require(cfg.rotor.b > 0.0, "B must be positive");
  require(cfg.rotor.j_max >= cfg.rotor.j_opt && cfg.rotor.j_opt >= 1,
          "need j_max >= j_opt >= 1");
  require(cfg.n_steps >= 2, "grid.n_steps must be at least 2");
  require(cfg.lambda > 0.0, "oct.lambda_au must be positive");
  require(cfg.mu_tf >= 0.0, "oct.mu_tf must be nonnegative");
  require(cfg.mu_scale >= 0.0, "oct.mu_scale must be nonnegative");
  for (double m : cfg.mu_tf_list) require(m >= 0.0, "oct.mu_tf_list entries must be nonnegative");
  require(cfg.max_iterations >= 1, "oct.max_iterations must be at least 1");
  require(cfg.target_fidelity > 0.0 && cfg.target_fidelity <= 1.0,
          "oct.target_fidelity must lie in (0, 1]");
  require(cfg.epsilon > 0.0, "local.epsilon_au must be positive");
  for (double m : cfg.local_mu_list) require(m >= 0.0, "local.mu_au_list entries must be nonnegative");
  require(cfg.local_tf > 0.0, "local.t_f_au must be positive");
  require(cfg.local_n_steps >= 2, "local.n_steps must be at least 2");
  require(cfg.seed_admixture >= 0.0 && cfg.seed_admixture < 1.0,
          "local.seed_admixture must lie in [0, 1)");
  require(cfg.filter_bins >= 0, "local.filter_cutoff_bins must be nonnegative");
  require(cfg.output_stride >= 1, "local.output_stride must be at least 1");

  return cfg;
}

std::vector<std::pair<std::string, std::string>> RunConfig::resolved() const {
  std::vector<std::pair<std::string, std::string>> out;
  out.emplace_back("experiment.type", experiment_name(experiment));
  out.emplace_back("model.B_au", fmt17(rotor.b));
  out.emplace_back("model.d_au", fmt17(rotor.d));
  out.emplace_back("model.j_max", std::to_string(rotor.j_max));
  out.emplace_back("model.j_opt", std::to_string(rotor.j_opt));
  out.emplace_back("model.e_peak_au", fmt17(rotor.e_peak));
  out.emplace_back("model.fwhm_au", fmt17(rotor.fwhm));
  out.emplace_back("grid.n_steps", std::to_string(n_steps));
  out.emplace_back("oct.lambda_au", fmt17(lambda));
  out.emplace_back("oct.mu_tf", fmt17(mu_tf));
  std::string list;
  for (size_t i = 0; i < mu_tf_list.size(); ++i)
    list += (i ? ", " : "") + fmt17(mu_tf_list[i]);
  out.emplace_back("oct.mu_tf_list", list);
  out.emplace_back("oct.mu_scale", fmt17(mu_scale));
  out.emplace_back("oct.max_iterations", std::to_string(max_iterations));
  out.emplace_back("oct.target_fidelity", fmt17(target_fidelity));
  out.emplace_back("local.epsilon_au", fmt17(epsilon));
  list.clear();
  for (size_t i = 0; i < local_mu_list.size(); ++i)
    list += (i ? ", " : "") + fmt17(local_mu_list[i]);
  out.emplace_back("local.mu_au_list", list);
  out.emplace_back("local.t_f_au", fmt17(local_tf));
  out.emplace_back("local.n_steps", std::to_string(local_n_steps));
  out.emplace_back("local.seed_admixture", fmt17(seed_admixture));
  out.emplace_back("local.filter_cutoff_bins", std::to_string(filter_bins));
  out.emplace_back("local.output_stride", std::to_string(output_stride));
  return out;
}

}  // namespace zac
