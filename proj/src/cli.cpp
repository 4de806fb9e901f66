#include "ppca/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <charconv>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

#include "ppca/experiments.hpp"
#include "ppca/report.hpp"
#include "ppca/verify.hpp"

namespace ppca::cli {

namespace {

using nlohmann::ordered_json;

const std::vector<std::string> kCommands{"bounds",      "simulate",   "sweep", "tau-scaling",
                                         "gamma-scan",  "decay",      "verify"};

const std::set<std::string> kBoolKeys{"coupled-uniform", "paper-scale", "phi-exponent-debug"};

const std::set<std::string> kKeys{"command",  "neighborhood", "p",      "p-grid",  "n",
                                  "n-list",   "T",            "R",      "replicas", "t-max",
                                  "m-max",    "m-list",       "seed",   "output",  "format",
                                  "threads",  "coupled-uniform", "paper-scale",
                                  "phi-exponent-debug"};

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double parse_double(const std::string& s, const std::string& what) {
  double v = 0.0;
  const auto* end = s.data() + s.size();
  const auto res = std::from_chars(s.data(), end, v);
  if (res.ec != std::errc() || res.ptr != end) throw UsageError{"bad number in " + what + ": '" + s + "'"};
  return v;
}

long parse_long(const std::string& s, const std::string& what) {
  long v = 0;
  const auto* end = s.data() + s.size();
  const auto res = std::from_chars(s.data(), end, v);
  if (res.ec != std::errc() || res.ptr != end) throw UsageError{"bad integer in " + what + ": '" + s + "'"};
  return v;
}

bool is_stochastic(const std::string& cmd) {
  return cmd != "bounds" && cmd != "verify";
}

// Names under which a config key may appear on the command line.
std::vector<std::string> spellings(const std::string& key) {
  std::vector<std::string> s{"--" + key};
  if (key == "neighborhood") s.push_back("-U");
  if (key == "output") s.push_back("-o");
  return s;
}

bool given_on_command_line(const std::vector<std::string>& args, const std::string& key) {
  for (const auto& a : args) {
    for (const auto& name : spellings(key)) {
      if (a == name || a.rfind(name + "=", 0) == 0) return true;
    }
  }
  return false;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError{"cannot read config file '" + path + "'"};
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Appends config values that the command line does not already set.
std::vector<std::string> merge_config(std::vector<std::string> args) {
  std::string path;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) path = args[i + 1];
    if (args[i].rfind("--config=", 0) == 0) path = args[i].substr(9);
  }
  if (path.empty()) return args;

  bool has_command = false;
  for (const auto& a : args) {
    has_command = has_command || std::find(kCommands.begin(), kCommands.end(), a) != kCommands.end();
  }
  std::vector<std::string> extra;
  std::string command;
  for (const auto& [key, value] : parse_config_text(read_file(path))) {
    if (key == "command") {
      command = value;
      continue;
    }
    if (given_on_command_line(args, key)) continue;
    if (kBoolKeys.count(key)) {
      if (value == "true" || value == "1") {
        extra.push_back("--" + key);
      } else if (value != "false" && value != "0") {
        throw UsageError{"config key '" + key + "' expects true or false"};
      }
      continue;
    }
    extra.push_back("--" + key + "=" + value);
  }
  if (!has_command && !command.empty()) args.insert(args.begin(), command);
  args.insert(args.end(), extra.begin(), extra.end());
  return args;
}

void apply_defaults(RunConfig& c) {
  auto set = [](auto& field, auto value) {
    if (!field) field = value;
  };
  if (c.format.empty()) c.format = c.command == "verify" ? "json" : "csv";
  if (c.command == "simulate") {
    set(c.replicas, 100L);
    set(c.t_max, 1000000L);
  } else if (c.command == "sweep") {
    set(c.n, c.paper_scale ? 100000 : 2000);
    set(c.T, c.paper_scale ? 100000L : 2000L);
    set(c.R, c.paper_scale ? 2000L : 200L);
  } else if (c.command == "tau-scaling") {
    set(c.replicas, 100L);
    set(c.t_max, 10000000L);
  } else if (c.command == "gamma-scan") {
    set(c.m_max, 400L);
    set(c.replicas, 200L);
  } else if (c.command == "decay") {
    if (c.m_list.empty()) c.m_list = "2:20";
    set(c.replicas, 2000L);
  }
  if (c.command == "bounds" && c.neighborhoods.empty()) {
    for (const auto& e : reference_bounds()) c.neighborhoods.push_back(e.u.str());
  }
}

void require(bool ok, const std::string& message) {
  if (!ok) throw UsageError{message};
}

void validate(const RunConfig& c) {
  const auto& cmd = c.command;
  if (is_stochastic(cmd)) {
    require(c.seed.has_value(), cmd + " needs --seed");
    require(!c.neighborhoods.empty(), cmd + " needs -U");
    require(c.neighborhoods.size() == 1, cmd + " takes a single -U");
  }
  if (cmd == "simulate" || cmd == "tau-scaling" || cmd == "decay") {
    require(c.p.has_value(), cmd + " needs --p");
  }
  if (cmd == "simulate") require(c.n.has_value(), "simulate needs --n");
  if (cmd == "sweep" || cmd == "gamma-scan") require(!c.p_grid.empty(), cmd + " needs --p-grid");
  if (cmd == "tau-scaling") require(!c.n_list.empty(), "tau-scaling needs --n-list");
  if (c.p) require(*c.p >= 0.0 && *c.p <= 1.0, "--p must lie in [0, 1]");
  for (const auto* v : {&c.T, &c.R, &c.replicas, &c.t_max, &c.m_max}) {
    if (*v) require(**v >= 1, "sizes must be positive");
  }
  if (c.n) require(*c.n >= 1, "--n must be positive");
  require(c.threads >= 1, "--threads must be positive");
  require(c.format == "csv" || c.format == "json", "--format must be csv or json");
}

Neighborhood neighborhood_arg(const std::string& text) {
  try {
    return parse_neighborhood(text);
  } catch (const InvalidNeighborhood& e) {
    throw UsageError{e.what()};
  }
}

Metadata base_metadata(const RunConfig& c) {
  Metadata m;
  m.add("command", c.command);
  if (!c.neighborhoods.empty() && is_stochastic(c.command)) {
    m.add("U", neighborhood_arg(c.neighborhoods.front()).str(';'));
  }
  if (c.seed) m.add("seed", std::to_string(*c.seed));
  if (c.p) m.add("p", format_double(*c.p));
  if (!c.p_grid.empty()) m.add("p_grid", c.p_grid);
  if (c.n) m.add("n", std::to_string(*c.n));
  if (!c.n_list.empty()) m.add("n_list", c.n_list);
  if (c.T) m.add("T", std::to_string(*c.T));
  if (c.R) m.add("R", std::to_string(*c.R));
  if (c.replicas) m.add("replicas", std::to_string(*c.replicas));
  if (c.t_max) m.add("t_max", std::to_string(*c.t_max));
  if (c.m_max) m.add("m_max", std::to_string(*c.m_max));
  if (!c.m_list.empty()) m.add("m_list", c.m_list);
  if (is_stochastic(c.command)) m.add("noise", c.coupled_uniform ? "per_site" : "word_sliced");
  if (c.command == "bounds" || c.command == "verify") {
    m.add("phi_exponent", c.phi_exponent_debug ? "2span" : "2span+2");
  }
  return m;
}

std::string render(const RunConfig& c, const ordered_json& j, const std::string& csv) {
  return c.format == "json" ? dump(j) : csv;
}

struct Outcome {
  std::string text;
  int code = kOk;
};

Outcome execute(const RunConfig& c) {
  const SimOptions opts{c.coupled_uniform ? NoiseMode::per_site : NoiseMode::word_sliced,
                        c.threads};
  const PhiExponent variant = c.phi_exponent_debug ? PhiExponent::two_span : PhiExponent::two_span_plus_two;
  const Metadata meta = base_metadata(c);

  if (c.command == "bounds") {
    std::vector<Neighborhood> list;
    for (const auto& s : c.neighborhoods) list.push_back(neighborhood_arg(s));
    const auto rows = bounds_table(list, variant);
    ordered_json j = to_json(rows, meta);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const auto r = bounds_report(list[i], c.p.value_or(0.0), -1, variant);
      auto& row = j["rows"][i];
      row["p_eval"] = r.p;
      row["e_pi"] = r.e_pi;
      row["e_xi"] = r.e_xi;
      ordered_json table = ordered_json::object();
      for (const auto& [jj, v] : r.bound_table) table[std::to_string(jj)] = v;
      row["two_step_bound"] = table;
    }
    return {render(c, j, to_csv(rows, meta))};
  }

  if (c.command == "verify") {
    const auto checks = verify_suite(opts, variant);
    std::string csv = "check,computed,reference,tolerance,pass\n";
    for (const auto& k : checks) {
      csv += k.name + "," + format_double(k.computed) + "," + format_double(k.reference) + "," +
             format_double(k.tolerance) + "," + (k.pass ? "true" : "false") + "\n";
    }
    return {c.format == "csv" ? csv : dump(to_json(checks)),
            all_pass(checks) ? kOk : kVerificationFailed};
  }

  const Neighborhood u = neighborhood_arg(c.neighborhoods.front());
  const std::uint64_t seed = *c.seed;
  auto grid = [&] {
    try {
      return parse_grid(c.p_grid);
    } catch (const Error& e) {
      throw UsageError{e.what()};
    }
  };

  if (c.command == "simulate") {
    ScalingTable t = tau_scaling(u, *c.p, {*c.n}, static_cast<std::size_t>(*c.replicas), *c.t_max,
                                 seed, opts);
    return {render(c, to_json(t, meta), to_csv(t, meta))};
  }
  if (c.command == "sweep") {
    const auto curve = p_sweep(u, *c.n, *c.T, static_cast<std::size_t>(*c.R), grid(), seed, opts);
    return {render(c, to_json(curve, meta), to_csv(curve, meta))};
  }
  if (c.command == "tau-scaling") {
    std::vector<int> ns;
    for (long v : parse_int_list(c.n_list)) ns.push_back(static_cast<int>(v));
    const auto t =
        tau_scaling(u, *c.p, ns, static_cast<std::size_t>(*c.replicas), *c.t_max, seed, opts);
    return {render(c, to_json(t, meta), to_csv(t, meta))};
  }
  if (c.command == "gamma-scan") {
    const auto s = gamma_scan(u, grid(), *c.m_max, static_cast<std::size_t>(*c.replicas), seed, opts);
    return {render(c, to_json(s, meta), to_csv(s, meta))};
  }
  // decay
  const auto d = subcritical_decay(u, *c.p, parse_int_list(c.m_list),
                                   static_cast<std::size_t>(*c.replicas), seed, opts);
  return {render(c, to_json(d, meta), to_csv(d, meta))};
}

}  // namespace

std::vector<double> parse_grid(const std::string& text) {
  const auto a = text.find(':');
  const auto b = a == std::string::npos ? std::string::npos : text.find(':', a + 1);
  if (b == std::string::npos) throw UsageError{"grid must look like start:stop:step, got '" + text + "'"};
  const double start = parse_double(text.substr(0, a), "grid");
  const double stop = parse_double(text.substr(a + 1, b - a - 1), "grid");
  const double step = parse_double(text.substr(b + 1), "grid");
  if (!(start >= 0.0 && stop <= 1.0)) throw UsageError{"grid must lie in [0, 1]"};
  try {
    return make_grid(start, stop, step);
  } catch (const Error& e) {
    throw UsageError{e.what()};
  }
}

std::vector<long> parse_int_list(const std::string& text) {
  std::vector<long> out;
  const auto colon = text.find(':');
  if (colon != std::string::npos) {
    const long lo = parse_long(text.substr(0, colon), "range");
    const long hi = parse_long(text.substr(colon + 1), "range");
    if (hi < lo) throw UsageError{"range end below start: '" + text + "'"};
    for (long v = lo; v <= hi; ++v) out.push_back(v);
    return out;
  }
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_long(trim(item), "list"));
  if (out.empty()) throw UsageError{"empty integer list"};
  for (long v : out) {
    if (v < 1) throw UsageError{"list entries must be positive: '" + text + "'"};
  }
  return out;
}

std::vector<std::pair<std::string, std::string>> parse_config_text(const std::string& text) {
  std::vector<std::pair<std::string, std::string>> out;
  std::stringstream ss(text);
  std::string line;
  int number = 0;
  while (std::getline(ss, line)) {
    ++number;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw UsageError{"config line " + std::to_string(number) + ": expected key=value"};
    }
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (!kKeys.count(key)) {
      throw UsageError{"config line " + std::to_string(number) + ": unknown key '" + key + "'"};
    }
    out.emplace_back(std::move(key), std::move(value));
  }
  return out;
}

std::string print_config(const RunConfig& c) {
  std::string s = "command=" + c.command + "\n";
  for (const auto& u : c.neighborhoods) s += "neighborhood=" + u + "\n";
  auto opt = [&s](const char* key, const auto& v) {
    if (v) s += std::string(key) + "=" + std::to_string(*v) + "\n";
  };
  if (c.p) s += "p=" + format_double(*c.p) + "\n";
  if (!c.p_grid.empty()) s += "p-grid=" + c.p_grid + "\n";
  opt("n", c.n);
  if (!c.n_list.empty()) s += "n-list=" + c.n_list + "\n";
  opt("T", c.T);
  opt("R", c.R);
  opt("replicas", c.replicas);
  opt("t-max", c.t_max);
  opt("m-max", c.m_max);
  if (!c.m_list.empty()) s += "m-list=" + c.m_list + "\n";
  opt("seed", c.seed);
  if (!c.output.empty()) s += "output=" + c.output + "\n";
  s += "format=" + c.format + "\n";
  s += "threads=" + std::to_string(c.threads) + "\n";
  s += std::string("coupled-uniform=") + (c.coupled_uniform ? "true" : "false") + "\n";
  s += std::string("paper-scale=") + (c.paper_scale ? "true" : "false") + "\n";
  s += std::string("phi-exponent-debug=") + (c.phi_exponent_debug ? "true" : "false") + "\n";
  return s;
}

int run(const std::vector<std::string>& raw_args, std::ostream& out, std::ostream& err) {
  RunConfig c;
  CLI::App app{"Percolation PCA toolkit: bounds, simulation and exact checks", "ppca"};
  app.fallthrough();
  app.require_subcommand(1);

  app.add_option("-U,--neighborhood", c.neighborhoods, "Offsets, e.g. -1,0,1 (repeatable for bounds)");
  app.add_option("--p", c.p, "Open-site probability");
  app.add_option("--p-grid", c.p_grid, "start:stop:step, inclusive");
  app.add_option("--n", c.n, "Ring half-width");
  app.add_option("--n-list", c.n_list, "Half-widths, e.g. 8,16,32");
  app.add_option("--T", c.T, "Time horizon");
  app.add_option("--R", c.R, "Replicas for the survival sweep");
  app.add_option("--replicas", c.replicas, "Replicas");
  app.add_option("--t-max", c.t_max, "Absorption-time cap");
  app.add_option("--m-max", c.m_max, "Depth for edge speeds");
  app.add_option("--m-list", c.m_list, "Depths, e.g. 2:20 or 2,4,8");
  app.add_option("--seed", c.seed, "Master seed (required for stochastic commands)");
  app.add_option("-o,--output", c.output, "Output file (default stdout)");
  app.add_option("--format", c.format, "csv or json");
  app.add_option("--threads", c.threads, "Worker threads; output does not depend on it");
  app.add_flag("--coupled-uniform", c.coupled_uniform, "Per-site uniform noise generator");
  app.add_flag("--paper-scale", c.paper_scale, "Sweep at n = T = 100000, R = 2000");
  app.add_flag("--phi-exponent-debug", c.phi_exponent_debug, "phi with exponent 2 span");
  app.add_option("--config", c.config_path, "key=value file; command-line flags win");
  app.add_flag("--print-config", c.print_config, "Print the resolved configuration and exit");

  app.add_subcommand("bounds", "p1 and p2 for one or more neighbourhoods");
  app.add_subcommand("simulate", "Mean absorption time on one ring");
  app.add_subcommand("sweep", "Survival probability over a p grid");
  app.add_subcommand("tau-scaling", "Absorption time against ring size");
  app.add_subcommand("gamma-scan", "Edge-speed difference over a p grid");
  app.add_subcommand("decay", "Survival of a single seed against depth");
  app.add_subcommand("verify", "Exact oracle checks, JSON report");

  try {
    std::vector<std::string> args = merge_config(raw_args);
    std::reverse(args.begin(), args.end());
    try {
      app.parse(args);
    } catch (const CLI::ParseError& e) {
      const int code = app.exit(e, out, err);
      return code == 0 ? kOk : kUsage;
    }
    for (const auto* sub : app.get_subcommands()) c.command = sub->get_name();
    apply_defaults(c);
    validate(c);
    if (c.print_config) {
      out << print_config(c);
      return kOk;
    }

    const Outcome result = execute(c);
    if (c.output.empty()) {
      out << result.text;
    } else {
      std::ofstream file(c.output, std::ios::binary | std::ios::trunc);
      if (!file) {
        err << "error: cannot open '" << c.output << "' for writing\n";
        return kRuntime;
      }
      file << result.text;
      file.close();
      if (!file) {
        err << "error: failed writing '" << c.output << "'\n";
        return kRuntime;
      }
    }
    if (result.code == kVerificationFailed) err << "verify: some checks failed\n";
    return result.code;
  } catch (const UsageError& e) {
    err << "usage error: " << e.message << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kRuntime;
  }
}

}  // namespace ppca::cli
