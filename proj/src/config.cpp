#include "qubogs/config.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <set>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

namespace qubogs {

namespace {

namespace pt = boost::property_tree;

const std::map<std::string, std::set<std::string>>& known_keys() {
  static const std::map<std::string, std::set<std::string>> keys = {
      {"problem", {"m", "length", "boundary", "bottom", "top", "left", "right", "sources"}},
      {"solver",
       {"blocks", "bits", "scale", "offset", "shrink", "tolerance", "max_iters", "backend", "num_reads", "sweeps",
        "beta_initial", "beta_final", "seed", "noise"}},
      {"sweep", {"backends", "bits", "blocks", "shrink", "seeds"}},
      {"output", {"dir", "pgm"}},
  };
  return keys;
}

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(first, last - first + 1));
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    parts.push_back(trim(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

double to_double(const std::string& text, const std::string& key) {
  double v = 0.0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || ptr != end) throw ConfigError(key + ": expected a number, got '" + text + "'");
  return v;
}

template <typename Int>
Int to_integer(const std::string& text, const std::string& key) {
  Int v{};
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || ptr != end) throw ConfigError(key + ": expected an integer, got '" + text + "'");
  return v;
}

bool to_bool(const std::string& text, const std::string& key) {
  if (text == "true" || text == "1" || text == "yes") return true;
  if (text == "false" || text == "0" || text == "no") return false;
  throw ConfigError(key + ": expected true or false, got '" + text + "'");
}

template <typename T, typename Convert>
std::vector<T> to_list(const std::string& text, const std::string& key, Convert convert) {
  std::vector<T> out;
  for (const auto& item : split(text, ',')) {
    if (item.empty()) throw ConfigError(key + ": empty list entry");
    out.push_back(convert(item, key));
  }
  return out;
}

Backend to_backend(const std::string& text, const std::string& key) {
  try {
    return parse_backend(text);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(key + ": " + e.what());
  }
}

// "i:j:strength" entries separated by commas.
std::vector<PointSource> to_sources(const std::string& text, const std::string& key) {
  std::vector<PointSource> out;
  if (trim(text).empty()) return out;
  for (const auto& item : split(text, ',')) {
    const auto fields = split(item, ':');
    if (fields.size() != 3) throw ConfigError(key + ": expected i:j:strength, got '" + item + "'");
    out.push_back({to_integer<int>(fields[0], key), to_integer<int>(fields[1], key), to_double(fields[2], key)});
  }
  return out;
}

class Reader {
 public:
  explicit Reader(const pt::ptree& tree) : tree_(tree) {}

  template <typename Fn>
  void with(const std::string& section, const std::string& name, Fn&& fn) const {
    const auto sec = tree_.get_child_optional(section);
    if (!sec) return;
    const auto value = sec->get_optional<std::string>(pt::ptree::path_type(name, '\0'));
    if (value) fn(trim(*value), section + "." + name);
  }

 private:
  const pt::ptree& tree_;
};

}  // namespace

HeatProblem ProblemSection::to_problem() const {
  HeatProblem p;
  p.m = m;
  p.length = length;
  p.sources = sources;
  if (boundary == "constant") p.boundary = constant_boundary(bottom, top, left, right);
  return p;
}

void ExperimentConfig::validate() const {
  auto guard = [](const std::string& key, auto&& fn) {
    try {
      fn();
    } catch (const ConfigError&) {
      throw;
    } catch (const std::exception& e) {
      throw ConfigError(key + ": " + e.what());
    }
  };
  if (problem.boundary != "ramp" && problem.boundary != "constant") {
    throw ConfigError("problem.boundary: expected 'ramp' or 'constant', got '" + problem.boundary + "'");
  }
  guard("problem", [&] { problem.to_problem().validate(); });
  const auto n = static_cast<std::size_t>((problem.m - 1) * (problem.m - 1));
  guard("solver", [&] { solver.validate(n); });

  if (sweep.backends.empty()) throw ConfigError("sweep.backends: list is empty");
  if (sweep.bits.empty()) throw ConfigError("sweep.bits: list is empty");
  if (sweep.blocks.empty()) throw ConfigError("sweep.blocks: list is empty");
  if (sweep.shrink.empty()) throw ConfigError("sweep.shrink: list is empty");
  if (sweep.seeds.empty()) throw ConfigError("sweep.seeds: list is empty");
  for (auto r : sweep.bits) {
    if (r < 1 || r > 52) throw ConfigError("sweep.bits: entries must be in [1, 52]");
  }
  for (auto d : sweep.blocks) {
    if (d < 1 || d > n) throw ConfigError("sweep.blocks: entries must be in [1, N]");
  }
  for (auto g : sweep.shrink) {
    if (!(g > 0.0 && g <= 1.0)) throw ConfigError("sweep.shrink: entries must be in (0, 1]");
  }
}

ExperimentConfig parse_config(std::istream& in) {
  pt::ptree tree;
  try {
    pt::ini_parser::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError(std::string("malformed config: ") + e.what());
  }

  for (const auto& [section, body] : tree) {
    const auto it = known_keys().find(section);
    if (it == known_keys().end() || body.data().size() > 0) {
      throw ConfigError(section + ": unknown section or key outside a section");
    }
    for (const auto& [key, unused] : body) {
      if (!it->second.contains(key)) throw ConfigError(section + "." + key + ": unknown key");
    }
  }

  ExperimentConfig cfg;
  const Reader read(tree);
  auto& p = cfg.problem;
  read.with("problem", "m", [&](auto v, auto k) { p.m = to_integer<int>(v, k); });
  read.with("problem", "length", [&](auto v, auto k) { p.length = to_double(v, k); });
  read.with("problem", "boundary", [&](auto v, auto) { p.boundary = v; });
  read.with("problem", "bottom", [&](auto v, auto k) { p.bottom = to_double(v, k); });
  read.with("problem", "top", [&](auto v, auto k) { p.top = to_double(v, k); });
  read.with("problem", "left", [&](auto v, auto k) { p.left = to_double(v, k); });
  read.with("problem", "right", [&](auto v, auto k) { p.right = to_double(v, k); });
  read.with("problem", "sources", [&](auto v, auto k) { p.sources = to_sources(v, k); });

  auto& s = cfg.solver;
  read.with("solver", "blocks", [&](auto v, auto k) { s.blocks = to_integer<std::size_t>(v, k); });
  read.with("solver", "bits", [&](auto v, auto k) { s.bits = to_integer<std::size_t>(v, k); });
  read.with("solver", "scale", [&](auto v, auto k) { s.scale = to_double(v, k); });
  read.with("solver", "offset", [&](auto v, auto k) { s.offset = to_double(v, k); });
  read.with("solver", "shrink", [&](auto v, auto k) { s.shrink = to_double(v, k); });
  read.with("solver", "tolerance", [&](auto v, auto k) { s.tolerance = to_double(v, k); });
  read.with("solver", "max_iters", [&](auto v, auto k) { s.max_iters = to_integer<std::size_t>(v, k); });
  read.with("solver", "backend", [&](auto v, auto k) { s.backend = to_backend(v, k); });
  read.with("solver", "num_reads", [&](auto v, auto k) { s.sampler.num_reads = to_integer<std::size_t>(v, k); });
  read.with("solver", "sweeps", [&](auto v, auto k) { s.sampler.sweeps = to_integer<std::size_t>(v, k); });
  read.with("solver", "beta_initial", [&](auto v, auto k) {
    if (v != "auto") s.sampler.beta_initial = to_double(v, k);
  });
  read.with("solver", "beta_final", [&](auto v, auto k) {
    if (v != "auto") s.sampler.beta_final = to_double(v, k);
  });
  read.with("solver", "seed", [&](auto v, auto k) { s.sampler.seed = to_integer<std::uint64_t>(v, k); });
  read.with("solver", "noise", [&](auto v, auto k) { s.sampler.noise_p = to_double(v, k); });

  auto& w = cfg.sweep;
  w.backends = {s.backend};
  w.bits = {s.bits};
  w.blocks = {s.blocks};
  w.shrink = {s.shrink};
  w.seeds = {s.sampler.seed};
  read.with("sweep", "backends", [&](auto v, auto k) { w.backends = to_list<Backend>(v, k, to_backend); });
  read.with("sweep", "bits", [&](auto v, auto k) { w.bits = to_list<std::size_t>(v, k, to_integer<std::size_t>); });
  read.with("sweep", "blocks", [&](auto v, auto k) { w.blocks = to_list<std::size_t>(v, k, to_integer<std::size_t>); });
  read.with("sweep", "shrink", [&](auto v, auto k) { w.shrink = to_list<double>(v, k, to_double); });
  read.with("sweep", "seeds", [&](auto v, auto k) { w.seeds = to_list<std::uint64_t>(v, k, to_integer<std::uint64_t>); });

  read.with("output", "dir", [&](auto v, auto) { cfg.output.dir = v; });
  read.with("output", "pgm", [&](auto v, auto k) { cfg.output.pgm = to_bool(v, k); });

  cfg.validate();
  return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file '" + path.string() + "'");
  return parse_config(in);
}

}  // namespace qubogs
