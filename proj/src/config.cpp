#include "hyperpin/config.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <functional>
#include <sstream>
#include <variant>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "hyperpin/csv.hpp"
#include "hyperpin/errors.hpp"

namespace hyperpin {

namespace {

using FieldRef = std::variant<int*, double*, std::uint64_t*, std::string*>;

struct Binding {
  const char* section;
  const char* key;
  std::function<FieldRef(ExperimentConfig&)> field;
};

#define HYPERPIN_BIND(sec, member) \
  Binding { #sec, #member, [](ExperimentConfig& c) -> FieldRef { return &c.sec.member; } }

const std::vector<Binding>& bindings() {
  static const std::vector<Binding> all = {
      HYPERPIN_BIND(topology, kind),        HYPERPIN_BIND(topology, n),
      HYPERPIN_BIND(topology, p),           HYPERPIN_BIND(topology, o),
      HYPERPIN_BIND(topology, orientation), HYPERPIN_BIND(topology, seed),
      HYPERPIN_BIND(topology, path),        HYPERPIN_BIND(topology, candidate_cap),
      HYPERPIN_BIND(dynamics, model),       HYPERPIN_BIND(dynamics, sigma),
      HYPERPIN_BIND(dynamics, kappa),       HYPERPIN_BIND(dynamics, t_end),
      HYPERPIN_BIND(dynamics, step),        HYPERPIN_BIND(dynamics, record_stride),
      HYPERPIN_BIND(dynamics, init),        HYPERPIN_BIND(dynamics, init_variance),
      HYPERPIN_BIND(dynamics, pinner_init), HYPERPIN_BIND(selection, method),
      HYPERPIN_BIND(selection, pins),       HYPERPIN_BIND(selection, candidates),
      HYPERPIN_BIND(selection, cap),        HYPERPIN_BIND(selection, exhaustive),
      HYPERPIN_BIND(selection, replicates),
      HYPERPIN_BIND(selection, n_min),      HYPERPIN_BIND(selection, n_max),
      HYPERPIN_BIND(selection, p_list),     HYPERPIN_BIND(selection, o_list),
      HYPERPIN_BIND(msf, re_min),           HYPERPIN_BIND(msf, re_max),
      HYPERPIN_BIND(msf, im_min),           HYPERPIN_BIND(msf, im_max),
      HYPERPIN_BIND(msf, re_points),        HYPERPIN_BIND(msf, im_points),
      HYPERPIN_BIND(msf, transient),        HYPERPIN_BIND(msf, horizon),
      HYPERPIN_BIND(msf, renorm),           HYPERPIN_BIND(msf, step),
      HYPERPIN_BIND(msf, mu_max),           HYPERPIN_BIND(output, directory),
      HYPERPIN_BIND(output, formats),
  };
  return all;
}

#undef HYPERPIN_BIND

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

template <typename T>
T parse_number(const std::string& text, const std::string& where) {
  T value{};
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end) throw ConfigError(where + ": cannot parse '" + text + "'");
  return value;
}

void assign(FieldRef ref, const std::string& value, const std::string& where) {
  std::visit(
      [&](auto* field) {
        using T = std::remove_pointer_t<decltype(field)>;
        if constexpr (std::is_same_v<T, std::string>) {
          *field = value;
        } else {
          *field = parse_number<T>(value, where);
        }
      },
      ref);
}

std::string render(FieldRef ref) {
  return std::visit(
      [](auto* field) -> std::string {
        using T = std::remove_pointer_t<decltype(field)>;
        if constexpr (std::is_same_v<T, std::string>) {
          return *field;
        } else if constexpr (std::is_same_v<T, double>) {
          return format_double(*field);
        } else {
          return std::to_string(*field);
        }
      },
      ref);
}

template <typename T>
std::vector<T> parse_list(const std::string& text, const char* what) {
  std::vector<T> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty()) continue;
    out.push_back(parse_number<T>(item, what));
  }
  return out;
}

}  // namespace

std::vector<double> parse_double_list(const std::string& text) { return parse_list<double>(text, "list"); }
std::vector<int> parse_int_list(const std::string& text) { return parse_list<int>(text, "list"); }

std::vector<std::vector<int>> parse_head_sets(const std::string& text) {
  std::vector<std::vector<int>> out;
  std::stringstream ss(text);
  std::string group;
  while (std::getline(ss, group, ';')) {
    if (trim(group).empty()) continue;
    out.push_back(parse_int_list(group));
  }
  return out;
}

ExperimentConfig ExperimentConfig::parse(std::istream& in) {
  boost::property_tree::ptree tree;
  try {
    boost::property_tree::ini_parser::read_ini(in, tree);
  } catch (const boost::property_tree::ini_parser_error& e) {
    throw ConfigError(e.what());
  }
  ExperimentConfig cfg;
  for (const auto& [section, keys] : tree) {
    if (keys.empty()) throw ConfigError("key '" + section + "' outside a section");
    const bool known = std::any_of(bindings().begin(), bindings().end(),
                                   [&](const Binding& b) { return section == b.section; });
    if (!known) throw ConfigError("unknown section [" + section + "]");
    for (const auto& [key, node] : keys) {
      const auto it = std::find_if(bindings().begin(), bindings().end(),
                                   [&](const Binding& b) { return section == b.section && key == b.key; });
      if (it == bindings().end()) throw ConfigError("unknown key '" + key + "' in [" + section + "]");
      assign(it->field(cfg), trim(node.data()), section + "." + key);
    }
  }
  cfg.validate();
  return cfg;
}

ExperimentConfig ExperimentConfig::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path);
  return parse(in);
}

void ExperimentConfig::write(std::ostream& out) const {
  auto& self = const_cast<ExperimentConfig&>(*this);
  std::string section;
  for (const auto& b : bindings()) {
    if (section != b.section) {
      if (!section.empty()) out << '\n';
      section = b.section;
      out << '[' << section << "]\n";
    }
    out << b.key << " = " << render(b.field(self)) << '\n';
  }
}

void ExperimentConfig::validate() const {
  auto one_of = [](const std::string& v, std::initializer_list<const char*> options, const char* key) {
    for (const char* o : options) {
      if (v == o) return;
    }
    throw ConfigError(std::string(key) + ": unsupported value '" + v + "'");
  };
  one_of(topology.kind, {"ring", "er", "file"}, "topology.kind");
  one_of(topology.orientation, {"centered", "forward", "backward"}, "topology.orientation");
  one_of(dynamics.model, {"consensus", "lorenz_arctan"}, "dynamics.model");
  one_of(dynamics.init, {"index", "gaussian"}, "dynamics.init");
  one_of(selection.method, {"greedy", "exhaustive", "random", "degree", "sweep"}, "selection.method");
  one_of(selection.candidates, {"singletons", "pins"}, "selection.candidates");
  one_of(output.formats, {"csv"}, "output.formats");
  if (topology.n < 1) throw ConfigError("topology.n must be >= 1");
  if (!(topology.p >= 0.0 && topology.p <= 1.0)) throw ConfigError("topology.p must be in [0, 1]");
  if (topology.o < 2) throw ConfigError("topology.o must be >= 2");
  if (!(dynamics.sigma > 0.0)) throw ConfigError("dynamics.sigma must be > 0");
  if (!(dynamics.kappa >= 0.0)) throw ConfigError("dynamics.kappa must be >= 0");
  if (dynamics.t_end < 0.0 || dynamics.step < 0.0) throw ConfigError("dynamics.t_end/step must be >= 0");
  if (dynamics.record_stride < 1) throw ConfigError("dynamics.record_stride must be >= 1");
  if (selection.replicates < 1) throw ConfigError("selection.replicates must be >= 1");
  if (selection.cap < 0) throw ConfigError("selection.cap must be >= 0");
  if (selection.n_min > selection.n_max) throw ConfigError("selection.n_min must not exceed n_max");
}

}  // namespace hyperpin
