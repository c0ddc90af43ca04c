#include "tsloc/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <yaml-cpp/yaml.h>

#include "tsloc/errors.hpp"

namespace tsloc {
namespace {

constexpr int kSchemaVersion = 1;

std::string where(const YAML::Node& node) {
  const auto mark = node.Mark();
  if (mark.is_null()) return {};
  return " (line " + std::to_string(mark.line + 1) + ")";
}

[[noreturn]] void schema_error(const std::string& path, const YAML::Node& node,
                               const std::string& msg) {
  throw SchemaError(path, path + ": " + msg + where(node));
}

[[noreturn]] void value_error(const std::string& path, const YAML::Node& node,
                              const std::string& msg) {
  throw ValueError(path, path + ": " + msg + where(node));
}

std::string join(const std::string& path, const std::string& key) {
  return path.empty() ? key : path + "." + key;
}

std::string index(const std::string& path, std::size_t i) {
  return path + "[" + std::to_string(i) + "]";
}

// Mapping node with `<<` merge keys flattened. Explicit keys win over merged
// ones; within a merge list, earlier maps win.
class MapView {
 public:
  MapView(const YAML::Node& node, std::string path)
      : node_(node), path_(std::move(path)) {
    if (!node.IsMap()) schema_error(path_, node, "expected a mapping");
    collect(node, 0);
  }

  const std::string& path() const { return path_; }
  const YAML::Node& node() const { return node_; }

  std::optional<YAML::Node> take(const std::string& key) {
    for (const auto& [k, v] : entries_) {
      if (k == key) {
        consumed_.insert(k);
        return v;
      }
    }
    return std::nullopt;
  }

  YAML::Node require(const std::string& key) {
    auto v = take(key);
    if (!v) schema_error(path_, node_, "missing required key '" + key + "'");
    return *v;
  }

  // Keys not taken yet, in document order.
  std::vector<std::pair<std::string, YAML::Node>> rest() const {
    std::vector<std::pair<std::string, YAML::Node>> out;
    for (const auto& e : entries_) {
      if (!consumed_.contains(e.first)) out.push_back(e);
    }
    return out;
  }

  void finish() const {
    for (const auto& [k, v] : entries_) {
      if (!consumed_.contains(k)) {
        schema_error(join(path_, k), v, "unknown key '" + k + "'");
      }
    }
  }

 private:
  void collect(const YAML::Node& node, int depth) {
    if (depth > 64) schema_error(path_, node, "merge keys nested too deeply");
    std::vector<YAML::Node> merges;
    for (const auto& kv : node) {
      if (!kv.first.IsScalar()) {
        schema_error(path_, kv.first, "mapping keys must be scalars");
      }
      const auto key = kv.first.Scalar();
      if (key == "<<") {
        merges.push_back(kv.second);
        continue;
      }
      add(key, kv.second);
    }
    for (const auto& m : merges) {
      if (m.IsMap()) {
        collect(m, depth + 1);
      } else if (m.IsSequence()) {
        for (const auto& item : m) {
          if (!item.IsMap()) {
            schema_error(path_, item, "'<<' expects a mapping or a list of them");
          }
          collect(item, depth + 1);
        }
      } else {
        schema_error(path_, m, "'<<' expects a mapping or a list of them");
      }
    }
  }

  void add(const std::string& key, const YAML::Node& value) {
    for (const auto& e : entries_) {
      if (e.first == key) return;
    }
    entries_.emplace_back(key, value);
  }

  YAML::Node node_;
  std::string path_;
  std::vector<std::pair<std::string, YAML::Node>> entries_;
  std::set<std::string> consumed_;
};

const std::string& scalar(const YAML::Node& node, const std::string& path,
                          const char* expected) {
  if (!node.IsScalar()) schema_error(path, node, std::string("expected ") + expected);
  return node.Scalar();
}

double as_number(const YAML::Node& node, const std::string& path) {
  scalar(node, path, "a number");
  double value = 0.0;
  if (!YAML::convert<double>::decode(node, value)) {
    schema_error(path, node, "expected a number, got '" + node.Scalar() + "'");
  }
  if (!std::isfinite(value)) value_error(path, node, "must be finite");
  return value;
}

template <typename Int>
Int as_integer(const YAML::Node& node, const std::string& path) {
  const auto& text = scalar(node, path, "an integer");
  std::string_view digits = text;
  if (!digits.empty() && digits.front() == '+') digits.remove_prefix(1);
  std::int64_t signed_value = 0;
  Int value{};
  const auto* end = digits.data() + digits.size();
  if (auto [p, ec] = std::from_chars(digits.data(), end, value);
      ec == std::errc{} && p == end) {
    return value;
  }
  if (auto [p, ec] = std::from_chars(digits.data(), end, signed_value);
      ec == std::errc{} && p == end && signed_value < 0) {
    value_error(path, node, "must be >= 0, got " + text);
  }
  double d = 0.0;
  if (YAML::convert<double>::decode(node, d)) {
    schema_error(path, node, "expected an integer, got " + text);
  }
  schema_error(path, node, "expected an integer, got '" + text + "'");
}

bool as_bool(const YAML::Node& node, const std::string& path) {
  scalar(node, path, "a boolean");
  bool value = false;
  if (!YAML::convert<bool>::decode(node, value)) {
    schema_error(path, node, "expected a boolean, got '" + node.Scalar() + "'");
  }
  return value;
}

std::size_t as_extent(const YAML::Node& node, const std::string& path) {
  const auto v = as_integer<std::uint64_t>(node, path);
  if (v < 1) value_error(path, node, "must be >= 1");
  return static_cast<std::size_t>(v);
}

template <typename Fn>
void for_each_item(const YAML::Node& node, const std::string& path, Fn&& fn) {
  if (!node.IsSequence()) schema_error(path, node, "expected a list");
  std::size_t i = 0;
  for (const auto& item : node) {
    fn(item, index(path, i));
    ++i;
  }
}

class Loader {
 public:
  explicit Loader(const GeneratorRegistry& registry) : registry_(registry) {}

  ConfigSet load(const YAML::Node& root) {
    if (!root.IsDefined() || root.IsNull()) {
      throw SchemaError("", "document is empty; expected a 'datasets' mapping");
    }
    MapView doc(root, "");
    if (auto schema = doc.take("schema")) {
      const auto v = as_integer<std::uint64_t>(*schema, "schema");
      if (v != kSchemaVersion) {
        value_error("schema", *schema,
                    "unsupported schema version " + std::to_string(v));
      }
    }
    const auto datasets = doc.require("datasets");
    doc.finish();

    MapView sets(datasets, "datasets");
    ConfigSet out;
    for (const auto& [name, node] : sets.rest()) {
      out.emplace(name, dataset(node, join("datasets", name)));
    }
    if (out.empty()) {
      schema_error("datasets", datasets, "at least one dataset is required");
    }
    return out;
  }

 private:
  BuilderConfig dataset(const YAML::Node& node, const std::string& path) {
    MapView map(node, path);
    BuilderConfig cfg;
    cfg.n_timesteps = as_extent(map.require("n_timesteps"), join(path, "n_timesteps"));
    cfg.n_samples = as_extent(map.require("n_samples"), join(path, "n_samples"));
    cfg.random_state = as_integer<std::uint64_t>(map.require("random_state"),
                                                 join(path, "random_state"));
    if (auto n = map.take("n_dims")) cfg.n_dims = as_extent(*n, join(path, "n_dims"));
    if (auto n = map.take("normalization")) {
      const auto p = join(path, "normalization");
      const auto parsed = parse_normalization(scalar(*n, p, "a string"));
      if (!parsed) {
        value_error(p, *n, "must be 'zscore' or 'none', got '" + n->Scalar() + "'");
      }
      cfg.normalization = *parsed;
    }
    if (auto k = map.take("keep_components")) {
      cfg.keep_components = as_bool(*k, join(path, "keep_components"));
    }
    const auto classes_path = join(path, "classes");
    for_each_item(map.require("classes"), classes_path,
                  [&](const YAML::Node& item, const std::string& p) {
                    cfg.classes.push_back(class_spec(item, p, cfg));
                  });
    map.finish();

    try {
      validate_config(cfg, registry_);
    } catch (const ConfigError& e) {
      value_error(classes_path, node, e.what());
    }
    return cfg;
  }

  ClassSpec class_spec(const YAML::Node& node, const std::string& path,
                       const BuilderConfig& cfg) {
    MapView map(node, path);
    ClassSpec cls;
    const auto label_node = map.require("label");
    const auto label = as_integer<std::uint64_t>(label_node, join(path, "label"));
    if (label > static_cast<std::uint64_t>(INT64_MAX)) {
      value_error(join(path, "label"), label_node, "label is too large");
    }
    cls.label = static_cast<std::int64_t>(label);

    std::size_t position = 0;
    for_each_item(map.require("channels"), join(path, "channels"),
                  [&](const YAML::Node& item, const std::string& p) {
                    auto [idx, spec] = channel_spec(item, p, position++, cfg);
                    if (!cls.channels.emplace(idx, std::move(spec)).second) {
                      value_error(p, item, "channel " + std::to_string(idx) +
                                               " is listed twice");
                    }
                  });
    map.finish();
    return cls;
  }

  std::pair<std::size_t, ChannelSpec> channel_spec(const YAML::Node& node,
                                                   const std::string& path,
                                                   std::size_t position,
                                                   const BuilderConfig& cfg) {
    MapView map(node, path);
    std::size_t idx = position;
    if (auto c = map.take("channel")) {
      idx = static_cast<std::size_t>(
          as_integer<std::uint64_t>(*c, join(path, "channel")));
    }
    if (idx >= cfg.n_dims) {
      value_error(join(path, "channel"), node,
                  "channel " + std::to_string(idx) + " is out of range for n_dims " +
                      std::to_string(cfg.n_dims));
    }
    ChannelSpec spec;
    if (auto s = map.take("signals")) {
      for_each_item(*s, join(path, "signals"),
                    [&](const YAML::Node& item, const std::string& p) {
                      MapView entry(item, p);
                      spec.signals.push_back(generator(entry));
                    });
    }
    if (auto f = map.take("features")) {
      for_each_item(*f, join(path, "features"),
                    [&](const YAML::Node& item, const std::string& p) {
                      spec.features.push_back(feature(item, p, cfg));
                    });
    }
    map.finish();
    return {idx, std::move(spec)};
  }

  FeatureSpec feature(const YAML::Node& node, const std::string& path,
                      const BuilderConfig& cfg) {
    MapView entry(node, path);
    FeaturePlacement placement;
    placement.random_location = false;
    if (auto v = entry.take("random_location")) {
      placement.random_location = as_bool(*v, join(path, "random_location"));
    }
    if (auto v = entry.take("fixed_start")) {
      placement.fixed_start = as_integer<std::uint64_t>(*v, join(path, "fixed_start"));
    }
    const auto pct_path = join(path, "length_pct");
    const auto pct_node = entry.require("length_pct");
    placement.length_pct = as_number(pct_node, pct_path);
    if (auto v = entry.take("align_across_channels")) {
      placement.align_across_channels = as_bool(*v, join(path, "align_across_channels"));
    }

    if (!(placement.length_pct > 0.0 && placement.length_pct <= 1.0)) {
      value_error(pct_path, pct_node, "must lie in (0, 1]");
    }
    try {
      validate_placement(placement, cfg.n_timesteps);
    } catch (const InvalidPlacement& e) {
      value_error(placement.fixed_start ? join(path, "fixed_start") : path, node,
                  e.what());
    }
    return {generator(entry), placement};
  }

  // Consumes `kind` and every remaining key as a numeric parameter.
  GeneratorSpec generator(MapView& entry) {
    const auto kind_path = join(entry.path(), "kind");
    const auto kind_node = entry.require("kind");
    GeneratorSpec spec;
    spec.kind = scalar(kind_node, kind_path, "a generator name");
    if (!registry_.contains(spec.kind)) {
      std::string msg = "unknown generator kind '" + spec.kind + "'";
      const auto near = registry_.suggestions(spec.kind);
      if (!near.empty()) {
        msg += "; did you mean";
        for (std::size_t i = 0; i < near.size(); ++i) {
          msg += (i ? ", '" : " '") + near[i] + "'";
        }
        msg += "?";
      }
      schema_error(kind_path, kind_node, msg);
    }
    const auto known = registry_.param_names(spec.kind);
    for (const auto& [key, value] : entry.rest()) {
      if (std::ranges::find(known, key) == known.end()) {
        schema_error(join(entry.path(), key), value,
                     "unknown key '" + key + "' for generator '" + spec.kind + "'");
      }
      spec.params.emplace(key, as_number(value, join(entry.path(), key)));
      entry.take(key);
    }
    try {
      registry_.resolve(spec);
    } catch (const InvalidParam& e) {
      const auto p = join(entry.path(), e.param());
      if (!spec.params.contains(e.param())) {
        schema_error(p, entry.node(), e.what());
      }
      value_error(p, entry.node(), e.what());
    } catch (const MissingParam& e) {
      schema_error(join(entry.path(), e.param()), entry.node(), e.what());
    }
    return spec;
  }

  const GeneratorRegistry& registry_;
};

}  // namespace

ConfigSet load_builders_from_string(std::string_view yaml,
                                    const GeneratorRegistry& registry) {
  YAML::Node root;
  try {
    root = YAML::Load(std::string(yaml));
  } catch (const YAML::Exception& e) {
    const int line = e.mark.is_null() ? 0 : e.mark.line + 1;
    const int column = e.mark.is_null() ? 0 : e.mark.column + 1;
    throw ParseError("YAML parse error at line " + std::to_string(line) +
                         ", column " + std::to_string(column) + ": " + e.msg,
                     line, column);
  }
  return Loader(registry).load(root);
}

ConfigSet load_builders_from_config(const std::filesystem::path& path,
                                    const GeneratorRegistry& registry) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read config file '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return load_builders_from_string(buf.str(), registry);
}

}  // namespace tsloc
