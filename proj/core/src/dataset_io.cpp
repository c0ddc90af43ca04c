#include "tsloc/dataset_io.hpp"

#include <array>
#include <cstdio>
#include <system_error>

#include <nlohmann/json.hpp>

#include "tsloc/errors.hpp"
#include "tsloc/npy.hpp"

namespace tsloc {
namespace fs = std::filesystem;
namespace {

using nlohmann::json;

std::array<std::size_t, 3> dims(const Shape& s) {
  return {s.samples, s.dims, s.timesteps};
}

Shape shape3(const NpyArray& a, const std::string& file) {
  if (a.shape.size() != 3) {
    throw FormatError(file + " must be 3-dimensional, got " +
                      std::to_string(a.shape.size()) + " dimensions");
  }
  return {a.shape[0], a.shape[1], a.shape[2]};
}

NpyArray load(const fs::path& dir, const char* name) {
  const auto path = dir / name;
  std::error_code ec;
  if (!fs::is_regular_file(path, ec)) {
    throw FormatError(std::string("MissingFile: ") + name + " not found in '" +
                      dir.string() + "'");
  }
  return read_npy(path);
}

TimeSeriesTensor load_f8(const fs::path& dir, const char* name) {
  const auto a = load(dir, name);
  if (!a.is_floating()) {
    throw FormatError(std::string(name) + " must hold floating-point values");
  }
  return TimeSeriesTensor(shape3(a, name), a.to_f8());
}

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (const char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::string meta_to_json(const DatasetMeta& meta) {
  json j{{"format_version", kDatasetFormatVersion},
         {"n_classes", meta.n_classes},
         {"class_labels", meta.class_labels},
         {"random_state", meta.random_state},
         {"normalization", std::string(to_string(meta.normalization))},
         {"config_fingerprint", meta.config_fingerprint},
         {"generator_catalog_version", meta.generator_catalog_version},
         {"overlapping_windows", meta.overlapping_windows}};
  j["config"] = meta.config_json.empty() ? json(nullptr) : json::parse(meta.config_json);
  return j.dump(2) + "\n";
}

DatasetMeta meta_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw FormatError(std::string("meta.json is not valid JSON: ") + e.what());
  }
  try {
    if (j.at("format_version").get<int>() != kDatasetFormatVersion) {
      throw FormatError("unsupported dataset format_version " +
                        j.at("format_version").dump());
    }
    DatasetMeta meta;
    meta.n_classes = j.at("n_classes").get<std::int64_t>();
    meta.class_labels = j.at("class_labels").get<std::vector<std::int64_t>>();
    meta.random_state = j.at("random_state").get<std::uint64_t>();
    const auto norm = parse_normalization(j.at("normalization").get<std::string>());
    if (!norm) throw FormatError("meta.json has an unknown normalization");
    meta.normalization = *norm;
    meta.config_fingerprint = j.at("config_fingerprint").get<std::string>();
    meta.generator_catalog_version = j.at("generator_catalog_version").get<std::string>();
    meta.overlapping_windows = j.value("overlapping_windows", std::uint64_t{0});
    if (j.contains("config") && !j["config"].is_null()) {
      meta.config_json = j["config"].dump();
    }
    return meta;
  } catch (const json::exception& e) {
    throw FormatError(std::string("meta.json: ") + e.what());
  }
}

void write_dataset(const Dataset& ds, const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create '" + dir.string() + "': " + ec.message());

  const auto shape = dims(ds.shape());
  const std::array<std::size_t, 1> yshape{ds.y().size()};
  write_npy(dir / "X.npy", ds.X().values(), shape);
  write_npy(dir / "y.npy", std::span<const std::int64_t>(ds.y()), yshape);
  write_npy(dir / "mask.npy", ds.mask().values(), shape);
  if (ds.components()) {
    write_npy(dir / "signal.npy", ds.components()->signal.values(), shape);
    write_npy(dir / "feature.npy", ds.components()->feature.values(), shape);
  } else {
    fs::remove(dir / "signal.npy", ec);
    fs::remove(dir / "feature.npy", ec);
  }
  write_file_bytes(dir / "meta.json", meta_to_json(ds.meta()));
}

Dataset read_dataset(const fs::path& dir) {
  std::error_code ec;
  if (!fs::is_directory(dir, ec)) {
    throw IoError("dataset directory '" + dir.string() + "' does not exist");
  }
  if (!fs::is_regular_file(dir / "meta.json", ec)) {
    throw FormatError("MissingFile: meta.json not found in '" + dir.string() + "'");
  }
  auto meta = meta_from_json(read_file_bytes(dir / "meta.json"));
  auto x = load_f8(dir, "X.npy");

  const auto ya = load(dir, "y.npy");
  if (ya.shape.size() != 1) throw FormatError("y.npy must be 1-dimensional");
  auto y = ya.to_i8();

  const auto ma = load(dir, "mask.npy");
  GroundTruthMask mask(shape3(ma, "mask.npy"), ma.to_u1());

  const bool has_signal = fs::is_regular_file(dir / "signal.npy", ec);
  const bool has_feature = fs::is_regular_file(dir / "feature.npy", ec);
  if (has_signal != has_feature) {
    throw FormatError("MissingFile: signal.npy and feature.npy must be present together");
  }
  std::optional<Components> components;
  if (has_signal) {
    components = Components{load_f8(dir, "signal.npy"), load_f8(dir, "feature.npy")};
  }
  return Dataset(std::move(x), std::move(y), std::move(mask),
                 std::move(components), std::move(meta));
}

TimeSeriesTensor read_attributions(const fs::path& path) {
  const auto a = read_npy(path);
  if (a.shape.size() == 2) {
    return TimeSeriesTensor(Shape{a.shape[0], 1, a.shape[1]}, a.to_f8());
  }
  if (a.shape.size() != 3) {
    throw FormatError("attributions must be 2- or 3-dimensional, got " +
                      std::to_string(a.shape.size()) + " dimensions");
  }
  return TimeSeriesTensor(shape3(a, path.filename().string()), a.to_f8());
}

std::string render_metrics_report(const std::map<std::string, MetricResult>& results,
                                  ReportFormat format) {
  if (format == ReportFormat::kJson) {
    json doc = json::object();
    for (const auto& [name, r] : results) {
      doc[name] = json{{"mean", r.mean},
                       {"n_excluded", r.n_excluded},
                       {"normalized", r.normalized},
                       {"per_sample", r.per_sample},
                       {"sample_indices", r.sample_indices}};
    }
    return doc.dump(2) + "\n";
  }

  std::string out = "metric,field,sample,value\r\n";
  for (const auto& [name, r] : results) {
    const auto metric = csv_field(name);
    for (std::size_t i = 0; i < r.per_sample.size(); ++i) {
      out += metric + ",score," + std::to_string(r.sample_indices[i]) + "," +
             format_double(r.per_sample[i]) + "\r\n";
    }
    out += metric + ",mean,," + format_double(r.mean) + "\r\n";
    out += metric + ",n_excluded,," + std::to_string(r.n_excluded) + "\r\n";
    out += metric + ",normalized,," + (r.normalized ? "true" : "false") + "\r\n";
  }
  return out;
}

void write_metrics_report(const std::map<std::string, MetricResult>& results,
                          const fs::path& path, ReportFormat format) {
  write_file_bytes(path, render_metrics_report(results, format));
}

}  // namespace tsloc
