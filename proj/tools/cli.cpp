#include "cli.hpp"

#include <cstdio>
#include <filesystem>
#include <map>
#include <numeric>
#include <ostream>

#include "CLI11.hpp"
#include "svg_plot.hpp"
#include "tsloc/builder.hpp"
#include "tsloc/config.hpp"
#include "tsloc/dataset_io.hpp"
#include "tsloc/errors.hpp"
#include "tsloc/metrics.hpp"
#include "tsloc/npy.hpp"
#include "tsloc/random.hpp"

namespace tsloc::cli {
namespace fs = std::filesystem;
namespace {

std::string fixed6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

double prevalence(const Dataset& ds) {
  const auto m = ds.mask().values();
  const auto ones = std::accumulate(m.begin(), m.end(), std::size_t{0});
  return static_cast<double>(ones) / static_cast<double>(m.size());
}

// Fisher-Yates over a dedicated stream.
std::vector<std::size_t> shuffled_order(std::size_t n, std::uint64_t seed) {
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  RandomStream rng(seed);
  for (std::size_t i = n; i > 1; --i) {
    const auto j = static_cast<std::size_t>(rng.uniform_int(0, i - 1));
    std::swap(order[i - 1], order[j]);
  }
  return order;
}

struct GenerateArgs {
  std::string config;
  std::string out_dir;
  std::vector<std::string> datasets;
  bool no_components = false;
  std::optional<std::uint64_t> shuffle;
};

struct EvaluateArgs {
  std::string dataset;
  std::string attributions;
  std::vector<std::string> metrics;
  bool normalize = false;
  bool no_abs = false;
  std::string out;
  std::string format;
};

struct InspectArgs {
  std::string dataset;
};

struct PlotArgs {
  std::string dataset;
  std::optional<std::size_t> sample;
  bool per_class = false;
  std::string out;
};

int cmd_generate(const GenerateArgs& args, std::ostream& out, std::ostream& err) {
  ConfigSet configs;
  try {
    configs = load_builders_from_config(args.config);
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    return kIoError;
  }

  std::vector<std::string> selected = args.datasets;
  if (selected.empty()) {
    for (const auto& [name, _] : configs) selected.push_back(name);
  }
  for (const auto& name : selected) {
    if (!configs.contains(name)) {
      err << "error: config defines no dataset named '" << name << "'\n";
      return kUsageError;
    }
  }

  out << "name\tshape\tclasses\tprevalence\n";
  for (const auto& name : selected) {
    auto cfg = configs.at(name);
    if (args.no_components) cfg.keep_components = false;
    Dataset ds = build(cfg);
    if (args.shuffle) {
      ds = permute_samples(ds, shuffled_order(ds.n_samples(), *args.shuffle));
    }
    try {
      write_dataset(ds, fs::path(args.out_dir) / name);
    } catch (const IoError& e) {
      err << "error: " << e.what() << "\n";
      return kIoError;
    }
    out << name << "\t" << to_string(ds.shape()) << "\t" << ds.meta().n_classes
        << "\t" << fixed6(prevalence(ds)) << "\n";
  }
  return kOk;
}

int cmd_evaluate(const EvaluateArgs& args, std::ostream& out, std::ostream& err) {
  std::vector<std::string> names;
  try {
    if (args.metrics.empty()) {
      for (const auto n : kMetricNames) names.emplace_back(n);
    } else {
      for (const auto& n : args.metrics) names.push_back(canonical_metric_name(n));
    }
  } catch (const UnknownMetric& e) {
    std::string known;
    for (const auto n : kMetricNames) known += (known.empty() ? "" : ", ") + std::string(n);
    err << "error: " << e.what() << " (known: " << known << ")\n";
    return kUsageError;
  }

  ReportFormat format = ReportFormat::kJson;
  if (args.format == "csv" ||
      (args.format.empty() && fs::path(args.out).extension() == ".csv")) {
    format = ReportFormat::kCsv;
  }

  std::optional<Dataset> ds;
  TimeSeriesTensor attr;
  try {
    ds.emplace(read_dataset(args.dataset));
    attr = read_attributions(args.attributions);
  } catch (const ShapeMismatch& e) {
    err << "error: " << e.what() << "\n";
    return kUsageError;
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    return kIoError;
  } catch (const FormatError& e) {
    err << "error: " << e.what() << "\n";
    return kIoError;
  }

  if (attr.shape() != ds->shape()) {
    err << "error: attribution shape " << to_string(attr.shape())
        << " does not match dataset shape " << to_string(ds->shape()) << "\n";
    return kUsageError;
  }

  EvalOptions opts;
  opts.normalize = args.normalize;
  opts.use_abs = !args.no_abs;
  const auto results = evaluate_all(attr, *ds, opts, names);

  try {
    write_metrics_report(results, args.out, format);
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    return kIoError;
  }
  std::vector<std::string> printed;
  for (const auto& n : names) {
    if (std::ranges::find(printed, n) != printed.end()) continue;
    printed.push_back(n);
    const auto& r = results.at(n);
    for (const auto& w : r.warnings) err << "warning: " << w << "\n";
    out << n << " " << fixed6(r.mean) << "\n";
  }
  return kOk;
}

int cmd_inspect(const InspectArgs& args, std::ostream& out, std::ostream& err) {
  std::optional<Dataset> loaded;
  try {
    loaded.emplace(read_dataset(args.dataset));
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kIoError;
  }
  const Dataset& ds = *loaded;
  const Shape shape = ds.shape();

  out << "shape: " << to_string(shape) << "\n";
  out << "classes: " << ds.meta().n_classes << "\n";
  for (const auto label : ds.meta().class_labels) {
    std::size_t count = 0;
    double prev_sum = 0.0;
    for (std::size_t s = 0; s < shape.samples; ++s) {
      if (ds.y()[s] != label) continue;
      ++count;
      const auto m = ds.mask().sample(s);
      prev_sum += static_cast<double>(std::accumulate(m.begin(), m.end(), std::size_t{0})) /
                  static_cast<double>(m.size());
    }
    out << "class " << label << ": " << count << " samples, mean prevalence "
        << fixed6(count ? prev_sum / static_cast<double>(count) : 0.0) << "\n";
  }
  out << "prevalence: " << fixed6(prevalence(ds)) << "\n";

  std::map<std::size_t, std::size_t> histogram;
  for (std::size_t s = 0; s < shape.samples; ++s) {
    for (std::size_t c = 0; c < shape.dims; ++c) {
      for (const auto& run : mask_runs(ds.mask().slice(s, c))) ++histogram[run.length];
    }
  }
  out << "window lengths:";
  if (histogram.empty()) out << " none";
  out << "\n";
  for (const auto& [len, n] : histogram) out << "  " << len << ": " << n << "\n";

  out << "normalization: " << to_string(ds.meta().normalization) << "\n";
  out << "components: " << (ds.components() ? "yes" : "no") << "\n";
  out << "random_state: " << ds.meta().random_state << "\n";
  out << "fingerprint: " << ds.meta().config_fingerprint << "\n";
  out << "catalog: " << ds.meta().generator_catalog_version << "\n";
  return kOk;
}

int cmd_plot(const PlotArgs& args, std::ostream& out, std::ostream& err) {
  std::optional<Dataset> loaded;
  try {
    loaded.emplace(read_dataset(args.dataset));
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kIoError;
  }
  const Dataset& ds = *loaded;
  if (!ds.components()) {
    err << "error: MissingComponents: '" << args.dataset
        << "' has no signal.npy/feature.npy; regenerate it without --no-components\n";
    return kUsageError;
  }

  std::vector<std::size_t> rows;
  if (args.sample) {
    if (*args.sample >= ds.n_samples()) {
      err << "error: --sample " << *args.sample << " is out of range for "
          << ds.n_samples() << " samples\n";
      return kUsageError;
    }
    rows.push_back(*args.sample);
  } else {
    for (const auto label : ds.meta().class_labels) {
      const auto it = std::ranges::find(ds.y(), label);
      if (it != ds.y().end()) {
        rows.push_back(static_cast<std::size_t>(it - ds.y().begin()));
      }
    }
  }

  try {
    write_file_bytes(args.out, render_components_svg(ds, rows));
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    return kIoError;
  }
  out << "wrote " << args.out << " (" << rows.size() << " rows)\n";
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Synthetic time-series datasets with ground-truth masks, and "
               "localization metrics for attribution maps",
               "tsloc"};
  app.require_subcommand(1);

  GenerateArgs gen;
  auto* generate = app.add_subcommand("generate", "Build datasets from a YAML config");
  generate->add_option("--config", gen.config, "YAML dataset definitions")->required();
  generate->add_option("--out", gen.out_dir, "Output directory")->required();
  generate->add_option("--dataset", gen.datasets, "Only build these datasets");
  generate->add_flag("--no-components", gen.no_components,
                     "Do not store signal/feature component tensors");
  generate->add_option("--shuffle", gen.shuffle, "Shuffle samples with this seed");

  EvaluateArgs ev;
  auto* evaluate = app.add_subcommand("evaluate", "Score attributions against masks");
  evaluate->add_option("--dataset", ev.dataset, "Dataset directory")->required();
  evaluate->add_option("--attributions", ev.attributions, "Attribution .npy")->required();
  evaluate->add_option("--metrics", ev.metrics, "Comma-separated metric names")
      ->delimiter(',');
  evaluate->add_flag("--normalize", ev.normalize, "Prevalence-normalize AUC metrics");
  evaluate->add_flag("--no-abs", ev.no_abs, "Use signed attributions for ranking metrics");
  evaluate->add_option("--out", ev.out, "Report path")->required();
  evaluate->add_option("--format", ev.format, "Report format")
      ->check(CLI::IsMember({"json", "csv"}));

  InspectArgs in;
  auto* inspect = app.add_subcommand("inspect", "Summarize a dataset directory");
  inspect->add_option("--dataset", in.dataset, "Dataset directory")->required();

  PlotArgs pl;
  auto* plot = app.add_subcommand("plot", "Render signal/feature/sum panels as SVG");
  plot->add_option("--dataset", pl.dataset, "Dataset directory")->required();
  auto* sample_opt = plot->add_option("--sample", pl.sample, "Plot a single sample");
  auto* per_class_opt =
      plot->add_flag("--per-class", pl.per_class, "First sample of each class (default)");
  sample_opt->excludes(per_class_opt);
  plot->add_option("--out", pl.out, "Output .svg path")->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    for (auto* sub : app.get_subcommands()) err << sub->help();
    return kUsageError;
  }

  try {
    if (*generate) return cmd_generate(gen, out, err);
    if (*evaluate) return cmd_evaluate(ev, out, err);
    if (*inspect) return cmd_inspect(in, out, err);
    if (*plot) return cmd_plot(pl, out, err);
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kUsageError;
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    return kIoError;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kUsageError;
  }
  return kUsageError;
}

}  // namespace tsloc::cli
