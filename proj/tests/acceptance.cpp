// Standalone acceptance suite: one PASS/FAIL line per criterion, nonzero exit
// on any failure.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "support/oracles.hpp"
#include "support/test_data.hpp"
#include "tsloc/tsloc.hpp"

namespace {

using namespace tsloc;
namespace fs = std::filesystem;

// Thrown by require() to abort a check with a reason.
struct Failure {
  std::string reason;
};

void require(bool ok, const std::string& reason) {
  if (!ok) throw Failure{reason};
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

const std::string kConfig = std::string(TSLOC_CONFIG_DIR) + "/pulse_vs_seasonal.yaml";

std::map<std::string, Dataset> reference_splits() {
  const auto sets = load_builders_from_config(kConfig);
  std::map<std::string, Dataset> out;
  for (const auto& [name, cfg] : sets) out.emplace(name, build(cfg));
  return out;
}

// 1
void reference_reproduction() {
  const auto sets = reference_splits();
  require(sets.size() == 2, "expected train and test datasets");
  const std::map<std::string, std::pair<Shape, std::size_t>> expected = {
      {"train", {Shape{200, 1, 100}, 100}}, {"test", {Shape{50, 1, 100}, 25}}};
  for (const auto& [name, want] : expected) {
    const auto& ds = sets.at(name);
    require(ds.shape() == want.first, name + " shape " + to_string(ds.shape()));
    const auto zeros = static_cast<std::size_t>(std::count(ds.y().begin(), ds.y().end(), 0));
    const auto ones = static_cast<std::size_t>(std::count(ds.y().begin(), ds.y().end(), 1));
    require(zeros == want.second && ones == want.second, name + " classes unbalanced");
    for (std::size_t s = 0; s < ds.n_samples(); ++s) {
      const auto runs = mask_runs(ds.mask().slice(s, 0));
      require(runs.size() == 1 && runs[0].length == 30,
              name + " sample " + std::to_string(s) + " mask is not one 30-run");
    }
  }
}

// 2
void determinism() {
  const auto cfg = load_builders_from_config(kConfig).at("train");
  const auto a = build(cfg);
  const auto b = build(cfg);
  require(a == b, "two builds with seed 42 differ");
  require(encode_npy(a.X().values(), std::vector<std::size_t>{200, 1, 100}) ==
              encode_npy(b.X().values(), std::vector<std::size_t>{200, 1, 100}),
          "X bytes differ");
  require(a.meta().config_fingerprint == b.meta().config_fingerprint, "fingerprints differ");
  auto other_cfg = cfg;
  other_cfg.random_state = 43;
  const auto c = build(other_cfg);
  require(c.X() != a.X(), "seed 43 produced the same X");
  require(c.shape() == a.shape() && c.y() == a.y(), "seed change altered shape or y");
  for (std::size_t s = 0; s < c.n_samples(); ++s) {
    const auto runs = mask_runs(c.mask().slice(s, 0));
    require(runs.size() == 1 && runs[0].length == 30, "seed 43 broke the window-length law");
  }
}

// 3
void additive_identity() {
  auto sets = load_builders_from_config(kConfig);
  for (auto& [name, cfg] : sets) {
    cfg.normalization = Normalization::kNone;
    const auto ds = build(cfg);
    require(ds.components().has_value(), "components not kept");
    const auto x = ds.X().values();
    const auto n = ds.components()->signal.values();
    const auto f = ds.components()->feature.values();
    const auto m = ds.mask().values();
    for (std::size_t i = 0; i < x.size(); ++i) {
      require(n[i] + f[i] == x[i], name + ": n + f != x at flat index " + std::to_string(i));
      require(m[i] || f[i] == 0.0, name + ": feature nonzero outside mask");
    }
    // The zscored build keeps the same raw components.
    cfg.normalization = Normalization::kZScore;
    require(build(cfg).components() == ds.components(), name + ": components depend on normalization");
  }
}

// 4
void normalization_law() {
  auto check = [](const Dataset& ds, const std::string& what) {
    const auto& raw = ds.components();
    for (std::size_t s = 0; s < ds.n_samples(); ++s) {
      for (std::size_t c = 0; c < ds.shape().dims; ++c) {
        const auto n = raw->signal.slice(s, c);
        const auto f = raw->feature.slice(s, c);
        std::vector<double> pre(n.size());
        for (std::size_t t = 0; t < n.size(); ++t) pre[t] = n[t] + f[t];
        long double pm = 0.0L, pv = 0.0L;
        for (const double v : pre) pm += v;
        pm /= static_cast<long double>(pre.size());
        for (const double v : pre) pv += (v - pm) * (v - pm);
        const bool degenerate = std::sqrt(pv / static_cast<long double>(pre.size())) < 1e-12L;

        const auto x = ds.X().slice(s, c);
        long double mean = 0.0L, var = 0.0L;
        for (const double v : x) mean += v;
        mean /= static_cast<long double>(x.size());
        for (const double v : x) var += (v - mean) * (v - mean);
        const double sd = static_cast<double>(std::sqrt(var / static_cast<long double>(x.size())));
        if (degenerate) {
          for (const double v : x) require(v == 0.0, what + ": degenerate slice not all-zero");
        } else {
          require(std::abs(static_cast<double>(mean)) < 1e-9, what + ": |mean| " + fmt(static_cast<double>(mean)));
          require(std::abs(sd - 1.0) < 1e-9, what + ": |std - 1| " + fmt(sd - 1.0));
        }
      }
    }
  };
  for (const auto& [name, ds] : reference_splits()) check(ds, name);

  // A class with a constant background and no feature exercises the
  // degenerate branch.
  TimeSeriesBuilder b({.n_timesteps = 40, .n_dims = 2, .n_samples = 6, .random_state = 1});
  b.for_class(0).add_signal(gen::trend(0.0, 2.0), 0).add_signal(gen::gaussian_noise(1.0), 1);
  b.for_class(1)
      .add_signal(gen::random_walk(1.0), 0)
      .add_feature(gen::peak(5.0), FeaturePlacement::random(0.25), 1);
  check(b.build(), "mixed");
}

// 5
void perfect_attribution() {
  const std::vector<std::string> all(std::begin(kMetricNames), std::end(kMetricNames));
  for (const auto& [name, ds] : reference_splits()) {
    const auto r = evaluate_all(testing::mask_as_attribution(ds), ds, {}, all);
    for (const auto* m : {"auc_roc", "auc_pr", "relevance_mass", "relevance_rank", "pointing_game"}) {
      require(r.at(m).mean == 1.0, name + " " + m + " = " + fmt(r.at(m).mean));
      for (const double v : r.at(m).per_sample) require(v == 1.0, name + " " + m + " sample below 1");
    }
    for (const auto* m : {"mae", "mse"}) {
      require(r.at(m).mean == 0.0, name + " " + m + " = " + fmt(r.at(m).mean));
    }
  }
}

// 6
void chance_baselines() {
  for (const auto& [name, ds] : reference_splits()) {
    const TimeSeriesTensor constant(ds.shape(), 0.7);
    const auto roc = auc_roc_score(constant, ds);
    const auto pr = auc_pr_score(constant, ds);
    const auto roc_n = auc_roc_score(constant, ds, {.normalize = true});
    const auto pr_n = auc_pr_score(constant, ds, {.normalize = true});
    for (std::size_t i = 0; i < roc.per_sample.size(); ++i) {
      const auto m = ds.mask().sample(roc.sample_indices[i]);
      const double p = static_cast<double>(std::accumulate(m.begin(), m.end(), 0)) /
                       static_cast<double>(m.size());
      require(std::abs(roc.per_sample[i] - 0.5) <= 1e-12, name + " AUC-ROC " + fmt(roc.per_sample[i]));
      require(std::abs(pr.per_sample[i] - p) <= 1e-12, name + " AUC-PR " + fmt(pr.per_sample[i]));
      require(std::abs(roc_n.per_sample[i]) <= 1e-12, name + " normalized AUC-ROC");
      require(std::abs(pr_n.per_sample[i]) <= 1e-12, name + " normalized AUC-PR");
    }
  }
  // Prevalence other than 0.3, including an odd length.
  const auto ds = testing::dataset_from_masks({{0, 1, 0, 0, 0, 1, 1}, {1, 0, 0, 0, 0, 0, 0}});
  const auto pr = auc_pr_score(TimeSeriesTensor(ds.shape(), -2.0), ds);
  require(std::abs(pr.per_sample[0] - 3.0 / 7.0) <= 1e-12 &&
              std::abs(pr.per_sample[1] - 1.0 / 7.0) <= 1e-12,
          "AUC-PR of constant scores != prevalence");
}

// 7
void oracle_equivalence() {
  std::mt19937_64 gen(20240601);
  std::uniform_int_distribution<int> len(2, 12), bit(0, 1), level(0, 4);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  int trials = 0;
  for (; trials < 5000; ++trials) {
    const int n = len(gen);
    const bool discrete = bit(gen);
    std::vector<double> s(static_cast<std::size_t>(n));
    std::vector<std::uint8_t> m(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
      s[static_cast<std::size_t>(i)] = discrete ? level(gen) * 0.5 : u(gen);
      m[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(bit(gen));
    }
    m[0] = 1;
    m[1] = 0;
    std::shuffle(m.begin(), m.end(), gen);

    // The public metrics take |s| by default; the oracles see the same input.
    std::vector<double> a(s);
    for (auto& v : a) v = std::abs(v);
    const auto ds = testing::dataset_from_masks({m});
    const auto attr = testing::tensor_from_rows({s});
    auto near = [&](double got, double want, const char* what) {
      require(std::abs(got - want) <= 1e-12,
              std::string(what) + " differs from oracle on trial " + std::to_string(trials) +
                  ": " + fmt(got) + " vs " + fmt(want));
    };
    near(auc_roc_score(attr, ds).mean, oracle::pairwise_auc(a, m), "auc_roc");
    near(auc_pr_score(attr, ds).mean, oracle::threshold_ap(a, m), "auc_pr");
    near(nac_score(attr, ds).mean, oracle::zscore_nac(a, m), "nac");
    near(relevance_rank_accuracy(attr, ds).mean, oracle::selection_rra(a, m), "relevance_rank");
    near(pointing_game(attr, ds).mean, oracle::scan_pointing(a, m), "pointing_game");
    if (std::accumulate(a.begin(), a.end(), 0.0) > 0.0) {
      near(relevance_mass_accuracy(attr, ds).mean, oracle::set_rma(a, m), "relevance_mass");
    }
  }
  require(trials >= 1000, "too few trials");
}

// 8
void rank_invariance() {
  std::mt19937_64 gen(77);
  std::uniform_int_distribution<int> len(2, 40), bit(0, 1);
  std::uniform_real_distribution<double> u(0.0, 3.0), scale(0.01, 100.0), shift(-50.0, 50.0);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = len(gen);
    std::vector<double> s(static_cast<std::size_t>(n));
    std::vector<std::uint8_t> m(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
      s[static_cast<std::size_t>(i)] = u(gen);
      m[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(bit(gen));
    }
    m[0] = 1;
    m[1] = 0;
    std::shuffle(m.begin(), m.end(), gen);
    std::vector<double> mono(s), affine(s);
    const double a = scale(gen), b = shift(gen);
    for (auto& v : mono) v = std::log1p(v) + v * v * v;
    for (auto& v : affine) v = a * v + b;
    const auto ds = testing::dataset_from_masks({m});
    const auto base = testing::tensor_from_rows({s});
    const auto tm = testing::tensor_from_rows({mono});
    const auto ta = testing::tensor_from_rows({affine});
    // Nonnegative inputs, and signed scores for the affine case, so abs
    // preprocessing stays out of the way.
    const EvalOptions raw{.use_abs = false};
    auto same = [&](double x, double y, const char* what) {
      require(std::abs(x - y) <= 1e-12, std::string(what) + " changed on trial " +
                                            std::to_string(trial) + ": " + fmt(x) + " vs " + fmt(y));
    };
    same(auc_roc_score(tm, ds).mean, auc_roc_score(base, ds).mean, "auc_roc");
    same(auc_pr_score(tm, ds).mean, auc_pr_score(base, ds).mean, "auc_pr");
    same(relevance_rank_accuracy(tm, ds).mean, relevance_rank_accuracy(base, ds).mean, "relevance_rank");
    same(pointing_game(tm, ds).mean, pointing_game(base, ds).mean, "pointing_game");
    same(nac_score(ta, ds, raw).mean, nac_score(base, ds, raw).mean, "nac");
  }
}

// 9
void multivariate_alignment() {
  auto make = [](bool align) {
    TimeSeriesBuilder b({.n_timesteps = 100, .n_dims = 3, .n_samples = 200, .random_state = 42});
    for (std::int64_t label = 0; label < 2; ++label) {
      b.for_class(label);
      for (std::size_t ch = 0; ch < 3; ++ch) {
        b.add_signal(gen::gaussian_noise(1.0), ch)
            .add_feature(label == 0 ? gen::gaussian_pulse(3.0) : gen::seasonal(10, 3.0),
                         FeaturePlacement::random(0.3, align), ch);
      }
    }
    return b.build();
  };
  const auto aligned = make(true);
  for (std::size_t s = 0; s < aligned.n_samples(); ++s) {
    const auto r0 = mask_runs(aligned.mask().slice(s, 0));
    require(r0.size() == 1, "aligned sample has " + std::to_string(r0.size()) + " runs");
    for (std::size_t c = 1; c < 3; ++c) {
      require(mask_runs(aligned.mask().slice(s, c)) == r0,
              "aligned sample " + std::to_string(s) + " differs on channel " + std::to_string(c));
    }
  }
  const auto free = make(false);
  int differing = 0;
  for (std::size_t s = 0; s < free.n_samples(); ++s) {
    const auto a = mask_runs(free.mask().slice(s, 0));
    const auto b = mask_runs(free.mask().slice(s, 1));
    const auto c = mask_runs(free.mask().slice(s, 2));
    if (a[0].start != b[0].start || a[0].start != c[0].start) ++differing;
  }
  require(differing >= 1, "unaligned channels never differ");
}

// 10
void generator_statistics() {
  constexpr std::size_t kN = 1'000'000;
  auto moments = [](const std::vector<double>& v) {
    long double mean = 0.0L;
    for (const double x : v) mean += x;
    mean /= static_cast<long double>(v.size());
    long double var = 0.0L;
    for (const double x : v) var += (x - mean) * (x - mean);
    return std::pair<double, double>(static_cast<double>(mean),
                                     static_cast<double>(std::sqrt(var / static_cast<long double>(v.size()))));
  };
  RandomStream rng(42);
  const auto g = gaussian_noise(kN, rng, 1.0);
  const auto [gm, gs] = moments(g);
  require(std::abs(gm) < 0.01, "gaussian mean " + fmt(gm));
  require(std::abs(gs - 1.0) < 0.01, "gaussian std " + fmt(gs));

  const auto r = red_noise(kN, rng, 1.0, 0.9);
  const auto [rm, rs] = moments(r);
  long double acc = 0.0L;
  for (std::size_t t = 1; t < kN; ++t) acc += (r[t] - rm) * (r[t - 1] - rm);
  const double rho = static_cast<double>(acc / (static_cast<long double>(kN) * rs * rs));
  require(std::abs(rho - 0.9) <= 0.01, "red_noise lag-1 autocorrelation " + fmt(rho));

  const auto un = uniform_noise(kN, rng, -3.0, 5.0);
  const auto [um, us] = moments(un);
  require(std::abs(um - 1.0) <= 0.01, "uniform mean " + fmt(um));
  (void)us;
}

// 11
void yaml_fluent_parity() {
  const auto sets = load_builders_from_config(kConfig);
  const auto base = testing::pulse_vs_seasonal_builder();
  const auto train = base.clone({.n_samples = 200, .random_state = 42}).build();
  const auto test = base.clone({.n_samples = 50, .random_state = 43}).build();
  require(build(sets.at("train")) == train, "train split differs");
  require(build(sets.at("test")) == test, "test split differs");
  const std::vector<std::size_t> shape{200, 1, 100};
  require(encode_npy(build(sets.at("train")).X().values(), shape) ==
              encode_npy(train.X().values(), shape),
          "train X bytes differ");
}

// 12
void npy_bit_exactness() {
  // Golden bytes assembled from the format definition.
  const std::string dict = "{'descr': '<f8', 'fortran_order': False, 'shape': (2, 1, 3), }";
  std::string golden = std::string("\x93NUMPY", 6) + '\x01' + '\x00';
  const std::size_t header_len = 128 - 10;
  golden += static_cast<char>(header_len & 0xff);
  golden += static_cast<char>(header_len >> 8);
  golden += dict + std::string(header_len - dict.size() - 1, ' ') + "\n";
  golden += std::string(48, '\0');
  const std::vector<std::size_t> shape{2, 1, 3};
  const auto encoded = encode_npy(std::vector<double>(6, 0.0), shape);
  require(encoded == golden, "zeros (2,1,3) f8 bytes differ from golden");
  require(encoded == read_file_bytes(fs::path(TSLOC_FIXTURE_DIR) / "zeros_2x1x3_f8.npy"),
          "zeros (2,1,3) f8 bytes differ from reference fixture");

  std::mt19937_64 gen(3);
  std::uniform_real_distribution<double> u(-1e6, 1e6);
  std::vector<double> v(24);
  for (auto& x : v) x = u(gen);
  const std::vector<std::size_t> s3{2, 3, 4};
  require(decode_npy(encode_npy(v, s3)).to_f8() == v, "f8 round trip lossy");
  const std::vector<std::int64_t> iv{-5, 0, 7, INT64_MAX};
  const std::vector<std::size_t> s1{4};
  require(decode_npy(encode_npy(iv, s1)).to_i8() == iv, "i8 round trip lossy");
  const std::vector<std::uint8_t> mv{0, 1, 1, 0};
  require(decode_npy(encode_npy(mv, s1)).to_u1() == mv, "u1 round trip lossy");

  // a = arange(6).reshape(2, 3) * 1.5 - 2 in Fortran order and big-endian.
  std::vector<double> asym(6);
  for (int i = 0; i < 6; ++i) asym[static_cast<std::size_t>(i)] = i * 1.5 - 2.0;
  const auto fortran_raw = read_file_bytes(fs::path(TSLOC_FIXTURE_DIR) / "asym_2x3_f8_fortran.npy");
  std::vector<double> column_major(6);
  std::memcpy(column_major.data(), fortran_raw.data() + fortran_raw.size() - 48, 48);
  std::vector<double> transposed(6);
  for (std::size_t r = 0; r < 2; ++r) {
    for (std::size_t c = 0; c < 3; ++c) transposed[r * 3 + c] = column_major[c * 2 + r];
  }
  const auto fortran = decode_npy(fortran_raw);
  require(fortran.to_f8() == transposed && transposed == asym, "fortran_order read differs from transpose");

  const auto be_raw = read_file_bytes(fs::path(TSLOC_FIXTURE_DIR) / "asym_2x3_f8_bigendian.npy");
  std::vector<double> swapped(6);
  for (std::size_t i = 0; i < 6; ++i) {
    std::uint64_t bits = 0;
    std::memcpy(&bits, be_raw.data() + be_raw.size() - 48 + i * 8, 8);
    bits = __builtin_bswap64(bits);
    std::memcpy(&swapped[i], &bits, 8);
  }
  require(decode_npy(be_raw).to_f8() == swapped && swapped == asym, "big-endian read differs from byteswap");
}

// 13
void cli_end_to_end() {
  const auto dir = fs::temp_directory_path() / "tsloc_acceptance_cli";
  fs::remove_all(dir);
  auto run = [](std::vector<std::string> args, std::string* out_text = nullptr) {
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    if (out_text) *out_text = out.str();
    require(code == 0, "command failed (" + std::to_string(code) + "): " + err.str());
  };
  const std::string out = (dir / "data").string();
  run({"generate", "--config", kConfig, "--out", out});
  for (const auto* split : {"train", "test"}) {
    const std::string ds = out + "/" + split;
    std::string text;
    run({"evaluate", "--dataset", ds, "--attributions", ds + "/mask.npy", "--metrics",
         "auc_roc,auc_pr,relevance_mass,relevance_rank,pointing_game,mae,mse", "--out",
         (dir / (std::string(split) + ".json")).string()},
        &text);
    const std::string expected =
        "auc_roc 1.000000\nauc_pr 1.000000\nrelevance_mass 1.000000\n"
        "relevance_rank 1.000000\npointing_game 1.000000\nmae 0.000000\nmse 0.000000\n";
    require(text == expected, std::string(split) + " evaluate printed:\n" + text);
  }
  const std::string a = (dir / "a.svg").string();
  const std::string b = (dir / "b.svg").string();
  run({"plot", "--dataset", out + "/train", "--per-class", "--out", a});
  run({"plot", "--dataset", out + "/train", "--per-class", "--out", b});
  const auto svg = read_file_bytes(a);
  require(svg == read_file_bytes(b), "SVG output is not byte-stable");
  auto count = [&](const std::string& needle) {
    std::size_t n = 0;
    for (auto p = svg.find(needle); p != std::string::npos; p = svg.find(needle, p + 1)) ++n;
    return n;
  };
  require(svg.find("width=\"1200\" height=\"560\"") != std::string::npos, "canvas is not 1200x560");
  require(count("<g id=\"row-") == 2, "expected 2 rows");
  require(count("| background signal<") == 2 && count("| localized feature<") == 2 &&
              count("| sum<") == 2,
          "expected 3 panels per row");
  require(count("class=\"gt-window\"") == 2, "expected one shaded window per row");
  fs::remove_all(dir);
}

// 14
void degenerate_handling() {
  TimeSeriesBuilder b({.n_timesteps = 50, .n_samples = 20, .random_state = 4});
  b.for_class(0).add_signal(gen::gaussian_noise(1.0)).add_feature(gen::peak(2.0), FeaturePlacement::random(0.2));
  b.for_class(1).add_signal(gen::gaussian_noise(1.0));
  const auto ds = b.build();
  const auto attr = testing::mask_as_attribution(ds);
  std::vector<std::size_t> kept;
  for (std::size_t s = 0; s < ds.n_samples(); ++s) {
    if (ds.y()[s] == 0) kept.push_back(s);
  }
  // Noisy attribution so the mean is not trivially 1.
  std::vector<double> noisy(attr.values().begin(), attr.values().end());
  RandomStream rng(8);
  for (auto& v : noisy) v += rng.uniform(0.0, 0.9);
  const TimeSeriesTensor noisy_attr(ds.shape(), noisy);
  for (const auto& name : std::vector<std::string>{"auc_roc", "auc_pr", "relevance_mass",
                                                   "relevance_rank", "pointing_game", "nac"}) {
    const auto r = evaluate_all(noisy_attr, ds, {}, {name}).at(name);
    require(r.n_excluded == 10, name + " n_excluded = " + std::to_string(r.n_excluded));
    require(r.sample_indices == kept, name + " scored the wrong samples");
    const double mean = std::accumulate(r.per_sample.begin(), r.per_sample.end(), 0.0) /
                        static_cast<double>(r.per_sample.size());
    require(std::isfinite(r.mean) && std::abs(r.mean - mean) <= 1e-12, name + " mean not over the remainder");
    require(!r.warnings.empty(), name + " did not warn about exclusions");
  }

  TimeSeriesBuilder none({.n_timesteps = 50, .n_samples = 6});
  none.for_class(0).add_signal(gen::gaussian_noise(1.0));
  const auto empty = none.build();
  const TimeSeriesTensor any(empty.shape(), 1.0);
  for (const auto& name : std::vector<std::string>{"auc_roc", "auc_pr", "relevance_mass",
                                                   "relevance_rank", "pointing_game", "nac"}) {
    bool threw = false;
    try {
      evaluate_all(any, empty, {}, {name});
    } catch (const AllSamplesDegenerate&) {
      threw = true;
    }
    require(threw, name + " did not raise AllSamplesDegenerate");
  }
}

struct Criterion {
  const char* id;
  const char* name;
  std::function<void()> check;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {"AC01", "reference config", reference_reproduction},
      {"AC02", "determinism", determinism},
      {"AC03", "additive-model identity", additive_identity},
      {"AC04", "normalization law", normalization_law},
      {"AC05", "perfect-attribution oracle", perfect_attribution},
      {"AC06", "chance baselines", chance_baselines},
      {"AC07", "metric oracle equivalence", oracle_equivalence},
      {"AC08", "rank invariance", rank_invariance},
      {"AC09", "multivariate alignment", multivariate_alignment},
      {"AC10", "generator statistics", generator_statistics},
      {"AC11", "yaml/fluent parity", yaml_fluent_parity},
      {"AC12", "npy bit-exactness", npy_bit_exactness},
      {"AC13", "cli end-to-end", cli_end_to_end},
      {"AC14", "degenerate handling", degenerate_handling},
  };
  int failed = 0;
  const auto start = std::chrono::steady_clock::now();
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    std::string reason;
    try {
      c.check();
    } catch (const Failure& f) {
      reason = f.reason;
    } catch (const std::exception& e) {
      reason = std::string("unexpected exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (reason.empty()) {
      std::printf("%s PASS %-28s (%.2f s)\n", c.id, c.name, secs);
    } else {
      ++failed;
      std::printf("%s FAIL %-28s (%.2f s): %s\n", c.id, c.name, secs, reason.c_str());
    }
  }
  const double total = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::printf("%zu/%zu criteria passed in %.2f s\n", criteria.size() - static_cast<std::size_t>(failed),
              criteria.size(), total);
  return failed == 0 ? 0 : 1;
}
