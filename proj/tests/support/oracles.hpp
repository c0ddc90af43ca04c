#pragma once

// Brute-force reference computations used only by tests. They deliberately
// avoid the sorting / grouping tricks of the library kernels.

#include <cmath>
#include <cstdint>
#include <limits>
#include <set>
#include <span>
#include <vector>

namespace tsloc::oracle {

// O(n^2): fraction of (positive, negative) pairs ordered correctly, ties 1/2.
inline double pairwise_auc(std::span<const double> s, std::span<const std::uint8_t> m) {
  double wins = 0.0;
  double pairs = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (!m[i]) continue;
    for (std::size_t j = 0; j < s.size(); ++j) {
      if (m[j]) continue;
      pairs += 1.0;
      if (s[i] > s[j]) wins += 1.0;
      else if (s[i] == s[j]) wins += 0.5;
    }
  }
  return wins / pairs;
}

// Enumerates every distinct score as a threshold (descending), classifying
// s >= threshold as positive, and accumulates (R_k - R_{k-1}) * P_k.
inline double threshold_ap(std::span<const double> s, std::span<const std::uint8_t> m) {
  std::set<double, std::greater<>> thresholds(s.begin(), s.end());
  double positives = 0.0;
  for (const auto v : m) positives += v ? 1.0 : 0.0;
  double ap = 0.0;
  double prev_recall = 0.0;
  for (const double th : thresholds) {
    double tp = 0.0;
    double predicted = 0.0;
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (s[i] >= th) {
        predicted += 1.0;
        if (m[i]) tp += 1.0;
      }
    }
    const double recall = tp / positives;
    ap += (recall - prev_recall) * (tp / predicted);
    prev_recall = recall;
  }
  return ap;
}

inline double set_rma(std::span<const double> s, std::span<const std::uint8_t> m) {
  double in = 0.0;
  double all = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    all += s[i];
    if (m[i]) in += s[i];
  }
  return in / all;
}

// Repeated selection of the highest unused score, lowest index first.
inline double selection_rra(std::span<const double> s, std::span<const std::uint8_t> m) {
  std::size_t k = 0;
  for (const auto v : m) k += v ? 1 : 0;
  std::vector<bool> used(s.size(), false);
  std::size_t hits = 0;
  for (std::size_t round = 0; round < k; ++round) {
    std::size_t best = s.size();
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (used[i]) continue;
      if (best == s.size() || s[i] > s[best]) best = i;
    }
    used[best] = true;
    if (m[best]) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(k);
}

inline double scan_pointing(std::span<const double> s, std::span<const std::uint8_t> m) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < s.size(); ++i) {
    if (s[i] > s[best]) best = i;
  }
  return m[best] ? 1.0 : 0.0;
}

// Direct z-score recomputation in long double.
inline double zscore_nac(std::span<const double> s, std::span<const std::uint8_t> m) {
  long double mean = 0.0L;
  for (const double v : s) mean += v;
  mean /= static_cast<long double>(s.size());
  long double var = 0.0L;
  for (const double v : s) var += (v - mean) * (v - mean);
  var /= static_cast<long double>(s.size());
  const long double sd = std::sqrt(var);
  if (sd < 1e-12L) return 0.0;
  long double acc = 0.0L;
  std::size_t k = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (!m[i]) continue;
    acc += (s[i] - mean) / sd;
    ++k;
  }
  return static_cast<double>(acc / static_cast<long double>(k));
}

}  // namespace tsloc::oracle
