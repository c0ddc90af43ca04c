#pragma once

#include <cstddef>
#include <span>
#include <string>

#include "tsloc/dataset.hpp"

namespace tsloc::cli {

inline constexpr int kSvgWidth = 1200;
inline constexpr int kSvgRowHeight = 280;

// One row per sample, three columns: background signal, localized feature and
// their sum, with the ground-truth window shaded in the sum panel. Output is
// a pure function of the inputs. Requires ds.components().
std::string render_components_svg(const Dataset& ds,
                                  std::span<const std::size_t> samples);

}  // namespace tsloc::cli
