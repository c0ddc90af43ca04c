#pragma once

#include <string>
#include <string_view>

#include "tsloc/builder.hpp"

namespace tsloc {

// Canonical JSON text of a config: object keys sorted, classes ordered by
// label, empty channels dropped, generator parameters completed with their
// defaults (when the kind is registered) and all numbers in shortest
// round-trip form. keep_components is not part of a config's identity.
std::string canonical_json(const BuilderConfig& config,
                           const GeneratorRegistry& registry =
                               GeneratorRegistry::global());

// Stable identity of a config: "fnv1a64:" followed by 16 hex digits of the
// FNV-1a hash of canonical_json(config).
std::string fingerprint(const BuilderConfig& config,
                        const GeneratorRegistry& registry =
                            GeneratorRegistry::global());

std::string fnv1a64_hex(std::string_view bytes);

}  // namespace tsloc
