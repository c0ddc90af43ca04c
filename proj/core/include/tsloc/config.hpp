#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <string_view>

#include "tsloc/builder.hpp"

namespace tsloc {

// Dataset name -> config, as declared under `datasets:` in a YAML document.
using ConfigSet = std::map<std::string, BuilderConfig>;

// Parses a YAML dataset-definition document. Anchors, aliases and `<<` merge
// keys are expanded before the schema is checked, so aliased blocks yield
// structurally equal specs. Every unknown key is an error.
//
// Throws ParseError (malformed YAML; carries line and column), SchemaError
// (unknown key, wrong type, missing field, unknown generator kind) or
// ValueError (out-of-domain value). Both carry a dotted path such as
// "datasets.train.classes[1].channels[0].features[0].length_pct".
ConfigSet load_builders_from_string(std::string_view yaml,
                                    const GeneratorRegistry& registry =
                                        GeneratorRegistry::global());

// As above, reading from a file; throws IoError when it cannot be read.
ConfigSet load_builders_from_config(const std::filesystem::path& path,
                                    const GeneratorRegistry& registry =
                                        GeneratorRegistry::global());

}  // namespace tsloc
