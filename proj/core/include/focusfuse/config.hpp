#pragma once

#include <map>
#include <string>

#include "focusfuse/pipeline.hpp"

namespace ff {

/// Flat "key = value" settings. Later sources override earlier ones
/// (defaults < config file < command-line overrides); unknown keys and
/// unparsable values are errors.
using ConfigMap = std::map<std::string, std::string>;

/// Parse a config file: one "key = value" per line, '#' comments, blank
/// lines ignored.
ConfigMap parse_config_file(const std::string& path);

/// Parse one "key=value" override as passed on the command line.
void add_override(ConfigMap& map, const std::string& assignment);

/// Apply dotted keys (ssf.alpha, pyr.levels, sf.window, cv.area_frac, ...)
/// onto a FusionConfig. Throws on unknown keys or bad values.
void apply_config(FusionConfig& cfg, const ConfigMap& map);

/// The set of recognized keys with their current values, for --help output.
std::map<std::string, std::string> config_keys(const FusionConfig& cfg);

}  // namespace ff
