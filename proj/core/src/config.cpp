#include "focusfuse/config.hpp"

#include <cstdio>
#include <fstream>
#include <functional>
#include <sstream>

namespace ff {

namespace {

std::string trim(const std::string& s) {
    const size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    const size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

double parse_double(const std::string& key, const std::string& value) {
    size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(value, &used);
    } catch (const std::exception&) {
        throw std::invalid_argument("config: bad value for " + key + ": '" + value + "'");
    }
    if (used != value.size())
        throw std::invalid_argument("config: bad value for " + key + ": '" + value + "'");
    return v;
}

int parse_int(const std::string& key, const std::string& value) {
    size_t used = 0;
    long v = 0;
    try {
        v = std::stol(value, &used);
    } catch (const std::exception&) {
        throw std::invalid_argument("config: bad value for " + key + ": '" + value + "'");
    }
    if (used != value.size() || v < -(1L << 30) || v > (1L << 30))
        throw std::invalid_argument("config: bad value for " + key + ": '" + value + "'");
    return static_cast<int>(v);
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%g", v);
    return buf;
}

struct KeyBinding {
    std::function<void(FusionConfig&, const std::string&, const std::string&)> set;
    std::function<std::string(const FusionConfig&)> get;
};

const std::map<std::string, KeyBinding>& bindings() {
    static const std::map<std::string, KeyBinding> kBindings = {
        {"ssf.alpha",
         {[](FusionConfig& c, const std::string& k, const std::string& v) { c.ssf.alpha = parse_double(k, v); },
          [](const FusionConfig& c) { return fmt(c.ssf.alpha); }}},
        {"ssf.lambda",
         {[](FusionConfig& c, const std::string& k, const std::string& v) { c.ssf.lambda = parse_double(k, v); },
          [](const FusionConfig& c) { return fmt(c.ssf.lambda); }}},
        {"ssf.beta0",
         {[](FusionConfig& c, const std::string& k, const std::string& v) { c.ssf.beta0 = parse_double(k, v); },
          [](const FusionConfig& c) { return fmt(c.ssf.beta0); }}},
        {"ssf.beta_mult",
         {[](FusionConfig& c, const std::string& k, const std::string& v) { c.ssf.beta_mult = parse_double(k, v); },
          [](const FusionConfig& c) { return fmt(c.ssf.beta_mult); }}},
        {"ssf.beta_max",
         {[](FusionConfig& c, const std::string& k, const std::string& v) { c.ssf.beta_max = parse_double(k, v); },
          [](const FusionConfig& c) { return fmt(c.ssf.beta_max); }}},
        {"ssf.inner_tol",
         {[](FusionConfig& c, const std::string& k, const std::string& v) { c.ssf.inner_tol = parse_double(k, v); },
          [](const FusionConfig& c) { return fmt(c.ssf.inner_tol); }}},
        {"ssf.max_outer_iters",
         {[](FusionConfig& c, const std::string& k, const std::string& v) { c.ssf.max_outer_iters = parse_int(k, v); },
          [](const FusionConfig& c) { return std::to_string(c.ssf.max_outer_iters); }}},
        {"pyr.levels",
         {[](FusionConfig& c, const std::string& k, const std::string& v) { c.pyr_levels = parse_int(k, v); },
          [](const FusionConfig& c) { return std::to_string(c.pyr_levels); }}},
        {"sf.window",
         {[](FusionConfig& c, const std::string& k, const std::string& v) { c.sf_window = parse_int(k, v); },
          [](const FusionConfig& c) { return std::to_string(c.sf_window); }}},
        {"cv.area_frac",
         {[](FusionConfig& c, const std::string& k, const std::string& v) { c.cv_area_frac = parse_double(k, v); },
          [](const FusionConfig& c) { return fmt(c.cv_area_frac); }}},
        {"cv.levels",
         {[](FusionConfig& c, const std::string& k, const std::string& v) { c.cv_levels = parse_int(k, v); },
          [](const FusionConfig& c) { return std::to_string(c.cv_levels); }}},
        {"grad.p",
         {[](FusionConfig& c, const std::string& k, const std::string& v) { c.grad_p = parse_double(k, v); },
          [](const FusionConfig& c) { return fmt(c.grad_p); }}},
        {"struct.block",
         {[](FusionConfig& c, const std::string& k, const std::string& v) { c.struct_block = parse_int(k, v); },
          [](const FusionConfig& c) { return std::to_string(c.struct_block); }}},
    };
    return kBindings;
}

}  // namespace

ConfigMap parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file: " + path);
    ConfigMap map;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw std::runtime_error(path + ":" + std::to_string(lineno) +
                                     ": expected 'key = value'");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty() || value.empty())
            throw std::runtime_error(path + ":" + std::to_string(lineno) +
                                     ": expected 'key = value'");
        map[key] = value;
    }
    return map;
}

void add_override(ConfigMap& map, const std::string& assignment) {
    const size_t eq = assignment.find('=');
    if (eq == std::string::npos)
        throw std::invalid_argument("expected key=value, got '" + assignment + "'");
    const std::string key = trim(assignment.substr(0, eq));
    const std::string value = trim(assignment.substr(eq + 1));
    if (key.empty() || value.empty())
        throw std::invalid_argument("expected key=value, got '" + assignment + "'");
    map[key] = value;
}

void apply_config(FusionConfig& cfg, const ConfigMap& map) {
    for (const auto& [key, value] : map) {
        const auto it = bindings().find(key);
        if (it == bindings().end()) throw std::invalid_argument("config: unknown key '" + key + "'");
        it->second.set(cfg, key, value);
    }
    cfg.validate();
}

std::map<std::string, std::string> config_keys(const FusionConfig& cfg) {
    std::map<std::string, std::string> out;
    for (const auto& [key, binding] : bindings()) out[key] = binding.get(cfg);
    return out;
}

}  // namespace ff
