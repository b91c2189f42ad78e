#include "core/config.hpp"

#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "core/error.hpp"

namespace perikon {

namespace {

std::string trim(const std::string& s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

bool parse_double(const std::string& s, double& out) {
    const char* c = s.c_str();
    char* end = nullptr;
    out = std::strtod(c, &end);
    return end != c && *end == '\0';
}

bool parse_int(const std::string& s, std::int64_t& out) {
    const char* c = s.c_str();
    char* end = nullptr;
    out = std::strtoll(c, &end, 10);
    return end != c && *end == '\0';
}

void check_value(const KeySpec& spec, const std::string& value) {
    switch (spec.type) {
        case KeyType::Double: {
            double d;
            if (!parse_double(value, d))
                throw ConfigError("key '" + spec.key + "': expected a number, got '" + value + "'");
            break;
        }
        case KeyType::Int: {
            std::int64_t i;
            if (!parse_int(value, i))
                throw ConfigError("key '" + spec.key + "': expected an integer, got '" + value + "'");
            break;
        }
        case KeyType::Bool:
            if (value != "true" && value != "false")
                throw ConfigError("key '" + spec.key + "': expected true/false, got '" + value + "'");
            break;
        case KeyType::String:
            break;
    }
}

}  // namespace

std::string format_double(double v) {
    // Shortest form that parses back to the same bits.
    char buf[40];
    for (int prec = 1; prec <= 17; ++prec) {
        std::snprintf(buf, sizeof(buf), "%.*g", prec, v);
        if (std::strtod(buf, nullptr) == v) return buf;
    }
    return buf;
}

void Schema::add(std::string key, KeyType type, std::string default_value, std::string doc) {
    index_[key] = keys_.size();
    keys_.push_back({std::move(key), type, std::move(default_value), true, std::move(doc)});
}

void Schema::add_required(std::string key, KeyType type, std::string doc) {
    index_[key] = keys_.size();
    keys_.push_back({std::move(key), type, "", false, std::move(doc)});
}

const KeySpec* Schema::find(const std::string& key) const {
    auto it = index_.find(key);
    return it == index_.end() ? nullptr : &keys_[it->second];
}

Config Config::parse_file(const std::string& path, const Schema* schema) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_text(ss.str(), schema);
}

Config Config::parse_text(const std::string& text, const Schema* schema) {
    Config cfg(schema);
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config line " + std::to_string(lineno) + ": expected 'key = value'");
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (cfg.values_.count(key))
            throw ConfigError("config line " + std::to_string(lineno) + ": duplicate key '" + key + "'");
        cfg.set(key, value);
    }
    return cfg;
}

void Config::set(const std::string& key, const std::string& value) {
    const KeySpec* spec = schema_->find(key);
    if (!spec) throw ConfigError("unknown config key '" + key + "'");
    check_value(*spec, value);
    values_[key] = value;
}

bool Config::is_set(const std::string& key) const { return values_.count(key) > 0; }

const std::string& Config::raw(const std::string& key) const {
    const KeySpec* spec = schema_->find(key);
    if (!spec) throw ConfigError("unknown config key '" + key + "'");
    auto it = values_.find(key);
    if (it != values_.end()) return it->second;
    if (!spec->has_default)
        throw ConfigError("required config key '" + key + "' is not set");
    return spec->default_value;
}

double Config::get_double(const std::string& key) const {
    double d;
    if (!parse_double(raw(key), d))
        throw ConfigError("key '" + key + "': not a number");
    return d;
}

std::int64_t Config::get_int(const std::string& key) const {
    std::int64_t i;
    if (!parse_int(raw(key), i))
        throw ConfigError("key '" + key + "': not an integer");
    return i;
}

bool Config::get_bool(const std::string& key) const { return raw(key) == "true"; }

std::string Config::get_string(const std::string& key) const { return raw(key); }

std::string Config::serialize() const {
    std::ostringstream out;
    for (const KeySpec& spec : schema_->keys()) {
        auto it = values_.find(spec.key);
        if (it != values_.end()) {
            out << spec.key << " = " << it->second << "\n";
        } else if (spec.has_default) {
            out << spec.key << " = " << spec.default_value << "\n";
        }
        // Required-but-unset keys are omitted; they belong to other scenarios.
    }
    return out.str();
}

void Config::write_file(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write config file: " + path);
    out << serialize();
    if (!out) throw IoError("write failed: " + path);
}

}  // namespace perikon
