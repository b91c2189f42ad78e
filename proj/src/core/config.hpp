// Flat key/value configuration with a declared schema. Files are plain
// text, one `key = value` per line, `#` comments. Unknown keys are errors;
// serialization writes resolved values in schema order so that
// parse -> serialize -> parse is the identity.
#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace perikon {

enum class KeyType { Double, Int, Bool, String };

struct KeySpec {
    std::string key;
    KeyType type = KeyType::Double;
    // Empty means the key has no default and must be set before use.
    std::string default_value;
    bool has_default = true;
    std::string doc;
};

class Schema {
public:
    void add(std::string key, KeyType type, std::string default_value, std::string doc);
    void add_required(std::string key, KeyType type, std::string doc);
    const KeySpec* find(const std::string& key) const;
    const std::vector<KeySpec>& keys() const { return keys_; }

private:
    std::vector<KeySpec> keys_;
    std::map<std::string, std::size_t> index_;
};

class Config {
public:
    explicit Config(const Schema* schema) : schema_(schema) {}

    static Config parse_file(const std::string& path, const Schema* schema);
    static Config parse_text(const std::string& text, const Schema* schema);

    void set(const std::string& key, const std::string& value);
    bool is_set(const std::string& key) const;

    double get_double(const std::string& key) const;
    std::int64_t get_int(const std::string& key) const;
    bool get_bool(const std::string& key) const;
    std::string get_string(const std::string& key) const;

    // Resolved view (defaults materialized), schema order.
    std::string serialize() const;
    void write_file(const std::string& path) const;

    const Schema& schema() const { return *schema_; }

private:
    const std::string& raw(const std::string& key) const;
    const Schema* schema_;
    std::map<std::string, std::string> values_;
};

// Canonical float formatting used for configs and CSV output: shortest
// representation that round-trips exactly.
std::string format_double(double v);

}  // namespace perikon
