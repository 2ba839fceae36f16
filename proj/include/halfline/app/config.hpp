#pragma once

// Run configuration: a flat set of documented keys read from `key = value`
// files and overridden by command-line flags.

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace halfline::app {

/// Bad input from the user: unknown key, malformed file, bad value.
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct KeyInfo {
    std::string name;
    std::string default_value;
    std::string help;
};

/// Every recognized key in serialization order.
const std::vector<KeyInfo>& known_keys();

/// Closest known key for a misspelled one, if any is reasonably close.
std::optional<std::string> suggest_key(const std::string& unknown);

class RunConfig {
public:
    /// All keys at their documented defaults.
    RunConfig();

    /// Throws UsageError for unknown keys.
    void set(const std::string& key, const std::string& value);
    const std::string& get(const std::string& key) const;

    double get_double(const std::string& key) const;
    int get_int(const std::string& key) const;
    std::vector<double> get_double_list(const std::string& key) const;
    std::vector<int> get_int_list(const std::string& key) const;

    /// `key = value` lines in known_keys() order.
    std::string serialize() const;

private:
    std::map<std::string, std::string> values_;
};

/// Applies `key = value` lines to base. Blank lines and lines starting with
/// '#' are skipped. Throws UsageError naming the line number.
RunConfig parse_config_text(const std::string& text, RunConfig base = {});

/// Reads the file (if path is non-empty), then applies the flag overrides.
RunConfig parse_config(const std::string& path,
                       const std::vector<std::pair<std::string, std::string>>& flags);

/// Comma-separated list parsing; throws UsageError on bad numbers.
std::vector<double> parse_double_list(const std::string& text, const std::string& key);

} // namespace halfline::app
