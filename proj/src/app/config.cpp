#include "halfline/app/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

namespace halfline::app {

namespace {

std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string::npos) return "";
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

std::size_t edit_distance(const std::string& a, const std::string& b) {
    std::vector<std::size_t> prev(b.size() + 1), cur(b.size() + 1);
    for (std::size_t j = 0; j <= b.size(); ++j) prev[j] = j;
    for (std::size_t i = 1; i <= a.size(); ++i) {
        cur[0] = i;
        for (std::size_t j = 1; j <= b.size(); ++j) {
            const std::size_t sub = prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
            cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, sub});
        }
        std::swap(prev, cur);
    }
    return prev[b.size()];
}

bool is_known(const std::string& key) {
    const auto& keys = known_keys();
    return std::any_of(keys.begin(), keys.end(), [&](const KeyInfo& k) { return k.name == key; });
}

std::string valid_key_list() {
    std::string out;
    for (const KeyInfo& k : known_keys()) {
        if (!out.empty()) out += ", ";
        out += k.name;
    }
    return out;
}

[[noreturn]] void unknown_key(const std::string& key, const std::string& where) {
    std::ostringstream os;
    os << where << "unknown key '" << key << "'";
    if (auto s = suggest_key(key)) os << "; did you mean '" << *s << "'?";
    os << " Valid keys: " << valid_key_list();
    throw UsageError(os.str());
}

double parse_double(const std::string& text, const std::string& key) {
    const std::string t = trim(text);
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(t, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (t.empty() || used != t.size() || !std::isfinite(v)) {
        throw UsageError("key '" + key + "': expected a number, got '" + text + "'");
    }
    return v;
}

} // namespace

const std::vector<KeyInfo>& known_keys() {
    static const std::vector<KeyInfo> keys{
        {"eps-list", "1e-1,3e-2,1e-2,3e-3,1e-3", "cutoff parameters for sweeps"},
        {"eps", "auto", "single cutoff parameter (auto: 1e-3, or 0.5 for appendix-check)"},
        {"mass", "1", "mass m of the Bessel kernel"},
        {"c", "tsirelson", "mixing constant, a number >= 0 or 'tsirelson'"},
        {"c-list", "0,0.1,0.2,tsirelson", "mixing constants for the general-c table"},
        {"kernel", "auto", "carleman|hankel (forms-sweep), massless|massive (bell-sweep)"},
        {"route", "all", "direct|log|laplace|all"},
        {"fn", "k0", "k0|k1|h|tau"},
        {"grid", "0.01,30,200,log", "start,stop,n,log|lin"},
        {"family", "phi", "phi|phi-damped"},
        {"depth-list", "2,4,6,8", "refinement depths J"},
        {"span-list", "2,4,6,8", "span exponents K"},
        {"octave-splits", "3", "dyadic splits of each octave in the compression basis"},
        {"dump-matrix", "", "path for the last compression matrix"},
        {"what", "all", "i1-limit|i2-self|i2-vs-config|kernel-limit|fourier-g|schedule|all"},
        {"eta-list", "1e-1,3e-2,1e-2,3e-3,1e-3", "mollifier widths"},
        {"delta", "0.5", "target gap below 2 sqrt 2 for the schedule witness"},
        {"output", "", "CSV path (empty: standard output)"},
        {"output-dir", "reproduce", "directory for reproduce-paper artifacts"},
        {"panels", "4", "quadrature panels per segment or per octave"},
        {"nodes-per-panel", "16", "Gauss-Legendre nodes per panel"},
        {"max-linear-width", "1", "widest panel on linear segments"},
    };
    return keys;
}

std::optional<std::string> suggest_key(const std::string& unknown) {
    // a plural usually means the list-valued key
    if (unknown.size() > 1 && unknown.back() == 's') {
        const std::string list = unknown.substr(0, unknown.size() - 1) + "-list";
        if (is_known(list)) return list;
    }
    std::optional<std::string> best;
    std::size_t best_d = 3;
    for (const KeyInfo& k : known_keys()) {
        const std::size_t d = edit_distance(unknown, k.name);
        if (d < best_d) {
            best_d = d;
            best = k.name;
        }
    }
    return best;
}

RunConfig::RunConfig() {
    for (const KeyInfo& k : known_keys()) values_[k.name] = k.default_value;
}

void RunConfig::set(const std::string& key, const std::string& value) {
    if (!is_known(key)) unknown_key(key, "");
    values_[key] = value;
}

const std::string& RunConfig::get(const std::string& key) const {
    const auto it = values_.find(key);
    if (it == values_.end()) unknown_key(key, "");
    return it->second;
}

double RunConfig::get_double(const std::string& key) const { return parse_double(get(key), key); }

int RunConfig::get_int(const std::string& key) const {
    const double v = get_double(key);
    if (v != std::floor(v) || std::abs(v) > 1e9) {
        throw UsageError("key '" + key + "': expected an integer, got '" + get(key) + "'");
    }
    return static_cast<int>(v);
}

std::vector<double> parse_double_list(const std::string& text, const std::string& key) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(parse_double(item, key));
    if (out.empty()) throw UsageError("key '" + key + "': empty list");
    return out;
}

std::vector<double> RunConfig::get_double_list(const std::string& key) const {
    return parse_double_list(get(key), key);
}

std::vector<int> RunConfig::get_int_list(const std::string& key) const {
    std::vector<int> out;
    for (double v : get_double_list(key)) {
        if (v != std::floor(v) || std::abs(v) > 1e9) {
            throw UsageError("key '" + key + "': expected integers, got '" + get(key) + "'");
        }
        out.push_back(static_cast<int>(v));
    }
    return out;
}

std::string RunConfig::serialize() const {
    std::ostringstream os;
    for (const KeyInfo& k : known_keys()) os << k.name << " = " << values_.at(k.name) << "\n";
    return os.str();
}

RunConfig parse_config_text(const std::string& text, RunConfig base) {
    std::istringstream in(text);
    std::string line;
    int number = 0;
    while (std::getline(in, line)) {
        ++number;
        const std::string t = trim(line);
        if (t.empty() || t.front() == '#') continue;
        const auto eq = t.find('=');
        const std::string where = "config line " + std::to_string(number) + ": ";
        if (eq == std::string::npos) {
            throw UsageError(where + "expected 'key = value', got '" + t + "'");
        }
        const std::string key = trim(t.substr(0, eq));
        if (key.empty()) throw UsageError(where + "missing key before '='");
        if (!is_known(key)) unknown_key(key, where);
        base.set(key, trim(t.substr(eq + 1)));
    }
    return base;
}

RunConfig parse_config(const std::string& path,
                       const std::vector<std::pair<std::string, std::string>>& flags) {
    RunConfig cfg;
    if (!path.empty()) {
        std::ifstream in(path, std::ios::binary);
        if (!in) throw UsageError("cannot read config file '" + path + "'");
        std::ostringstream buf;
        buf << in.rdbuf();
        cfg = parse_config_text(buf.str(), cfg);
    }
    for (const auto& [key, value] : flags) cfg.set(key, value);
    return cfg;
}

} // namespace halfline::app
