// Command-line front end. Every flag maps onto a RunConfig key; flags
// override values read from --config.

#include "halfline/app/commands.hpp"
#include "halfline/app/config.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace {

using halfline::app::known_keys;

const std::map<std::string, std::vector<std::string>>& command_keys() {
    static const std::map<std::string, std::vector<std::string>> keys{
        {"specfun-table", {"fn", "grid", "eps"}},
        {"testfn-sample", {"family", "eps", "mass", "grid"}},
        {"forms-sweep", {"kernel", "mass", "eps-list", "route"}},
        {"bell-sweep", {"kernel", "mass", "c", "eps-list"}},
        {"compress-sweep", {"depth-list", "span-list", "octave-splits", "dump-matrix"}},
        {"appendix-check", {"what", "mass", "eps", "eta-list", "c", "delta"}},
        {"reproduce-paper", {"output-dir", "eps-list", "mass", "c", "c-list", "depth-list", "span-list",
                             "octave-splits", "eta-list", "delta"}},
    };
    return keys;
}

const std::map<std::string, std::string>& command_help() {
    static const std::map<std::string, std::string> help{
        {"specfun-table", "tabulate K0, K1, the cosh kernel or the smooth step"},
        {"testfn-sample", "sample a normalized cutoff profile"},
        {"forms-sweep", "Rayleigh quotients along the eps list, by route"},
        {"bell-sweep", "CHSH correlator along the eps list"},
        {"compress-sweep", "top eigenvalue of Galerkin compressions"},
        {"appendix-check", "momentum-space pairings against their spatial limits"},
        {"reproduce-paper", "all tables and plots plus the pass/fail summary"},
    };
    return help;
}

// Leftover arguments: unknown keys get a suggestion, known ones a note that
// this command ignores them.
void reject_extras(const std::string& command, const std::vector<std::string>& extras) {
    for (const std::string& arg : extras) {
        if (arg.rfind("--", 0) != 0) continue;
        std::string key = arg.substr(2);
        key = key.substr(0, key.find('='));
        halfline::app::RunConfig probe;
        probe.set(key, "");  // throws with a suggestion for unknown keys
        throw halfline::app::UsageError("key '" + key + "' is not used by " + command +
                                        "; set it in --config for other commands");
    }
    if (!extras.empty()) {
        throw halfline::app::UsageError("unexpected argument '" + extras.front() + "'");
    }
}

std::string help_for(const std::string& key) {
    for (const auto& k : known_keys()) {
        if (k.name == key) {
            return k.help + (k.default_value.empty() ? "" : " (default: " + k.default_value + ")");
        }
    }
    return "";
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Half-line quadratic forms, Bell correlators and Galerkin compressions"};
    app.require_subcommand(1);
    std::string config_path;
    app.add_option("--config", config_path, "key = value configuration file");

    std::map<std::string, std::string> values;
    std::map<std::string, CLI::App*> subs;
    std::map<std::string, std::map<std::string, CLI::Option*>> options;
    const std::vector<std::string> shared{"output", "panels", "nodes-per-panel", "max-linear-width"};
    for (const auto& [name, keys] : command_keys()) {
        CLI::App* sub = app.add_subcommand(name, command_help().at(name));
        sub->allow_extras();
        subs[name] = sub;
        std::vector<std::string> all = keys;
        all.insert(all.end(), shared.begin(), shared.end());
        for (const std::string& key : all) {
            options[name][key] = sub->add_option("--" + key, values[name + "\n" + key], help_for(key));
        }
        sub->add_option("--config", config_path, "key = value configuration file");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? halfline::app::kOk : halfline::app::kUsageError;
    }

    for (const auto& [name, sub] : subs) {
        if (!sub->parsed()) continue;
        std::vector<std::pair<std::string, std::string>> flags;
        for (const auto& [key, opt] : options[name]) {
            if (opt->count() > 0) flags.emplace_back(key, values[name + "\n" + key]);
        }
        try {
            reject_extras(name, sub->remaining());
            const auto cfg = halfline::app::parse_config(config_path, flags);
            return halfline::app::run_command(name, cfg, std::cout, std::cerr);
        } catch (const halfline::app::UsageError& e) {
            std::cerr << "usage error: " << e.what() << "\n";
            return halfline::app::kUsageError;
        }
    }
    return halfline::app::kUsageError;
}
