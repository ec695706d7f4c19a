//
// Copyright 2026 The kiv Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

// kiv: batch front end. One subcommand per library operation, report on
// stdout, diagnostics on stderr, exit 0 / 1 (check failed) / 2 (usage).

#include <iostream>
#include <map>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "kiv/cli/run.hpp"

int main(int argc, char** argv)
{
    CLI::App app{"Macdonald functions of imaginary order and their continuum normalization"};
    app.require_subcommand(1);

    std::string format = "json";
    std::optional<double> tol;
    app.add_option("--format", format, "json or csv")
        ->check(CLI::IsMember({"json", "csv"}))
        ->capture_default_str();
    app.add_option("--tol", tol, "tolerance override for the command's check");
    app.fallthrough();

    std::map<std::string, std::map<std::string, std::string>> values;
    for (const auto& info : kiv::cli::commands()) {
        std::string name(info.name);
        CLI::App* sub = app.add_subcommand(name, std::string(info.help));
        for (auto key : info.keys) {
            std::string k(key);
            sub->add_option_function<std::string>(
                "--" + k, [&values, name, k](const std::string& v) { values[name][k] = v; }, k);
        }
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    kiv::cli::RunConfig cfg;
    cfg.command = app.get_subcommands().front()->get_name();
    cfg.parameters = values[cfg.command];
    cfg.format = format == "csv" ? kiv::cli::OutputFormat::csv : kiv::cli::OutputFormat::json;
    cfg.tolerance = tol;

    kiv::cli::RunResult r = kiv::cli::run(cfg);
    std::cout << r.output;
    std::cerr << r.diagnostics;
    return r.exit_code;
}
