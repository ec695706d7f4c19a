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

#pragma once

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "kiv/bessel.hpp"
#include "kiv/cli/report.hpp"
#include "kiv/envelope.hpp"
#include "kiv/errors.hpp"
#include "kiv/gamma.hpp"
#include "kiv/ortho.hpp"
#include "kiv/test_function.hpp"

namespace kiv::cli {

enum class OutputFormat { json, csv };

struct CommandInfo {
    std::string_view name;
    std::vector<std::string_view> keys;
    std::string_view help;
};

inline const std::vector<CommandInfo>& commands()
{
    static const std::vector<CommandInfo> table{
        {"eval", {"nu", "x", "method"}, "K_{i nu}(x) and derivative with error estimates"},
        {"gamma", {"re", "im"}, "log Gamma(z) as modulus and phase"},
        {"identity-check", {"nu", "nu2", "xi"}, "boundary-term overlap against quadrature"},
        {"ortho-scan", {"nu", "xi", "nu2-min", "nu2-max", "points"}, "truncated overlap as a function of nu'"},
        {"delta-test", {"nu", "xi", "phi", "mode"}, "weak-limit or delta-sequence convergence run"},
        {"asym-check", {"nu", "nu2", "x", "xi"}, "x^2 error envelope of the small-argument forms"},
    };
    return table;
}

/// One invocation: command, its key/value parameters, output format, tolerance override.
struct RunConfig {
    std::string command;
    std::map<std::string, std::string> parameters;
    OutputFormat format = OutputFormat::json;
    std::optional<double> tolerance;

    /// Throws argument_error for an unknown command or key.
    void validate() const
    {
        auto it = std::find_if(commands().begin(), commands().end(),
                               [&](const CommandInfo& c) { return c.name == command; });
        if (it == commands().end()) throw argument_error("unknown command '" + command + "'");
        for (const auto& [key, value] : parameters)
            if (std::find(it->keys.begin(), it->keys.end(), key) == it->keys.end())
                throw argument_error("unknown key '" + key + "' for " + command);
        if (tolerance && !(*tolerance > 0.0)) throw argument_error("--tol must be > 0");
    }
};

struct RunResult {
    int exit_code = 0;
    std::string output;
    std::string diagnostics;
};

namespace detail {

inline double parse_real(std::string_view text, std::string_view key)
{
    while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
    while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
    if (!text.empty() && text.front() == '+') text.remove_prefix(1);
    double v = 0.0;
    auto res = std::from_chars(text.data(), text.data() + text.size(), v);
    if (res.ec != std::errc() || res.ptr != text.data() + text.size() || !std::isfinite(v))
        throw argument_error("--" + std::string(key) + ": not a finite number: '" + std::string(text) + "'");
    return v;
}

class Params {
  public:
    explicit Params(const RunConfig& cfg) : p_(cfg.parameters) {}

    bool has(const std::string& key) const { return p_.count(key) != 0; }

    std::string text(const std::string& key, const std::string& fallback) const
    {
        auto it = p_.find(key);
        return it == p_.end() ? fallback : it->second;
    }

    double real(const std::string& key) const
    {
        auto it = p_.find(key);
        if (it == p_.end()) throw argument_error("missing --" + key);
        return parse_real(it->second, key);
    }

    std::vector<double> list(const std::string& key) const
    {
        auto it = p_.find(key);
        if (it == p_.end()) throw argument_error("missing --" + key);
        std::vector<double> out;
        std::string_view s = it->second;
        while (true) {
            auto comma = s.find(',');
            out.push_back(parse_real(s.substr(0, comma), key));
            if (comma == std::string_view::npos) break;
            s.remove_prefix(comma + 1);
        }
        return out;
    }

    std::vector<double> sorted_list(const std::string& key) const
    {
        std::vector<double> v = list(key);
        std::sort(v.begin(), v.end());
        v.erase(std::unique(v.begin(), v.end()), v.end());
        return v;
    }

  private:
    const std::map<std::string, std::string>& p_;
};

inline Report start(const RunConfig& cfg)
{
    Report r;
    r.command = cfg.command;
    for (const auto& [k, v] : cfg.parameters) r.parameters.emplace_back(k, v);
    if (cfg.tolerance) r.parameters.emplace_back("tol", *cfg.tolerance);
    return r;
}

inline constexpr double nan = std::numeric_limits<double>::quiet_NaN();

inline Report run_eval(const RunConfig& cfg)
{
    Params p(cfg);
    const double tol = cfg.tolerance.value_or(1e-6);
    const std::string m = p.text("method", "auto");
    MethodChoice choice = MethodChoice::automatic;
    if (m == "series") choice = MethodChoice::series_combination;
    else if (m == "integral") choice = MethodChoice::integral_representation;
    else if (m != "auto") throw argument_error("--method must be auto, series or integral");

    Report r = start(cfg);
    r.columns = {"nu", "x", "k", "k_err", "dk", "dk_err", "method", "ode_residual"};
    for (double nu : p.sorted_list("nu")) {
        for (double x : p.sorted_list("x")) {
            KEvaluation e = besselk_evaluate(Order(nu), Abscissa(x), choice);
            double res = kiv::detail::ode_residual_from(std::abs(nu), x, e.k, e.dk, e.d2k).normalized;
            r.rows.push_back({nu, x, e.k, e.k_err, e.dk, e.dk_err, std::string(to_string(e.method)), res});
            if (!(res <= tol)) r.pass = false;
        }
    }
    return r;
}

inline Report run_gamma(const RunConfig& cfg)
{
    Params p(cfg);
    const double tol = cfg.tolerance.value_or(1e-12);
    const std::vector<double> res = p.has("re") ? p.sorted_list("re") : std::vector<double>{0.0};
    Report r = start(cfg);
    r.columns = {"re", "im", "log_modulus", "phase", "identity_rel_error"};
    for (double re : res) {
        for (double im : p.sorted_list("im")) {
            GammaEval g = log_gamma({re, im});
            double rel = nan;
            if (re == 0.0 && im != 0.0) {
                double closed = abs_gamma_imag(im);
                rel = std::abs(std::exp(g.log_modulus) - closed) / closed;
                if (!(rel <= tol)) r.pass = false;
            }
            r.rows.push_back({re, im, g.log_modulus, g.phase, rel});
        }
    }
    return r;
}

inline Report run_identity(const RunConfig& cfg)
{
    Params p(cfg);
    const double tol = cfg.tolerance.value_or(1e-8);
    const auto nus = p.sorted_list("nu");
    const auto nu2s = p.sorted_list("nu2");
    Report r = start(cfg);
    r.columns = {"nu", "nu2", "xi", "boundary", "boundary_err", "quadrature", "quadrature_err",
                 "difference", "allowed", "pass"};
    const bool single = nus.size() == 1 && nu2s.size() == 1;
    for (double nu : nus) {
        for (double nu2 : nu2s) {
            if (!single && std::abs(nu - nu2) < near_diagonal_threshold) continue;
            for (double xi : p.sorted_list("xi")) {
                PairSpec pair(nu, nu2, xi);
                KernelValue b = kernel_boundary(pair);
                KernelValue q = kernel_quadrature(pair);
                double diff = std::abs(b.value - q.value);
                double allowed = tol + tol * std::abs(q.value);
                bool ok = diff <= allowed;
                r.pass = r.pass && ok;
                r.rows.push_back({nu, nu2, xi, b.value, b.abs_err_estimate, q.value, q.abs_err_estimate,
                                  diff, allowed, ok});
            }
        }
    }
    return r;
}

inline Report run_ortho_scan(const RunConfig& cfg)
{
    Params p(cfg);
    const double nu = p.real("nu");
    const double xi = p.real("xi");
    const double lo = p.has("nu2-min") ? p.real("nu2-min") : 0.5 * nu;
    const double hi = p.has("nu2-max") ? p.real("nu2-max") : 1.5 * nu;
    const double pts = p.has("points") ? p.real("points") : 41.0;
    if (!(pts >= 2.0) || pts != std::floor(pts) || pts > 100000.0)
        throw argument_error("--points must be an integer in [2, 100000]");
    if (!(lo > 0.0) || !(hi > lo)) throw argument_error("need 0 < nu2-min < nu2-max");
    static_cast<void>(PairSpec(nu, hi, xi));

    OverlapKernel kernel(nu, xi);
    Report r = start(cfg);
    r.columns = {"nu2", "overlap", "method", "asymptotic"};
    const int n = static_cast<int>(pts);
    for (int i = 0; i < n; ++i) {
        double nu2 = lo + (hi - lo) * i / (n - 1);
        bool diag = std::abs(nu2 - nu) < OverlapKernel::diagonal_window;
        double asym = (xi <= 0.1 && nu2 != nu) ? kernel_asymptotic(PairSpec(nu, nu2, xi)).value : nan;
        double v = kernel(nu2);
        if (!std::isfinite(v)) r.pass = false;
        r.rows.push_back({nu2, v,
                          std::string(to_string(diag ? KernelMethod::diagonal_limit : KernelMethod::boundary_term)),
                          asym});
    }
    r.summary = {{"weight", orthogonality_weight(nu)}};
    return r;
}

inline Report run_delta(const RunConfig& cfg)
{
    Params p(cfg);
    const double nu = p.real("nu");
    const std::vector<double> xis = p.list("xi");
    const std::string mode = p.text("mode", "weak-limit");
    const TestFunctionSpec phi =
        p.has("phi") ? TestFunctionSpec::parse(p.text("phi", "")) : TestFunctionSpec::gaussian(nu, 0.2 * nu);

    Report r = start(cfg);
    if (mode == "weak-limit") {
        WeakLimitReport w = weak_limit_test(nu, xis, phi);
        r.columns = {"xi", "a", "smeared", "error", "relative_error", "reflected_term"};
        for (std::size_t i = 0; i < w.xi_sequence.size(); ++i)
            r.rows.push_back({w.xi_sequence[i], w.a_sequence[i], w.smeared_values[i], w.errors[i],
                              w.relative_errors[i], w.reflected_terms[i]});
        r.pass = decreasing_with_slack(w.errors);
        if (cfg.tolerance) r.pass = r.pass && w.relative_errors.back() <= *cfg.tolerance;
        r.summary = {{"assumed_rate", std::string(WeakLimitReport::assumed_rate)},
                     {"reflected_term_bound", w.reflected_term_bound},
                     {"target", w.target},
                     {"test_function", w.test_function}};
    } else if (mode == "lemma") {
        DeltaLemmaReport d = delta_lemma_test(nu, xis, phi);
        r.columns = {"xi", "a", "smeared", "relative_error"};
        for (std::size_t i = 0; i < d.xi_sequence.size(); ++i)
            r.rows.push_back({d.xi_sequence[i], d.a_sequence[i], d.smeared_values[i], d.relative_errors[i]});
        r.pass = decreasing_with_slack(d.relative_errors);
        if (cfg.tolerance) r.pass = r.pass && d.relative_errors.back() <= *cfg.tolerance;
        r.summary = {{"phase_at_zero", phase_function(nu, 0.0)},
                     {"target", d.target},
                     {"test_function", d.test_function}};
    } else {
        throw argument_error("--mode must be weak-limit or lemma");
    }
    return r;
}

inline Report run_asym(const RunConfig& cfg)
{
    Params p(cfg);
    const double tol = cfg.tolerance.value_or(0.25);
    const double nu = p.real("nu");
    const bool kernel = p.has("nu2");
    const std::string key = kernel ? "xi" : "x";
    if (p.has(kernel ? "x" : "xi"))
        throw argument_error(kernel ? "kernel check takes --xi, not --x" : "small-x check takes --x, not --xi");
    std::vector<double> centers = p.sorted_list(key);
    std::reverse(centers.begin(), centers.end());

    Report r = start(cfg);
    r.columns = {key, "envelope", "ratio", "expected_ratio", "fit_residual"};
    double prev_c = nan, prev_e = nan;
    for (double c : centers) {
        EnvelopeEstimate e = kernel ? kernel_asymptotic_envelope(nu, p.real("nu2"), c)
                                    : smallx_error_envelope(nu, c);
        double ratio = prev_e / e.envelope;
        double expected = (prev_c / c) * (prev_c / c);
        if (std::isfinite(ratio) && !(std::abs(ratio / expected - 1.0) <= tol)) r.pass = false;
        r.rows.push_back({c, e.envelope, ratio, expected, e.fit_residual});
        prev_c = c;
        prev_e = e.envelope;
    }
    r.summary = {{"mode", std::string(kernel ? "kernel" : "small-x")}};
    return r;
}

}  // namespace detail

/// Executes cfg. Exit 0 when every check passes, 1 on a failed check or a
/// numerical convergence failure, 2 on bad input.
inline RunResult run(const RunConfig& cfg)
{
    RunResult out;
    try {
        cfg.validate();
        Report r;
        if (cfg.command == "eval") r = detail::run_eval(cfg);
        else if (cfg.command == "gamma") r = detail::run_gamma(cfg);
        else if (cfg.command == "identity-check") r = detail::run_identity(cfg);
        else if (cfg.command == "ortho-scan") r = detail::run_ortho_scan(cfg);
        else if (cfg.command == "delta-test") r = detail::run_delta(cfg);
        else r = detail::run_asym(cfg);
        out.output = cfg.format == OutputFormat::json ? to_json(r) : to_csv(r);
        out.exit_code = r.pass ? 0 : 1;
        if (!r.pass) out.diagnostics = cfg.command + ": check failed\n";
    } catch (const convergence_error& e) {
        out.exit_code = 1;
        out.diagnostics = std::string("error: ") + e.what() + " (best estimate " +
                          format_real(e.best_estimate()) + ", error " + format_real(e.error_estimate()) + ")\n";
    } catch (const std::logic_error& e) {
        out.exit_code = 2;
        out.diagnostics = std::string("error: ") + e.what() + "\n";
    }
    return out;
}

}  // namespace kiv::cli
