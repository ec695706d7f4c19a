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
#include <cmath>
#include <numbers>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "kiv/bessel.hpp"
#include "kiv/errors.hpp"
#include "kiv/gamma.hpp"
#include "kiv/quadrature.hpp"
#include "kiv/test_function.hpp"

/*
 * Finite-cutoff pieces of the continuum normalization
 *
 *   int_0^inf K_{i nu}(x) K_{i nu'}(x) dx / x = pi^2 / (2 nu sinh(pi nu)) delta(nu - nu').
 *
 * For a lower cutoff xi > 0 the overlap has the closed form (Wronskian boundary
 * term of the self-adjoint Bessel equation)
 *
 *   int_xi^inf K_{i nu} K_{i nu'} dx / x
 *       = -xi [K_{i nu}(xi) K'_{i nu'}(xi) - K_{i nu'}(xi) K'_{i nu}(xi)] / (nu^2 - nu'^2),
 *
 * which this header evaluates directly, by quadrature, and through its small-xi
 * form: a sum of two sin(a eta + f(eta)) / eta kernels with a = -ln(xi/2), one in
 * eta = nu - nu' (a delta sequence) and one in nu + nu' (vanishing weakly for
 * nu, nu' > 0).
 */

namespace kiv {

/// (nu, nu', xi) naming one truncated overlap; nu, nu' > 0 and xi > 0.
class PairSpec {
  public:
    PairSpec(double nu, double nu_prime, double xi) : nu_(nu), nu_prime_(nu_prime), xi_(xi)
    {
        static_cast<void>(Order(nu));
        static_cast<void>(Order(nu_prime));
        if (!(nu > 0.0) || !(nu_prime > 0.0)) throw domain_error("PairSpec: nu and nu' must be > 0");
        if (!std::isfinite(xi) || !(xi > 0.0)) throw range_error("PairSpec: xi must be finite and > 0");
    }

    double nu() const noexcept { return nu_; }
    double nu_prime() const noexcept { return nu_prime_; }
    double xi() const noexcept { return xi_; }
    PairSpec swapped() const { return {nu_prime_, nu_, xi_}; }

  private:
    double nu_, nu_prime_, xi_;
};

enum class KernelMethod { boundary_term, quadrature, asymptotic, diagonal_limit };

inline std::string_view to_string(KernelMethod m)
{
    switch (m) {
    case KernelMethod::boundary_term: return "boundary-term";
    case KernelMethod::quadrature: return "quadrature";
    case KernelMethod::asymptotic: return "asymptotic";
    case KernelMethod::diagonal_limit: return "diagonal-limit";
    }
    return "unknown";
}

struct KernelValue {
    double value = 0.0;
    double abs_err_estimate = 0.0;
    KernelMethod method = KernelMethod::boundary_term;
    double tail_bound = 0.0;  // quadrature only: bound on int_U^inf
};

struct QuadratureSpec {
    double abs_tol = 1e-12;
    double rel_tol = 1e-11;
    double upper_cutoff = 0.0;  // 0: smallest U with tail bound below abs_tol
    unsigned max_depth = 18;
};

/// The small-xi kernel split into its direct (nu - nu') and reflected (nu + nu') parts.
struct AsymptoticKernel {
    double direct = 0.0;
    double reflected = 0.0;
    double value() const { return direct + reflected; }
};

/// |nu - nu'| below which the boundary form is refused.
inline constexpr double near_diagonal_threshold = 1e-8;

/// Bound on int_U^inf K_{i nu} K_{i nu'} dx / x from |K_{i nu}(x)| <= sqrt(pi/2x) e^{-x}.
inline double overlap_tail_bound(double upper)
{
    return std::numbers::pi / (4.0 * upper * upper) * std::exp(-2.0 * upper);
}

namespace detail {

struct KSide {
    double k = 0.0, dk = 0.0, k_err = 0.0, dk_err = 0.0;
};

inline KSide k_side(double nu, double x)
{
    KEvaluation e = besselk_evaluate(Order(nu), Abscissa(x));
    return {e.k, e.dk, e.k_err, e.dk_err};
}

// The products are formed separately and subtracted once so that exchanging
// (nu, a) with (nu', b) flips numerator and denominator exactly.
inline KernelValue boundary_from(double nu, double nu2, double xi, const KSide& a, const KSide& b)
{
    const double p1 = a.k * b.dk;
    const double p2 = b.k * a.dk;
    const double num = p1 - p2;
    const double den = nu * nu - nu2 * nu2;
    const double err = xi *
                       (std::abs(a.k) * b.dk_err + a.k_err * std::abs(b.dk) +
                        std::abs(b.k) * a.dk_err + b.k_err * std::abs(a.dk) +
                        4.0 * eps * (std::abs(p1) + std::abs(p2))) /
                       std::abs(den);
    return {-xi * num / den, err, KernelMethod::boundary_term};
}

// ln(pi/2) - (ln nu + ln sinh(pi nu) + ln nu' + ln sinh(pi nu')) / 2, grouped symmetrically.
inline double log_prefactor(double nu, double nu2)
{
    const double s1 = std::log(nu) + log_sinh(std::numbers::pi * nu);
    const double s2 = std::log(nu2) + log_sinh(std::numbers::pi * nu2);
    return std::log(std::numbers::pi / 2) - 0.5 * (s1 + s2);
}

inline AsymptoticKernel asymptotic_terms(double nu, double nu2, double xi)
{
    const double pre = std::exp(log_prefactor(nu, nu2));
    const double log_half_xi = std::log(0.5 * xi);
    const double ph1 = arg_gamma_imag(nu);
    const double ph2 = arg_gamma_imag(nu2);
    AsymptoticKernel out;
    if (nu != nu2) {
        const double d = nu - nu2;
        out.direct = pre * (std::sin(-d * log_half_xi + (ph1 - ph2)) / d);
    } else {
        out.direct = pre * -log_half_xi;  // sin(a eta)/eta at eta = 0, phase slope omitted
    }
    const double s = nu + nu2;
    out.reflected = pre * (std::sin(-s * log_half_xi + (ph1 + ph2)) / s);
    return out;
}

inline double continuity_weight(double nu)
{
    // pi^2 / (2 nu sinh(pi nu))
    return std::exp(2.0 * std::log(std::numbers::pi) - std::numbers::ln2 - std::log(nu) -
                    log_sinh(std::numbers::pi * nu));
}

}  // namespace detail

/// Continuum normalization weight pi^2 / (2 nu sinh(pi nu)).
inline double orthogonality_weight(double nu)
{
    if (!(nu > 0.0)) throw domain_error("orthogonality_weight: nu must be > 0");
    return detail::continuity_weight(nu);
}

/// Limit parameter a = -ln(xi/2) of the delta sequence.
inline double limit_parameter(double xi)
{
    return -std::log(0.5 * xi);
}

/// Closed-form truncated overlap from the boundary term at x = xi.
inline KernelValue kernel_boundary(const PairSpec& pair)
{
    if (std::abs(pair.nu() - pair.nu_prime()) < near_diagonal_threshold)
        throw near_diagonal_error("kernel_boundary: |nu - nu'| < 1e-8, use diagonal_limit");
    detail::KSide a = detail::k_side(pair.nu(), pair.xi());
    detail::KSide b = detail::k_side(pair.nu_prime(), pair.xi());
    return detail::boundary_from(pair.nu(), pair.nu_prime(), pair.xi(), a, b);
}

/// int_xi^U K_{i nu} K_{i nu'} dx / x by adaptive Gauss-Kronrod, plus the tail
/// bound beyond U. Below x = 2 the integrand is oscillatory in ln x, so that part
/// is integrated in u = ln x where it becomes trigonometric.
inline KernelValue kernel_quadrature(const PairSpec& pair, const QuadratureSpec& spec = {})
{
    const double xi = pair.xi();
    double upper = spec.upper_cutoff;
    if (upper <= 0.0) {
        upper = 1.0;
        while (overlap_tail_bound(upper) >= spec.abs_tol) upper += 0.25;
        upper = std::max(upper, xi + 5.0);
    }
    if (!(upper > xi)) throw argument_error("kernel_quadrature: upper cutoff must exceed xi");

    const double nu = pair.nu();
    const double nu2 = pair.nu_prime();
    auto product = [&](double x) {
        return besselk_imag(Order(nu), Abscissa(x)).value *
               besselk_imag(Order(nu2), Abscissa(x)).value;
    };

    QuadratureResult total;
    const double x_log_end = std::min(2.0, upper);
    if (xi < x_log_end) {
        std::vector<double> breaks;
        const double u0 = std::log(xi), u1 = std::log(x_log_end);
        const int panels = std::max(1, static_cast<int>(std::ceil(u1 - u0)));
        for (int i = 0; i <= panels; ++i) breaks.push_back(u0 + (u1 - u0) * i / panels);
        auto in_u = [&](double u) { return product(std::exp(u)); };
        QuadratureResult r = integrate_panels(in_u, breaks, spec.rel_tol, spec.max_depth);
        total.value += r.value;
        total.error += r.error;
        total.l1 += r.l1;
    }
    const double x_lin_start = std::max(xi, 2.0);
    if (x_lin_start < upper) {
        std::vector<double> breaks;
        const int panels = std::max(1, static_cast<int>(std::ceil((upper - x_lin_start) / 2.0)));
        for (int i = 0; i <= panels; ++i)
            breaks.push_back(x_lin_start + (upper - x_lin_start) * i / panels);
        auto in_x = [&](double x) { return product(x) / x; };
        QuadratureResult r = integrate_panels(in_x, breaks, spec.rel_tol, spec.max_depth);
        total.value += r.value;
        total.error += r.error;
        total.l1 += r.l1;
    }

    const double tail = overlap_tail_bound(upper);
    if (total.error > spec.abs_tol + spec.rel_tol * total.l1)
        throw convergence_error("kernel_quadrature: tolerance not met", total.value, total.error);
    return {total.value, total.error + tail, KernelMethod::quadrature, tail};
}

/// Direct and reflected parts of the small-xi kernel (xi <= 0.1, nu != nu').
inline AsymptoticKernel kernel_asymptotic_terms(const PairSpec& pair)
{
    if (pair.xi() > 0.1) throw range_error("kernel_asymptotic: xi > 0.1");
    if (pair.nu() == pair.nu_prime())
        throw near_diagonal_error("kernel_asymptotic: nu = nu'");
    return detail::asymptotic_terms(pair.nu(), pair.nu_prime(), pair.xi());
}

/// pi / (2 sqrt(nu nu' sinh(pi nu) sinh(pi nu'))) times
///   { sin[-(nu - nu') ln(xi/2) + arg G(i nu) - arg G(i nu')] / (nu - nu')
///   + sin[-(nu + nu') ln(xi/2) + arg G(i nu) + arg G(i nu')] / (nu + nu') }.
/// The error estimate is the scale of the neglected xi^2 order.
inline KernelValue kernel_asymptotic(const PairSpec& pair)
{
    AsymptoticKernel t = kernel_asymptotic_terms(pair);
    const double nu = pair.nu(), nu2 = pair.nu_prime(), xi = pair.xi();
    const double pre = std::exp(detail::log_prefactor(nu, nu2));
    const double err = xi * xi * pre * (1.0 / std::abs(nu - nu2) + 1.0 / (nu + nu2));
    return {t.value(), err, KernelMethod::asymptotic};
}

/// f(eta) = arg Gamma(i nu) - arg Gamma(i (nu - eta)), continuous in eta and f(0) = 0.
/// Principal arguments are unwrapped along a sweep from 0 to eta with steps small
/// enough that arg Gamma moves by well under pi between them.
inline double phase_function(double nu, double eta)
{
    if (!(nu > 0.0) || !std::isfinite(nu)) throw domain_error("phase_function: nu must be > 0");
    if (!std::isfinite(eta) || !(std::abs(eta) < nu))
        throw domain_error("phase_function: need |eta| < nu");
    if (eta == 0.0) return 0.0;
    // |d/dt arg Gamma(i t)| = |Re psi(i t)| <= ln(1 + t) + 1
    const double slope = std::log1p(nu + std::abs(eta)) + 1.0;
    const int steps = std::max(1, static_cast<int>(std::ceil(std::abs(eta) * slope / 0.5)));
    double prev = arg_gamma_imag(nu);
    double acc = 0.0;
    for (int k = 1; k <= steps; ++k) {
        double s = eta * static_cast<double>(k) / steps;
        double cur = arg_gamma_imag(nu - s);
        acc += wrap_phase(cur - prev);
        prev = cur;
    }
    return -acc;
}

/// sin(a eta + f(eta)) / (pi eta); at eta = 0 the removable value (a + f'(0)) / pi
/// with f'(0) from a central difference of step 1e-6.
template<class F>
double delta_model(double a, double eta, F&& f)
{
    if (!(a > 0.0)) throw domain_error("delta_model: a must be > 0");
    if (eta == 0.0) {
        constexpr double h = 1e-6;
        const double slope = (f(h) - f(-h)) / (2.0 * h);
        return (a + slope) / std::numbers::pi;
    }
    return std::sin(a * eta + f(eta)) / (std::numbers::pi * eta);
}

inline double delta_model(double a, double eta)
{
    return delta_model(a, eta, [](double) { return 0.0; });
}

/// lim_{nu' -> nu} of the boundary form: symmetric differences in nu' at steps
/// h = 1e-4 and h/2 combined by Richardson extrapolation. Equals
/// int_xi^inf K_{i nu}^2 dx / x.
inline double diagonal_limit(double nu, double xi)
{
    constexpr double h = 1e-4;
    if (!(nu > 2.0 * h) || !std::isfinite(nu)) throw domain_error("diagonal_limit: nu must exceed 2e-4");
    if (!(xi > 0.0) || xi > 2.0) throw range_error("diagonal_limit: xi must be in (0, 2]");
    static_cast<void>(Order(nu + h));
    const detail::KSide base = detail::k_side(nu, xi);
    auto symmetric = [&](double step) {
        double up = detail::boundary_from(nu, nu + step, xi, base, detail::k_side(nu + step, xi)).value;
        double dn = detail::boundary_from(nu, nu - step, xi, base, detail::k_side(nu - step, xi)).value;
        return 0.5 * (up + dn);
    };
    const double coarse = symmetric(h);
    const double fine = symmetric(0.5 * h);
    const double extrapolated = (4.0 * fine - coarse) / 3.0;
    if (std::abs(extrapolated - fine) > 1e-6 * std::abs(extrapolated))
        throw convergence_error("diagonal_limit: Richardson extrapolation disagrees", extrapolated,
                                std::abs(extrapolated - fine));
    return extrapolated;
}

/// The truncated overlap as a function of nu' at fixed (nu, xi), with the
/// nu-side Bessel values cached and a window |nu' - nu| < 1e-6 served by
/// diagonal_limit.
class OverlapKernel {
  public:
    static constexpr double diagonal_window = 1e-6;

    OverlapKernel(double nu, double xi)
        : nu_(nu), xi_(xi), base_(detail::k_side(nu, xi)), diagonal_(diagonal_limit(nu, xi))
    {
    }

    double operator()(double nu_prime) const
    {
        if (std::abs(nu_prime - nu_) < diagonal_window) return diagonal_;
        return detail::boundary_from(nu_, nu_prime, xi_, base_, detail::k_side(nu_prime, xi_)).value;
    }

    double diagonal() const noexcept { return diagonal_; }

  private:
    double nu_;
    double xi_;
    detail::KSide base_;
    double diagonal_;
};

/// True when v decreases except for at most `allowed` steps that grow by less than `slack`.
inline bool decreasing_with_slack(std::span<const double> v, double slack = 0.10, int allowed = 1)
{
    int bad = 0;
    for (std::size_t i = 1; i < v.size(); ++i) {
        if (v[i] < v[i - 1]) continue;
        if (v[i] >= (1.0 + slack) * v[i - 1]) return false;
        ++bad;
    }
    return bad <= allowed;
}

struct WeakLimitReport {
    double nu = 0.0;
    std::string test_function;
    std::vector<double> xi_sequence;
    std::vector<double> a_sequence;  // -ln(xi/2)
    std::vector<double> smeared_values;
    double target = 0.0;  // pi^2 / (2 nu sinh(pi nu)) phi(nu)
    std::vector<double> errors;
    std::vector<double> relative_errors;
    std::vector<double> reflected_terms;
    double reflected_term_bound = 0.0;  // |reflected term| at the smallest xi
    std::vector<double> quadrature_errors;
    /// Not a proven rate: the limit holds distributionally, the O(1/a)
    /// decay is what the reports are compared against.
    static constexpr std::string_view assumed_rate = "O(1/a), a = -ln(xi/2)";
};

namespace detail {

inline void check_xi_sequence(std::span<const double> xis, double max_xi)
{
    if (xis.empty()) throw argument_error("xi sequence is empty");
    for (std::size_t i = 0; i < xis.size(); ++i) {
        if (!(xis[i] > 0.0) || xis[i] > max_xi)
            throw argument_error("xi values must lie in (0, " + std::to_string(max_xi) + "]");
        if (i > 0 && !(xis[i] < xis[i - 1])) throw argument_error("xi sequence must be decreasing");
    }
}

inline std::vector<double> support_breaks(const TestFunctionSpec& phi, double nu, double hi_cap)
{
    auto [lo, hi] = phi.support();
    hi = std::min(hi, hi_cap);
    std::vector<double> b{lo};
    if (nu > lo && nu < hi) b.push_back(nu);
    b.push_back(hi);
    return b;
}

}  // namespace detail

/// Smears the truncated overlap against phi over nu' and compares with the
/// continuum weight times phi(nu), for each cutoff in a decreasing sequence.
inline WeakLimitReport weak_limit_test(double nu, std::span<const double> xi_sequence,
                                       const TestFunctionSpec& phi, double rel_tol = 1e-10)
{
    if (!(nu > 0.0)) throw domain_error("weak_limit_test: nu must be > 0");
    static_cast<void>(Order(nu));
    detail::check_xi_sequence(xi_sequence, 0.1);

    WeakLimitReport rep;
    rep.nu = nu;
    rep.test_function = phi.name();
    rep.target = detail::continuity_weight(nu) * phi(nu);
    const std::vector<double> breaks = detail::support_breaks(phi, nu, Order::max_abs);

    for (double xi : xi_sequence) {
        OverlapKernel kernel(nu, xi);
        auto smeared = [&](double np) {
            double w = phi(np);
            return w == 0.0 ? 0.0 : kernel(np) * w;
        };
        QuadratureResult s = integrate_panels(smeared, breaks, rel_tol, 20);
        if (s.error > 1e-8 * std::max(std::abs(s.value), rep.target))
            throw convergence_error("weak_limit_test: smeared integral did not converge", s.value,
                                    s.error);
        auto reflected = [&](double np) {
            double w = phi(np);
            return w == 0.0 ? 0.0 : detail::asymptotic_terms(nu, np, xi).reflected * w;
        };
        QuadratureResult r = integrate_panels(reflected, breaks, rel_tol, 20);

        rep.xi_sequence.push_back(xi);
        rep.a_sequence.push_back(limit_parameter(xi));
        rep.smeared_values.push_back(s.value);
        rep.quadrature_errors.push_back(s.error);
        rep.errors.push_back(std::abs(s.value - rep.target));
        rep.relative_errors.push_back(rep.errors.back() / std::abs(rep.target));
        rep.reflected_terms.push_back(r.value);
    }
    rep.reflected_term_bound = std::abs(rep.reflected_terms.back());
    return rep;
}

struct DeltaLemmaReport {
    double nu = 0.0;
    std::string test_function;
    std::vector<double> xi_sequence;
    std::vector<double> a_sequence;
    std::vector<double> smeared_values;  // int delta_model(a, nu - nu', f) phi(nu') dnu'
    double target = 0.0;                 // phi(nu)
    std::vector<double> relative_errors;
};

/// int delta_model(a, nu - nu', f) phi(nu') dnu' with f = phase_function(nu, .),
/// i.e. the direct channel of the small-xi kernel without its weight.
inline double smear_delta_model(double nu, double a, const TestFunctionSpec& phi,
                                double rel_tol = 1e-10)
{
    auto f = [nu](double eta) { return phase_function(nu, eta); };
    // phase_function needs nu' = nu - eta > 0, i.e. nu' < 2 nu on the other side.
    const std::vector<double> breaks = detail::support_breaks(phi, nu, 2.0 * nu * (1.0 - 1e-9));
    auto integrand = [&](double np) {
        double w = phi(np);
        return w == 0.0 ? 0.0 : delta_model(a, nu - np, f) * w;
    };
    QuadratureResult q = integrate_panels(integrand, breaks, rel_tol, 20);
    if (q.error > 1e-8 * std::max(1.0, std::abs(q.value)))
        throw convergence_error("smear_delta_model: quadrature did not converge", q.value, q.error);
    return q.value;
}

inline DeltaLemmaReport delta_lemma_test(double nu, std::span<const double> xi_sequence,
                                         const TestFunctionSpec& phi)
{
    if (!(nu > 0.0)) throw domain_error("delta_lemma_test: nu must be > 0");
    detail::check_xi_sequence(xi_sequence, 2.0);
    DeltaLemmaReport rep;
    rep.nu = nu;
    rep.test_function = phi.name();
    rep.target = phi(nu);
    for (double xi : xi_sequence) {
        double a = limit_parameter(xi);
        double s = smear_delta_model(nu, a, phi);
        rep.xi_sequence.push_back(xi);
        rep.a_sequence.push_back(a);
        rep.smeared_values.push_back(s);
        rep.relative_errors.push_back(std::abs(s - rep.target) / std::abs(rep.target));
    }
    return rep;
}

}  // namespace kiv
