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
#include <complex>
#include <limits>
#include <numbers>
#include <string>
#include <string_view>

#include "kiv/errors.hpp"
#include "kiv/gamma.hpp"

/*
 * Modified Bessel functions of purely imaginary order, I_{+-i nu}(x) and the
 * Macdonald function K_{i nu}(x), for real nu and x > 0.
 *
 * Two independent routes are implemented:
 *
 *  - series-combination: the power series of I_{+-i nu} combined as
 *        K = (pi / 2i) (I_{-i nu} - I_{i nu}) / sinh(pi nu).
 *    The two series grow like e^x while K decays, so this route is only used
 *    where the cancellation is harmless (x <= series_switch(nu)).
 *
 *  - integral-representation:
 *        K = int_0^inf exp(-x cosh t) cos(nu t) dt,
 *    by the trapezoidal rule, which converges exponentially in the step for
 *    this analytic, rapidly decaying integrand. Also valid at nu = 0.
 *
 * Derivatives in x are obtained by differentiating each representation term
 * by term, never by differencing.
 */

namespace kiv {

/// Order nu of K_{i nu}; finite, |nu| <= 50.
class Order {
  public:
    static constexpr double max_abs = 50.0;

    explicit Order(double nu) : nu_(nu)
    {
        if (!std::isfinite(nu)) throw domain_error("Order: nu must be finite");
        if (std::abs(nu) > max_abs) throw range_error("Order: |nu| > 50");
    }

    double value() const noexcept { return nu_; }
    Order operator-() const { return Order(-nu_); }

  private:
    double nu_;
};

/// Argument x of the Bessel functions; finite and strictly positive.
class Abscissa {
  public:
    explicit Abscissa(double x) : x_(x)
    {
        if (!std::isfinite(x) || !(x > 0.0)) throw range_error("Abscissa: x must be finite and > 0");
    }

    double value() const noexcept { return x_; }

  private:
    double x_;
};

enum class Method { series_combination, integral_representation, large_x_asymptotic };

/// Route selection for K; automatic picks by conditioning.
enum class MethodChoice { automatic, series_combination, integral_representation };

enum class Sign { plus, minus };

inline std::string_view to_string(Method m)
{
    switch (m) {
    case Method::series_combination: return "series-combination";
    case Method::integral_representation: return "integral-representation";
    case Method::large_x_asymptotic: return "large-x-asymptotic";
    }
    return "unknown";
}

template<class T>
struct FunctionValue {
    T value{};
    double abs_err_estimate = 0.0;
    Method method = Method::series_combination;
};

/// K_{i nu}(x) with its first two x-derivatives from one evaluation.
struct KEvaluation {
    double k = 0.0;
    double dk = 0.0;
    double d2k = 0.0;
    double k_err = 0.0;
    double dk_err = 0.0;
    double d2k_err = 0.0;
    Method method = Method::series_combination;
    /// |Im| / |Re| of the complex series combination before the imaginary
    /// part is discarded; zero on the integral route.
    double imag_residue = 0.0;
};

struct OdeResidual {
    double residual = 0.0;    // d/dx(x F') + (nu^2/x - x) F
    double normalized = 0.0;  // |residual| / ((nu^2/x + x) |F|)
};

namespace detail {

inline constexpr double eps = std::numeric_limits<double>::epsilon();

struct ISeries {
    ComplexValue value, d1, d2;
    double abs_sum = 0.0, abs_sum_d1 = 0.0, abs_sum_d2 = 0.0;
    int terms = 0;
};

// I_{i s}(x) for signed real s by its power series in (x/2)^2.
// Stops once three consecutive terms fall below 1e-18 of every tracked partial
// sum; at most 500 terms.
inline ISeries i_series(double s, double x, bool with_derivatives)
{
    constexpr double rel_cut = 1e-18;
    constexpr int max_terms = 500;
    const ComplexValue is{0.0, s};
    const double q = 0.25 * x * x;

    ComplexValue term = std::exp(is * std::log(0.5 * x)) * reciprocal_gamma(1.0 + is);
    ISeries out;
    int quiet = 0;
    for (int k = 0; k < max_terms; ++k) {
        if (k > 0) term *= q / (static_cast<double>(k) * (static_cast<double>(k) + is));
        out.value += term;
        out.abs_sum += std::abs(term);
        bool small = std::abs(term) < rel_cut * std::abs(out.value);
        if (with_derivatives) {
            ComplexValue p = 2.0 * k + is;
            ComplexValue t1 = p / x * term;
            ComplexValue t2 = p * (p - 1.0) / (x * x) * term;
            out.d1 += t1;
            out.d2 += t2;
            out.abs_sum_d1 += std::abs(t1);
            out.abs_sum_d2 += std::abs(t2);
            small = small && std::abs(t1) < rel_cut * std::abs(out.d1) &&
                    std::abs(t2) < rel_cut * std::abs(out.d2);
        }
        out.terms = k + 1;
        quiet = small ? quiet + 1 : 0;
        if (quiet == 3) break;
    }
    return out;
}

inline KEvaluation k_series(double nu, double x)
{
    if (nu == 0.0)
        throw domain_error("besselk: nu = 0 is singular on the series-combination route");
    ISeries ip = i_series(nu, x, true);
    ISeries im = i_series(-nu, x, true);
    // pi / (2i sinh(pi nu)) = -i pi / (2 sinh(pi nu))
    const ComplexValue scale{0.0, -std::numbers::pi / (2.0 * std::sinh(std::numbers::pi * nu))};
    ComplexValue k = scale * (im.value - ip.value);
    ComplexValue dk = scale * (im.d1 - ip.d1);
    ComplexValue d2k = scale * (im.d2 - ip.d2);
    // Rounding in nu ln(x/2) and in log Gamma(1 + i nu) shifts every term by
    // ~eps times their magnitudes.
    const double phase_scale = std::abs(nu * std::log(0.5 * x)) +
                               std::abs(detail::log_gamma_lanczos({1.0, nu}));
    const double a = std::abs(scale) * (4.0 + phase_scale) * eps;

    KEvaluation out;
    out.method = Method::series_combination;
    out.k = k.real();
    out.dk = dk.real();
    out.d2k = d2k.real();
    out.imag_residue = std::abs(k.imag()) / std::abs(k.real());
    out.k_err = a * (ip.abs_sum + im.abs_sum) + std::abs(k.imag());
    out.dk_err = a * (ip.abs_sum_d1 + im.abs_sum_d1) + std::abs(dk.imag());
    out.d2k_err = a * (ip.abs_sum_d2 + im.abs_sum_d2) + std::abs(d2k.imag());
    return out;
}

// Trapezoidal rule for int_0^inf exp(-x cosh t) cos(nu t) cosh(t)^m dt, m = 0, 1, 2,
// on [0, T] with x (cosh T - 1) = 50 + pi |nu| / 2, so the discarded tail is
// negligible relative to both e^{-x} and the e^{-pi nu / 2} size of K. The step
// is halved until successive sums agree to 1e-9 of the absolute integral; the
// error after one more halving is then about the square of that.
inline KEvaluation k_integral(double nu, double x)
{
    const double cut = 50.0 + 0.5 * std::numbers::pi * std::abs(nu);
    const double t_max = std::acosh(1.0 + cut / x);

    auto sample = [&](double t, double w, double sums[3], double abs_sums[3]) {
        double c = std::cosh(t);
        double f = w * std::exp(-x * c);
        double fc = f * std::cos(nu * t);
        double g[3] = {fc, fc * c, fc * c * c};
        double ga[3] = {f, f * c, f * c * c};
        for (int m = 0; m < 3; ++m) {
            sums[m] += g[m];
            abs_sums[m] += ga[m];
        }
    };

    double h = std::min(0.5, t_max / 4.0);
    double sums[3] = {0, 0, 0};
    double abs_sums[3] = {0, 0, 0};
    sample(0.0, 0.5, sums, abs_sums);
    for (double t = h; t <= t_max; t += h) sample(t, 1.0, sums, abs_sums);

    double est[3], abs_est[3], diff[3] = {0, 0, 0};
    for (int m = 0; m < 3; ++m) {
        est[m] = h * sums[m];
        abs_est[m] = h * abs_sums[m];
    }

    constexpr int max_levels = 16;
    for (int level = 0; level < max_levels; ++level) {
        double odd[3] = {0, 0, 0};
        double odd_abs[3] = {0, 0, 0};
        for (double t = 0.5 * h; t <= t_max; t += h) sample(t, 1.0, odd, odd_abs);
        h *= 0.5;
        bool done = level >= 1;
        for (int m = 0; m < 3; ++m) {
            double next = 0.5 * est[m] + h * odd[m];
            abs_est[m] = 0.5 * abs_est[m] + h * odd_abs[m];
            diff[m] = std::abs(next - est[m]);
            est[m] = next;
            done = done && diff[m] <= 1e-9 * abs_est[m];
        }
        if (done) break;
    }

    KEvaluation out;
    out.method = Method::integral_representation;
    out.k = est[0];
    out.dk = -est[1];
    out.d2k = est[2];
    double errs[3];
    for (int m = 0; m < 3; ++m) {
        double r = abs_est[m] > 0.0 ? diff[m] / abs_est[m] : 0.0;
        errs[m] = 8.0 * eps * abs_est[m] * std::max(1.0, std::log(1.0 / h)) +
                  std::min(diff[m], r * diff[m]);
    }
    out.k_err = errs[0];
    out.dk_err = errs[1];
    out.d2k_err = errs[2];
    return out;
}

}  // namespace detail

/// Largest x at which the automatic route still uses the series combination.
/// Below x ~ nu the two I series do not cancel (K and I have the same e^{-+pi nu/2}
/// balance there), while the integral representation would lose e^{pi nu/2 - x}.
inline double series_switch(double nu)
{
    return std::max(2.0, std::abs(nu));
}

/// I_{+i nu}(x) or I_{-i nu}(x) from the power series; x <= 30.
inline FunctionValue<ComplexValue> besseli_imag(Order order, Abscissa x, Sign sign)
{
    if (x.value() > 30.0) throw range_error("besseli_imag: x > 30 not supported by the series");
    double s = sign == Sign::plus ? order.value() : -order.value();
    detail::ISeries is = detail::i_series(s, x.value(), false);
    return {is.value, 4.0 * detail::eps * is.abs_sum, Method::series_combination};
}

/// K_{i nu}(x), K' and K'' from the selected route. K is even in nu; both routes
/// evaluate at |nu|, so K_{i nu} and K_{-i nu} are bitwise identical.
inline KEvaluation besselk_evaluate(Order order, Abscissa x,
                                    MethodChoice choice = MethodChoice::automatic)
{
    const double nu = std::abs(order.value());
    const double xv = x.value();
    switch (choice) {
    case MethodChoice::series_combination: return detail::k_series(nu, xv);
    case MethodChoice::integral_representation: return detail::k_integral(nu, xv);
    case MethodChoice::automatic: break;
    }
    if (nu != 0.0 && xv <= series_switch(nu)) return detail::k_series(nu, xv);
    return detail::k_integral(nu, xv);
}

inline FunctionValue<double> besselk_imag(Order order, Abscissa x,
                                          MethodChoice choice = MethodChoice::automatic)
{
    KEvaluation e = besselk_evaluate(order, x, choice);
    return {e.k, e.k_err, e.method};
}

/// dK_{i nu}(x)/dx by termwise differentiation of the active representation.
inline FunctionValue<double> besselk_dx(Order order, Abscissa x,
                                        MethodChoice choice = MethodChoice::automatic)
{
    KEvaluation e = besselk_evaluate(order, x, choice);
    return {e.dk, e.dk_err, e.method};
}

/// Leading small-x form sqrt(pi / (nu sinh pi nu)) cos(-nu ln(x/2) + arg Gamma(i nu)).
inline double besselk_smallx_approx(Order order, Abscissa x)
{
    const double nu = order.value();
    if (nu == 0.0) throw domain_error("besselk_smallx_approx: nu = 0");
    if (x.value() > 2.0) throw range_error("besselk_smallx_approx: x > 2");
    return abs_gamma_imag(nu) * std::cos(-nu * std::log(0.5 * x.value()) + arg_gamma_imag(nu));
}

/// Leading large-x form sqrt(pi / 2x) e^{-x}; independent of nu.
inline double besselk_largex_approx(Order /*order*/, Abscissa x)
{
    const double xv = x.value();
    if (xv < 5.0) throw range_error("besselk_largex_approx: x < 5");
    return std::sqrt(std::numbers::pi / (2.0 * xv)) * std::exp(-xv);
}

namespace detail {

inline OdeResidual ode_residual_from(double nu, double x, double f, double df, double d2f)
{
    // d/dx (x F') = F' + x F''
    double r = df + x * d2f + (nu * nu / x - x) * f;
    double scale = (nu * nu / x + x) * std::abs(f);
    return {r, std::abs(r) / scale};
}

}  // namespace detail

/// Residual of the self-adjoint Bessel equation for K_{i nu}.
inline OdeResidual ode_residual(Order order, Abscissa x,
                                MethodChoice choice = MethodChoice::automatic)
{
    KEvaluation e = besselk_evaluate(order, x, choice);
    return detail::ode_residual_from(order.value(), x.value(), e.k, e.dk, e.d2k);
}

/// Same residual for I_{+-i nu}, which solves the same equation. Uses the modulus
/// of the complex residual and of I.
inline OdeResidual ode_residual_i(Order order, Abscissa x, Sign sign)
{
    if (x.value() > 30.0) throw range_error("ode_residual_i: x > 30");
    const double nu = order.value();
    const double xv = x.value();
    detail::ISeries is = detail::i_series(sign == Sign::plus ? nu : -nu, xv, true);
    ComplexValue r = is.d1 + xv * is.d2 + (nu * nu / xv - xv) * is.value;
    double scale = (nu * nu / xv + xv) * std::abs(is.value);
    return {std::abs(r), std::abs(r) / scale};
}

}  // namespace kiv
