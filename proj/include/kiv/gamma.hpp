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

#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <string>

#include "kiv/errors.hpp"

/*
 * Complex gamma function utilities.
 *
 * log Gamma is evaluated with a 14-term Lanczos approximation (g = 671/128)
 * for Re z >= 1/2 and the reflection formula elsewhere. Only the real part of
 * the complex logarithm is branch-independent; the imaginary part is returned
 * reduced to the principal range (-pi, pi]. Callers that need a phase that is
 * continuous in a parameter have to unwrap it themselves.
 */

namespace kiv {

using ComplexValue = std::complex<double>;

struct GammaEval {
    double log_modulus = 0.0;  // ln |Gamma(z)|
    double phase = 0.0;        // principal arg Gamma(z), in (-pi, pi]
};

/// Reduce an angle to (-pi, pi].
inline double wrap_phase(double phase)
{
    constexpr double two_pi = 2.0 * std::numbers::pi;
    double r = std::remainder(phase, two_pi);
    if (r <= -std::numbers::pi) r += two_pi;
    return r;
}

namespace detail {

inline bool is_nonpositive_integer(ComplexValue z)
{
    return z.imag() == 0.0 && z.real() <= 0.0 && std::nearbyint(z.real()) == z.real();
}

// log(1 + w) for small |w|; std::log(1.0 + w) loses the low bits otherwise.
inline ComplexValue log1p(ComplexValue w)
{
    if (std::abs(w) > 0.5) return std::log(1.0 + w);
    double re = std::log1p(w.real() * (2.0 + w.real()) + w.imag() * w.imag()) * 0.5;
    double im = std::atan2(w.imag(), 1.0 + w.real());
    return {re, im};
}

// log sin(pi z), valid (modulo 2 pi i) for |Im z| large where sin overflows.
inline ComplexValue log_sin_pi(ComplexValue z)
{
    constexpr double pi = std::numbers::pi;
    double b = z.imag();
    if (std::abs(b) < 1.0) return std::log(std::sin(pi * z));
    if (b < 0.0) return std::conj(log_sin_pi(std::conj(z)));
    // sin(pi z) = (i/2) e^{-i pi z} (1 - e^{2 i pi z})
    const ComplexValue i{0.0, 1.0};
    ComplexValue small = std::exp(2.0 * i * pi * z);
    return ComplexValue{-std::numbers::ln2, pi / 2} - i * pi * z + log1p(-small);
}

// Coefficients of the g = 671/128 Lanczos series (14 terms).
inline constexpr std::array<double, 14> lanczos_coefficients{
    57.1562356658629235,      -59.5979603554754912,     14.1360979747417471,
    -0.491913816097620199,    .339946499848118887e-4,   .465236289270485756e-4,
    -.983744753048795646e-4,  .158088703224912494e-3,   -.210264441724104883e-3,
    .217439618115212643e-3,   -.164318106536763890e-3,  .844182239838527433e-4,
    -.261908384015814087e-4,  .368991826595316234e-5};

inline ComplexValue log_gamma_lanczos(ComplexValue z)
{
    constexpr double g = 671.0 / 128.0;
    constexpr double sqrt_two_pi = 2.5066282746310005;
    ComplexValue t = z + g;
    ComplexValue head = (z + 0.5) * std::log(t) - t;
    ComplexValue series = 0.999999999999997092;
    ComplexValue denom = z;
    for (double c : lanczos_coefficients) {
        denom += 1.0;
        series += c / denom;
    }
    return head + std::log(sqrt_two_pi * series / z);
}

/// Complex log Gamma, determined modulo 2 pi i. No range checks.
inline ComplexValue log_gamma_complex(ComplexValue z)
{
    if (z.real() >= 0.5) return log_gamma_lanczos(z);
    // Gamma(z) Gamma(1 - z) = pi / sin(pi z)
    return std::log(std::numbers::pi) - log_sin_pi(z) - log_gamma_lanczos(1.0 - z);
}

// ln sinh(t) for t > 0 without overflow.
inline double log_sinh(double t)
{
    if (t > 1.0) return t - std::numbers::ln2 + std::log1p(-std::exp(-2.0 * t));
    return std::log(std::sinh(t));
}

inline void check_imag_order(double nu, const char* who)
{
    if (!std::isfinite(nu)) throw domain_error(std::string(who) + ": nu must be finite");
    if (nu == 0.0)
        throw domain_error(std::string(who) + ": nu = 0 is a pole of Gamma(i nu)");
    if (std::abs(nu) > 100.0) throw range_error(std::string(who) + ": |nu| > 100");
}

}  // namespace detail

/// Principal-branch log Gamma(z) split into ln|Gamma| and arg Gamma.
/// Throws domain_error at the poles z = 0, -1, -2, ... and range_error for |z| > 1e4.
inline GammaEval log_gamma(ComplexValue z)
{
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
        throw domain_error("log_gamma: non-finite argument");
    if (detail::is_nonpositive_integer(z)) throw domain_error("log_gamma: pole of Gamma");
    if (std::abs(z) > 1e4) throw range_error("log_gamma: |z| > 1e4");
    ComplexValue lg = detail::log_gamma_complex(z);
    return {lg.real(), wrap_phase(lg.imag())};
}

/// 1/Gamma(z). Entire; exactly zero at z = 0, -1, -2, ...
inline ComplexValue reciprocal_gamma(ComplexValue z)
{
    if (detail::is_nonpositive_integer(z)) return {0.0, 0.0};
    if (z.imag() == 0.0 && z.real() >= 1.0 && z.real() <= 20.0 &&
        std::nearbyint(z.real()) == z.real()) {
        double factorial = 1.0;  // exact up to 19!
        for (int k = 2; k < static_cast<int>(z.real()); ++k) factorial *= k;
        return {1.0 / factorial, 0.0};
    }
    return std::exp(-detail::log_gamma_complex(z));
}

/// |Gamma(i nu)| = sqrt(pi / (nu sinh(pi nu))), even in nu.
inline double abs_gamma_imag(double nu)
{
    detail::check_imag_order(nu, "abs_gamma_imag");
    double a = std::abs(nu);
    return std::exp(0.5 * (std::log(std::numbers::pi) - std::log(a) -
                           detail::log_sinh(std::numbers::pi * a)));
}

/// Principal arg Gamma(i nu). Uses Gamma(i nu) = Gamma(1 + i nu) / (i nu), which
/// stays accurate as nu -> 0 where the value tends to -sign(nu) pi/2.
inline double arg_gamma_imag(double nu)
{
    detail::check_imag_order(nu, "arg_gamma_imag");
    double arg1 = detail::log_gamma_lanczos({1.0, nu}).imag();
    return wrap_phase(arg1 - std::copysign(std::numbers::pi / 2, nu));
}

}  // namespace kiv
