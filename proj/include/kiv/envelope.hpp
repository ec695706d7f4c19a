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

#include <cmath>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "kiv/bessel.hpp"
#include "kiv/errors.hpp"
#include "kiv/ortho.hpp"

// Error envelopes of the small-argument forms. Their leading errors are
// x^2 times trigonometric polynomials in ln(x/2) with known frequencies, so
// y / x^2 is fitted by least squares over a log-uniform window and the
// envelope is x_c^2 times the sum of fitted amplitudes.

namespace kiv {

struct OscillationFit {
    std::vector<double> amplitudes;  // one per frequency
    double residual = 0.0;           // rms(y - fit) / rms(y)
};

/// Least-squares fit y ~ sum_k A_k cos(w_k t) + B_k sin(w_k t).
inline OscillationFit fit_oscillation(std::span<const double> t, std::span<const double> y,
                                      std::span<const double> freqs)
{
    const Eigen::Index n = static_cast<Eigen::Index>(t.size());
    const Eigen::Index m = static_cast<Eigen::Index>(freqs.size());
    if (n != static_cast<Eigen::Index>(y.size()) || n < 2 * m + 1)
        throw argument_error("fit_oscillation: need matching sizes and more samples than unknowns");
    Eigen::MatrixXd a(n, 2 * m);
    Eigen::VectorXd b(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index k = 0; k < m; ++k) {
            a(i, 2 * k) = std::cos(freqs[k] * t[i]);
            a(i, 2 * k + 1) = std::sin(freqs[k] * t[i]);
        }
        b(i) = y[i];
    }
    Eigen::VectorXd c = a.colPivHouseholderQr().solve(b);
    OscillationFit fit;
    for (Eigen::Index k = 0; k < m; ++k) fit.amplitudes.push_back(std::hypot(c(2 * k), c(2 * k + 1)));
    const double rms_y = b.norm();
    fit.residual = rms_y > 0.0 ? (a * c - b).norm() / rms_y : 0.0;
    return fit;
}

struct EnvelopeEstimate {
    double center = 0.0;
    double envelope = 0.0;
    double fit_residual = 0.0;
};

namespace detail {

inline std::vector<double> log_window(double center, double spread, int samples)
{
    if (samples < 2 || !(spread > 1.0)) throw argument_error("log_window: bad sampling");
    std::vector<double> pts;
    for (int j = 0; j < samples; ++j) {
        double e = -1.0 + 2.0 * j / (samples - 1);
        pts.push_back(center * std::pow(spread, e));
    }
    return pts;
}

}  // namespace detail

/// Envelope of K_{i nu}(x) - besselk_smallx_approx(nu, x) around x = center,
/// sampled on [center/spread, center*spread].
inline EnvelopeEstimate smallx_error_envelope(double nu, double center, int samples = 16,
                                              double spread = 2.0)
{
    if (center * spread > 2.0) throw range_error("smallx_error_envelope: window exceeds x = 2");
    std::vector<double> t, y;
    for (double x : detail::log_window(center, spread, samples)) {
        double k = besselk_imag(Order(nu), Abscissa(x)).value;
        double approx = besselk_smallx_approx(Order(nu), Abscissa(x));
        t.push_back(std::log(0.5 * x));
        y.push_back((k - approx) / (x * x));
    }
    const double freqs[] = {std::abs(nu)};
    OscillationFit fit = fit_oscillation(t, y, freqs);
    return {center, center * center * fit.amplitudes[0], fit.residual};
}

/// Envelope of kernel_asymptotic - kernel_boundary around xi = center.
inline EnvelopeEstimate kernel_asymptotic_envelope(double nu, double nu_prime, double center,
                                                   int samples = 24, double spread = 2.0)
{
    if (center * spread > 0.1) throw range_error("kernel_asymptotic_envelope: window exceeds xi = 0.1");
    std::vector<double> t, y;
    for (double xi : detail::log_window(center, spread, samples)) {
        PairSpec p(nu, nu_prime, xi);
        double d = kernel_asymptotic(p).value - kernel_boundary(p).value;
        t.push_back(std::log(0.5 * xi));
        y.push_back(d / (xi * xi));
    }
    const double freqs[] = {std::abs(nu - nu_prime), nu + nu_prime};
    OscillationFit fit = fit_oscillation(t, y, freqs);
    return {center, center * center * (fit.amplitudes[0] + fit.amplitudes[1]), fit.residual};
}

}  // namespace kiv
