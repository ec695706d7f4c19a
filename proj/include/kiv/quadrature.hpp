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
#include <span>

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace kiv {

struct QuadratureResult {
    double value = 0.0;
    double error = 0.0;  // estimated absolute error
    double l1 = 0.0;     // integral of |f|
};

/// Adaptive 31-point Gauss-Kronrod over each [breaks[i], breaks[i+1]].
/// rel_tol is handed to each panel; the caller judges the summed error.
template<class F>
QuadratureResult integrate_panels(F&& f, std::span<const double> breaks, double rel_tol,
                                  unsigned max_depth = 15)
{
    using gk = boost::math::quadrature::gauss_kronrod<double, 31>;
    QuadratureResult out;
    for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
        if (!(breaks[i] < breaks[i + 1])) continue;
        double err = 0.0, l1 = 0.0;
        out.value += gk::integrate(f, breaks[i], breaks[i + 1], max_depth, rel_tol, &err, &l1);
        out.error += err;
        out.l1 += l1;
    }
    return out;
}

template<class F>
QuadratureResult integrate(F&& f, double a, double b, double rel_tol, unsigned max_depth = 15)
{
    const double breaks[2] = {a, b};
    return integrate_panels(std::forward<F>(f), breaks, rel_tol, max_depth);
}

}  // namespace kiv
