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
#include <string>
#include <string_view>
#include <utility>

#include "kiv/errors.hpp"

namespace kiv {

/// Smooth test function phi(t) peaking at phi(center) = 1, used to probe
/// distributional limits in the spectral variable.
///
///   gaussian-bump:        exp(-((t - c) / w)^2)
///   smooth-compact-bump:  exp(1 - 1 / (1 - ((t - c) / w)^2)) for |t - c| < w, else 0
///
/// Both must live (to 1e-12 in mass) on t > 0.
class TestFunctionSpec {
  public:
    enum class Kind { gaussian_bump, smooth_compact_bump };

    TestFunctionSpec(Kind kind, double center, double width)
        : kind_(kind), center_(center), width_(width)
    {
        if (!std::isfinite(center) || !(center > 0.0))
            throw domain_error("TestFunctionSpec: center must be > 0");
        if (!std::isfinite(width) || !(width > 0.0))
            throw domain_error("TestFunctionSpec: width must be > 0");
        if (mass_below_zero() > 1e-12)
            throw domain_error("TestFunctionSpec: more than 1e-12 of the mass lies at t <= 0");
    }

    static TestFunctionSpec gaussian(double center, double width)
    {
        return {Kind::gaussian_bump, center, width};
    }
    static TestFunctionSpec compact(double center, double width)
    {
        return {Kind::smooth_compact_bump, center, width};
    }

    /// Parse "gaussian:c,w" or "compact:c,w".
    static TestFunctionSpec parse(std::string_view text)
    {
        auto colon = text.find(':');
        auto comma = text.find(',', colon == std::string_view::npos ? 0 : colon);
        if (colon == std::string_view::npos || comma == std::string_view::npos)
            throw argument_error("test function must look like gaussian:c,w or compact:c,w");
        std::string kind(text.substr(0, colon));
        double c = std::stod(std::string(text.substr(colon + 1, comma - colon - 1)));
        double w = std::stod(std::string(text.substr(comma + 1)));
        if (kind == "gaussian" || kind == "gaussian-bump") return gaussian(c, w);
        if (kind == "compact" || kind == "smooth-compact-bump") return compact(c, w);
        throw argument_error("unknown test function kind '" + kind + "'");
    }

    Kind kind() const noexcept { return kind_; }
    double center() const noexcept { return center_; }
    double width() const noexcept { return width_; }

    std::string name() const
    {
        return kind_ == Kind::gaussian_bump ? "gaussian-bump" : "smooth-compact-bump";
    }

    double operator()(double t) const
    {
        double u = (t - center_) / width_;
        if (kind_ == Kind::gaussian_bump) return std::exp(-u * u);
        double s = 1.0 - u * u;
        if (s <= 0.0) return 0.0;
        return std::exp(1.0 - 1.0 / s);
    }

    /// Interval outside of which |phi| < 1e-16 (gaussian) or phi = 0 (compact),
    /// clipped to stay strictly positive.
    std::pair<double, double> support() const
    {
        double r = kind_ == Kind::gaussian_bump ? width_ * std::sqrt(16.0 * std::log(10.0)) : width_;
        double lo = std::max(center_ - r, 1e-3 * center_);
        return {lo, center_ + r};
    }

    /// Fraction of int phi that lies at t <= 0.
    double mass_below_zero() const
    {
        if (kind_ == Kind::smooth_compact_bump) return center_ - width_ >= 0.0 ? 0.0 : 1.0;
        return 0.5 * std::erfc(center_ / width_);
    }

  private:
    Kind kind_;
    double center_;
    double width_;
};

}  // namespace kiv
