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

#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "kiv/gamma.hpp"
#include "oracle/mp_oracle.hpp"

namespace {

using kiv::ComplexValue;
using R50 = kiv::oracle::mp_real<50>;
using C50 = kiv::oracle::mp_complex<50>;
constexpr double pi = std::numbers::pi;

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

double phase_distance(double a, double b)
{
    return std::abs(std::remainder(a - b, 2 * pi));
}

TEST(LogGamma, One)
{
    auto g = kiv::log_gamma({1.0, 0.0});
    EXPECT_NEAR(g.log_modulus, 0.0, 1e-15);
    EXPECT_EQ(g.phase, 0.0);
}

TEST(LogGamma, Half)
{
    auto g = kiv::log_gamma({0.5, 0.0});
    EXPECT_NEAR(g.log_modulus, 0.5 * std::log(pi), 1e-15);
    EXPECT_EQ(g.phase, 0.0);
}

TEST(LogGamma, UnitImaginary)
{
    auto g = kiv::log_gamma({0.0, 1.0});
    EXPECT_NEAR(g.log_modulus, 0.5 * std::log(pi / std::sinh(pi)), 1e-14);
}

TEST(LogGamma, NegativeRealAxisPhase)
{
    // Gamma(-0.5) = -2 sqrt(pi)
    auto g = kiv::log_gamma({-0.5, 0.0});
    EXPECT_NEAR(g.log_modulus, std::log(2 * std::sqrt(pi)), 1e-14);
    EXPECT_NEAR(std::abs(g.phase), pi, 1e-14);
}

TEST(LogGamma, PolesAndRange)
{
    EXPECT_THROW(kiv::log_gamma({0.0, 0.0}), kiv::domain_error);
    EXPECT_THROW(kiv::log_gamma({-3.0, 0.0}), kiv::domain_error);
    EXPECT_THROW(kiv::log_gamma({2e4, 0.0}), kiv::range_error);
    EXPECT_NO_THROW(kiv::log_gamma({-3.0, 1e-3}));
    // |Gamma| overflow is representable
    auto g = kiv::log_gamma({500.0, 0.0});
    EXPECT_TRUE(std::isfinite(g.log_modulus));
    EXPECT_GT(g.log_modulus, 700.0);
}

TEST(LogGamma, MatchesOracleOnAnnulus)
{
    std::mt19937_64 rng(20260101);
    std::uniform_real_distribution<double> logr(std::log(0.1), std::log(100.0));
    std::uniform_real_distribution<double> ang(-pi, pi);
    for (int i = 0; i < 200; ++i) {
        double r = std::exp(logr(rng));
        double t = ang(rng);
        ComplexValue z = std::polar(r, t);
        if (z.real() <= 0.0) z = {-z.real() + 0.05, z.imag()};
        C50 lg = kiv::oracle::log_gamma<50>(C50(R50(z.real()), R50(z.imag())));
        auto g = kiv::log_gamma(z);
        double ref_mod = static_cast<double>(lg.real());
        double ref_phase = static_cast<double>(lg.imag());
        // relative accuracy of |Gamma| = absolute accuracy of its log
        EXPECT_NEAR(g.log_modulus, ref_mod, 1e-12) << "z=" << z;
        EXPECT_LT(phase_distance(g.phase, ref_phase), 1e-12 * std::max(1.0, std::abs(ref_phase))) << "z=" << z;
    }
}

TEST(LogGamma, Recurrence)
{
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> logr(std::log(0.1), std::log(50.0));
    std::uniform_real_distribution<double> ang(-pi, pi);
    for (int i = 0; i < 100; ++i) {
        ComplexValue z = std::polar(std::exp(logr(rng)), ang(rng));
        auto a = kiv::log_gamma(z + 1.0);
        auto b = kiv::log_gamma(z);
        EXPECT_NEAR(a.log_modulus, b.log_modulus + std::log(std::abs(z)), 1e-11 * std::max(1.0, std::abs(a.log_modulus)));
        EXPECT_LT(phase_distance(a.phase, b.phase + std::arg(z)), 1e-10);
    }
}

TEST(LogGamma, ConjugateSymmetry)
{
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(-20.0, 20.0);
    for (int i = 0; i < 100; ++i) {
        ComplexValue z{u(rng), u(rng)};
        auto a = kiv::log_gamma(z);
        auto b = kiv::log_gamma(std::conj(z));
        EXPECT_NEAR(a.log_modulus, b.log_modulus, 1e-12 * std::max(1.0, std::abs(a.log_modulus)));
        EXPECT_LT(phase_distance(a.phase, -b.phase), 1e-12 * std::max(1.0, std::abs(a.phase)));
    }
}

TEST(ReciprocalGamma, Zeros)
{
    EXPECT_EQ(kiv::reciprocal_gamma({0.0, 0.0}), ComplexValue(0.0, 0.0));
    EXPECT_EQ(kiv::reciprocal_gamma({-4.0, 0.0}), ComplexValue(0.0, 0.0));
}

TEST(ReciprocalGamma, Integer)
{
    EXPECT_EQ(kiv::reciprocal_gamma({3.0, 0.0}).real(), 0.5);
    EXPECT_EQ(kiv::reciprocal_gamma({1.0, 0.0}).real(), 1.0);
    EXPECT_NEAR(kiv::reciprocal_gamma({6.0, 0.0}).real(), 1.0 / 120.0, 1e-18);
}

TEST(ReciprocalGamma, OnePlusI)
{
    C50 lg = kiv::oracle::log_gamma<50>(C50(R50(1), R50(1)));
    C50 ref = exp(-lg);
    ComplexValue v = kiv::reciprocal_gamma({1.0, 1.0});
    EXPECT_NEAR(v.real(), static_cast<double>(ref.real()), 1e-14);
    EXPECT_NEAR(v.imag(), static_cast<double>(ref.imag()), 1e-14);
    auto g = kiv::log_gamma({1.0, 1.0});
    ComplexValue composed = std::exp(-ComplexValue(g.log_modulus, g.phase));
    EXPECT_NEAR(std::abs(v - composed), 0.0, 1e-14);
}

TEST(ReciprocalGamma, NearPoles)
{
    // 1/Gamma(-n + e) ~ (-1)^n n! e
    ComplexValue v = kiv::reciprocal_gamma({-2.0 + 1e-9, 0.0});
    EXPECT_NEAR(v.real(), 2.0 * 1e-9, 1e-15);
}

TEST(ReciprocalGamma, ReflectionConsistency)
{
    for (int i = 0; i < 60; ++i) {
        double nu = 0.1 * std::pow(200.0, i / 59.0);
        double p = std::abs(kiv::reciprocal_gamma({0.0, nu})) * kiv::abs_gamma_imag(nu);
        EXPECT_NEAR(p, 1.0, 1e-10) << nu;
    }
}

TEST(AbsGammaImag, ClosedForm)
{
    EXPECT_NEAR(kiv::abs_gamma_imag(1.0), std::sqrt(pi / std::sinh(pi)), 1e-15);
    EXPECT_EQ(kiv::abs_gamma_imag(-2.0), kiv::abs_gamma_imag(2.0));
    EXPECT_LT(rel(kiv::abs_gamma_imag(1.0), std::exp(kiv::log_gamma({0.0, 1.0}).log_modulus)), 1e-12);
    EXPECT_THROW(kiv::abs_gamma_imag(0.0), kiv::domain_error);
    EXPECT_THROW(kiv::abs_gamma_imag(101.0), kiv::range_error);
}

TEST(AbsGammaImag, MatchesOracle)
{
    for (double nu : {0.01, 0.1, 1.0, 7.5, 20.0, 60.0}) {
        double ref = static_cast<double>(kiv::oracle::abs_gamma_imag<50>(R50(nu)));
        EXPECT_LT(rel(kiv::abs_gamma_imag(nu), ref), 1e-13) << nu;
    }
}

TEST(ArgGammaImag, OddSymmetry)
{
    EXPECT_NEAR(kiv::arg_gamma_imag(0.7) + kiv::arg_gamma_imag(-0.7), 0.0, 1e-15);
}

TEST(ArgGammaImag, SmallNu)
{
    EXPECT_NEAR(kiv::arg_gamma_imag(1e-6), -pi / 2, 1e-5);
    EXPECT_NEAR(kiv::arg_gamma_imag(-1e-6), pi / 2, 1e-5);
}

TEST(ArgGammaImag, MatchesOracle)
{
    for (double nu : {1e-4, 0.3, 1.0, 2.5, 10.0, 20.0, 45.0}) {
        double ref = static_cast<double>(kiv::oracle::arg_gamma_imag<50>(R50(nu)));
        EXPECT_LT(phase_distance(kiv::arg_gamma_imag(nu), ref), 1e-12 * std::max(1.0, std::abs(ref))) << nu;
    }
}

TEST(ArgGammaImag, PrincipalRangeAndErrors)
{
    for (double nu = 0.05; nu < 100.0; nu *= 1.3) {
        double a = kiv::arg_gamma_imag(nu);
        EXPECT_GT(a, -pi);
        EXPECT_LE(a, pi);
    }
    EXPECT_THROW(kiv::arg_gamma_imag(0.0), kiv::domain_error);
}

TEST(ArgGammaTwoPlusImag, ViaLogGamma)
{
    // arg Gamma(2 + i nu) = arg Gamma(i nu) + arg(i nu) + arg(1 + i nu)
    for (double nu : {0.5, 1.0, 3.0}) {
        double direct = kiv::log_gamma({2.0, nu}).phase;
        double composed = kiv::arg_gamma_imag(nu) + pi / 2 + std::atan(nu);
        EXPECT_LT(phase_distance(direct, composed), 1e-13);
    }
}

}  // namespace
