#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "subdiv/laurent.hpp"

using namespace subdiv;

namespace {

LaurentPoly hat() { return LaurentPoly({0.5, 1.0, 0.5}, -1); }
LaurentPoly quad_bspline() { return LaurentPoly({0.25, 0.75, 0.75, 0.25}, -2); }

void expect_coeffs(const LaurentPoly& p, std::vector<double> expected, int low, double tol = 1e-15) {
    ASSERT_EQ(p.low_degree(), low) << to_string(p);
    ASSERT_EQ(p.size(), expected.size()) << to_string(p);
    for (std::size_t i = 0; i < expected.size(); ++i) {
        EXPECT_NEAR(p.coeffs()[i].real(), expected[i], tol) << "index " << i;
        EXPECT_NEAR(p.coeffs()[i].imag(), 0.0, tol);
    }
}

LaurentPoly random_poly(std::mt19937& rng, int max_len = 7) {
    std::uniform_int_distribution<int> len(1, max_len), low(-4, 4);
    std::uniform_real_distribution<double> c(-1.0, 1.0);
    std::vector<Complex> coeffs(static_cast<std::size_t>(len(rng)));
    for (auto& x : coeffs) x = {c(rng), c(rng)};
    return LaurentPoly(coeffs, low(rng));
}

}  // namespace

TEST(Laurent, CanonicalTrimDropsNegligibleEnds) {
    LaurentPoly p({0.0, 1e-20, 1.0, 2.0, 0.0}, -3);
    EXPECT_EQ(p.low_degree(), -1);
    EXPECT_EQ(p.high_degree(), 0);
    EXPECT_TRUE(LaurentPoly({0.0, 0.0}, 2).is_zero());
}

TEST(Laurent, EvalAtOneIsCoefficientSum) {
    EXPECT_NEAR(std::abs(eval(hat(), 1.0) - 2.0), 0.0, 1e-15);
    std::mt19937 rng(7);
    for (int t = 0; t < 20; ++t) {
        auto p = random_poly(rng);
        Complex sum{};
        for (auto c : p.coeffs()) sum += c;
        EXPECT_LT(std::abs(eval(p, 1.0) - sum), 1e-14);
    }
}

TEST(Laurent, EvalQuadraticBsplineAtMinusOne) { EXPECT_NEAR(std::abs(eval(quad_bspline(), -1.0)), 0.0, 1e-15); }

TEST(Laurent, EvalPerturbedQuadraticAtOne) {
    const double k = 3, e = std::ldexp(1.0, -3);
    LaurentPoly a({0.25 + e, 0.75 - e, 0.75 - e, 0.25 - e}, 0);
    EXPECT_NEAR(eval(a, 1.0).real(), 2.0 * (1.0 - std::pow(2.0, -k)), 1e-15);
    EXPECT_NEAR(eval(a, 1.0).real(), 1.75, 1e-15);
}

TEST(Laurent, EvalAtZeroThrows) { EXPECT_THROW(eval(hat(), 0.0), DomainError); }

TEST(Laurent, DerivativeOfHat) {
    auto d = derivative(hat(), 1);
    expect_coeffs(d, {-0.5, 0.0, 0.5}, -2);
    EXPECT_EQ(derivative(hat(), 0), hat());
}

TEST(Laurent, ThirdDerivativeOfQuadraticBsplineAtMinusOne) {
    // (1+z)^3/(4z^2) = z^{-2}/4 + 3z^{-1}/4 + 3/4 + z/4; third derivative by hand:
    // (-2)(-3)(-4)/4 z^{-5} + 3/4 (-1)(-2)(-3) z^{-4} = -6 z^{-5} - 9/2 z^{-4}
    const double oracle = -6.0 * std::pow(-1.0, -5) - 4.5 * std::pow(-1.0, -4);
    EXPECT_NEAR(oracle, 1.5, 1e-15);
    EXPECT_NEAR(eval(derivative(quad_bspline(), 3), -1.0).real(), oracle, 1e-14);
}

TEST(Laurent, Products) {
    expect_coeffs(LaurentPoly({1.0, 1.0}, 0) * LaurentPoly({1.0, -1.0}, 0), {1.0, 0.0, -1.0}, 0);
    expect_coeffs(hat() * upsample(hat()), {0.25, 0.5, 0.75, 1.0, 0.75, 0.5, 0.25}, -3);
    EXPECT_TRUE((hat() * LaurentPoly()).is_zero());
}

TEST(Laurent, Upsample) {
    expect_coeffs(upsample(LaurentPoly({1.0, 1.0}, 0)), {1.0, 0.0, 1.0}, 0);
    expect_coeffs(upsample(LaurentPoly::monomial(1.0, -1)), {1.0}, -2);
    expect_coeffs(upsample(hat()), {0.5, 0.0, 1.0, 0.0, 0.5}, -2);
}

TEST(Laurent, DivideByLinearExactFactor) {
    auto r = divide_by_linear(hat(), -1.0);
    EXPECT_TRUE(r.exact);
    EXPECT_NEAR(r.remainder_magnitude, 0.0, 1e-15);
    expect_coeffs(r.quotient, {0.5, 0.5}, -1);
}

TEST(Laurent, DivideByLinearReportsResidual) {
    const double e = 0.5;  // k = 1
    LaurentPoly a({0.25 + e, 0.75 - e, 0.75 - e, 0.25 - e}, 0);
    auto r = divide_by_linear(a, -1.0);
    EXPECT_FALSE(r.exact);
    EXPECT_NEAR(r.remainder_magnitude, 1.0, 1e-15);
}

TEST(Laurent, DivideTwice) {
    LaurentPoly p({1.0, 0.0, -1.0}, 0);
    auto r1 = divide_by_linear(p, -1.0);
    auto r2 = divide_by_linear(r1.quotient, 1.0);
    EXPECT_TRUE(r1.exact);
    EXPECT_TRUE(r2.exact);
    EXPECT_EQ(r2.quotient.size(), 1u);
    // (1-z^2) = (1+z)(1-z): the final quotient is the constant 1
    EXPECT_NEAR(std::abs(r2.quotient.coeffs()[0] - 1.0), 0.0, 1e-15);
}

TEST(Laurent, DivideAtZeroThrows) { EXPECT_THROW(divide_by_linear(hat(), 0.0), DomainError); }

TEST(Laurent, LongDivisionRoundTrip) {
    std::mt19937 rng(11);
    for (int t = 0; t < 50; ++t) {
        auto d = random_poly(rng, 4);
        auto q = random_poly(rng, 5);
        auto p = d * q;
        auto res = divide(p, d);
        EXPECT_LT((res.quotient * d + res.remainder - p).norm_inf(), 1e-12 * (1 + p.norm_inf()));
        EXPECT_LT(res.remainder.norm_inf(), 1e-12 * (1 + p.norm_inf()));
    }
}

TEST(LaurentProperty, EvalIsMultiplicative) {
    std::mt19937 rng(1);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * M_PI);
    for (int t = 0; t < 20; ++t) {
        auto p = random_poly(rng), q = random_poly(rng);
        auto pq = mul(p, q);
        for (int s = 0; s < 100; ++s) {
            const Complex z = std::polar(1.0, angle(rng));
            const Complex lhs = eval(pq, z), rhs = eval(p, z) * eval(q, z);
            EXPECT_LE(std::abs(lhs - rhs), 1e-12 * std::max(1.0, std::abs(rhs)));
        }
    }
}

TEST(LaurentProperty, DivisionThenMultiplicationReconstructs) {
    std::mt19937 rng(2);
    std::uniform_real_distribution<double> c(-2.0, 2.0);
    for (int t = 0; t < 50; ++t) {
        const Complex root{c(rng), c(rng)};
        auto q = random_poly(rng);
        auto p = q * (LaurentPoly({1.0}, 0) + LaurentPoly::monomial(-1.0 / root, 1));
        auto r = divide_by_linear(p, root);
        ASSERT_TRUE(r.exact);
        auto back = r.quotient * linear_factor(-1.0 / root);
        EXPECT_LE((back - p).norm_inf(), 1e-9 * p.norm_inf());
    }
}

TEST(LaurentProperty, DerivativeMatchesComplexStep) {
    // for real-coefficient p, Im p(x + ih)/h = p'(x) + O(h^2)
    std::mt19937 rng(3);
    std::uniform_real_distribution<double> c(-1.0, 1.0);
    const double h = 1e-6;
    for (int t = 0; t < 30; ++t) {
        std::vector<double> taps(5);
        for (auto& x : taps) x = c(rng);
        auto p = LaurentPoly::from_real(taps, -2);
        const double exact = eval(derivative(p, 1), -1.0).real();
        const double est = eval(p, Complex{-1.0, h}).imag() / h;
        EXPECT_NEAR(exact, est, 1e-6);
    }
}

TEST(LaurentProperty, UpsampleThenEvalIsEvalAtSquare) {
    std::mt19937 rng(4);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * M_PI);
    for (int t = 0; t < 50; ++t) {
        auto p = random_poly(rng);
        const Complex z = std::polar(1.0, angle(rng));
        EXPECT_LE(std::abs(eval(upsample(p), z) - eval(p, z * z)), 1e-13);
    }
}
