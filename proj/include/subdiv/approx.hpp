#pragma once

#include <optional>
#include <string>
#include <vector>

#include "subdiv/expspace.hpp"
#include "subdiv/scheme.hpp"

namespace subdiv {

/// Closed-form test function with exact derivatives of every order.
/// Spec strings: "sin", "sin:a" (sin(a x)), "cos:a", "exp:a", "cosh:a",
/// "sinh:a", "poly:c0,c1,..." (sum c_j x^j).
class TestFunction {
   public:
    enum class Kind { Sin, Cos, Exp, Cosh, Sinh, Poly };

    static TestFunction parse(const std::string& spec);
    static TestFunction sine(double a = 1.0) { return TestFunction(Kind::Sin, a, {}); }
    static TestFunction exponential(double a = 1.0) { return TestFunction(Kind::Exp, a, {}); }
    static TestFunction polynomial(std::vector<double> c) { return TestFunction(Kind::Poly, 1.0, std::move(c)); }

    double operator()(double x) const { return derivative(x, 0); }
    double derivative(double x, int order) const;
    std::string spec() const;
    Kind kind() const noexcept { return kind_; }

    /// sum_{l <= n} sup_{[lo, hi]} |f^{(l)}|, sup taken over 2001 equispaced points.
    double sobolev_norm(int n, double lo = -1.0, double hi = 1.0) const;

   private:
    TestFunction(Kind kind, double a, std::vector<double> poly) : kind_(kind), a_(a), poly_(std::move(poly)) {}
    Kind kind_;
    double a_;
    std::vector<double> poly_;
};

struct ApproxConfig {
    TestFunction f = TestFunction::sine();
    int gamma = 2;
    std::vector<int> m_list{3, 4, 5, 6, 7, 8};
    int k = 10;  // refinement steps approximating the limit
    double lo = -1.0;
    double hi = 1.0;
    double noise_floor = 1e-12;  // errors at or below are excluded from the fit
    /// When set, reproduction of this space is checked first (a failure only warns).
    std::optional<ExpSpace> space;
};

struct ApproxRow {
    int m = 0;
    double h = 0.0;
    double error = 0.0;         // sup |g - f| over interior points of [lo, hi]
    double cauchy = 0.0;        // last-step Cauchy estimate, the error bar
    double sample_norm = 0.0;   // sup |f| over the same points
    std::optional<double> local_order;
    std::string failure;        // set when the run diverged
};

struct ApproxResult {
    ApproxConfig config;
    std::vector<ApproxRow> rows;
    double fitted_order = 0.0;  // NaN when fewer than two usable points
    double intercept = 0.0;     // C_f: fitted error ~ C_f 2^{-order m}
    int points_used = 0;
    double sobolev_norm = 0.0;
    std::vector<std::string> warnings;
};

ApproxResult run_approx_experiment(const NonStationaryScheme& scheme, const ApproxConfig& config);

/// Hermite interpolant psi(u) = sum d_n phi_n(u - x) matching f^{(r)}(x), r < gamma,
/// on the leading gamma-dimensional subspace.
struct AuxiliaryFunction {
    ExpSpace space;
    double x = 0.0;
    std::vector<Complex> coeffs;
    double residual = 0.0;  // worst mismatch of the gamma matching conditions
    Complex operator()(double u) const { return eval_combination(space, coeffs, u - x); }
};

AuxiliaryFunction auxiliary_function(const ExpSpace& space, const TestFunction& f, double x, int gamma);
double auxiliary_function_residual(const ExpSpace& space, const TestFunction& f, double x, int gamma);

}  // namespace subdiv
