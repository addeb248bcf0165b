#pragma once

#include <optional>
#include <string>
#include <vector>

#include "subdiv/expspace.hpp"
#include "subdiv/scheme.hpp"

namespace subdiv {

/// Global residual tolerance: 1e-9 unless SUBDIV_TOL is set to a positive number.
double default_tolerance();

struct LevelRange {
    int first = 0;
    int last = 24;
};

struct LevelResidual {
    int k = 0;
    double worst_residual = 0.0;
    std::string error;  // non-empty when the level could not be checked
};

/// Single-exponential reproduction conditions a(-r^{-1}) = 0, a(r^{-1}) = 2 r^{-p}
/// at one level, for one frequency.
struct ShortcutResidual {
    int k = 0;
    Complex lambda;
    double at_minus = 0.0;  // |a(-r^{-1})|
    double at_plus = 0.0;   // |a(r^{-1}) - 2 r^{-p}|
};

struct ConditionReport {
    bool holds = false;
    double tolerance = 0.0;
    std::vector<LevelResidual> per_level;
    /// b^{[k]} for generation, c^{[k]} for reproduction, one per checked level.
    std::vector<LaurentPoly> quotients;
    std::string detail;
    std::vector<std::string> warnings;

    /// Reproduction reports only: shortcut residuals and whether they agree
    /// with the factor test for the simple (mu-independent) frequencies.
    std::vector<ShortcutResidual> shortcut;
    std::optional<bool> shortcut_holds;
    std::optional<bool> shortcut_consistent;
};

ConditionReport check_generation_stationary(const LaurentPoly& a, int n, double tol = default_tolerance());

/// g(z) = 2 - a(z^{1+nu}) z^{nu + (1+nu) tau} divided by (1 - z) n times.
ConditionReport check_reproduction_stationary(const LaurentPoly& a, int n, const Parametrization& param,
                                              double tol = default_tolerance());

/// a^{[k]} divisible by prod_n (1 + e^{lambda_n 2^{-k-1}} z)^{mu_n}.
ConditionReport check_generation_ns(const NonStationaryScheme& scheme, const ExpSpace& space, LevelRange levels,
                                    double tol = default_tolerance());

/// g_k(z) = 2 - a^{[k]}(z^{1+nu}) z^{nu+(1+nu)tau} divisible by
/// prod_n (1 - e^{-lambda_n 2^{-k-1-nu}} z)^{mu_n}.
ConditionReport check_reproduction_ns(const NonStationaryScheme& scheme, const ExpSpace& space, LevelRange levels,
                                      double tol = default_tolerance());

/// g_k(z) for the scheme's parametrization.
LaurentPoly reproduction_symbol(const LaurentPoly& a, const Parametrization& param);

/// prod_n (1 + c_n z)^{mu_n}
LaurentPoly factor_product(const std::vector<std::pair<Complex, int>>& factors);

/// Run-based reproduction test: samples of every basis function at level 0,
/// refined `steps` times, compared with fresh samples on the interior of the
/// final level. Errors are relative to the sup of the fresh samples.
struct EmpiricalReproduction {
    int steps = 0;
    std::vector<double> relative_error;  // per basis element
    double worst = 0.0;
};

EmpiricalReproduction empirical_reproduction(const NonStationaryScheme& scheme, const ExpSpace& space, int steps);

}  // namespace subdiv
