#include "subdiv/checks.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <sstream>

namespace subdiv {

namespace {

bool finite(Complex c) { return std::isfinite(c.real()) && std::isfinite(c.imag()); }

double relative(double value, double scale) { return scale > 0.0 ? value / scale : value; }

// Repeated division by the factor vanishing at `root`; returns the worst
// remainder relative to ||p||.
ConditionReport repeated_division(const LaurentPoly& p, Complex root, int n, double tol, const std::string& what) {
    ConditionReport report;
    report.tolerance = tol;
    LaurentPoly current = p;
    double worst = 0.0;
    const double scale = p.norm_inf();
    for (int i = 0; i < n; ++i) {
        if (current.is_zero()) break;
        const LinearDivision d = divide_by_linear(current, root, tol);
        worst = std::max(worst, relative(d.remainder_magnitude, scale));
        current = d.quotient;
    }
    report.per_level.push_back({0, worst, {}});
    report.quotients.push_back(current);
    report.holds = !p.is_zero() && worst <= tol;
    std::ostringstream os;
    os << what << " with multiplicity " << n << ": worst relative remainder " << worst;
    report.detail = os.str();
    return report;
}

}  // namespace

double default_tolerance() {
    if (const char* env = std::getenv("SUBDIV_TOL")) {
        char* end = nullptr;
        const double v = std::strtod(env, &end);
        if (end != env && v > 0.0 && std::isfinite(v)) return v;
    }
    return 1e-9;
}

LaurentPoly reproduction_symbol(const LaurentPoly& a, const Parametrization& param) {
    const int nu = param.nu();
    const int e = nu + (1 + nu) * param.tau();
    return LaurentPoly::constant(2.0) - shift(substitute_power(a, 1 + nu), e);
}

LaurentPoly factor_product(const std::vector<std::pair<Complex, int>>& factors) {
    LaurentPoly out = LaurentPoly::constant(1.0);
    for (const auto& [c, mu] : factors) {
        const LaurentPoly f = linear_factor(c);
        for (int i = 0; i < mu; ++i) out = out * f;
    }
    return out;
}

ConditionReport check_generation_stationary(const LaurentPoly& a, int n, double tol) {
    if (n < 1) throw DomainError("generation order must be at least 1");
    return repeated_division(a, -1.0, n, tol, "factor (1+z)");
}

ConditionReport check_reproduction_stationary(const LaurentPoly& a, int n, const Parametrization& param, double tol) {
    if (n < 1) throw DomainError("reproduction order must be at least 1");
    const ConditionReport gen = check_generation_stationary(a, n, tol);
    ConditionReport report = repeated_division(reproduction_symbol(a, param), 1.0, n, tol, "factor (1-z) of 2 - a(z^{1+nu}) z^e");
    if (!gen.holds) report.warnings.push_back("precondition: symbol does not generate polynomials of this order");
    return report;
}

ConditionReport check_generation_ns(const NonStationaryScheme& scheme, const ExpSpace& space, LevelRange levels,
                                    double tol) {
    ConditionReport report;
    report.tolerance = tol;
    bool ok = levels.first <= levels.last;
    for (int k = levels.first; k <= levels.last; ++k) {
        const LaurentPoly a = symbol_at(scheme, k);
        std::vector<std::pair<Complex, int>> factors;
        std::string error;
        for (const auto& c : space.components()) {
            const Complex r = std::exp(c.lambda * std::ldexp(1.0, -k - 1));
            if (!finite(r) || r == Complex{}) error = "overflow in exp(lambda 2^{-k-1})";
            factors.emplace_back(r, c.mu);
        }
        if (!error.empty() || a.is_zero()) {
            report.per_level.push_back({k, std::numeric_limits<double>::infinity(),
                                        error.empty() ? "zero symbol" : error});
            report.quotients.emplace_back();
            ok = false;
            continue;
        }
        const PolyDivision d = divide(a, factor_product(factors));
        const double res = relative(d.remainder.norm_inf(), a.norm_inf());
        report.per_level.push_back({k, res, {}});
        report.quotients.push_back(d.quotient);
        if (!(res <= tol)) ok = false;
    }
    report.holds = ok;
    std::ostringstream os;
    os << "generation of dimension-" << space.dimension() << " space on levels " << levels.first << ".."
       << levels.last << (ok ? ": all remainders within tolerance" : ": condition violated");
    report.detail = os.str();
    return report;
}

ConditionReport check_reproduction_ns(const NonStationaryScheme& scheme, const ExpSpace& space, LevelRange levels,
                                      double tol) {
    ConditionReport report;
    report.tolerance = tol;
    const Parametrization& param = scheme.param();
    const int nu = param.nu();
    const double p = param.shift();
    bool ok = levels.first <= levels.last;
    bool shortcut_ok = true;
    bool consistent = true;
    for (int k = levels.first; k <= levels.last; ++k) {
        const LaurentPoly a = symbol_at(scheme, k);
        const LaurentPoly g = reproduction_symbol(a, param);
        std::vector<std::pair<Complex, int>> factors;
        std::string error;
        for (const auto& c : space.components()) {
            const Complex root = std::exp(-c.lambda * std::ldexp(1.0, -k - 1 - nu));
            if (!finite(root) || root == Complex{}) error = "overflow in exp(-lambda 2^{-k-1-nu})";
            factors.emplace_back(-1.0 / root, c.mu);  // (1 - z/root)
        }
        if (!error.empty()) {
            report.per_level.push_back({k, std::numeric_limits<double>::infinity(), error});
            report.quotients.emplace_back();
            ok = false;
            continue;
        }
        double res = 0.0;
        if (!g.is_zero()) {
            const PolyDivision d = divide(g, factor_product(factors));
            res = relative(d.remainder.norm_inf(), g.norm_inf());
            report.quotients.push_back(d.quotient);
        } else {
            report.quotients.emplace_back();
        }
        report.per_level.push_back({k, res, {}});
        if (!(res <= tol)) ok = false;

        const double scale = std::max(1.0, a.norm_inf());
        for (const auto& c : space.components()) {
            const Complex r = std::exp(c.lambda * std::ldexp(1.0, -k - 1));
            ShortcutResidual s{k, c.lambda, std::abs(eval(a, -1.0 / r)),
                               std::abs(eval(a, 1.0 / r) - 2.0 * std::exp(-p * c.lambda * std::ldexp(1.0, -k - 1)))};
            const bool s_ok = s.at_minus <= tol * scale && s.at_plus <= tol * scale;
            shortcut_ok = shortcut_ok && s_ok;
            // the factor test sees a(r^{-1}) through g at its simple root
            const Complex z0 = std::exp(-c.lambda * std::ldexp(1.0, -k - 1 - nu));
            const double g_at_root = g.is_zero() ? 0.0 : std::abs(eval(g, z0));
            const double g_scale = std::max(1.0, g.norm_inf());
            const bool factor_sees = g_at_root <= tol * g_scale;
            const bool plus_ok = s.at_plus <= tol * scale;
            if (factor_sees != plus_ok) consistent = false;
            report.shortcut.push_back(s);
        }
    }
    report.holds = ok;
    report.shortcut_holds = shortcut_ok;
    report.shortcut_consistent = consistent;
    std::ostringstream os;
    os << "reproduction of dimension-" << space.dimension() << " space (nu=" << nu << ", tau=" << param.tau()
       << ") on levels " << levels.first << ".." << levels.last
       << (ok ? ": all remainders within tolerance" : ": condition violated");
    report.detail = os.str();
    return report;
}

EmpiricalReproduction empirical_reproduction(const NonStationaryScheme& scheme, const ExpSpace& space, int steps) {
    EmpiricalReproduction out;
    out.steps = steps;
    const int m = scheme.support_bound();
    const std::int64_t w = 2 * m + 4;
    const Parametrization& param = scheme.param();
    for (int n = 0; n < space.dimension(); ++n) {
        std::vector<Complex> coeffs(static_cast<std::size_t>(space.dimension()), Complex{});
        coeffs[static_cast<std::size_t>(n)] = 1.0;
        const RefinedData initial = sample_function(space, coeffs, GridSpec{0, param, {-w, w}});
        const RefinedData refined = run(scheme, initial, steps);
        const IndexRange inner = refined.exact_range();
        double err = 0.0, sup = 0.0;
        for (std::int64_t i = inner.lo; i <= inner.hi; ++i) {
            const Complex exact = eval_combination(space, coeffs, refined.t(i));
            err = std::max(err, std::abs(refined.at(i) - exact));
            sup = std::max(sup, std::abs(exact));
        }
        const double rel = inner.empty() ? std::numeric_limits<double>::infinity() : relative(err, sup);
        out.relative_error.push_back(rel);
        out.worst = std::max(out.worst, rel);
    }
    return out;
}

}  // namespace subdiv
