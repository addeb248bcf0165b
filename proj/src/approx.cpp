#include "subdiv/approx.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <sstream>

#include "subdiv/checks.hpp"

namespace subdiv {

namespace {

double parse_number(const std::string& text, const std::string& spec) {
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(text, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used == 0 || used != text.size()) throw DomainError("test function '" + spec + "': bad number '" + text + "'");
    return v;
}

std::string format_number(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

// Interpolates the coarse level linearly at the position of fine index i.
Complex coarse_interpolant(const RefinedData& coarse, double u) {
    const double fl = std::floor(u);
    const auto j = static_cast<std::int64_t>(fl);
    const double t = u - fl;
    return t == 0.0 ? coarse.at(j) : (1.0 - t) * coarse.at(j) + t * coarse.at(j + 1);
}

}  // namespace

TestFunction TestFunction::parse(const std::string& spec) {
    const std::size_t colon = spec.find(':');
    const std::string name = spec.substr(0, colon);
    const std::string arg = colon == std::string::npos ? std::string{} : spec.substr(colon + 1);
    if (name == "poly") {
        std::vector<double> c;
        std::stringstream in(arg);
        std::string item;
        while (std::getline(in, item, ',')) c.push_back(parse_number(item, spec));
        if (c.empty()) throw DomainError("test function '" + spec + "': polynomial needs coefficients");
        return polynomial(std::move(c));
    }
    const double a = arg.empty() ? 1.0 : parse_number(arg, spec);
    if (name == "sin") return TestFunction(Kind::Sin, a, {});
    if (name == "cos") return TestFunction(Kind::Cos, a, {});
    if (name == "exp") return TestFunction(Kind::Exp, a, {});
    if (name == "cosh") return TestFunction(Kind::Cosh, a, {});
    if (name == "sinh") return TestFunction(Kind::Sinh, a, {});
    throw DomainError("unknown test function '" + spec + "'");
}

double TestFunction::derivative(double x, int order) const {
    if (order < 0) throw DomainError("TestFunction: negative derivative order");
    const double scale = std::pow(a_, order);
    const double phase = order * std::numbers::pi / 2;
    switch (kind_) {
        case Kind::Sin: return scale * std::sin(a_ * x + phase);
        case Kind::Cos: return scale * std::cos(a_ * x + phase);
        case Kind::Exp: return scale * std::exp(a_ * x);
        case Kind::Cosh: return scale * (order % 2 ? std::sinh(a_ * x) : std::cosh(a_ * x));
        case Kind::Sinh: return scale * (order % 2 ? std::cosh(a_ * x) : std::sinh(a_ * x));
        case Kind::Poly: {
            // Horner on the differentiated coefficients
            double acc = 0.0;
            for (std::size_t j = poly_.size(); j-- > static_cast<std::size_t>(order);) {
                double falling = 1.0;
                for (int q = 0; q < order; ++q) falling *= static_cast<double>(j - static_cast<std::size_t>(q));
                acc = acc * x + falling * poly_[j];
            }
            return acc;
        }
    }
    return 0.0;
}

std::string TestFunction::spec() const {
    std::string out;
    switch (kind_) {
        case Kind::Sin: out = "sin"; break;
        case Kind::Cos: out = "cos"; break;
        case Kind::Exp: out = "exp"; break;
        case Kind::Cosh: out = "cosh"; break;
        case Kind::Sinh: out = "sinh"; break;
        case Kind::Poly: {
            out = "poly:";
            for (std::size_t j = 0; j < poly_.size(); ++j) out += (j ? "," : "") + format_number(poly_[j]);
            return out;
        }
    }
    return out + ":" + format_number(a_);
}

double TestFunction::sobolev_norm(int n, double lo, double hi) const {
    constexpr int samples = 2001;
    double total = 0.0;
    for (int l = 0; l <= n; ++l) {
        double sup = 0.0;
        for (int s = 0; s < samples; ++s) {
            const double x = lo + (hi - lo) * s / (samples - 1);
            sup = std::max(sup, std::abs(derivative(x, l)));
        }
        total += sup;
    }
    return total;
}

ApproxResult run_approx_experiment(const NonStationaryScheme& scheme, const ApproxConfig& config) {
    if (config.m_list.size() < 3) throw DomainError("run_approx_experiment: mList needs at least three entries");
    if (!std::is_sorted(config.m_list.begin(), config.m_list.end()) ||
        std::adjacent_find(config.m_list.begin(), config.m_list.end()) != config.m_list.end()) {
        throw DomainError("run_approx_experiment: mList must be strictly ascending");
    }
    if (config.k < 1) throw DomainError("run_approx_experiment: k must be at least 1");
    if (!(config.lo < config.hi)) throw DomainError("run_approx_experiment: empty evaluation interval");

    ApproxResult result;
    result.config = config;
    result.sobolev_norm = config.f.sobolev_norm(config.gamma, config.lo, config.hi);
    if (config.space) {
        const ConditionReport rep = check_reproduction_ns(scheme, *config.space, {0, config.m_list.back() + config.k});
        if (!rep.holds) result.warnings.push_back("scheme does not reproduce the given space: " + rep.detail);
    }

    const Parametrization param = scheme.param();
    const double p = param.shift();
    const std::int64_t pad = static_cast<std::int64_t>(scheme.support_bound()) * config.k + 2;
    for (int m : config.m_list) {
        ApproxRow row;
        row.m = m;
        row.h = std::ldexp(1.0, -m);
        const double scale = std::ldexp(1.0, m);
        const auto lo = static_cast<std::int64_t>(std::floor(config.lo * scale - p)) - pad;
        const auto hi = static_cast<std::int64_t>(std::ceil(config.hi * scale - p)) + pad;
        std::vector<Complex> samples;
        for (std::int64_t i = lo; i <= hi; ++i) samples.emplace_back(config.f(param.point(i, m)));
        const RefinedData initial = RefinedData::window_data(lo, std::move(samples), m, param);
        try {
            const RefinedData before = run_checked(scheme, initial, config.k - 1);
            const RefinedData last = run_checked(scheme, before, 1);
            const IndexRange exact = last.exact_range();
            bool covered = false;
            for (std::int64_t i = exact.lo; i <= exact.hi; ++i) {
                const double t = last.t(i);
                if (t < config.lo || t > config.hi) continue;
                covered = true;
                const double fv = config.f(t);
                row.error = std::max(row.error, std::abs(last.at(i) - fv));
                row.sample_norm = std::max(row.sample_norm, std::abs(fv));
                const double u = 0.5 * (static_cast<double>(i) - p);
                row.cauchy = std::max(row.cauchy, std::abs(last.at(i) - coarse_interpolant(before, u)));
            }
            if (!covered) row.failure = "padding too small: no exact samples inside the evaluation interval";
        } catch (const BlowupError& e) {
            row.failure = e.what();
        }
        result.rows.push_back(std::move(row));
    }

    std::vector<double> x, y;
    for (std::size_t j = 0; j < result.rows.size(); ++j) {
        ApproxRow& row = result.rows[j];
        if (row.failure.empty() && row.error > config.noise_floor) {
            x.push_back(row.m);
            y.push_back(std::log2(row.error));
        }
        if (j > 0) {
            const ApproxRow& prev = result.rows[j - 1];
            if (row.failure.empty() && prev.failure.empty() && row.error > 0.0 && prev.error > 0.0) {
                row.local_order = std::log2(prev.error / row.error) / (row.m - prev.m);
            }
        }
    }
    result.points_used = static_cast<int>(x.size());
    if (x.size() < 2) {
        result.fitted_order = std::numeric_limits<double>::quiet_NaN();
        result.intercept = std::numeric_limits<double>::quiet_NaN();
        result.warnings.push_back("fewer than two errors above the noise floor; no order fitted");
    } else {
        const double n = static_cast<double>(x.size());
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        for (std::size_t i = 0; i < x.size(); ++i) {
            sx += x[i];
            sy += y[i];
            sxx += x[i] * x[i];
            sxy += x[i] * y[i];
        }
        const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
        result.fitted_order = -slope;
        result.intercept = std::exp2((sy - slope * sx) / n);
    }
    return result;
}

AuxiliaryFunction auxiliary_function(const ExpSpace& space, const TestFunction& f, double x, int gamma) {
    if (gamma < 1) throw DomainError("auxiliary_function: gamma must be at least 1");
    if (gamma > space.dimension()) throw DomainError("auxiliary_function: gamma exceeds the space dimension");
    AuxiliaryFunction psi{space.leading(gamma), x, {}, 0.0};
    std::vector<Complex> rhs;
    for (int r = 0; r < gamma; ++r) rhs.emplace_back(f.derivative(x, r));
    psi.coeffs = hermite_solve(psi.space, 0.0, rhs);
    for (int r = 0; r < gamma; ++r) {
        const Complex v = eval_combination(psi.space, psi.coeffs, 0.0, r);
        psi.residual = std::max(psi.residual, std::abs(v - rhs[static_cast<std::size_t>(r)]));
    }
    return psi;
}

double auxiliary_function_residual(const ExpSpace& space, const TestFunction& f, double x, int gamma) {
    return auxiliary_function(space, f, x, gamma).residual;
}

}  // namespace subdiv
