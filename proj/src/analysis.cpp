#include "subdiv/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace subdiv {

namespace {

constexpr double kGeometricRatio = 0.9;

double median(std::vector<double> v) {
    if (v.empty()) return 0.0;
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

// Least-squares slope of y on x.
double slope(const std::vector<double>& x, const std::vector<double>& y) {
    const double n = static_cast<double>(x.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    const double den = n * sxx - sx * sx;
    return den != 0.0 ? (n * sxy - sx * sy) / den : 0.0;
}

double clip(double value, double scale) { return value <= kClipRelative * std::max(1.0, scale) ? 0.0 : value; }

}  // namespace

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::Satisfied: return "satisfied (numerically)";
        case Verdict::Violated: return "violated";
        default: return "inconclusive";
    }
}

SymbolDefects symbol_defects(const LaurentPoly& a, int n) {
    SymbolDefects d;
    d.a1_deviation = clip(std::abs(eval(a, 1.0) - 2.0), a.norm_1());
    for (int beta = 0; beta < n; ++beta) {
        const LaurentPoly da = derivative(a, beta);
        d.derivatives.push_back(da.is_zero() ? 0.0 : clip(std::abs(eval(da, -1.0)), da.norm_1()));
    }
    return d;
}

int sum_rule_order(const LaurentPoly& a, int n_max, double tol) {
    if (n_max < 1) throw DomainError("sum_rule_order: n_max must be at least 1");
    if (a.is_zero()) return 0;
    if (std::abs(eval(a, 1.0) - 2.0) > tol * std::max(1.0, a.norm_1())) return 0;
    int order = 0;
    for (int beta = 0; beta < n_max; ++beta) {
        const LaurentPoly da = derivative(a, beta);
        const double v = da.is_zero() ? 0.0 : std::abs(eval(da, -1.0));
        if (v > tol * std::max(1.0, da.norm_1())) break;
        order = beta + 1;
    }
    return order;
}

TrailingStats trailing_stats(const std::vector<double>& terms, int window_start) {
    TrailingStats s;
    s.window_start = window_start;
    std::vector<double> ratios, lx, ly;
    for (std::size_t k = static_cast<std::size_t>(std::max(window_start, 0)); k < terms.size(); ++k) {
        if (terms[k] > 0.0) {
            ++s.nonzero;
            if (k >= 1) {
                lx.push_back(std::log(static_cast<double>(k)));
                ly.push_back(std::log(terms[k]));
            }
            if (k + 1 < terms.size() && terms[k + 1] > 0.0) ratios.push_back(terms[k + 1] / terms[k]);
        }
    }
    s.all_negligible = s.nonzero == 0 || (!terms.empty() && terms.back() == 0.0);
    s.median_ratio = median(ratios);
    s.power_exponent = lx.size() >= 2 ? slope(lx, ly) : 0.0;
    return s;
}

SeriesReport classify_series(std::string label, std::vector<double> terms) {
    SeriesReport r;
    r.label = std::move(label);
    double acc = 0.0;
    for (double t : terms) r.partial_sums.push_back(acc += t);
    const int size = static_cast<int>(terms.size());
    r.stats = trailing_stats(terms, size - size / 2);
    if (r.stats.all_negligible) {
        r.verdict = Verdict::Satisfied;
    } else if (r.stats.nonzero >= 2 && r.stats.median_ratio <= kGeometricRatio) {
        r.verdict = Verdict::Satisfied;
    } else if (r.stats.nonzero >= 2 && r.stats.power_exponent >= -1.0) {
        r.verdict = Verdict::Violated;
    } else {
        r.verdict = Verdict::Inconclusive;
    }
    r.terms = std::move(terms);
    return r;
}

SumRuleReport approximate_sum_rules(const NonStationaryScheme& scheme, int n, int levels) {
    if (n < 1) throw DomainError("approximate_sum_rules: N must be at least 1");
    if (levels < 8) throw DomainError("approximate_sum_rules: K must be at least 8");
    SumRuleReport report;
    report.n = n;
    report.levels = levels;
    report.exact_order = n;
    std::vector<double> a1_terms;
    for (int k = 0; k <= levels; ++k) {
        const LaurentPoly a = symbol_at(scheme, k);
        const SymbolDefects d = symbol_defects(a, n);
        SumRuleLevel level{k, d.a1_deviation, d.derivatives, 0.0};
        for (int beta = 0; beta < n; ++beta) {
            level.sigma = std::max(level.sigma, std::ldexp(d.derivatives[static_cast<std::size_t>(beta)], -k * beta));
        }
        report.exact_order = std::min(report.exact_order, sum_rule_order(a, n));
        a1_terms.push_back(level.a1_deviation);
        report.per_level.push_back(std::move(level));
    }
    report.a1_series = classify_series("sum |a(1) - 2|", a1_terms);
    for (int order = 1; order <= n; ++order) {
        std::vector<double> terms;
        for (const auto& level : report.per_level) {
            double sigma = 0.0;
            for (int beta = 0; beta < order; ++beta) {
                sigma = std::max(sigma, std::ldexp(level.derivatives[static_cast<std::size_t>(beta)], -level.k * beta));
            }
            terms.push_back(std::ldexp(sigma, level.k * (order - 1)));
        }
        OrderVerdict v;
        v.n = order;
        v.sigma_series = classify_series("sum 2^{k(" + std::to_string(order) + "-1)} sigma_k", std::move(terms));
        const Verdict a = report.a1_series.verdict, b = v.sigma_series.verdict;
        if (a == Verdict::Violated || b == Verdict::Violated) {
            v.verdict = Verdict::Violated;
        } else if (a == Verdict::Satisfied && b == Verdict::Satisfied) {
            v.verdict = Verdict::Satisfied;
        } else {
            v.verdict = Verdict::Inconclusive;
        }
        report.orders.push_back(std::move(v));
    }
    return report;
}

DecayFit fit_decay(std::string label, std::vector<std::pair<int, double>> samples, double target, DecayOptions opts) {
    DecayFit fit;
    fit.label = std::move(label);
    fit.target_rate = target;
    fit.slack = opts.slack;
    std::vector<double> x, y;
    for (const auto& [k, v] : samples) {
        if (k >= opts.fit_from && v > 0.0) {
            x.push_back(k);
            y.push_back(std::log2(v));
        }
    }
    fit.points_used = static_cast<int>(x.size());
    fit.samples = std::move(samples);
    if (x.empty()) {
        fit.fitted_rate = -std::numeric_limits<double>::infinity();
        fit.pass = true;
    } else if (x.size() == 1) {
        fit.fitted_rate = std::numeric_limits<double>::quiet_NaN();
        fit.pass = false;
    } else {
        fit.fitted_rate = slope(x, y);
        fit.pass = fit.fitted_rate <= -target + opts.slack;
    }
    return fit;
}

std::vector<DecayFit> decay_rates(const NonStationaryScheme& scheme, int n, int levels, DecayOptions opts) {
    if (n < 1) throw DomainError("decay_rates: N must be at least 1");
    if (levels < 12) throw DomainError("decay_rates: K must be at least 12");
    std::vector<std::pair<int, double>> a1;
    std::vector<std::vector<std::pair<int, double>>> deriv(static_cast<std::size_t>(n));
    for (int k = 0; k <= levels; ++k) {
        const SymbolDefects d = symbol_defects(symbol_at(scheme, k), n);
        a1.emplace_back(k, d.a1_deviation);
        for (int beta = 0; beta < n; ++beta) deriv[static_cast<std::size_t>(beta)].emplace_back(k, d.derivatives[static_cast<std::size_t>(beta)]);
    }
    std::vector<DecayFit> fits;
    fits.push_back(fit_decay("|a(1)-2| (reproduction regime)", a1, n, opts));
    fits.push_back(fit_decay("|a(1)-2| (similarity regime)", a1, 1, opts));
    for (int beta = 0; beta < n; ++beta) {
        fits.push_back(fit_decay("|d^" + std::to_string(beta) + " a(-1)|", deriv[static_cast<std::size_t>(beta)],
                                 n - beta, opts));
    }
    return fits;
}

SimilarityReport similarity_classification(const NonStationaryScheme& scheme, const Mask& stationary, int levels) {
    SimilarityReport r;
    const LaurentPoly& a = stationary.symbol();
    for (int k = 0; k <= levels; ++k) {
        const LaurentPoly ak = symbol_at(scheme, k);
        const double d = (ak - a).norm_inf();
        r.deviation.push_back(d <= 1e-14 * std::max(1.0, a.norm_inf()) ? 0.0 : d);
    }
    const int size = static_cast<int>(r.deviation.size());
    r.stats = trailing_stats(r.deviation, size - size / 2);
    const bool tiny_tail = r.stats.all_negligible || r.deviation.back() <= 1e-12;
    const bool geometric = r.stats.nonzero >= 2 && r.stats.median_ratio <= kGeometricRatio;
    if (tiny_tail || geometric || r.stats.power_exponent <= -0.5) {
        r.similar = Verdict::Satisfied;
    } else if (r.stats.power_exponent >= -0.05) {
        r.similar = Verdict::Violated;
    } else {
        r.similar = Verdict::Inconclusive;
    }
    if (tiny_tail || geometric) {
        r.equivalent = Verdict::Satisfied;
    } else if (r.stats.power_exponent >= -1.05) {
        r.equivalent = Verdict::Violated;
    } else {
        r.equivalent = Verdict::Inconclusive;
    }
    return r;
}

}  // namespace subdiv
