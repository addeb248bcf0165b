#include "subdiv/limits.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "subdiv/catalog.hpp"

namespace subdiv {

namespace {

// Linear interpolation of level data at fractional index u (zero outside).
Complex interpolate(const RefinedData& data, double u) {
    const double fl = std::floor(u);
    const auto j = static_cast<std::int64_t>(fl);
    const double t = u - fl;
    if (t == 0.0) return data.at(j);
    return (1.0 - t) * data.at(j) + t * data.at(j + 1);
}

double cauchy_distance(const RefinedData& fine, const RefinedData& coarse) {
    const double p = fine.param.shift();
    double worst = 0.0;
    const IndexRange w = fine.window();
    // one coarse index of margin on each side keeps the comparison exact for compact data
    for (std::int64_t i = w.lo - 2; i <= w.hi + 2; ++i) {
        const double u = 0.5 * (static_cast<double>(i) - p);
        worst = std::max(worst, std::abs(fine.at(i) - interpolate(coarse, u)));
    }
    return worst;
}

// out[i * stride + l] += f_i * h_l
struct Accumulated {
    std::int64_t first = 0;
    std::vector<Complex> values;
    IndexRange exact;
    Complex at(std::int64_t j) const noexcept {
        const std::int64_t o = j - first;
        return o >= 0 && o < static_cast<std::int64_t>(values.size()) ? values[static_cast<std::size_t>(o)] : Complex{};
    }
};

Accumulated synthesize(const RefinedData& f, const LimitFunctionSamples& h, std::int64_t stride) {
    Accumulated out;
    const IndexRange fw = f.window();
    const std::int64_t h_lo = h.first_index;
    const std::int64_t h_hi = h.first_index + static_cast<std::int64_t>(h.values.size()) - 1;
    if (fw.empty() || h.values.empty()) return out;
    out.first = fw.lo * stride + h_lo;
    const std::int64_t last = fw.hi * stride + h_hi;
    out.values.assign(static_cast<std::size_t>(last - out.first + 1), Complex{});
    for (std::int64_t i = fw.lo; i <= fw.hi; ++i) {
        const Complex fi = f.at(i);
        if (fi == Complex{}) continue;
        for (std::size_t l = 0; l < h.values.size(); ++l) {
            out.values[static_cast<std::size_t>(i * stride + h_lo + static_cast<std::int64_t>(l) - out.first)] +=
                fi * h.values[l];
        }
    }
    if (f.compact) {
        out.exact = {out.first, last};
    } else {
        const IndexRange e = f.exact_range();
        out.exact = e.empty() ? IndexRange{} : IndexRange{e.lo * stride + h_hi, e.hi * stride + h_lo};
    }
    return out;
}

NonStationaryScheme hp_scheme(Complex lambda, double p) {
    CatalogParams params;
    params.lambda = lambda;
    params.p = p;
    return build_scheme("hp-family", params);
}

}  // namespace

Complex LimitFunctionSamples::at(std::int64_t i) const noexcept {
    const std::int64_t o = i - first_index;
    return o >= 0 && o < static_cast<std::int64_t>(values.size()) ? values[static_cast<std::size_t>(o)] : Complex{};
}

LimitFunctionSamples basic_limit_function(const NonStationaryScheme& scheme, int m, int k) {
    if (m < 0) throw DomainError("basic_limit_function: m must be nonnegative");
    if (k < 1) throw DomainError("basic_limit_function: k must be at least 1");
    LimitFunctionSamples out;
    out.base_level = m;
    out.resolution = k;
    RefinedData current = RefinedData::delta(m, scheme.param());
    for (int l = 1; l <= k; ++l) {
        RefinedData next = subdivide_step(scheme.mask_at(current.absolute_level()), current);
        const double norm = next.norm_inf();
        if (!(norm <= kBlowupThreshold)) throw BlowupError(next.absolute_level(), norm);
        out.cauchy.push_back(cauchy_distance(next, current));
        current = std::move(next);
    }
    out.first_index = current.first_index;
    out.values = std::move(current.values);
    out.interior = current.window();
    return out;
}

double sup_distance(const LimitFunctionSamples& f, const LimitFunctionSamples& g) {
    if (f.resolution != g.resolution) throw DomainError("sup_distance: resolutions differ");
    const std::int64_t lo = std::min(f.first_index, g.first_index);
    const std::int64_t hi = std::max(f.first_index + static_cast<std::int64_t>(f.values.size()),
                                     g.first_index + static_cast<std::int64_t>(g.values.size()));
    double worst = 0.0;
    for (std::int64_t i = lo; i < hi; ++i) worst = std::max(worst, std::abs(f.at(i) - g.at(i)));
    return worst;
}

RefinedData difference_sequence(const RefinedData& data, Complex lambda, DifferenceExtent extent) {
    const Complex r = std::exp(lambda * std::ldexp(1.0, -data.absolute_level()));
    RefinedData out = data;
    const IndexRange w = data.window();
    const std::int64_t last = extent == DifferenceExtent::Full ? w.hi + 1 : w.hi;
    out.values.clear();
    if (!w.empty()) {
        for (std::int64_t i = w.lo; i <= last; ++i) out.values.push_back(data.at(i) - r * data.at(i - 1));
    }
    if (data.compact) {
        out.compact = extent == DifferenceExtent::Full;
        out.interior = out.window();
    } else {
        const IndexRange e = data.interior;
        out.interior = e.empty() ? IndexRange{} : IndexRange{e.lo + 1, e.hi};
    }
    return out;
}

Mask difference_mask(const Mask& a, Complex lambda, int k, double tol) {
    const Complex r = std::exp(lambda * std::ldexp(1.0, -k - 1));
    const LinearDivision d = divide_by_linear(a.symbol(), -1.0 / r, tol);
    if (!d.exact) {
        throw DomainError("mask at level " + std::to_string(k) + " has no factor (1 + r_k z): remainder " +
                          std::to_string(d.remainder_magnitude));
    }
    return Mask(d.quotient);
}

double intertwining_residual(const Mask& a, const Mask& b, Complex lambda, const RefinedData& f) {
    RefinedData compact = f;
    compact.compact = true;
    compact.interior = compact.window();
    const RefinedData lhs = difference_sequence(subdivide_step(a, compact), lambda, DifferenceExtent::Full);
    const RefinedData rhs = subdivide_step(b, difference_sequence(compact, lambda, DifferenceExtent::Full));
    const std::int64_t lo = std::min(lhs.first_index, rhs.first_index);
    const std::int64_t hi = std::max(lhs.window().hi, rhs.window().hi);
    double worst = 0.0;
    for (std::int64_t i = lo; i <= hi; ++i) worst = std::max(worst, std::abs(lhs.at(i) - rhs.at(i)));
    const double scale = f.norm_inf();
    return scale > 0.0 ? worst / scale : worst;
}

ContractivityReport difference_scheme(const NonStationaryScheme& scheme, Complex lambda, int levels,
                                      ContractivityOptions opts) {
    if (levels < 3) throw DomainError("difference_scheme: at least three levels are needed");
    ContractivityReport report;
    report.lambda = lambda;
    std::mt19937 rng(opts.seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    RefinedData f = RefinedData::delta(0, scheme.param());
    for (int k = 0; k <= levels; ++k) {
        const Mask a = scheme.mask_at(k);
        const Mask b = difference_mask(a, lambda, k);
        for (int t = 0; t < opts.random_trials; ++t) {
            std::vector<Complex> values(static_cast<std::size_t>(opts.random_length));
            for (auto& v : values) v = u(rng);
            const RefinedData data = RefinedData::window_data(-opts.random_length / 2, values, k, scheme.param());
            report.intertwining_residual = std::max(report.intertwining_residual, intertwining_residual(a, b, lambda, data));
        }
        report.difference_masks.push_back(b);
        f = subdivide_step(a, f);
        report.norms.push_back(difference_sequence(f, lambda, DifferenceExtent::Full).norm_inf());
    }
    std::vector<double> ratios;
    const std::size_t n = report.norms.size();
    for (std::size_t i = n - std::max<std::size_t>(n / 3, 2); i + 1 < n; ++i) {
        if (report.norms[i] > 0.0) ratios.push_back(report.norms[i + 1] / report.norms[i]);
    }
    std::sort(ratios.begin(), ratios.end());
    if (ratios.empty()) {
        report.fitted_mu = 0.0;  // differences vanish identically
    } else {
        const std::size_t h = ratios.size();
        report.fitted_mu = h % 2 ? ratios[h / 2] : 0.5 * (ratios[h / 2 - 1] + ratios[h / 2]);
    }
    report.pass = report.fitted_mu < 1.0;
    return report;
}

QuasiInterpolant quasi_interpolant(const NonStationaryScheme& scheme, int m, int k, const RefinedData& data, double p,
                                   int relative_resolution) {
    if (relative_resolution < 2) throw DomainError("quasi_interpolant: relative resolution must be at least 2");
    if (data.absolute_level() != m) throw DomainError("quasi_interpolant: data must sit at base level m");
    const int L = relative_resolution;
    const Complex lambda = scheme.lambda().value_or(Complex{});
    const NonStationaryScheme hp = hp_scheme(lambda, p);

    QuasiInterpolant q;
    q.m = m;
    q.k = k;
    q.resolution = k + L;

    const RefinedData fk = run(scheme, data, k);
    const RefinedData fk1 = subdivide_step(scheme.mask_at(m + k), fk);
    const LimitFunctionSamples hk = basic_limit_function(hp, m + k, L);
    const LimitFunctionSamples hk1 = basic_limit_function(hp, m + k + 1, L - 1);
    const Accumulated now = synthesize(fk, hk, std::int64_t{1} << L);
    const Accumulated next = synthesize(fk1, hk1, std::int64_t{1} << (L - 1));

    q.first_index = now.first;
    q.values = now.values;
    q.exact = now.exact;
    const IndexRange shared = now.exact.intersect(next.exact);
    for (std::int64_t j = shared.lo; j <= shared.hi; ++j) {
        q.next_difference = std::max(q.next_difference, std::abs(next.at(j) - now.at(j)));
    }

    for (int level = m; level <= m + k; ++level) {
        const Complex r = std::exp(lambda * std::ldexp(1.0, -level - 1));
        const LaurentPoly d = scheme.mask_at(level).symbol() - hp.mask_at(level).symbol();
        const PolyDivision e = divide(d, LaurentPoly({1.0, 0.0, -r * r}, 0));
        q.debug.levels.push_back(level);
        q.debug.d.push_back(d);
        q.debug.e.push_back(e.quotient);
        q.debug.e_remainder.push_back(e.remainder.norm_inf());
    }
    return q;
}

std::vector<double> quasi_interpolant_decay(const NonStationaryScheme& scheme, int m, int k_max, const RefinedData& data,
                                            double p, int relative_resolution) {
    std::vector<double> out;
    for (int j = 0; j <= k_max; ++j) {
        out.push_back(quasi_interpolant(scheme, m, j, data, p, relative_resolution).next_difference);
    }
    return out;
}

BlfConvergence blf_convergence(const NonStationaryScheme& scheme, const Mask& stationary, const std::vector<int>& m_list,
                               int k) {
    BlfConvergence out;
    out.resolution = k;
    out.unchecked_hypotheses = {"stability of the stationary basic limit function",
                                "Hoelder continuity of the stationary basic limit function"};
    const auto limit = NonStationaryScheme::stationary(stationary, scheme.param(), "stationary limit");
    const LimitFunctionSamples phi = basic_limit_function(limit, 0, k);
    for (int m : m_list) {
        const LimitFunctionSamples phi_m = basic_limit_function(scheme, m, k);
        out.rows.push_back({m, sup_distance(phi_m, phi), phi_m.at_origin()});
    }
    return out;
}

}  // namespace subdiv
