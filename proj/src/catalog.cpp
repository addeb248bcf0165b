#include "subdiv/catalog.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace subdiv {

namespace {

Complex node(Complex lambda, int k) { return std::exp(lambda * std::ldexp(1.0, -k - 1)); }

Complex require_lambda(const CatalogParams& params, const std::string& name) {
    if (!params.lambda) throw std::invalid_argument("catalog entry '" + name + "' needs lambda");
    return *params.lambda;
}

double hp_shift(const CatalogParams& params) {
    const double p = params.p.value_or(0.0);
    if (p != 0.0 && p != -0.5) throw std::invalid_argument("hp-family shift p must be 0 or -1/2");
    return p;
}

Mask primal_phi4_mask(Complex r) {
    const auto b = primal_phi4_coefficients(r);
    const LaurentPoly one_plus_z({1.0, 1.0}, 0);
    LaurentPoly a = one_plus_z * one_plus_z;
    a = a * LaurentPoly({r, 1.0}, 0);
    a = a * LaurentPoly({1.0 / r, 1.0}, 0);
    a = a * LaurentPoly({1.0, b[0], b[1], b[2]}, 0);
    return Mask(a);
}

Mask dual_phi3_mask(Complex lambda, int k) {
    const Complex r = node(lambda, k);
    const Complex s = std::exp(lambda * std::ldexp(1.0, -k - 2));
    const auto b = dual_phi3_coefficients(s);
    LaurentPoly a({1.0, 1.0}, 0);
    a = a * LaurentPoly({r, 1.0}, 0);
    a = a * LaurentPoly({1.0 / r, 1.0}, 0);
    a = a * LaurentPoly({b[0], b[1], b[2]}, 0);
    return Mask(a);
}

Mask perturbed_quadratic_mask(int k) {
    const double e = std::ldexp(1.0, -k);
    return Mask(LaurentPoly({0.25 + e, 0.75 - e, 0.75 - e, 0.25 - e}, 0));
}

Mask similar_not_equivalent_mask(Complex lambda, int k) {
    const Complex r = node(lambda, k);
    const Complex sr = std::exp(lambda * std::ldexp(1.0, -k - 2));  // r^{1/2}
    const double kk = k == 0 ? 1.0 : k;                           // k = 0 uses the k = 1 perturbation
    const Complex denom = (1.0 / r + r) * (1.0 / sr + sr);
    const Complex outer = 1.0 / denom;
    const Complex inner = ((1.0 / sr + sr) * (1.0 / sr + sr) - 1.0) / denom;
    return Mask(LaurentPoly({outer - 1.0 / kk, inner - r / kk, inner + 1.0 / (kk * r * r), outer + 1.0 / (kk * r)}, -2));
}

Mask hp_mask(Complex lambda, double p, int k) {
    const Complex r = node(lambda, k);
    const Complex scale = std::exp(-p * lambda * std::ldexp(1.0, -k - 1)) / (1.0 / r + r);
    return Mask(LaurentPoly({scale, scale * (r + 1.0 / r), scale}, -1));
}

std::vector<ExpComponent> pm_lambda(Complex lambda, int poly_mu) {
    std::vector<ExpComponent> out;
    if (poly_mu > 0) out.push_back({0.0, poly_mu});
    out.push_back({lambda, 1});
    out.push_back({-lambda, 1});
    return out;
}

}  // namespace

std::array<Complex, 3> primal_phi4_coefficients(Complex r) {
    const Complex r2 = r * r, r3 = r2 * r, r4 = r3 * r;
    const Complex b1 = -(4.0 * r4 + 6.0 * r3 + 9.0 * r2 + 6.0 * r + 4.0) / (2.0 * (r4 + 2.0 * r3 + 2.0 * r2 + 2.0 * r + 1.0));
    const Complex b2 = (2.0 * r2 + r + 2.0) / (2.0 * (r2 + 1.0));
    const Complex b3 = -(r * (2.0 * r2 + r + 2.0)) / (2.0 * (r2 + 1.0) * (r + 1.0) * (r + 1.0));
    return {b1, b2, b3};
}

std::array<Complex, 3> dual_phi3_printed_coefficients(Complex r) {
    const Complex h = std::sqrt(r);
    const Complex den = (r * r - 1.0) * (r * r - 1.0) * (r * r + 1.0);
    const Complex b1 = (std::pow(r, 6.5) - std::pow(r, 4) - r * r + 1.0 / h) / den;
    const Complex b2 = -(std::pow(r, 6.5) + std::pow(r, 5.5) - std::pow(r, 5) - 2.0 * std::pow(r, 3) - r + h + 1.0 / h) / den;
    const Complex b3 = r * (std::pow(r, 4.5) - std::pow(r, 3) - r + 1.0 / h) / den;
    return {b1, b2, b3};
}

std::array<Complex, 3> dual_phi3_coefficients(Complex s) {
    auto poly = [&](std::initializer_list<double> c) {
        Complex acc{};
        for (double x : c) acc = acc * s + x;  // Horner, highest degree first
        return acc;
    };
    const Complex sp1 = s + 1.0, s2p1 = s * s + 1.0, s4p1 = poly({1, 0, 0, 0, 1});
    const Complex common = s * sp1 * sp1 * s2p1 * s2p1;
    const Complex b1 = poly({1, 1, 1}) * poly({1, 0, 0, 1, 0, 0, 1}) * poly({1, 1, 1, 1, 1}) / (common * s4p1);
    const Complex b2 = -poly({1, 2, 4, 5, 5, 5, 4, 2, 1}) / common;
    const Complex b3 = s * poly({1, 1, 1}) * poly({1, 1, 1, 1, 1, 1, 1}) / (sp1 * sp1 * s2p1 * s2p1 * s4p1);
    return {b1, b2, b3};
}

Mask bspline_mask(int degree) {
    switch (degree) {
        case 1: return Mask(LaurentPoly({0.5, 1.0, 0.5}, -1));
        case 2: return Mask(LaurentPoly({0.25, 0.75, 0.75, 0.25}, -2));
        case 3: return Mask(LaurentPoly({0.125, 0.5, 0.75, 0.5, 0.125}, -2));
        default: throw std::invalid_argument("bspline degree must be 1, 2 or 3");
    }
}

const std::vector<CatalogEntry>& catalog_entries() {
    static const std::vector<CatalogEntry> entries = {
        {"primal-phi4", "non-symmetric primal scheme reproducing span{1, x, e^{+-lambda x}}", {"lambda"}},
        {"dual-phi3", "non-symmetric dual scheme reproducing span{1, e^{+-lambda x}}", {"lambda"}},
        {"perturbed-quadratic", "level-dependent perturbation of the quadratic B-spline; reproduces nothing", {}},
        {"similar-not-equivalent",
         "asymptotically similar but not equivalent to the quadratic B-spline; the 1/k terms use k = 1 at level 0",
         {"lambda"}},
        {"hp-family", "exponential hat scheme h_p with p in {0, -1/2}", {"lambda", "p"}},
        {"bspline-1", "linear B-spline (hat), primal", {}},
        {"bspline-2", "quadratic B-spline, dual", {}},
        {"bspline-3", "cubic B-spline, primal", {}},
    };
    return entries;
}

NonStationaryScheme build_scheme(const std::string& name, const CatalogParams& params) {
    if (name == "primal-phi4") {
        const Complex lambda = require_lambda(params, name);
        NonStationaryScheme s(name, [lambda](int k) { return primal_phi4_mask(node(lambda, k)); },
                              Parametrization::primal(), 7);
        return s.with_lambda(lambda).with_stationary_limit(primal_phi4_mask(1.0));
    }
    if (name == "dual-phi3") {
        const Complex lambda = require_lambda(params, name);
        NonStationaryScheme s(name, [lambda](int k) { return dual_phi3_mask(lambda, k); }, Parametrization::dual(),
                              5);
        return s.with_lambda(lambda).with_stationary_limit(dual_phi3_mask(0.0, 0));
    }
    if (name == "perturbed-quadratic") {
        NonStationaryScheme s(name, perturbed_quadratic_mask, Parametrization::dual(), 3);
        return s.with_stationary_limit(Mask(LaurentPoly({0.25, 0.75, 0.75, 0.25}, 0)));
    }
    if (name == "similar-not-equivalent") {
        const Complex lambda = require_lambda(params, name);
        NonStationaryScheme s(name, [lambda](int k) { return similar_not_equivalent_mask(lambda, k); },
                              Parametrization::dual(), 2);
        return s.with_lambda(lambda).with_stationary_limit(bspline_mask(2));
    }
    if (name == "hp-family") {
        const Complex lambda = require_lambda(params, name);
        const double p = hp_shift(params);
        const Parametrization param = p == 0.0 ? Parametrization::primal() : Parametrization::dual();
        NonStationaryScheme s(name, [lambda, p](int k) { return hp_mask(lambda, p, k); }, param, 1);
        return s.with_lambda(lambda).with_stationary_limit(bspline_mask(1));
    }
    if (name == "bspline-1") return NonStationaryScheme::stationary(bspline_mask(1), Parametrization::primal(), name);
    if (name == "bspline-2") return NonStationaryScheme::stationary(bspline_mask(2), Parametrization::dual(), name);
    if (name == "bspline-3") return NonStationaryScheme::stationary(bspline_mask(3), Parametrization::primal(), name);
    throw std::invalid_argument("unknown catalog entry '" + name + "'");
}

ExpectedProperties expected_properties(const std::string& name, const CatalogParams& params) {
    ExpectedProperties e;
    e.param = build_scheme(name, params).param();
    if (name == "primal-phi4") {
        const Complex l = require_lambda(params, name);
        e.generates = e.reproduces = pm_lambda(l, 2);
        e.similar_to = "primal-phi4 at lambda = 0";
        e.approx_sum_rule_order = 4;
    } else if (name == "dual-phi3") {
        const Complex l = require_lambda(params, name);
        e.generates = e.reproduces = pm_lambda(l, 1);
        e.similar_to = "dual-phi3 at lambda = 0";
        e.approx_sum_rule_order = 3;
    } else if (name == "perturbed-quadratic") {
        e.similar_to = "quadratic B-spline at degrees 0..3";
        e.asymptotically_equivalent = true;
        e.approx_sum_rule_order = 1;
        e.notes = "approximate sum rules of order 1 hold, yet no exponential polynomial is reproduced";
    } else if (name == "similar-not-equivalent") {
        const Complex l = require_lambda(params, name);
        e.generates = pm_lambda(l, 0);
        e.reproduces = {{-l, 1}};
        e.similar_to = "bspline-2";
        e.asymptotically_equivalent = false;
        e.approx_sum_rule_order = 2;
        e.notes = "under f_i = sum_j a_{i-2j} f_j the printed mask reproduces e^{-lambda x}; levels k = 0 and 1 share the 1/k terms";
    } else if (name == "hp-family") {
        const Complex l = require_lambda(params, name);
        const double p = hp_shift(params);
        e.generates = pm_lambda(l, 0);
        if (p == 0.0) {
            e.reproduces = e.generates;
        } else {
            e.reproduces = {{l, 1}};
        }
        e.similar_to = "bspline-1";
        e.approx_sum_rule_order = 2;
    } else if (name == "bspline-1" || name == "bspline-2" || name == "bspline-3") {
        const int d = name.back() - '0';
        e.generates = {{0.0, d + 1}};
        e.reproduces = {{0.0, 2}};
        e.similar_to = name;
        e.approx_sum_rule_order = d + 1;
    } else {
        throw std::invalid_argument("unknown catalog entry '" + name + "'");
    }
    return e;
}

ExpSpace merged_space(const std::vector<ExpComponent>& components) {
    std::vector<ExpComponent> merged;
    for (const auto& c : components) {
        auto it = std::find_if(merged.begin(), merged.end(), [&](const ExpComponent& m) { return m.lambda == c.lambda; });
        if (it == merged.end()) {
            merged.push_back(c);
        } else {
            it->mu += c.mu;
        }
    }
    return ExpSpace(std::move(merged));
}

}  // namespace subdiv
