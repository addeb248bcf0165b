#include "subdiv/scheme.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <stdexcept>

namespace subdiv {

namespace {

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
    std::int64_t q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

std::int64_t ceil_div(std::int64_t a, std::int64_t b) { return -floor_div(-a, b); }

}  // namespace

int Mask::support_bound() const noexcept {
    if (symbol_.is_zero()) return 0;
    return std::max(std::abs(symbol_.low_degree()), std::abs(symbol_.high_degree()));
}

double Mask::operator_norm() const noexcept {
    double even = 0.0, odd = 0.0;
    for (int i = low_degree(); i <= high_degree(); ++i) {
        ((i % 2 == 0) ? even : odd) += std::abs(tap(i));
    }
    return std::max(even, odd);
}

NonStationaryScheme::NonStationaryScheme(std::string label, MaskRule rule, Parametrization param,
                                         int support_bound)
    : label_(std::move(label)), rule_(std::move(rule)), param_(param), support_bound_(support_bound) {
    if (!rule_) throw std::invalid_argument("NonStationaryScheme needs a mask rule");
}

NonStationaryScheme NonStationaryScheme::stationary(const Mask& mask, Parametrization param,
                                                    std::string label) {
    NonStationaryScheme s(std::move(label), [mask](int) { return mask; }, param, mask.support_bound());
    s.stationary_limit_ = mask;
    return s;
}

NonStationaryScheme NonStationaryScheme::table(std::vector<Mask> masks, Parametrization param,
                                               std::string label) {
    if (masks.empty()) throw std::invalid_argument("table scheme needs at least one mask");
    int bound = 0;
    for (const auto& m : masks) bound = std::max(bound, m.support_bound());
    auto shared = std::make_shared<const std::vector<Mask>>(std::move(masks));
    auto rule = [shared](int k) {
        const auto idx = std::min<std::size_t>(static_cast<std::size_t>(std::max(k, 0)), shared->size() - 1);
        return (*shared)[idx];
    };
    NonStationaryScheme s(std::move(label), rule, param, bound);
    if (shared->size() == 1) s.stationary_limit_ = shared->front();
    return s;
}

Mask NonStationaryScheme::mask_at(int k) const {
    if (k < 0) throw std::invalid_argument("mask level must be nonnegative");
    Mask m = rule_(k);
    if (!m.symbol().is_zero() && m.support_bound() > support_bound_) {
        throw std::logic_error("mask at level " + std::to_string(k) + " of '" + label_ +
                               "' exceeds the declared support bound " + std::to_string(support_bound_));
    }
    return m;
}

NonStationaryScheme& NonStationaryScheme::with_stationary_limit(Mask mask) {
    stationary_limit_ = std::move(mask);
    return *this;
}

NonStationaryScheme& NonStationaryScheme::with_lambda(Complex lambda) {
    lambda_ = lambda;
    return *this;
}

NonStationaryScheme& NonStationaryScheme::with_label(std::string label) {
    label_ = std::move(label);
    return *this;
}

LaurentPoly symbol_at(const NonStationaryScheme& scheme, int k) { return scheme.mask_at(k).symbol(); }

RefinedData subdivide_step(const Mask& mask, const RefinedData& data) {
    RefinedData out;
    out.base_level = data.base_level;
    out.level = data.level + 1;
    out.param = data.param;
    out.compact = data.compact;

    if (mask.symbol().is_zero() || data.values.empty()) {
        out.first_index = 2 * data.first_index;
        out.values.assign(data.values.empty() ? 0 : 1, Complex{});
        out.interior = data.compact ? out.window() : IndexRange{};
        if (!data.compact && !data.interior.empty()) {
            out.interior = {2 * data.interior.lo + mask.high_degree() - 1,
                            2 * data.interior.hi + mask.low_degree() + 1};
        }
        return out;
    }

    const std::int64_t s_lo = mask.low_degree();
    const std::int64_t s_hi = mask.high_degree();
    const IndexRange in = data.window();
    out.first_index = 2 * in.lo + s_lo;
    const std::int64_t last = 2 * in.hi + s_hi;
    out.values.assign(static_cast<std::size_t>(last - out.first_index + 1), Complex{});

    const auto& taps = mask.taps();
    for (std::int64_t i = out.first_index; i <= last; ++i) {
        const std::int64_t j_lo = std::max(in.lo, ceil_div(i - s_hi, 2));
        const std::int64_t j_hi = std::min(in.hi, floor_div(i - s_lo, 2));
        Complex sum{};
        for (std::int64_t j = j_lo; j <= j_hi; ++j) {
            sum += taps[static_cast<std::size_t>(i - 2 * j - s_lo)] *
                   data.values[static_cast<std::size_t>(j - in.lo)];
        }
        out.values[static_cast<std::size_t>(i - out.first_index)] = sum;
    }

    if (data.compact) {
        out.interior = out.window();
    } else if (data.interior.empty()) {
        out.interior = {};
    } else {
        out.interior = IndexRange{2 * data.interior.lo + s_hi - 1, 2 * data.interior.hi + s_lo + 1}
                           .intersect(out.window());
    }
    return out;
}

RefinedData run(const NonStationaryScheme& scheme, const RefinedData& initial, int steps) {
    if (steps < 0) throw std::invalid_argument("run: steps must be nonnegative");
    RefinedData current = initial;
    for (int s = 0; s < steps; ++s) {
        current = subdivide_step(scheme.mask_at(current.absolute_level()), current);
    }
    return current;
}

BlowupError::BlowupError(int level, double magnitude)
    : std::runtime_error("refinement diverged at level " + std::to_string(level) + " (sup norm " +
                         std::to_string(magnitude) + ")"),
      level_(level),
      magnitude_(magnitude) {}

RefinedData run_checked(const NonStationaryScheme& scheme, const RefinedData& initial, int steps, double threshold) {
    if (steps < 0) throw std::invalid_argument("run: steps must be nonnegative");
    RefinedData current = initial;
    for (int s = 0; s < steps; ++s) {
        current = subdivide_step(scheme.mask_at(current.absolute_level()), current);
        const double norm = current.norm_inf();
        if (!(norm <= threshold)) throw BlowupError(current.absolute_level(), norm);
    }
    return current;
}

LaurentPoly data_symbol(const RefinedData& data) {
    return LaurentPoly(data.values, static_cast<int>(data.first_index));
}

}  // namespace subdiv
