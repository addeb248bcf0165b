#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <vector>

#include "subdiv/laurent.hpp"

namespace subdiv {

/// Grid attachment t_i^{[k]} = (i + p) / 2^k with shift p = -(tau + nu/2).
class Parametrization {
   public:
    constexpr Parametrization() = default;
    Parametrization(int nu, int tau);

    static Parametrization primal(int tau = 0) { return {0, tau}; }
    static Parametrization dual(int tau = 0) { return {1, tau}; }

    int nu() const noexcept { return nu_; }
    int tau() const noexcept { return tau_; }
    /// 2p, always an integer; odd exactly for dual parametrizations.
    int twice_shift() const noexcept { return -(2 * tau_ + nu_); }
    double shift() const noexcept { return 0.5 * twice_shift(); }
    bool is_dual() const noexcept { return nu_ == 1; }

    /// t_i at absolute level k.
    double point(std::int64_t index, int level) const;

    friend bool operator==(const Parametrization&, const Parametrization&) = default;

   private:
    int nu_ = 0;
    int tau_ = 0;
};

/// Closed index range [lo, hi]; empty when lo > hi.
struct IndexRange {
    std::int64_t lo = 0;
    std::int64_t hi = -1;

    bool empty() const noexcept { return lo > hi; }
    bool contains(std::int64_t i) const noexcept { return lo <= i && i <= hi; }
    std::int64_t size() const noexcept { return empty() ? 0 : hi - lo + 1; }
    IndexRange intersect(const IndexRange& o) const noexcept {
        return {std::max(lo, o.lo), std::min(hi, o.hi)};
    }
    friend bool operator==(const IndexRange&, const IndexRange&) = default;
};

/// Level data f^{[k]} produced from data given at base level m, stored as a
/// finite window with implicit zero extension.
///
/// `compact` data (e.g. the delta sequence) really are zero outside the
/// window, so every refined value is exact. Otherwise the window is a
/// truncation of an infinite sequence and only `interior` indices are
/// unaffected by it.
struct RefinedData {
    int base_level = 0;
    int level = 0;  // steps performed since base_level
    std::int64_t first_index = 0;
    std::vector<Complex> values;
    Parametrization param;
    bool compact = false;
    IndexRange interior;

    int absolute_level() const noexcept { return base_level + level; }
    IndexRange window() const noexcept {
        return {first_index, first_index + static_cast<std::int64_t>(values.size()) - 1};
    }
    /// Value at index i (zero outside the window).
    Complex at(std::int64_t i) const noexcept;
    double t(std::int64_t i) const { return param.point(i, absolute_level()); }
    /// Indices whose values are exact: the whole window for compact data.
    IndexRange exact_range() const noexcept { return compact ? window() : interior; }
    double norm_inf() const noexcept;
    bool is_real_within(double tol) const noexcept;

    static RefinedData delta(int base_level = 0, Parametrization param = {});
    /// Windowed data at base level m; the whole window is interior.
    static RefinedData window_data(std::int64_t first_index, std::vector<Complex> values,
                                   int base_level = 0, Parametrization param = {});
};

/// Index window of the arithmetic grid t_i = (i + p)/2^level, i in [lo, hi].
struct GridSpec {
    int level = 0;
    Parametrization param;
    IndexRange indices;
};

}  // namespace subdiv
