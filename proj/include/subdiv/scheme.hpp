#pragma once

#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "subdiv/grid.hpp"
#include "subdiv/laurent.hpp"

namespace subdiv {

/// One refinement rule: the finitely supported mask a_i, identified with
/// its symbol a(z) = sum a_i z^i.
class Mask {
   public:
    Mask() = default;
    explicit Mask(LaurentPoly symbol) : symbol_(std::move(symbol)) {}
    Mask(std::vector<Complex> taps, int low_degree) : symbol_(std::move(taps), low_degree) {}
    static Mask from_real(std::span<const double> taps, int low_degree) {
        return Mask(LaurentPoly::from_real(taps, low_degree));
    }

    const LaurentPoly& symbol() const noexcept { return symbol_; }
    const std::vector<Complex>& taps() const noexcept { return symbol_.coeffs(); }
    int low_degree() const noexcept { return symbol_.low_degree(); }
    int high_degree() const noexcept { return symbol_.high_degree(); }
    Complex tap(int i) const noexcept { return symbol_.coeff(i); }
    /// Smallest M with support inside [-M, M].
    int support_bound() const noexcept;
    /// max{ sum_i |a_{2i}|, sum_i |a_{2i+1}| }
    double operator_norm() const noexcept;

    friend bool operator==(const Mask&, const Mask&) = default;

   private:
    LaurentPoly symbol_;
};

/// k -> a^{[k]} for all k >= 0 together with the grid attachment.
class NonStationaryScheme {
   public:
    using MaskRule = std::function<Mask(int)>;

    NonStationaryScheme(std::string label, MaskRule rule, Parametrization param, int support_bound);

    static NonStationaryScheme stationary(const Mask& mask, Parametrization param, std::string label = "stationary");
    /// Explicit masks for k < masks.size(); the last mask is the tail rule.
    static NonStationaryScheme table(std::vector<Mask> masks, Parametrization param, std::string label = "table");

    /// Throws std::logic_error when the rule yields a mask outside [-M, M].
    Mask mask_at(int k) const;

    const std::string& label() const noexcept { return label_; }
    const Parametrization& param() const noexcept { return param_; }
    int support_bound() const noexcept { return support_bound_; }
    const std::optional<Mask>& stationary_limit() const noexcept { return stationary_limit_; }
    /// Frequency parameter of parametric families, when there is one.
    const std::optional<Complex>& lambda() const noexcept { return lambda_; }

    NonStationaryScheme& with_stationary_limit(Mask mask);
    NonStationaryScheme& with_lambda(Complex lambda);
    NonStationaryScheme& with_label(std::string label);

   private:
    std::string label_;
    MaskRule rule_;
    Parametrization param_;
    int support_bound_;
    std::optional<Mask> stationary_limit_;
    std::optional<Complex> lambda_;
};

LaurentPoly symbol_at(const NonStationaryScheme& scheme, int k);

/// f_i = sum_j a_{i-2j} f_j over the input window, j ascending. The output
/// advances `level` by one; its interior shrinks by the mask reach.
RefinedData subdivide_step(const Mask& mask, const RefinedData& data);

/// Applies maskAt(m + level), maskAt(m + level + 1), ... for `steps` steps.
RefinedData run(const NonStationaryScheme& scheme, const RefinedData& initial, int steps);

/// Raised when refined values exceed the divergence threshold.
class BlowupError : public std::runtime_error {
   public:
    BlowupError(int level, double magnitude);
    int level() const noexcept { return level_; }
    double magnitude() const noexcept { return magnitude_; }

   private:
    int level_;
    double magnitude_;
};

inline constexpr double kBlowupThreshold = 1e12;

/// run() that throws BlowupError at the first level whose sup norm exceeds `threshold`.
RefinedData run_checked(const NonStationaryScheme& scheme, const RefinedData& initial, int steps,
                        double threshold = kBlowupThreshold);

/// Values of data as a Laurent polynomial sum f_i z^i.
LaurentPoly data_symbol(const RefinedData& data);

}  // namespace subdiv
