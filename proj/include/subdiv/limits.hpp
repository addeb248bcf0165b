#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "subdiv/scheme.hpp"

namespace subdiv {

/// Cascade samples of the basic limit function phi_m on x_i = i 2^{-k}.
struct LimitFunctionSamples {
    int base_level = 0;
    int resolution = 0;
    std::int64_t first_index = 0;
    std::vector<Complex> values;
    IndexRange interior;
    /// cauchy[l-1] = sup |f^{[l]} - linear interpolant of f^{[l-1]}| for l = 1..k.
    std::vector<double> cauchy;

    double x(std::int64_t i) const { return std::ldexp(static_cast<double>(i), -resolution); }
    Complex at(std::int64_t i) const noexcept;
    /// Value at x = 0 (index 0).
    Complex at_origin() const noexcept { return at(0); }
    double cauchy_estimate() const noexcept { return cauchy.empty() ? 0.0 : cauchy.back(); }
};

/// run(scheme from base level m, delta, k); throws BlowupError past 1e12.
LimitFunctionSamples basic_limit_function(const NonStationaryScheme& scheme, int m, int k);

/// Sup of |f - g| over the union of both windows (same resolution required).
double sup_distance(const LimitFunctionSamples& f, const LimitFunctionSamples& g);

enum class DifferenceExtent {
    Window,  // output indices equal the input window
    Full,    // one extra trailing index, so compact data stay exactly compact
};

/// (Delta^K_lambda f)_i = f_i - e^{lambda 2^{-K}} f_{i-1}, K = data.absolute_level().
RefinedData difference_sequence(const RefinedData& data, Complex lambda,
                                DifferenceExtent extent = DifferenceExtent::Window);

/// b = a / (1 + r_k z), r_k = e^{lambda 2^{-k-1}}. Throws DomainError when a
/// is not divisible within tol.
Mask difference_mask(const Mask& a, Complex lambda, int k, double tol = 1e-9);

/// sup |Delta^{K+1}(S_a f) - S_b(Delta^K f)| / ||f||, K = f.absolute_level(),
/// for f treated as compact data.
double intertwining_residual(const Mask& a, const Mask& b, Complex lambda, const RefinedData& f);

struct ContractivityReport {
    Complex lambda;
    std::vector<Mask> difference_masks;  // b^{[k]}, k = 0..K
    std::vector<double> norms;           // ||Delta^{k+1} f^{[k+1]}||, delta seed, k = 0..K
    double fitted_mu = 0.0;              // median ratio over the trailing third
    double intertwining_residual = 0.0;  // worst over random trials and levels
    bool pass = false;
};

struct ContractivityOptions {
    int random_trials = 10;
    int random_length = 12;
    unsigned seed = 12345;
};

/// Throws DomainError when some a^{[k]} has no factor (1 + r_k z).
ContractivityReport difference_scheme(const NonStationaryScheme& scheme, Complex lambda, int levels,
                                      ContractivityOptions opts = {});

/// Proof-internal symbols d^{[k]} = a^{[k]} - h_p^{[k]} and e^{[k]} = d^{[k]} / (1 - r_k^2 z^2).
struct QuasiInterpolantDebug {
    std::vector<int> levels;
    std::vector<LaurentPoly> d;
    std::vector<LaurentPoly> e;
    std::vector<double> e_remainder;
};

struct QuasiInterpolant {
    int m = 0;
    int k = 0;
    int resolution = 0;  // F^k sampled at j 2^{-resolution}
    std::int64_t first_index = 0;
    std::vector<Complex> values;
    IndexRange exact;             // samples unaffected by data truncation
    double next_difference = 0.0;  // sup |F^{k+1} - F^k| over shared exact samples
    QuasiInterpolantDebug debug;

    double x(std::int64_t j) const { return std::ldexp(static_cast<double>(j), -resolution); }
};

inline constexpr int kQuasiRelativeResolution = 6;

/// F^k_{m,p} = sum_i (f_m^{[k]})_i H_{m+k,p}(2^k . - i) with H from the hp family
/// (lambda taken from the scheme, 0 when absent). `data` is f^{[0]} at base level m.
QuasiInterpolant quasi_interpolant(const NonStationaryScheme& scheme, int m, int k, const RefinedData& data, double p,
                                   int relative_resolution = kQuasiRelativeResolution);

/// ||F^{j+1} - F^j|| for j = 0..k_max.
std::vector<double> quasi_interpolant_decay(const NonStationaryScheme& scheme, int m, int k_max,
                                            const RefinedData& data, double p,
                                            int relative_resolution = kQuasiRelativeResolution);

struct BlfConvergenceRow {
    int m = 0;
    double distance = 0.0;
    Complex value_at_origin;
};

struct BlfConvergence {
    int resolution = 0;
    std::vector<BlfConvergenceRow> rows;
    std::vector<std::string> unchecked_hypotheses;
};

BlfConvergence blf_convergence(const NonStationaryScheme& scheme, const Mask& stationary, const std::vector<int>& m_list,
                               int k);

}  // namespace subdiv
