#pragma once

#include <string>
#include <vector>

#include "subdiv/checks.hpp"
#include "subdiv/scheme.hpp"

namespace subdiv {

enum class Verdict { Satisfied, Violated, Inconclusive };

/// "satisfied (numerically)", "violated", "inconclusive"
std::string to_string(Verdict v);

/// Values at or below this multiple of their evaluation scale are recorded as exact zeros.
inline constexpr double kClipRelative = 1e-13;

/// Largest n <= n_max with a(1) = 2 and d^beta a(-1) = 0 for beta < n,
/// each test relative to its evaluation scale; 0 when a(1) != 2.
int sum_rule_order(const LaurentPoly& a, int n_max, double tol = default_tolerance());

/// |a(1) - 2| and |d^beta a(-1)| for beta < n, clipped to exact zero at the
/// rounding floor of the evaluation.
struct SymbolDefects {
    double a1_deviation = 0.0;
    std::vector<double> derivatives;
};
SymbolDefects symbol_defects(const LaurentPoly& a, int n);

struct SumRuleLevel {
    int k = 0;
    double a1_deviation = 0.0;
    std::vector<double> derivatives;  // beta = 0..N-1
    double sigma = 0.0;               // max_beta 2^{-k beta} |d^beta a(-1)|
};

/// Shape statistics of a trailing window of a positive sequence.
struct TrailingStats {
    int window_start = 0;
    int nonzero = 0;
    bool all_negligible = false;       // every term is an exact zero
    double median_ratio = 0.0;         // of consecutive nonzero terms
    double power_exponent = 0.0;       // slope of log t against log k
};
TrailingStats trailing_stats(const std::vector<double>& terms, int window_start);

struct SeriesReport {
    std::string label;
    std::vector<double> terms;
    std::vector<double> partial_sums;
    TrailingStats stats;
    Verdict verdict = Verdict::Inconclusive;
};

/// Trailing-window ratio test: geometric decay (median ratio <= 0.9) or all
/// exact zeros => satisfied; terms decaying like 1/k or slower => violated.
SeriesReport classify_series(std::string label, std::vector<double> terms);

struct OrderVerdict {
    int n = 0;
    SeriesReport sigma_series;  // sum 2^{k(n-1)} sigma_k^{(n)}
    Verdict verdict = Verdict::Inconclusive;
};

struct SumRuleReport {
    int n = 0;
    int levels = 0;
    int exact_order = 0;  // sum-rule order common to all tested levels
    std::vector<SumRuleLevel> per_level;
    SeriesReport a1_series;
    std::vector<OrderVerdict> orders;  // candidate orders 1..N
};

SumRuleReport approximate_sum_rules(const NonStationaryScheme& scheme, int n, int levels);

struct DecayFit {
    std::string label;
    std::vector<std::pair<int, double>> samples;
    double fitted_rate = 0.0;  // -infinity when every fitted sample is an exact zero
    double target_rate = 0.0;
    double slack = 0.25;
    int points_used = 0;
    bool pass = false;
};

struct DecayOptions {
    int fit_from = 8;
    double slack = 0.25;
};

/// Least-squares slope of log2|value| against k over samples with k >= fit_from,
/// skipping exact zeros.
DecayFit fit_decay(std::string label, std::vector<std::pair<int, double>> samples, double target, DecayOptions opts);

/// Fits for |a(1)-2| with target N and target 1, then |d^beta a(-1)| with target N - beta.
std::vector<DecayFit> decay_rates(const NonStationaryScheme& scheme, int n, int levels, DecayOptions opts = {});

struct SimilarityReport {
    std::vector<double> deviation;  // d_k = ||a^{[k]} - a||_inf
    TrailingStats stats;
    Verdict similar = Verdict::Inconclusive;
    Verdict equivalent = Verdict::Inconclusive;
};

SimilarityReport similarity_classification(const NonStationaryScheme& scheme, const Mask& stationary, int levels);

}  // namespace subdiv
