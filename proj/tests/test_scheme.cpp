#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "subdiv/catalog.hpp"
#include "subdiv/scheme.hpp"

using namespace subdiv;

namespace {

Mask hat() { return bspline_mask(1); }

std::vector<Complex> random_values(std::mt19937& rng, int n) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<Complex> v(static_cast<std::size_t>(n));
    for (auto& x : v) x = u(rng);
    return v;
}

Mask random_mask(std::mt19937& rng) {
    std::uniform_int_distribution<int> len(1, 5), low(-3, 1);
    return Mask(random_values(rng, len(rng)), low(rng));
}

// Brute-force oracle: f_i = sum over all j of a_{i-2j} f_j.
RefinedData brute_step(const Mask& a, const RefinedData& f) {
    RefinedData out = f;
    out.level += 1;
    const IndexRange w = f.window();
    const std::int64_t lo = 2 * w.lo + a.low_degree() - 2, hi = 2 * w.hi + a.high_degree() + 2;
    out.first_index = lo;
    out.values.assign(static_cast<std::size_t>(hi - lo + 1), Complex{});
    for (std::int64_t i = lo; i <= hi; ++i) {
        for (std::int64_t j = w.lo; j <= w.hi; ++j) {
            out.values[static_cast<std::size_t>(i - lo)] += a.tap(static_cast<int>(i - 2 * j)) * f.at(j);
        }
    }
    return out;
}

}  // namespace

TEST(Mask, SymbolRoundTripsTaps) {
    const Mask m({0.25, 0.75, 0.75, 0.25}, -2);
    EXPECT_EQ(Mask(m.symbol()), m);
    EXPECT_EQ(m.tap(-2), Complex(0.25));
    EXPECT_EQ(m.tap(2), Complex(0.0));
    EXPECT_EQ(m.support_bound(), 2);
    EXPECT_DOUBLE_EQ(m.operator_norm(), 1.0);
}

TEST(Parametrization, ShiftAndGrid) {
    EXPECT_EQ(Parametrization::primal().shift(), 0.0);
    EXPECT_EQ(Parametrization::dual().shift(), -0.5);
    EXPECT_EQ(Parametrization(0, 2).shift(), -2.0);
    EXPECT_EQ(Parametrization(1, 1).twice_shift(), -3);
    EXPECT_DOUBLE_EQ(Parametrization::dual().point(3, 2), 2.5 / 4.0);
    EXPECT_ANY_THROW(Parametrization(2, 0));
}

TEST(SubdivideStep, HatOnDelta) {
    const RefinedData out = subdivide_step(hat(), RefinedData::delta());
    EXPECT_EQ(out.level, 1);
    EXPECT_EQ(out.first_index, -1);
    ASSERT_EQ(out.values.size(), 3u);
    EXPECT_EQ(out.values[0], Complex(0.5));
    EXPECT_EQ(out.values[1], Complex(1.0));
    EXPECT_EQ(out.values[2], Complex(0.5));
}

TEST(SubdivideStep, HatTwiceOnDeltaEqualsSymbolProduct) {
    const RefinedData two = subdivide_step(hat(), subdivide_step(hat(), RefinedData::delta()));
    const std::vector<double> want{0.25, 0.5, 0.75, 1.0, 0.75, 0.5, 0.25};
    ASSERT_EQ(two.values.size(), want.size());
    EXPECT_EQ(two.first_index, -3);
    for (std::size_t i = 0; i < want.size(); ++i) EXPECT_EQ(two.values[i], Complex(want[i]));
    EXPECT_EQ(data_symbol(two), hat().symbol() * upsample(hat().symbol()));
}

TEST(SubdivideStep, ZeroSequenceStaysZero) {
    std::mt19937 rng(3);
    const RefinedData zero = RefinedData::window_data(-2, std::vector<Complex>(5), 0);
    EXPECT_EQ(subdivide_step(random_mask(rng), zero).norm_inf(), 0.0);
}

TEST(SubdivideStep, MatchesBruteForceOracle) {
    std::mt19937 rng(11);
    for (int t = 0; t < 30; ++t) {
        const Mask a = random_mask(rng);
        const RefinedData f = RefinedData::window_data(-3, random_values(rng, 6), 0);
        const RefinedData fast = subdivide_step(a, f), slow = brute_step(a, f);
        for (std::int64_t i = slow.first_index; i <= slow.window().hi; ++i) EXPECT_EQ(fast.at(i), slow.at(i)) << i;
    }
}

TEST(SubdivideStep, IsLinear) {
    std::mt19937 rng(5);
    for (int t = 0; t < 20; ++t) {
        const Mask a = random_mask(rng);
        const auto fv = random_values(rng, 7), gv = random_values(rng, 7);
        std::vector<Complex> sum(7);
        for (std::size_t i = 0; i < 7; ++i) sum[i] = fv[i] + gv[i];
        const RefinedData f = RefinedData::window_data(0, fv), g = RefinedData::window_data(0, gv),
                          fg = RefinedData::window_data(0, sum);
        const RefinedData sf = subdivide_step(a, f), sg = subdivide_step(a, g), sfg = subdivide_step(a, fg);
        for (std::int64_t i = sfg.first_index; i <= sfg.window().hi; ++i) {
            EXPECT_NEAR(std::abs(sfg.at(i) - (sf.at(i) + sg.at(i))), 0.0, 1e-15);
        }
    }
}

TEST(SubdivideStep, WindowGrowthFollowsMaskReach) {
    const Mask a({1.0, 2.0, 3.0, 4.0, 5.0}, -2);
    const RefinedData f = RefinedData::window_data(-1, {1.0, 1.0, 1.0});
    const RefinedData out = subdivide_step(a, f);
    EXPECT_EQ(out.window(), (IndexRange{2 * -1 - 2, 2 * 1 + 2}));
}

TEST(SubdivideStep, InteriorIndicesMatchUntruncatedData) {
    // windowed samples of a long sequence; interior values must not see the truncation
    std::mt19937 rng(21);
    const auto long_values = random_values(rng, 61);
    const RefinedData full = RefinedData::window_data(-30, long_values);
    const RefinedData cut = RefinedData::window_data(-8, std::vector<Complex>(long_values.begin() + 22, long_values.begin() + 39));
    const auto scheme = NonStationaryScheme::stationary(bspline_mask(3), Parametrization::primal());
    const RefinedData a = run(scheme, full, 3), b = run(scheme, cut, 3);
    ASSERT_FALSE(b.interior.empty());
    for (std::int64_t i = b.interior.lo; i <= b.interior.hi; ++i) EXPECT_NEAR(std::abs(a.at(i) - b.at(i)), 0.0, 1e-14);
}

TEST(Run, ZeroStepsIsIdentity) {
    const RefinedData f = RefinedData::window_data(-1, {1.0, 2.0, 3.0}, 2);
    const RefinedData g = run(NonStationaryScheme::stationary(hat(), {}), f, 0);
    EXPECT_EQ(g.values, f.values);
    EXPECT_EQ(g.absolute_level(), 2);
}

TEST(Run, PrimalPhi4ReproducesConstants) {
    CatalogParams p;
    p.lambda = 1.0;
    const auto scheme = build_scheme("primal-phi4", p);
    const RefinedData ones = RefinedData::window_data(-20, std::vector<Complex>(41, 1.0));
    const RefinedData out = run(scheme, ones, 4);
    ASSERT_FALSE(out.interior.empty());
    for (std::int64_t i = out.interior.lo; i <= out.interior.hi; ++i) EXPECT_NEAR(std::abs(out.at(i) - 1.0), 0.0, 1e-10);
}

TEST(Run, HatCascadeSamplesTheHatFunction) {
    const auto scheme = NonStationaryScheme::stationary(hat(), {});
    const int k = 6;
    const RefinedData out = run(scheme, RefinedData::delta(), k);
    double peak = 0.0;
    for (std::int64_t i = out.first_index; i <= out.window().hi; ++i) {
        const double x = std::ldexp(static_cast<double>(i), -k);
        EXPECT_DOUBLE_EQ(out.at(i).real(), std::max(0.0, 1.0 - std::abs(x)));
        peak = std::max(peak, out.at(i).real());
    }
    EXPECT_EQ(peak, 1.0);
}

TEST(Run, SymbolRecursionHoldsForNonStationarySchemes) {
    CatalogParams p;
    p.lambda = 0.7;
    for (const char* name : {"primal-phi4", "dual-phi3", "similar-not-equivalent", "perturbed-quadratic"}) {
        const auto scheme = build_scheme(name, p);
        RefinedData f = RefinedData::delta(0, scheme.param());
        for (int k = 0; k < 5; ++k) {
            const RefinedData next = subdivide_step(scheme.mask_at(k), f);
            const LaurentPoly want = symbol_at(scheme, k) * upsample(data_symbol(f));
            EXPECT_LE((data_symbol(next) - want).norm_inf(), 1e-12) << name << " k=" << k;
            f = next;
        }
    }
}

TEST(Run, CheckedRunReportsBlowupLevel) {
    const auto scheme = NonStationaryScheme::stationary(Mask({4.0, 4.0}, 0), {});
    try {
        run_checked(scheme, RefinedData::delta(), 40);
        FAIL() << "expected BlowupError";
    } catch (const BlowupError& e) {
        EXPECT_EQ(e.level(), 20);  // 4^20 > 1e12 first
        EXPECT_GT(e.magnitude(), kBlowupThreshold);
    }
}

TEST(Scheme, TableUsesLastMaskAsTail) {
    const auto s = NonStationaryScheme::table({Mask({1.0}, 0), hat()}, {});
    EXPECT_EQ(s.mask_at(0), Mask({1.0}, 0));
    EXPECT_EQ(s.mask_at(1), hat());
    EXPECT_EQ(s.mask_at(50), hat());
    EXPECT_EQ(s.support_bound(), 1);
    EXPECT_THROW(s.mask_at(-1), std::invalid_argument);
}

TEST(Scheme, RuleExceedingSupportBoundIsRejected) {
    const NonStationaryScheme s("growing", [](int k) { return Mask(std::vector<Complex>(static_cast<std::size_t>(k + 1), 1.0), 0); },
                                {}, 2);
    EXPECT_NO_THROW(s.mask_at(2));
    EXPECT_THROW(s.mask_at(3), std::logic_error);
}

TEST(SymbolAt, CatalogExamples) {
    CatalogParams zero;
    zero.lambda = 0.0;
    zero.p = 0.0;
    const auto h0 = build_scheme("hp-family", zero);
    for (int k : {0, 3, 9}) EXPECT_EQ(symbol_at(h0, k), LaurentPoly({0.5, 1.0, 0.5}, -1));

    const LaurentPoly pq = symbol_at(build_scheme("perturbed-quadratic"), 2);
    ASSERT_EQ(pq.low_degree(), 0);
    const std::vector<double> want{0.5, 0.5, 0.5};  // last tap 1/4 - 1/4 = 0 is trimmed
    ASSERT_EQ(pq.size(), want.size());
    for (std::size_t i = 0; i < want.size(); ++i) EXPECT_DOUBLE_EQ(pq.coeffs()[i].real(), want[i]);

    for (double pshift : {0.0, -0.5}) {
        CatalogParams hp;
        hp.lambda = Complex(0.8, 0.3);
        hp.p = pshift;
        const auto s = build_scheme("hp-family", hp);
        for (int k = 0; k < 12; ++k) {
            const Complex r = std::exp(*hp.lambda * std::ldexp(1.0, -k - 1));
            EXPECT_LE(std::abs(eval(symbol_at(s, k), 1.0 / r) - 2.0 * std::pow(r, -pshift)), 1e-14);
        }
    }
}
