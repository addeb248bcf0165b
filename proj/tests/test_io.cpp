#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

#include "subdiv/io.hpp"

using namespace subdiv;

namespace {

const std::string kDataDir = SUBDIV_DATA_DIR;

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

template <class F>
std::string csv_of(F&& write) {
    std::ostringstream out;
    write(out);
    return out.str();
}

}  // namespace

TEST(Json, MalformedReportsLineAndColumn) {
    try {
        parse_json_text("{\n  \"kind\": ,\n}", "bad.json");
        FAIL();
    } catch (const MalformedJson& e) {
        EXPECT_EQ(e.line(), 2u);
        EXPECT_EQ(e.column(), 11u);
        EXPECT_NE(std::string(e.what()).find("bad.json:2:11"), std::string::npos) << e.what();
    }
    EXPECT_THROW(read_json_file("/nonexistent/scheme.json"), std::runtime_error);
}

TEST(Json, ComplexAndNumberEncodings) {
    EXPECT_EQ(complex_json(2.0), Json(2.0));
    EXPECT_EQ(complex_json({1.0, -2.0}), (Json{{"re", 1.0}, {"im", -2.0}}));
    EXPECT_EQ(complex_from_json(Json(3.0)), Complex(3.0));
    EXPECT_EQ(complex_from_json(Json{{"re", 1.0}, {"im", 2.0}}), Complex(1.0, 2.0));
    EXPECT_THROW(complex_from_json(Json{{"re", 1.0}, {"imag", 2.0}}), SchemaError);
    EXPECT_THROW(complex_from_json(Json("x")), SchemaError);
    EXPECT_EQ(number_json(std::numeric_limits<double>::infinity()), Json("Infinity"));
    EXPECT_EQ(number_json(-std::numeric_limits<double>::infinity()), Json("-Infinity"));
    EXPECT_EQ(number_json(std::nan("")), Json("NaN"));
    EXPECT_EQ(number_json(0.5), Json(0.5));
}

TEST(Json, MaskParamSpaceRoundTrip) {
    const Mask m({0.25, 0.75, 0.75, 0.25}, -2);
    EXPECT_EQ(mask_from_json(mask_json(m)), m);
    EXPECT_EQ(param_from_json(param_json(Parametrization::dual())), Parametrization::dual());
    const ExpSpace s({{0.0, 2}, {Complex(0.0, 1.0), 1}});
    EXPECT_EQ(space_from_json(space_json(s)), s);
    EXPECT_THROW(mask_from_json(Json{{"taps", {1.0}}, {"lowDegree", 0}, {"extra", 1}}), SchemaError);
    EXPECT_THROW(mask_from_json(Json{{"taps", Json::array()}, {"lowDegree", 0}}), SchemaError);
    EXPECT_THROW(param_from_json(Json{{"nu", 2}, {"tau", 0}}), SchemaError);
}

TEST(SchemeFile, ParseSerializeIsIdempotent) {
    for (const auto& entry : std::filesystem::directory_iterator(kDataDir + "/schemes")) {
        const Json raw = read_json_file(entry.path().string());
        const SchemeFile once = SchemeFile::from_json(raw);
        const Json j1 = once.to_json();
        const Json j2 = SchemeFile::from_json(j1).to_json();
        EXPECT_EQ(j1, j2) << entry.path();
        EXPECT_EQ(j1.dump(), j2.dump()) << entry.path();
        EXPECT_NO_THROW(once.build()) << entry.path();
    }
}

TEST(SchemeFile, UnknownFieldsAreRejectedWithAPath) {
    try {
        SchemeFile::from_json(parse_json_text(R"({"kind": "catalog", "name": "bspline-1", "colour": 1})"));
        FAIL();
    } catch (const SchemaError& e) {
        EXPECT_NE(std::string(e.what()).find("unknown field \"colour\""), std::string::npos) << e.what();
    }
    try {
        SchemeFile::from_json(parse_json_text(
            R"({"kind": "table", "masks": [{"taps": [1], "lowDegree": 0, "x": 0}]})"));
        FAIL();
    } catch (const SchemaError& e) {
        EXPECT_NE(std::string(e.what()).find("/masks/0"), std::string::npos) << e.what();
    }
    EXPECT_THROW(SchemeFile::from_json(parse_json_text(R"({"kind": "spline"})")), SchemaError);
    EXPECT_THROW(SchemeFile::from_json(parse_json_text(R"([1, 2])")), SchemaError);
}

TEST(SchemeFile, CatalogParametrizationMismatch) {
    const SchemeFile f = SchemeFile::from_json(
        parse_json_text(R"({"kind": "catalog", "name": "bspline-2", "parametrization": {"nu": 0, "tau": 0}})"));
    EXPECT_THROW(f.build(), SchemaError);
}

TEST(SchemeFile, ParametricMatchesCatalog) {
    const auto par = SchemeFile::from_json(read_json_file(kDataDir + "/schemes/h0-parametric.json")).build();
    const auto cat = SchemeFile::from_json(read_json_file(kDataDir + "/schemes/h0.json")).build();
    for (int k = 0; k < 12; ++k) EXPECT_LE((symbol_at(par, k) - symbol_at(cat, k)).norm_inf(), 1e-15);
    EXPECT_EQ(par.stationary_limit(), cat.stationary_limit());
}

TEST(SchemeFile, CatalogHelper) {
    const SchemeFile f = scheme_file_for_catalog("hp-family", Complex(1.0), -0.5);
    EXPECT_EQ(f.to_json()["p"], Json(-0.5));
    EXPECT_EQ(f.build().param(), Parametrization::dual());
}

TEST(Csv, FormatDouble) {
    EXPECT_EQ(format_double(0.0), "0");
    EXPECT_EQ(format_double(-0.0), "0");
    EXPECT_EQ(format_double(0.1), "0.10000000000000001");
    EXPECT_EQ(format_double(0.5), "0.5");
    EXPECT_EQ(format_double(-3.0), "-3");
    EXPECT_EQ(std::stod(format_double(M_PI)), M_PI);
}

TEST(Csv, RealDataCollapsesToOneColumn) {
    const RefinedData d = RefinedData::window_data(-1, {0.5, 1.0, 0.5});
    const std::string csv = csv_of([&](std::ostream& o) { write_refined_csv(o, d); });
    EXPECT_EQ(csv.substr(0, csv.find('\n')), "index,t,value,exact");
    EXPECT_NE(csv.find("\n0,0,1,"), std::string::npos) << csv;
    EXPECT_EQ(csv.find('\r'), std::string::npos);

    const RefinedData c = RefinedData::window_data(0, {Complex(1.0, 2.0)});
    const std::string cc = csv_of([&](std::ostream& o) { write_refined_csv(o, c); });
    EXPECT_EQ(cc.substr(0, cc.find('\n')), "index,t,value_re,value_im,exact");
    EXPECT_TRUE(effectively_real({Complex(1.0, 1e-16)}));
    EXPECT_FALSE(effectively_real({Complex(1.0, 1e-6)}));
}

TEST(Csv, OutputsAreByteStable) {
    CatalogParams p;
    p.lambda = 1.0;
    const auto s = build_scheme("primal-phi4", p);
    const LimitFunctionSamples a = basic_limit_function(s, 0, 6), b = basic_limit_function(s, 0, 6);
    const std::string ca = csv_of([&](std::ostream& o) { write_limit_csv(o, a); });
    const std::string cb = csv_of([&](std::ostream& o) { write_limit_csv(o, b); });
    EXPECT_EQ(ca, cb);
    EXPECT_EQ(ca.substr(0, ca.find('\n')), "index,x,value");
    const auto r1 = run_approx_experiment(build_scheme("bspline-1"), ApproxConfig{});
    const auto r2 = run_approx_experiment(build_scheme("bspline-1"), ApproxConfig{});
    EXPECT_EQ(csv_of([&](std::ostream& o) { write_approx_csv(o, r1); }),
              csv_of([&](std::ostream& o) { write_approx_csv(o, r2); }));
}

TEST(Csv, ReadDataWithAndWithoutHeader) {
    std::istringstream with("index,value\n-1,0.5\n0,1\n1,0.5\n");
    const RefinedData a = read_data_csv(with, Parametrization::primal());
    EXPECT_EQ(a.first_index, -1);
    ASSERT_EQ(a.values.size(), 3u);
    EXPECT_EQ(a.values[1], Complex(1.0));

    std::istringstream bare("2,1,3\n3,4,0\n");
    const RefinedData b = read_data_csv(bare, Parametrization::primal(), 2);
    EXPECT_EQ(b.first_index, 2);
    EXPECT_EQ(b.values[0], Complex(1.0, 3.0));
    EXPECT_EQ(b.absolute_level(), 2);

    std::istringstream gap("0,1\n2,1\n");  // missing indices are zeros
    const RefinedData g = read_data_csv(gap, Parametrization::primal());
    ASSERT_EQ(g.values.size(), 3u);
    EXPECT_EQ(g.values[1], Complex(0.0));
    std::istringstream junk("0,abc\n");
    EXPECT_THROW(read_data_csv(junk, Parametrization::primal()), std::invalid_argument);
}

TEST(Reports, JsonShapes) {
    CatalogParams p;
    p.lambda = 1.0;
    const auto s = build_scheme("dual-phi3", p);
    const Json rep = condition_report_json(check_reproduction_ns(s, ExpSpace({{0.0, 1}, {1.0, 1}, {-1.0, 1}}), {0, 4}));
    EXPECT_TRUE(rep.at("holds").get<bool>());
    EXPECT_EQ(rep.at("perLevel").size(), 5u);
    const Json fit = decay_fit_json(fit_decay("z", {{8, 0.0}, {9, 0.0}}, 2, {}));
    EXPECT_EQ(fit.at("fittedRate"), Json("-Infinity"));
}
