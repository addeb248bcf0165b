#include "subdiv/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <initializer_list>
#include <istream>
#include <map>
#include <sstream>

namespace subdiv {

namespace {

std::string at(const std::string& where, const std::string& key) { return where + "/" + key; }

const Json& require(const Json& j, const char* key, const std::string& where) {
    const auto it = j.find(key);
    if (it == j.end()) throw SchemaError(where + ": missing field \"" + key + "\"");
    return *it;
}

void require_object(const Json& j, const std::string& where, std::initializer_list<const char*> allowed) {
    if (!j.is_object()) throw SchemaError((where.empty() ? "/" : where) + ": expected an object");
    for (const auto& item : j.items()) {
        bool known = false;
        for (const char* key : allowed) known = known || item.key() == key;
        if (!known) throw SchemaError((where.empty() ? "/" : where) + ": unknown field \"" + item.key() + "\"");
    }
}

int int_from(const Json& j, const std::string& where) {
    if (!j.is_number_integer()) throw SchemaError(where + ": expected an integer");
    return j.get<int>();
}

double double_from(const Json& j, const std::string& where) {
    if (!j.is_number()) throw SchemaError(where + ": expected a number");
    return j.get<double>();
}

std::string string_from(const Json& j, const std::string& where) {
    if (!j.is_string()) throw SchemaError(where + ": expected a string");
    return j.get<std::string>();
}

Json verdict_json(Verdict v) { return to_string(v); }

Json series_json(const SeriesReport& s) {
    Json terms = Json::array(), partial = Json::array();
    for (double t : s.terms) terms.push_back(number_json(t));
    for (double t : s.partial_sums) partial.push_back(number_json(t));
    return {{"label", s.label},
            {"terms", terms},
            {"partialSums", partial},
            {"windowStart", s.stats.window_start},
            {"nonzero", s.stats.nonzero},
            {"allNegligible", s.stats.all_negligible},
            {"medianRatio", number_json(s.stats.median_ratio)},
            {"powerExponent", number_json(s.stats.power_exponent)},
            {"verdict", verdict_json(s.verdict)}};
}

Json components_json(const std::vector<ExpComponent>& comps) {
    Json out = Json::array();
    for (const auto& c : comps) out.push_back({{"lambda", complex_json(c.lambda)}, {"mu", c.mu}});
    return out;
}

double real_tolerance(const std::vector<Complex>& values) {
    double scale = 0.0;
    for (const auto& v : values) scale = std::max(scale, std::abs(v));
    return 1e-13 * scale;
}

void write_value_header(std::ostream& out, bool real) { out << (real ? "value" : "value_re,value_im"); }

void write_value(std::ostream& out, Complex v, bool real) {
    out << format_double(v.real());
    if (!real) out << ',' << format_double(v.imag());
}

const char* kind_name(SchemeFile::Kind k) {
    switch (k) {
        case SchemeFile::Kind::Catalog: return "catalog";
        case SchemeFile::Kind::Table: return "table";
        default: return "parametric";
    }
}

}  // namespace

MalformedJson::MalformedJson(const std::string& source, std::size_t line, std::size_t column, const std::string& message)
    : std::runtime_error(source + ":" + std::to_string(line) + ":" + std::to_string(column) + ": " + message),
      line_(line),
      column_(column) {}

Json parse_json_text(const std::string& text, const std::string& source) {
    try {
        return Json::parse(text);
    } catch (const Json::parse_error& e) {
        // e.byte is the 1-based offset of the offending character
        const std::size_t offset = e.byte == 0 ? 0 : std::min<std::size_t>(e.byte - 1, text.size());
        std::size_t line = 1, column = 1;
        for (std::size_t i = 0; i < offset; ++i) {
            if (text[i] == '\n') {
                ++line;
                column = 1;
            } else {
                ++column;
            }
        }
        std::string message = e.what();
        const std::size_t colon = message.find(": ", message.find("parse error"));
        if (colon != std::string::npos) message = message.substr(colon + 2);
        throw MalformedJson(source, line, column, message);
    }
}

Json read_json_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_json_text(buf.str(), path);
}

Json complex_json(Complex c) {
    if (c.imag() == 0.0) return c.real();
    return {{"re", c.real()}, {"im", c.imag()}};
}

Complex complex_from_json(const Json& j, const std::string& where) {
    if (j.is_number()) return j.get<double>();
    require_object(j, where, {"re", "im"});
    const double re = double_from(require(j, "re", where), at(where, "re"));
    const double im = j.contains("im") ? double_from(j["im"], at(where, "im")) : 0.0;
    return {re, im};
}

Json number_json(double v) {
    if (std::isnan(v)) return "NaN";
    if (std::isinf(v)) return v > 0 ? "Infinity" : "-Infinity";
    return v;
}

Json mask_json(const Mask& mask) {
    Json taps = Json::array();
    for (const auto& t : mask.taps()) taps.push_back(complex_json(t));
    return {{"taps", taps}, {"lowDegree", mask.low_degree()}};
}

Mask mask_from_json(const Json& j, const std::string& where) {
    require_object(j, where, {"taps", "lowDegree"});
    const Json& taps = require(j, "taps", where);
    if (!taps.is_array() || taps.empty()) throw SchemaError(at(where, "taps") + ": expected a nonempty array");
    std::vector<Complex> values;
    for (std::size_t i = 0; i < taps.size(); ++i) values.push_back(complex_from_json(taps[i], at(at(where, "taps"), std::to_string(i))));
    const int low = int_from(require(j, "lowDegree", where), at(where, "lowDegree"));
    return Mask(std::move(values), low);
}

Json laurent_json(const LaurentPoly& p) {
    Json coeffs = Json::array();
    for (const auto& c : p.coeffs()) coeffs.push_back(complex_json(c));
    return {{"coeffs", coeffs}, {"lowDegree", p.low_degree()}};
}

Json param_json(const Parametrization& param) { return {{"nu", param.nu()}, {"tau", param.tau()}}; }

Parametrization param_from_json(const Json& j, const std::string& where) {
    require_object(j, where, {"nu", "tau"});
    const int nu = int_from(require(j, "nu", where), at(where, "nu"));
    const int tau = j.contains("tau") ? int_from(j["tau"], at(where, "tau")) : 0;
    try {
        return Parametrization(nu, tau);
    } catch (const std::exception& e) {
        throw SchemaError(where + ": " + e.what());
    }
}

Json space_json(const ExpSpace& space) { return {{"components", components_json(space.components())}}; }

ExpSpace space_from_json(const Json& j, const std::string& where) {
    require_object(j, where, {"components"});
    const Json& comps = require(j, "components", where);
    const std::string cw = at(where, "components");
    if (!comps.is_array()) throw SchemaError(cw + ": expected an array");
    std::vector<ExpComponent> out;
    for (std::size_t i = 0; i < comps.size(); ++i) {
        const std::string w = at(cw, std::to_string(i));
        require_object(comps[i], w, {"lambda", "mu"});
        ExpComponent c;
        c.lambda = complex_from_json(require(comps[i], "lambda", w), at(w, "lambda"));
        c.mu = comps[i].contains("mu") ? int_from(comps[i]["mu"], at(w, "mu")) : 1;
        out.push_back(c);
    }
    try {
        return ExpSpace(std::move(out));
    } catch (const std::exception& e) {
        throw SchemaError((where.empty() ? "/" : where) + ": " + e.what());
    }
}

SchemeFile SchemeFile::from_json(const Json& j) {
    require_object(j, "", {"kind", "name", "masks", "expr", "lambda", "parametrization", "p", "stationaryLimit"});
    SchemeFile f;
    const std::string kind = string_from(require(j, "kind", ""), "/kind");
    if (kind == "catalog") {
        f.kind = Kind::Catalog;
    } else if (kind == "table") {
        f.kind = Kind::Table;
    } else if (kind == "parametric") {
        f.kind = Kind::Parametric;
    } else {
        throw SchemaError("/kind: expected \"catalog\", \"table\" or \"parametric\", got \"" + kind + "\"");
    }
    if (j.contains("name")) f.name = string_from(j["name"], "/name");
    if (f.kind == Kind::Catalog && f.name.empty()) throw SchemaError("/name: catalog schemes need a name");

    if (j.contains("masks")) {
        if (f.kind != Kind::Table) throw SchemaError("/masks: only table schemes list masks");
        const Json& masks = j["masks"];
        if (!masks.is_array() || masks.empty()) throw SchemaError("/masks: expected a nonempty array");
        for (std::size_t i = 0; i < masks.size(); ++i) f.masks.push_back(mask_from_json(masks[i], "/masks/" + std::to_string(i)));
    } else if (f.kind == Kind::Table) {
        throw SchemaError("/: missing field \"masks\"");
    }

    if (j.contains("expr")) {
        if (f.kind != Kind::Parametric) throw SchemaError("/expr: only parametric schemes have an expression");
        const Json& e = j["expr"];
        ParametricSymbol sym;
        if (e.is_string()) {
            sym.factors.push_back(e.get<std::string>());
        } else {
            require_object(e, "/expr", {"scale", "factors"});
            if (e.contains("scale")) sym.scale = string_from(e["scale"], "/expr/scale");
            const Json& factors = require(e, "factors", "/expr");
            if (!factors.is_array()) throw SchemaError("/expr/factors: expected an array of strings");
            for (std::size_t i = 0; i < factors.size(); ++i) sym.factors.push_back(string_from(factors[i], "/expr/factors/" + std::to_string(i)));
        }
        // syntax check now, so errors carry the JSON location
        try {
            Expr::parse(sym.scale);
            for (const auto& text : sym.factors) Expr::parse(text);
        } catch (const ExprError& err) {
            throw SchemaError(std::string("/expr: ") + err.what());
        }
        f.expr = std::move(sym);
    } else if (f.kind == Kind::Parametric) {
        throw SchemaError("/: missing field \"expr\"");
    }

    if (j.contains("lambda")) f.lambda = complex_from_json(j["lambda"], "/lambda");
    if (j.contains("parametrization")) f.param = param_from_json(j["parametrization"], "/parametrization");
    if (j.contains("p")) f.p = double_from(j["p"], "/p");
    if (j.contains("stationaryLimit")) f.stationary_limit = mask_from_json(j["stationaryLimit"], "/stationaryLimit");
    return f;
}

Json SchemeFile::to_json() const {
    Json j;
    j["kind"] = kind_name(kind);
    if (!name.empty()) j["name"] = name;
    if (kind == Kind::Table) {
        Json ms = Json::array();
        for (const auto& m : masks) ms.push_back(mask_json(m));
        j["masks"] = ms;
    }
    if (kind == Kind::Parametric && expr) {
        j["expr"] = {{"scale", expr->scale}, {"factors", expr->factors}};
    }
    if (lambda) j["lambda"] = {{"re", lambda->real()}, {"im", lambda->imag()}};
    if (param) j["parametrization"] = param_json(*param);
    if (p) j["p"] = *p;
    if (stationary_limit) j["stationaryLimit"] = mask_json(*stationary_limit);
    return j;
}

NonStationaryScheme SchemeFile::build() const {
    const Parametrization chosen = param.value_or(Parametrization{});
    auto finish = [this](NonStationaryScheme s) {
        if (lambda) s.with_lambda(*lambda);
        if (stationary_limit) s.with_stationary_limit(*stationary_limit);
        return s;
    };
    switch (kind) {
        case Kind::Catalog: {
            CatalogParams cp;
            cp.lambda = lambda;
            cp.p = p;
            NonStationaryScheme s = build_scheme(name, cp);
            if (param && !(*param == s.param())) {
                throw SchemaError("/parametrization: catalog entry \"" + name + "\" uses nu=" +
                                  std::to_string(s.param().nu()) + ", tau=" + std::to_string(s.param().tau()));
            }
            return finish(std::move(s));
        }
        case Kind::Table:
            return finish(NonStationaryScheme::table(masks, chosen, name.empty() ? "table" : name));
        case Kind::Parametric:
            return finish(parametric_scheme(*expr, lambda.value_or(Complex{}), chosen, name.empty() ? "parametric" : name));
    }
    throw SchemaError("unknown scheme kind");
}

SchemeFile scheme_file_for_catalog(const std::string& name, std::optional<Complex> lambda, std::optional<double> p) {
    SchemeFile f;
    f.kind = SchemeFile::Kind::Catalog;
    f.name = name;
    f.lambda = lambda;
    f.p = p;
    return f;
}

Json condition_report_json(const ConditionReport& r) {
    Json levels = Json::array();
    for (const auto& l : r.per_level) {
        Json e = {{"k", l.k}, {"worstResidual", number_json(l.worst_residual)}};
        if (!l.error.empty()) e["error"] = l.error;
        levels.push_back(e);
    }
    Json quotients = Json::array();
    for (const auto& q : r.quotients) quotients.push_back(laurent_json(q));
    Json j = {{"holds", r.holds},
              {"tolerance", r.tolerance},
              {"perLevel", levels},
              {"quotients", quotients},
              {"detail", r.detail},
              {"warnings", r.warnings}};
    if (!r.shortcut.empty()) {
        Json sc = Json::array();
        for (const auto& s : r.shortcut) {
            sc.push_back({{"k", s.k},
                          {"lambda", complex_json(s.lambda)},
                          {"atMinus", number_json(s.at_minus)},
                          {"atPlus", number_json(s.at_plus)}});
        }
        j["shortcut"] = sc;
    }
    if (r.shortcut_holds) j["shortcutHolds"] = *r.shortcut_holds;
    if (r.shortcut_consistent) j["shortcutConsistent"] = *r.shortcut_consistent;
    return j;
}

Json sum_rule_report_json(const SumRuleReport& r) {
    Json levels = Json::array();
    for (const auto& l : r.per_level) {
        Json d = Json::array();
        for (double v : l.derivatives) d.push_back(number_json(v));
        levels.push_back({{"k", l.k}, {"a1Deviation", number_json(l.a1_deviation)}, {"derivatives", d}, {"sigma", number_json(l.sigma)}});
    }
    Json orders = Json::array();
    for (const auto& o : r.orders) {
        orders.push_back({{"n", o.n}, {"sigmaSeries", series_json(o.sigma_series)}, {"verdict", verdict_json(o.verdict)}});
    }
    return {{"n", r.n},
            {"levels", r.levels},
            {"exactOrder", r.exact_order},
            {"perLevel", levels},
            {"a1Series", series_json(r.a1_series)},
            {"orders", orders}};
}

Json decay_fit_json(const DecayFit& f) {
    Json samples = Json::array();
    for (const auto& [k, v] : f.samples) samples.push_back({{"k", k}, {"value", number_json(v)}});
    return {{"label", f.label},
            {"samples", samples},
            {"fittedRate", number_json(f.fitted_rate)},
            {"targetRate", f.target_rate},
            {"slack", f.slack},
            {"pointsUsed", f.points_used},
            {"pass", f.pass}};
}

Json similarity_report_json(const SimilarityReport& r) {
    Json dev = Json::array();
    for (double d : r.deviation) dev.push_back(number_json(d));
    return {{"deviation", dev},
            {"medianRatio", number_json(r.stats.median_ratio)},
            {"powerExponent", number_json(r.stats.power_exponent)},
            {"similar", verdict_json(r.similar)},
            {"equivalent", verdict_json(r.equivalent)}};
}

Json contractivity_report_json(const ContractivityReport& r) {
    Json masks = Json::array();
    for (const auto& m : r.difference_masks) masks.push_back(mask_json(m));
    Json norms = Json::array();
    for (double v : r.norms) norms.push_back(number_json(v));
    return {{"lambda", complex_json(r.lambda)},
            {"differenceMasks", masks},
            {"norms", norms},
            {"fittedMu", number_json(r.fitted_mu)},
            {"intertwiningResidual", number_json(r.intertwining_residual)},
            {"pass", r.pass}};
}

Json refined_data_json(const RefinedData& d) {
    Json values = Json::array();
    for (const auto& v : d.values) values.push_back(complex_json(v));
    const IndexRange e = d.exact_range();
    return {{"baseLevel", d.base_level},
            {"level", d.level},
            {"parametrization", param_json(d.param)},
            {"firstIndex", d.first_index},
            {"values", values},
            {"compact", d.compact},
            {"exact", {{"lo", e.lo}, {"hi", e.hi}}}};
}

Json limit_samples_json(const LimitFunctionSamples& s) {
    Json values = Json::array();
    for (const auto& v : s.values) values.push_back(complex_json(v));
    Json cauchy = Json::array();
    for (double c : s.cauchy) cauchy.push_back(number_json(c));
    return {{"baseLevel", s.base_level},
            {"resolution", s.resolution},
            {"firstIndex", s.first_index},
            {"values", values},
            {"valueAtOrigin", complex_json(s.at_origin())},
            {"cauchy", cauchy},
            {"cauchyEstimate", number_json(s.cauchy_estimate())}};
}

Json blf_convergence_json(const BlfConvergence& c) {
    Json rows = Json::array();
    for (const auto& r : c.rows) {
        rows.push_back({{"m", r.m}, {"distance", number_json(r.distance)}, {"valueAtOrigin", complex_json(r.value_at_origin)}});
    }
    return {{"resolution", c.resolution}, {"rows", rows}, {"uncheckedHypotheses", c.unchecked_hypotheses}};
}

Json approx_result_json(const ApproxResult& r) {
    Json rows = Json::array();
    for (const auto& row : r.rows) {
        Json e = {{"m", row.m},
                  {"h", row.h},
                  {"error", number_json(row.error)},
                  {"cauchy", number_json(row.cauchy)},
                  {"sampleNorm", number_json(row.sample_norm)}};
        e["localOrder"] = row.local_order ? number_json(*row.local_order) : Json(nullptr);
        if (!row.failure.empty()) e["failure"] = row.failure;
        rows.push_back(e);
    }
    return {{"testFunction", r.config.f.spec()},
            {"gamma", r.config.gamma},
            {"k", r.config.k},
            {"interval", {r.config.lo, r.config.hi}},
            {"rows", rows},
            {"fittedOrder", number_json(r.fitted_order)},
            {"intercept", number_json(r.intercept)},
            {"pointsUsed", r.points_used},
            {"sobolevNorm", number_json(r.sobolev_norm)},
            {"warnings", r.warnings}};
}

Json expected_properties_json(const ExpectedProperties& e) {
    return {{"generates", components_json(e.generates)},
            {"reproduces", components_json(e.reproduces)},
            {"parametrization", param_json(e.param)},
            {"similarTo", e.similar_to},
            {"asymptoticallyEquivalent", e.asymptotically_equivalent},
            {"approxSumRuleOrder", e.approx_sum_rule_order},
            {"notes", e.notes}};
}

std::string format_double(double v) {
    if (v == 0.0) return "0";  // also folds -0
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

bool effectively_real(const std::vector<Complex>& values) {
    const double tol = real_tolerance(values);
    for (const auto& v : values) {
        if (std::abs(v.imag()) > tol) return false;
    }
    return true;
}

void write_refined_csv(std::ostream& out, const RefinedData& d) {
    const bool real = effectively_real(d.values);
    const IndexRange e = d.exact_range();
    out << "index,t,";
    write_value_header(out, real);
    out << ",exact\n";
    const IndexRange w = d.window();
    for (std::int64_t i = w.lo; i <= w.hi; ++i) {
        out << i << ',' << format_double(d.t(i)) << ',';
        write_value(out, d.at(i), real);
        out << ',' << (e.contains(i) ? 1 : 0) << '\n';
    }
}

void write_limit_csv(std::ostream& out, const LimitFunctionSamples& s) {
    const bool real = effectively_real(s.values);
    out << "index,x,";
    write_value_header(out, real);
    out << '\n';
    for (std::size_t l = 0; l < s.values.size(); ++l) {
        const std::int64_t i = s.first_index + static_cast<std::int64_t>(l);
        out << i << ',' << format_double(s.x(i)) << ',';
        write_value(out, s.values[l], real);
        out << '\n';
    }
}

void write_blf_convergence_csv(std::ostream& out, const BlfConvergence& c) {
    std::vector<Complex> origin;
    for (const auto& r : c.rows) origin.push_back(r.value_at_origin);
    const bool real = effectively_real(origin);
    out << "m,distance," << (real ? "value_at_origin" : "value_at_origin_re,value_at_origin_im") << '\n';
    for (const auto& r : c.rows) {
        out << r.m << ',' << format_double(r.distance) << ',';
        write_value(out, r.value_at_origin, real);
        out << '\n';
    }
}

void write_approx_csv(std::ostream& out, const ApproxResult& r) {
    out << "m,h,error,cauchy,local_order\n";
    for (const auto& row : r.rows) {
        out << row.m << ',' << format_double(row.h) << ',';
        if (row.failure.empty()) {
            out << format_double(row.error) << ',' << format_double(row.cauchy);
        } else {
            out << "NaN,NaN";
        }
        out << ',' << (row.local_order ? format_double(*row.local_order) : std::string()) << '\n';
    }
}

void write_residual_csv(std::ostream& out, const ConditionReport& r) {
    out << "k,worst_residual\n";
    for (const auto& l : r.per_level) out << l.k << ',' << format_double(l.worst_residual) << '\n';
}

void write_sum_rule_csv(std::ostream& out, const SumRuleReport& r) {
    out << "k,a1_deviation";
    for (int b = 0; b < r.n; ++b) out << ",d" << b << "_at_minus_one";
    out << ",sigma\n";
    for (const auto& l : r.per_level) {
        out << l.k << ',' << format_double(l.a1_deviation);
        for (double d : l.derivatives) out << ',' << format_double(d);
        out << ',' << format_double(l.sigma) << '\n';
    }
}

RefinedData read_data_csv(std::istream& in, Parametrization param, int base_level) {
    std::map<std::int64_t, Complex> rows;
    std::string line;
    std::size_t number = 0;
    while (std::getline(in, line)) {
        ++number;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        std::vector<std::string> cells;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) cells.push_back(cell);
        auto numeric = [](const std::string& s, double& out) {
            char* end = nullptr;
            out = std::strtod(s.c_str(), &end);
            return end != s.c_str() && *end == '\0';
        };
        double idx = 0, re = 0, im = 0;
        if (cells.empty() || !numeric(cells[0], idx)) {
            if (rows.empty() && number == 1) continue;  // header
            throw std::invalid_argument("data csv line " + std::to_string(number) + ": expected an integer index");
        }
        if (cells.size() < 2 || cells.size() > 3 || !numeric(cells[1], re) || (cells.size() == 3 && !numeric(cells[2], im)) ||
            idx != std::floor(idx)) {
            throw std::invalid_argument("data csv line " + std::to_string(number) + ": expected index,value[,imag]");
        }
        rows[static_cast<std::int64_t>(idx)] = {re, im};
    }
    if (rows.empty()) throw std::invalid_argument("data csv: no rows");
    const std::int64_t lo = rows.begin()->first;
    const std::int64_t hi = rows.rbegin()->first;
    std::vector<Complex> values(static_cast<std::size_t>(hi - lo + 1));
    for (const auto& [i, v] : rows) values[static_cast<std::size_t>(i - lo)] = v;
    return RefinedData::window_data(lo, std::move(values), base_level, param);
}

}  // namespace subdiv
