#pragma once

#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "subdiv/analysis.hpp"
#include "subdiv/approx.hpp"
#include "subdiv/catalog.hpp"
#include "subdiv/checks.hpp"
#include "subdiv/expr.hpp"
#include "subdiv/limits.hpp"

namespace subdiv {

using Json = nlohmann::ordered_json;

/// Syntax error in a JSON document, located by 1-based line and column.
class MalformedJson : public std::runtime_error {
   public:
    MalformedJson(const std::string& source, std::size_t line, std::size_t column, const std::string& message);
    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

   private:
    std::size_t line_;
    std::size_t column_;
};

/// Well-formed JSON with the wrong shape; the message names the JSON pointer.
class SchemaError : public std::invalid_argument {
   public:
    using std::invalid_argument::invalid_argument;
};

Json parse_json_text(const std::string& text, const std::string& source = "<input>");
Json read_json_file(const std::string& path);

/// Real numbers serialize as JSON numbers, others as {"re", "im"}; both forms parse.
Json complex_json(Complex c);
Complex complex_from_json(const Json& j, const std::string& where = "");

/// Non-finite values serialize as "Infinity", "-Infinity" or "NaN".
Json number_json(double v);

Json mask_json(const Mask& mask);  // {"taps": [...], "lowDegree": n}
Mask mask_from_json(const Json& j, const std::string& where = "");
Json laurent_json(const LaurentPoly& p);

Json param_json(const Parametrization& param);  // {"nu": 0|1, "tau": n}
Parametrization param_from_json(const Json& j, const std::string& where = "");

Json space_json(const ExpSpace& space);  // {"components": [{"lambda", "mu"}]}
ExpSpace space_from_json(const Json& j, const std::string& where = "");

/// Scheme definition document.
struct SchemeFile {
    enum class Kind { Catalog, Table, Parametric };
    Kind kind = Kind::Catalog;
    std::string name;                    // catalog entry, or a label for the other kinds
    std::vector<Mask> masks;             // table: one mask per level, the last repeats
    std::optional<ParametricSymbol> expr;
    std::optional<Complex> lambda;
    std::optional<Parametrization> param;
    std::optional<double> p;             // hp-family shift
    std::optional<Mask> stationary_limit;

    static SchemeFile from_json(const Json& j);
    Json to_json() const;
    NonStationaryScheme build() const;
};

SchemeFile scheme_file_for_catalog(const std::string& name, std::optional<Complex> lambda = {},
                                   std::optional<double> p = {});

Json condition_report_json(const ConditionReport& r);
Json sum_rule_report_json(const SumRuleReport& r);
Json decay_fit_json(const DecayFit& f);
Json similarity_report_json(const SimilarityReport& r);
Json contractivity_report_json(const ContractivityReport& r);
Json refined_data_json(const RefinedData& d);
Json limit_samples_json(const LimitFunctionSamples& s);
Json blf_convergence_json(const BlfConvergence& c);
Json approx_result_json(const ApproxResult& r);
Json expected_properties_json(const ExpectedProperties& e);

/// CSV writers: 17 significant digits, '.' decimal, LF endings. Complex columns
/// collapse to one "value" column when every imaginary part is negligible
/// (at most 1e-13 times the largest magnitude); otherwise "value_re,value_im".
std::string format_double(double v);
bool effectively_real(const std::vector<Complex>& values);
void write_refined_csv(std::ostream& out, const RefinedData& d);
void write_limit_csv(std::ostream& out, const LimitFunctionSamples& s);
void write_blf_convergence_csv(std::ostream& out, const BlfConvergence& c);
void write_approx_csv(std::ostream& out, const ApproxResult& r);
void write_residual_csv(std::ostream& out, const ConditionReport& r);
void write_sum_rule_csv(std::ostream& out, const SumRuleReport& r);

/// Reads "index,value" or "index,value_re,value_im" rows (header optional) as
/// windowed data at base level 0; missing indices inside the window are zero.
RefinedData read_data_csv(std::istream& in, Parametrization param, int base_level = 0);

}  // namespace subdiv
