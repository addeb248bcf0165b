#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "subdiv/expspace.hpp"
#include "subdiv/scheme.hpp"

namespace subdiv {

struct CatalogParams {
    std::optional<Complex> lambda;
    std::optional<double> p;  // hp-family shift, 0 or -1/2
};

/// Machine-readable claims about a catalog scheme, checked by the self-test.
struct ExpectedProperties {
    std::vector<ExpComponent> generates;
    std::vector<ExpComponent> reproduces;
    Parametrization param;
    std::string similar_to;  // name of the stationary limit mask
    bool asymptotically_equivalent = true;
    int approx_sum_rule_order = 0;
    std::string notes;
};

struct CatalogEntry {
    std::string name;
    std::string description;
    std::vector<std::string> parameters;
};

const std::vector<CatalogEntry>& catalog_entries();

/// Throws std::invalid_argument for unknown names or missing parameters.
NonStationaryScheme build_scheme(const std::string& name, const CatalogParams& params = {});
ExpectedProperties expected_properties(const std::string& name, const CatalogParams& params = {});

/// Builds an ExpSpace, merging components with equal frequency (so that
/// span{1, x, e^{+-lambda x}} at lambda = 0 becomes the cubic polynomials).
ExpSpace merged_space(const std::vector<ExpComponent>& components);

/// Coefficients (b1, b2, b3) of the dual Phi_3 scheme at node r, evaluated
/// with the rational expressions as printed. Loses accuracy as r -> 1.
std::array<Complex, 3> dual_phi3_printed_coefficients(Complex r);
/// Same coefficients in cancelled form, in s = r^{1/2}; exact at s = 1.
std::array<Complex, 3> dual_phi3_coefficients(Complex s);
/// (b1, b2, b3) of the primal Phi_4 scheme at node r, as printed.
std::array<Complex, 3> primal_phi4_coefficients(Complex r);

/// Stationary B-spline masks: hat (degree 1), quadratic (2), cubic (3).
Mask bspline_mask(int degree);

}  // namespace subdiv
