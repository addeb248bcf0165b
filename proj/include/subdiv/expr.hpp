#pragma once

#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "subdiv/laurent.hpp"
#include "subdiv/scheme.hpp"

namespace subdiv {

class ExprError : public std::invalid_argument {
   public:
    ExprError(const std::string& message, std::size_t position);
    std::size_t position() const noexcept { return position_; }

   private:
    std::size_t position_;
};

/// Parsed expression over the closed grammar
///     expr    := term (('+' | '-') term)*
///     term    := unary (('*' | '/') unary)*
///     unary   := ('-' | '+') unary | power
///     power   := primary ('^' unary)?
///     primary := number | name | name '(' expr (',' expr)* ')' | '(' expr ')'
/// Names: z, r, s, k, lambda, i, pi and any caller-supplied constant.
/// Functions: exp, sqrt, max, min (arguments must be free of z).
/// Values are Laurent polynomials in z; division and negative powers are
/// allowed only for monomials, non-integer powers only for constants.
class Expr {
   public:
    static Expr parse(const std::string& text);

    using Bindings = std::map<std::string, Complex>;
    LaurentPoly evaluate(const Bindings& bindings) const;
    const std::string& text() const noexcept { return text_; }

    struct Node;

   private:
    std::string text_;
    std::shared_ptr<const Node> root_;
};

/// Standard bindings at level k: r = e^{lambda 2^{-k-1}}, s = e^{lambda 2^{-k-2}}.
Expr::Bindings level_bindings(Complex lambda, int k);

/// Symbol a^{[k]} = scale * prod factors (each an Expr in z, r, s, k).
struct ParametricSymbol {
    std::string scale = "1";
    std::vector<std::string> factors;

    LaurentPoly evaluate(Complex lambda, int k) const;
};

/// Scheme whose level-k mask is the parametric symbol at k. The support bound
/// is the widest mask over levels 0..probe_levels.
NonStationaryScheme parametric_scheme(const ParametricSymbol& symbol, Complex lambda, Parametrization param,
                                      std::string label = "parametric", int probe_levels = 32);

}  // namespace subdiv
