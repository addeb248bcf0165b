#include "subdiv/expr.hpp"

#include <cctype>
#include <cmath>
#include <numbers>

namespace subdiv {

ExprError::ExprError(const std::string& message, std::size_t position)
    : std::invalid_argument(message + " at offset " + std::to_string(position)), position_(position) {}

struct Expr::Node {
    enum class Op { Number, Name, Neg, Add, Sub, Mul, Div, Pow, Call };
    Op op = Op::Number;
    double number = 0.0;
    std::string name;
    std::size_t position = 0;
    std::vector<std::shared_ptr<const Node>> args;
};

namespace {

using NodePtr = std::shared_ptr<const Expr::Node>;
using Op = Expr::Node::Op;

NodePtr make(Op op, std::size_t pos, std::vector<NodePtr> args = {}) {
    auto n = std::make_shared<Expr::Node>();
    n->op = op;
    n->position = pos;
    n->args = std::move(args);
    return n;
}

class Parser {
   public:
    explicit Parser(const std::string& text) : s_(text) {}

    NodePtr parse() {
        NodePtr e = expr();
        skip();
        if (pos_ != s_.size()) throw ExprError("unexpected '" + std::string(1, s_[pos_]) + "'", pos_);
        return e;
    }

   private:
    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    bool accept(char c) {
        skip();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    NodePtr expr() {
        NodePtr lhs = term();
        for (;;) {
            const std::size_t at = pos_;
            if (accept('+')) {
                lhs = make(Op::Add, at, {lhs, term()});
            } else if (accept('-')) {
                lhs = make(Op::Sub, at, {lhs, term()});
            } else {
                return lhs;
            }
        }
    }

    NodePtr term() {
        NodePtr lhs = unary();
        for (;;) {
            const std::size_t at = pos_;
            if (accept('*')) {
                lhs = make(Op::Mul, at, {lhs, unary()});
            } else if (accept('/')) {
                lhs = make(Op::Div, at, {lhs, unary()});
            } else {
                return lhs;
            }
        }
    }

    NodePtr unary() {
        const std::size_t at = pos_;
        if (accept('-')) return make(Op::Neg, at, {unary()});
        if (accept('+')) return unary();
        return power();
    }

    NodePtr power() {
        NodePtr base = primary();
        const std::size_t at = pos_;
        if (accept('^')) return make(Op::Pow, at, {base, unary()});
        return base;
    }

    NodePtr primary() {
        skip();
        const std::size_t at = pos_;
        if (pos_ >= s_.size()) throw ExprError("unexpected end of expression", pos_);
        const char c = s_[pos_];
        if (accept('(')) {
            NodePtr e = expr();
            if (!accept(')')) throw ExprError("expected ')'", pos_);
            return e;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            std::size_t used = 0;
            double v = 0.0;
            try {
                v = std::stod(s_.substr(pos_), &used);
            } catch (const std::exception&) {
                throw ExprError("malformed number", at);
            }
            pos_ += used;
            auto n = std::make_shared<Expr::Node>();
            n->op = Op::Number;
            n->number = v;
            n->position = at;
            return n;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
            auto n = std::make_shared<Expr::Node>();
            n->name = s_.substr(at, pos_ - at);
            n->position = at;
            if (accept('(')) {
                n->op = Op::Call;
                do {
                    n->args.push_back(expr());
                } while (accept(','));
                if (!accept(')')) throw ExprError("expected ')' after arguments of " + n->name, pos_);
            } else {
                n->op = Op::Name;
            }
            return n;
        }
        throw ExprError("unexpected '" + std::string(1, c) + "'", at);
    }

    const std::string& s_;
    std::size_t pos_ = 0;
};

bool is_constant(const LaurentPoly& p) { return p.is_zero() || (p.low_degree() == 0 && p.high_degree() == 0); }
Complex constant_value(const LaurentPoly& p) { return p.coeff(0); }
bool is_monomial(const LaurentPoly& p) { return p.size() == 1; }

LaurentPoly evaluate_node(const Expr::Node& n, const Expr::Bindings& b) {
    auto require_constant = [&](const LaurentPoly& p, const char* what) {
        if (!is_constant(p)) throw ExprError(std::string(what) + " must not depend on z", n.position);
        return constant_value(p);
    };
    switch (n.op) {
        case Op::Number: return LaurentPoly::constant(n.number);
        case Op::Name: {
            if (n.name == "z") return LaurentPoly::monomial(1.0, 1);
            const auto it = b.find(n.name);
            if (it == b.end()) throw ExprError("unknown name '" + n.name + "'", n.position);
            return LaurentPoly::constant(it->second);
        }
        case Op::Neg: return LaurentPoly::constant(-1.0) * evaluate_node(*n.args[0], b);
        case Op::Add: return evaluate_node(*n.args[0], b) + evaluate_node(*n.args[1], b);
        case Op::Sub: return evaluate_node(*n.args[0], b) - evaluate_node(*n.args[1], b);
        case Op::Mul: return evaluate_node(*n.args[0], b) * evaluate_node(*n.args[1], b);
        case Op::Div: {
            const LaurentPoly num = evaluate_node(*n.args[0], b);
            const LaurentPoly den = evaluate_node(*n.args[1], b);
            if (!is_monomial(den)) throw ExprError("division by a non-monomial", n.position);
            return num * LaurentPoly::monomial(1.0 / den.coeffs()[0], -den.low_degree());
        }
        case Op::Pow: {
            const LaurentPoly base = evaluate_node(*n.args[0], b);
            const Complex e = require_constant(evaluate_node(*n.args[1], b), "exponent");
            const double re = e.real();
            const bool integral = e.imag() == 0.0 && re == std::round(re) && std::abs(re) <= 64.0;
            if (!integral) return LaurentPoly::constant(std::pow(require_constant(base, "non-integer power base"), e));
            const int q = static_cast<int>(re);
            LaurentPoly unit = base;
            if (q < 0) {
                if (!is_monomial(base)) throw ExprError("negative power of a non-monomial", n.position);
                unit = LaurentPoly::monomial(1.0 / base.coeffs()[0], -base.low_degree());
            }
            LaurentPoly out = LaurentPoly::constant(1.0);
            for (int j = 0; j < std::abs(q); ++j) out = out * unit;
            return out;
        }
        case Op::Call: {
            std::vector<Complex> v;
            for (const auto& a : n.args) v.push_back(require_constant(evaluate_node(*a, b), "function argument"));
            auto arity = [&](std::size_t want) {
                if (v.size() != want) throw ExprError(n.name + " expects " + std::to_string(want) + " argument(s)", n.position);
            };
            if (n.name == "exp") {
                arity(1);
                return LaurentPoly::constant(std::exp(v[0]));
            }
            if (n.name == "sqrt") {
                arity(1);
                return LaurentPoly::constant(std::sqrt(v[0]));
            }
            if (n.name == "max" || n.name == "min") {
                if (v.empty()) throw ExprError(n.name + " expects arguments", n.position);
                double best = 0.0;
                for (std::size_t j = 0; j < v.size(); ++j) {
                    if (v[j].imag() != 0.0) throw ExprError(n.name + " needs real arguments", n.position);
                    const double x = v[j].real();
                    best = j == 0 ? x : (n.name == "max" ? std::max(best, x) : std::min(best, x));
                }
                return LaurentPoly::constant(best);
            }
            throw ExprError("unknown function '" + n.name + "'", n.position);
        }
    }
    return {};
}

}  // namespace

Expr Expr::parse(const std::string& text) {
    Expr e;
    e.text_ = text;
    e.root_ = Parser(text).parse();
    return e;
}

LaurentPoly Expr::evaluate(const Bindings& bindings) const { return evaluate_node(*root_, bindings); }

Expr::Bindings level_bindings(Complex lambda, int k) {
    return {{"r", std::exp(lambda * std::ldexp(1.0, -k - 1))},
            {"s", std::exp(lambda * std::ldexp(1.0, -k - 2))},
            {"k", static_cast<double>(k)},
            {"lambda", lambda},
            {"i", Complex(0.0, 1.0)},
            {"pi", std::numbers::pi}};
}

LaurentPoly ParametricSymbol::evaluate(Complex lambda, int k) const {
    const Expr::Bindings b = level_bindings(lambda, k);
    LaurentPoly out = Expr::parse(scale).evaluate(b);
    for (const auto& f : factors) out = out * Expr::parse(f).evaluate(b);
    return out;
}

NonStationaryScheme parametric_scheme(const ParametricSymbol& symbol, Complex lambda, Parametrization param,
                                      std::string label, int probe_levels) {
    // Parse once up front so syntax errors surface here, not at mask_at().
    const Expr scale = Expr::parse(symbol.scale);
    std::vector<Expr> factors;
    for (const auto& f : symbol.factors) factors.push_back(Expr::parse(f));
    auto rule = [scale, factors, lambda](int k) {
        const Expr::Bindings b = level_bindings(lambda, k);
        LaurentPoly out = scale.evaluate(b);
        for (const auto& f : factors) out = out * f.evaluate(b);
        return Mask(std::move(out));
    };
    int bound = 0;
    for (int k = 0; k <= probe_levels; ++k) bound = std::max(bound, rule(k).support_bound());
    NonStationaryScheme scheme(std::move(label), rule, param, bound);
    scheme.with_lambda(lambda);
    return scheme;
}

}  // namespace subdiv
