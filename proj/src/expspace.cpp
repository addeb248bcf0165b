#include "subdiv/expspace.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace subdiv {

namespace {

Complex int_power(Complex base, int exponent) {
    Complex out{1.0};
    for (int i = 0; i < exponent; ++i) out *= base;
    return out;
}

double factorial(int n) {
    double f = 1.0;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

double binomial(int n, int k) {
    double b = 1.0;
    for (int i = 1; i <= k; ++i) b = b * (n - k + i) / i;
    return b;
}

// Matrix A(l, n) = d^l phi_n(x) of the Hermite system sum_n A(l,n) m_n = rhs_l.
Eigen::MatrixXcd hermite_matrix(const ExpSpace& space, double x) {
    const int n = space.dimension();
    Eigen::MatrixXcd a(n, n);
    for (int l = 0; l < n; ++l) {
        for (int j = 0; j < n; ++j) a(l, j) = eval_basis(space, j, x, l);
    }
    return a;
}

}  // namespace

ExpSpace::ExpSpace(std::vector<ExpComponent> components) : components_(std::move(components)) {
    if (components_.empty()) throw DomainError("ExpSpace needs at least one component");
    for (std::size_t i = 0; i < components_.size(); ++i) {
        if (components_[i].mu < 1) throw DomainError("ExpSpace multiplicities must be positive");
        for (std::size_t j = 0; j < i; ++j) {
            if (components_[i].lambda == components_[j].lambda) {
                throw DomainError("ExpSpace frequencies must be pairwise distinct");
            }
        }
        for (int beta = 0; beta < components_[i].mu; ++beta) {
            basis_.push_back({components_[i].lambda, beta});
        }
    }
}

const ExpSpace::BasisElement& ExpSpace::basis(int index) const {
    if (index < 0 || index >= dimension()) {
        throw DomainError("basis index " + std::to_string(index) + " out of range");
    }
    return basis_[static_cast<std::size_t>(index)];
}

ExpSpace ExpSpace::leading(int n) const {
    if (n < 1 || n > dimension()) throw DomainError("leading subspace dimension out of range");
    std::vector<ExpComponent> out;
    int left = n;
    for (const auto& c : components_) {
        if (left == 0) break;
        const int take = std::min(left, c.mu);
        out.push_back({c.lambda, take});
        left -= take;
    }
    return ExpSpace(std::move(out));
}

Complex eval_basis(const ExpSpace& space, int index, double x, int deriv) {
    if (deriv < 0) throw DomainError("negative derivative order");
    const auto& b = space.basis(index);
    const Complex e = std::exp(b.lambda * x);
    Complex sum{};
    // Leibniz: d^r (x^beta e^{lambda x}) = sum_j C(r,j) beta!/(beta-j)! x^{beta-j} lambda^{r-j} e^{lambda x}
    for (int j = 0; j <= std::min(deriv, b.beta); ++j) {
        const double falling = factorial(b.beta) / factorial(b.beta - j);
        sum += binomial(deriv, j) * falling * std::pow(x, b.beta - j) * int_power(b.lambda, deriv - j);
    }
    return sum * e;
}

WronskianMatrix wronskian(const ExpSpace& space, double x) {
    const int n = space.dimension();
    WronskianMatrix w;
    w.x = x;
    w.entries.resize(n, n);
    for (int alpha = 0; alpha < n; ++alpha) {
        for (int beta = 0; beta < n; ++beta) {
            w.entries(alpha, beta) = eval_basis(space, alpha, x, beta) / factorial(beta);
        }
    }
    Eigen::PartialPivLU<Eigen::MatrixXcd> lu(w.entries);
    w.determinant = lu.determinant();
    double row_product = 1.0;
    for (int r = 0; r < n; ++r) row_product *= w.entries.row(r).norm();
    w.normalized_determinant = row_product > 0.0 ? std::abs(w.determinant) / row_product : 0.0;
    const double norm1 = w.entries.cwiseAbs().colwise().sum().maxCoeff();
    if (w.normalized_determinant > 0.0) {
        const Eigen::MatrixXcd inv = lu.inverse();
        w.condition = norm1 * inv.cwiseAbs().colwise().sum().maxCoeff();
    } else {
        w.condition = std::numeric_limits<double>::infinity();
    }
    return w;
}

SingularWronskianError::SingularWronskianError(double abs_det, double x)
    : std::runtime_error("singular Wronskian at x = " + std::to_string(x) +
                         " (|det| = " + std::to_string(abs_det) + ")"),
      abs_det_(abs_det),
      x_(x) {}

std::vector<Complex> hermite_solve(const ExpSpace& space, double x, std::span<const Complex> rhs) {
    const int n = space.dimension();
    if (static_cast<int>(rhs.size()) != n) throw DomainError("hermite_solve: rhs size must equal dim");
    const WronskianMatrix w = wronskian(space, x);
    if (!(w.normalized_determinant > kSingularWronskian)) {
        throw SingularWronskianError(std::abs(w.determinant), x);
    }
    const Eigen::MatrixXcd a = hermite_matrix(space, x);
    Eigen::VectorXcd b(n);
    for (int i = 0; i < n; ++i) b(i) = rhs[static_cast<std::size_t>(i)];
    Eigen::PartialPivLU<Eigen::MatrixXcd> lu(a);
    Eigen::VectorXcd m = lu.solve(b);
    // one step of iterative refinement
    const Eigen::VectorXcd r = b - a * m;
    m += lu.solve(r);
    return {m.data(), m.data() + n};
}

WronskianProbe probe_wronskian(const ExpSpace& space, int max_k) {
    WronskianProbe probe;
    probe.min_abs_determinant = std::numeric_limits<double>::infinity();
    auto visit = [&](double x) {
        const WronskianMatrix w = wronskian(space, x);
        const double d = std::abs(w.determinant);
        if (d < probe.min_abs_determinant) {
            probe.min_abs_determinant = d;
            probe.worst_x = x;
        }
        if (!(w.normalized_determinant > kSingularWronskian)) probe.invertible = false;
    };
    visit(0.0);
    for (int k = 0; k <= max_k; ++k) {
        visit(std::ldexp(1.0, -k - 1));
        visit(-std::ldexp(1.0, -k - 1));
    }
    return probe;
}

Complex eval_combination(const ExpSpace& space, std::span<const Complex> coeffs, double x, int deriv) {
    if (static_cast<int>(coeffs.size()) != space.dimension()) {
        throw DomainError("coefficient vector size must equal the space dimension");
    }
    Complex sum{};
    for (int n = 0; n < space.dimension(); ++n) {
        sum += coeffs[static_cast<std::size_t>(n)] * eval_basis(space, n, x, deriv);
    }
    return sum;
}

RefinedData sample_function(const ExpSpace& space, std::span<const Complex> coeffs, const GridSpec& grid) {
    std::vector<Complex> values;
    values.reserve(static_cast<std::size_t>(grid.indices.size()));
    for (std::int64_t i = grid.indices.lo; i <= grid.indices.hi; ++i) {
        values.push_back(eval_combination(space, coeffs, grid.param.point(i, grid.level)));
    }
    return RefinedData::window_data(grid.indices.lo, std::move(values), grid.level, grid.param);
}

}  // namespace subdiv
