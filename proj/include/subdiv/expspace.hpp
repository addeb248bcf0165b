#pragma once

#include <Eigen/Dense>
#include <span>
#include <stdexcept>
#include <vector>

#include "subdiv/grid.hpp"
#include "subdiv/laurent.hpp"

namespace subdiv {

struct ExpComponent {
    Complex lambda;
    int mu = 1;
    friend bool operator==(const ExpComponent&, const ExpComponent&) = default;
};

/// Phi_N = span{x^beta e^{lambda_n x}, beta < mu_n}. Basis order is fixed:
/// components in listed order, then ascending beta.
class ExpSpace {
   public:
    struct BasisElement {
        Complex lambda;
        int beta;
    };

    explicit ExpSpace(std::vector<ExpComponent> components);

    /// span{1, x, ..., x^{n-1}}
    static ExpSpace polynomials(int n) { return ExpSpace({{Complex{}, n}}); }

    const std::vector<ExpComponent>& components() const noexcept { return components_; }
    int dimension() const noexcept { return static_cast<int>(basis_.size()); }
    const BasisElement& basis(int index) const;

    /// The space spanned by the first n basis elements.
    ExpSpace leading(int n) const;

    friend bool operator==(const ExpSpace& a, const ExpSpace& b) { return a.components_ == b.components_; }

   private:
    std::vector<ExpComponent> components_;
    std::vector<BasisElement> basis_;
};

/// d^deriv/dx^deriv of x^beta e^{lambda x} for basis element `index`.
Complex eval_basis(const ExpSpace& space, int index, double x, int deriv = 0);

/// Entries (1/beta!) d^beta phi_alpha(x), alpha = row, beta = column.
struct WronskianMatrix {
    Eigen::MatrixXcd entries;
    double x = 0.0;
    Complex determinant;
    double condition = 0.0;  // 1-norm condition estimate
    /// |det| relative to the product of row norms (Hadamard ratio, in [0,1]).
    double normalized_determinant = 0.0;
};

WronskianMatrix wronskian(const ExpSpace& space, double x);

class SingularWronskianError : public std::runtime_error {
   public:
    SingularWronskianError(double abs_det, double x);
    double abs_determinant() const noexcept { return abs_det_; }
    double x() const noexcept { return x_; }

   private:
    double abs_det_;
    double x_;
};

/// Singularity threshold on WronskianMatrix::normalized_determinant.
inline constexpr double kSingularWronskian = 1e-12;

/// Coefficients m such that P = sum m_n phi_n satisfies d^l P(x) = rhs[l],
/// l = 0..N-1. Throws SingularWronskianError when the Wronskian at x is
/// numerically singular.
std::vector<Complex> hermite_solve(const ExpSpace& space, double x, std::span<const Complex> rhs);

/// |det W(x)| at the probe points x in {0, +-2^{-k-1}, k = 0..max_k}.
struct WronskianProbe {
    bool invertible = true;
    double min_abs_determinant = 0.0;
    double worst_x = 0.0;
};
WronskianProbe probe_wronskian(const ExpSpace& space, int max_k);

/// Value of sum coeffs_n d^deriv phi_n at x.
Complex eval_combination(const ExpSpace& space, std::span<const Complex> coeffs, double x, int deriv = 0);

/// Samples of sum coeffs_n phi_n on the grid; the result is windowed data
/// whose whole window is interior.
RefinedData sample_function(const ExpSpace& space, std::span<const Complex> coeffs, const GridSpec& grid);

}  // namespace subdiv
