#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace subdiv {

using Complex = std::complex<double>;

/// Raised when an argument lies outside the domain of an operation
/// (evaluation at z = 0, division at a zero root, ...).
class DomainError : public std::domain_error {
   public:
    using std::domain_error::domain_error;
};

/// Laurent polynomial with complex coefficients,
///     p(z) = sum_{i} coeffs[i] z^{low_degree + i}.
///
/// Stored in canonical form: leading and trailing coefficients whose
/// magnitude is at most kTrimTolerance * max|coeff| are dropped. The zero
/// polynomial has no coefficients.
class LaurentPoly {
   public:
    static constexpr double kTrimTolerance = 1e-14;

    LaurentPoly() = default;
    LaurentPoly(std::vector<Complex> coeffs, int low_degree);
    LaurentPoly(std::initializer_list<Complex> coeffs, int low_degree)
        : LaurentPoly(std::vector<Complex>(coeffs), low_degree) {}

    static LaurentPoly constant(Complex c) { return LaurentPoly({c}, 0); }
    static LaurentPoly monomial(Complex c, int degree) { return LaurentPoly({c}, degree); }
    static LaurentPoly from_real(std::span<const double> taps, int low_degree);

    bool is_zero() const noexcept { return coeffs_.empty(); }
    int low_degree() const noexcept { return low_; }
    /// Degree of the last stored coefficient; low_degree() - 1 for zero.
    int high_degree() const noexcept { return low_ + static_cast<int>(coeffs_.size()) - 1; }
    std::size_t size() const noexcept { return coeffs_.size(); }
    const std::vector<Complex>& coeffs() const noexcept { return coeffs_; }

    /// Coefficient of z^degree (zero outside the stored range).
    Complex coeff(int degree) const noexcept;

    /// max |coeff|
    double norm_inf() const noexcept;
    /// sum |coeff|
    double norm_1() const noexcept;
    bool is_real_within(double tol) const noexcept;

    LaurentPoly& operator+=(const LaurentPoly& other);
    LaurentPoly& operator-=(const LaurentPoly& other);
    LaurentPoly& operator*=(Complex factor);

    friend bool operator==(const LaurentPoly&, const LaurentPoly&) = default;

   private:
    void trim();

    std::vector<Complex> coeffs_;
    int low_ = 0;
};

LaurentPoly operator+(LaurentPoly lhs, const LaurentPoly& rhs);
LaurentPoly operator-(LaurentPoly lhs, const LaurentPoly& rhs);
LaurentPoly operator*(LaurentPoly lhs, Complex factor);
LaurentPoly operator*(Complex factor, LaurentPoly rhs);
LaurentPoly operator*(const LaurentPoly& lhs, const LaurentPoly& rhs);

/// Sum c_i z^{low+i} in ascending degree order. Throws DomainError at z = 0.
Complex eval(const LaurentPoly& p, Complex z);

/// Exact term-by-term d^order/dz^order.
LaurentPoly derivative(const LaurentPoly& p, int order);

inline LaurentPoly mul(const LaurentPoly& p, const LaurentPoly& q) { return p * q; }

/// z -> z^factor; upsample(p) is substitute_power(p, 2).
LaurentPoly substitute_power(const LaurentPoly& p, int factor);
inline LaurentPoly upsample(const LaurentPoly& p) { return substitute_power(p, 2); }

/// Multiplication by z^degree.
LaurentPoly shift(const LaurentPoly& p, int degree);

struct LinearDivision {
    LaurentPoly quotient;
    double remainder_magnitude = 0.0;
    bool exact = false;  // remainder_magnitude <= tol * ||p||_inf
};

/// Synthetic division of p by the linear factor (1 + c z) that vanishes at
/// z = root (c = -1/root). The quotient keeps p's lowest degree, and
/// remainder_magnitude = |p(root)|.
LinearDivision divide_by_linear(const LaurentPoly& p, Complex root, double tol = 1e-9);

struct PolyDivision {
    LaurentPoly quotient;
    LaurentPoly remainder;
};

/// Long division p = divisor * quotient + remainder, working on the
/// polynomial parts (divisor's lowest-degree term is factored off). The
/// remainder's span is strictly shorter than the divisor's.
PolyDivision divide(const LaurentPoly& p, const LaurentPoly& divisor);

/// 1 + c z
LaurentPoly linear_factor(Complex c);

std::string to_string(const LaurentPoly& p);

}  // namespace subdiv
