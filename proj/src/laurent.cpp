#include "subdiv/laurent.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace subdiv {

LaurentPoly::LaurentPoly(std::vector<Complex> coeffs, int low_degree)
    : coeffs_(std::move(coeffs)), low_(low_degree) {
    trim();
}

LaurentPoly LaurentPoly::from_real(std::span<const double> taps, int low_degree) {
    std::vector<Complex> c(taps.begin(), taps.end());
    return LaurentPoly(std::move(c), low_degree);
}

void LaurentPoly::trim() {
    double scale = 0.0;
    for (const auto& c : coeffs_) scale = std::max(scale, std::abs(c));
    if (scale == 0.0 || !std::isfinite(scale)) {
        if (scale == 0.0) {
            coeffs_.clear();
            low_ = 0;
        }
        return;
    }
    const double cut = kTrimTolerance * scale;
    std::size_t first = 0;
    while (first < coeffs_.size() && std::abs(coeffs_[first]) <= cut) ++first;
    std::size_t last = coeffs_.size();
    while (last > first && std::abs(coeffs_[last - 1]) <= cut) --last;
    if (first > 0 || last < coeffs_.size()) {
        coeffs_ = std::vector<Complex>(coeffs_.begin() + static_cast<std::ptrdiff_t>(first),
                                       coeffs_.begin() + static_cast<std::ptrdiff_t>(last));
        low_ += static_cast<int>(first);
    }
}

Complex LaurentPoly::coeff(int degree) const noexcept {
    if (degree < low_ || degree > high_degree()) return {};
    return coeffs_[static_cast<std::size_t>(degree - low_)];
}

double LaurentPoly::norm_inf() const noexcept {
    double m = 0.0;
    for (const auto& c : coeffs_) m = std::max(m, std::abs(c));
    return m;
}

double LaurentPoly::norm_1() const noexcept {
    double s = 0.0;
    for (const auto& c : coeffs_) s += std::abs(c);
    return s;
}

bool LaurentPoly::is_real_within(double tol) const noexcept {
    return std::all_of(coeffs_.begin(), coeffs_.end(),
                       [tol](const Complex& c) { return std::abs(c.imag()) <= tol; });
}

namespace {

LaurentPoly combine(const LaurentPoly& a, const LaurentPoly& b, double sign) {
    if (a.is_zero() && b.is_zero()) return {};
    int lo, hi;
    if (a.is_zero()) {
        lo = b.low_degree();
        hi = b.high_degree();
    } else if (b.is_zero()) {
        lo = a.low_degree();
        hi = a.high_degree();
    } else {
        lo = std::min(a.low_degree(), b.low_degree());
        hi = std::max(a.high_degree(), b.high_degree());
    }
    std::vector<Complex> out(static_cast<std::size_t>(hi - lo + 1));
    for (int d = lo; d <= hi; ++d) {
        out[static_cast<std::size_t>(d - lo)] = a.coeff(d) + sign * b.coeff(d);
    }
    return LaurentPoly(std::move(out), lo);
}

}  // namespace

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& other) {
    *this = combine(*this, other, 1.0);
    return *this;
}

LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& other) {
    *this = combine(*this, other, -1.0);
    return *this;
}

LaurentPoly& LaurentPoly::operator*=(Complex factor) {
    for (auto& c : coeffs_) c *= factor;
    trim();
    return *this;
}

LaurentPoly operator+(LaurentPoly lhs, const LaurentPoly& rhs) { return lhs += rhs; }
LaurentPoly operator-(LaurentPoly lhs, const LaurentPoly& rhs) { return lhs -= rhs; }
LaurentPoly operator*(LaurentPoly lhs, Complex factor) { return lhs *= factor; }
LaurentPoly operator*(Complex factor, LaurentPoly rhs) { return rhs *= factor; }

LaurentPoly operator*(const LaurentPoly& lhs, const LaurentPoly& rhs) {
    if (lhs.is_zero() || rhs.is_zero()) return {};
    const auto& a = lhs.coeffs();
    const auto& b = rhs.coeffs();
    std::vector<Complex> out(a.size() + b.size() - 1);
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
    }
    return LaurentPoly(std::move(out), lhs.low_degree() + rhs.low_degree());
}

Complex eval(const LaurentPoly& p, Complex z) {
    if (z == Complex{}) throw DomainError("Laurent polynomial evaluated at z = 0");
    if (p.is_zero()) return {};
    Complex power = std::pow(z, p.low_degree());
    Complex sum{};
    for (const auto& c : p.coeffs()) {
        sum += c * power;
        power *= z;
    }
    return sum;
}

LaurentPoly derivative(const LaurentPoly& p, int order) {
    if (order < 0) throw DomainError("negative derivative order");
    if (order == 0 || p.is_zero()) return p;
    std::vector<Complex> out(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) {
        const int d = p.low_degree() + static_cast<int>(i);
        double falling = 1.0;
        for (int j = 0; j < order; ++j) falling *= static_cast<double>(d - j);
        out[i] = p.coeffs()[i] * falling;
    }
    return LaurentPoly(std::move(out), p.low_degree() - order);
}

LaurentPoly substitute_power(const LaurentPoly& p, int factor) {
    if (factor < 1) throw DomainError("substitute_power needs a positive factor");
    if (p.is_zero() || factor == 1) return p;
    const std::size_t n = p.size();
    std::vector<Complex> out((n - 1) * static_cast<std::size_t>(factor) + 1);
    for (std::size_t i = 0; i < n; ++i) out[i * static_cast<std::size_t>(factor)] = p.coeffs()[i];
    return LaurentPoly(std::move(out), p.low_degree() * factor);
}

LaurentPoly shift(const LaurentPoly& p, int degree) {
    if (p.is_zero()) return p;
    return LaurentPoly(p.coeffs(), p.low_degree() + degree);
}

LinearDivision divide_by_linear(const LaurentPoly& p, Complex root, double tol) {
    if (root == Complex{}) throw DomainError("divide_by_linear: root must be nonzero");
    if (p.is_zero()) throw DomainError("divide_by_linear: zero polynomial");
    const auto& c = p.coeffs();
    const std::size_t n = c.size();
    LinearDivision result;
    result.remainder_magnitude = std::abs(eval(p, root));
    result.exact = result.remainder_magnitude <= tol * p.norm_inf();
    if (n == 1) {
        result.quotient = LaurentPoly{};
        return result;
    }
    // Horner for P(z) = (z - root) Q(z) + R, then (1 + cz) = -(z - root)/root.
    std::vector<Complex> q(n - 1);
    q[n - 2] = c[n - 1];
    for (std::size_t i = n - 2; i > 0; --i) q[i - 1] = c[i] + root * q[i];
    for (auto& v : q) v *= -root;
    result.quotient = LaurentPoly(std::move(q), p.low_degree());
    return result;
}

PolyDivision divide(const LaurentPoly& p, const LaurentPoly& divisor) {
    if (divisor.is_zero()) throw DomainError("divide: zero divisor");
    if (p.is_zero()) return {};
    const auto& d = divisor.coeffs();
    const std::size_t m = d.size() - 1;
    std::vector<Complex> r = p.coeffs();
    if (r.size() <= m) return {LaurentPoly{}, p};
    const std::size_t nq = r.size() - m;
    std::vector<Complex> q(nq);
    for (std::size_t i = nq; i-- > 0;) {
        q[i] = r[i + m] / d[m];
        for (std::size_t j = 0; j <= m; ++j) r[i + j] -= q[i] * d[j];
    }
    r.resize(m);
    return {LaurentPoly(std::move(q), p.low_degree() - divisor.low_degree()),
            LaurentPoly(std::move(r), p.low_degree())};
}

LaurentPoly linear_factor(Complex c) { return LaurentPoly({Complex{1.0}, c}, 0); }

std::string to_string(const LaurentPoly& p) {
    if (p.is_zero()) return "0";
    std::string out;
    char buf[96];
    for (std::size_t i = 0; i < p.size(); ++i) {
        const Complex c = p.coeffs()[i];
        if (c == Complex{}) continue;
        const int d = p.low_degree() + static_cast<int>(i);
        std::snprintf(buf, sizeof buf, "%s(%.6g%+.6gi)z^%d", out.empty() ? "" : " + ", c.real(),
                      c.imag(), d);
        out += buf;
    }
    return out;
}

}  // namespace subdiv
