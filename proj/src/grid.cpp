#include "subdiv/grid.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace subdiv {

Parametrization::Parametrization(int nu, int tau) : nu_(nu), tau_(tau) {
    if (nu != 0 && nu != 1) throw DomainError("parametrization nu must be 0 or 1, got " + std::to_string(nu));
}

double Parametrization::point(std::int64_t index, int level) const {
    return std::ldexp(static_cast<double>(index) + shift(), -level);
}

Complex RefinedData::at(std::int64_t i) const noexcept {
    if (!window().contains(i)) return {};
    return values[static_cast<std::size_t>(i - first_index)];
}

double RefinedData::norm_inf() const noexcept {
    double m = 0.0;
    for (const auto& v : values) m = std::max(m, std::abs(v));
    return m;
}

bool RefinedData::is_real_within(double tol) const noexcept {
    return std::all_of(values.begin(), values.end(),
                       [tol](const Complex& v) { return std::abs(v.imag()) <= tol; });
}

RefinedData RefinedData::delta(int base_level, Parametrization param) {
    RefinedData d;
    d.base_level = base_level;
    d.first_index = 0;
    d.values = {Complex{1.0}};
    d.param = param;
    d.compact = true;
    d.interior = d.window();
    return d;
}

RefinedData RefinedData::window_data(std::int64_t first_index, std::vector<Complex> values,
                                     int base_level, Parametrization param) {
    RefinedData d;
    d.base_level = base_level;
    d.first_index = first_index;
    d.values = std::move(values);
    d.param = param;
    d.compact = false;
    d.interior = d.window();
    return d;
}

}  // namespace subdiv
