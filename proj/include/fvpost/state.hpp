#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>

namespace fvpost {

// Largest number of conserved components supported (p-system).
inline constexpr std::size_t max_components = 2;

// Fixed-capacity state vector. Components beyond the model's m are kept at zero.
using State = std::array<double, max_components>;

inline State make_state(double a, double b = 0.0) { return State{a, b}; }

inline State operator+(State a, const State& b) {
    for (std::size_t c = 0; c < max_components; ++c) a[c] += b[c];
    return a;
}
inline State operator-(State a, const State& b) {
    for (std::size_t c = 0; c < max_components; ++c) a[c] -= b[c];
    return a;
}
inline State operator*(double s, State a) {
    for (auto& v : a) v *= s;
    return a;
}

inline State abs(State a) {
    for (auto& v : a) v = std::fabs(v);
    return a;
}

inline double linf(const State& a, std::size_t m) {
    double r = 0.0;
    for (std::size_t c = 0; c < m; ++c) r = std::max(r, std::fabs(a[c]));
    return r;
}

// Thrown when a state leaves the admissible set of the model.
class DomainError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Thrown for invalid user configuration (bad flags, incompatible options).
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace fvpost
