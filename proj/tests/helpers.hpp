#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <vector>

#include "qwave/rng.hpp"
#include "qwave/state.hpp"

namespace qwave::testing {

inline StateVector random_state(const RegisterLayout& layout, std::uint64_t seed) {
    Rng rng(seed);
    StateVector state{layout, std::vector<Complex>(layout.dimension())};
    double nrm = 0.0;
    for (Complex& a : state.amplitudes) {
        a = Complex{2.0 * rng.next_double() - 1.0, 2.0 * rng.next_double() - 1.0};
        nrm += std::norm(a);
    }
    nrm = 1.0 / std::sqrt(nrm);
    for (Complex& a : state.amplitudes) a *= nrm;
    return state;
}

inline double max_amplitude_deviation(const StateVector& a, const StateVector& b) {
    double worst = 0.0;
    for (std::size_t i = 0; i < a.amplitudes.size(); ++i) {
        worst = std::max(worst, std::abs(a.amplitudes[i] - b.amplitudes[i]));
    }
    return worst;
}

inline double max_amplitude_deviation(const std::vector<Complex>& a,
                                      const std::vector<Complex>& b) {
    double worst = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        worst = std::max(worst, std::abs(a[i] - b[i]));
    }
    return worst;
}

/// Independent dense one-step kernel: the discretized short-time Green's
/// function (1/sqrt N) e^{+i (m/2)(n-n')^2 dx^2/dt - i V(n dx) dt} built
/// directly as an N x N matrix, for checking the factored Trotter step.
inline std::vector<std::vector<Complex>> dense_step_kernel(std::uint64_t n, int stride_a,
                                                           const std::vector<double>& v,
                                                           double dt) {
    const double pi = 3.14159265358979323846;
    std::vector<std::vector<Complex>> k(n, std::vector<Complex>(n));
    const double inv_sqrt = 1.0 / std::sqrt(static_cast<double>(n));
    for (std::uint64_t row = 0; row < n; ++row) {
        Complex vphase = std::polar(inv_sqrt, -v[row] * dt);
        for (std::uint64_t col = 0; col < n; ++col) {
            std::int64_t d = static_cast<std::int64_t>(row) - static_cast<std::int64_t>(col);
            std::uint64_t q = (static_cast<std::uint64_t>(d * d) *
                               static_cast<std::uint64_t>(stride_a)) %
                              (2 * n);
            k[row][col] = vphase * std::polar(1.0, pi * static_cast<double>(q) /
                                                       static_cast<double>(n));
        }
    }
    return k;
}

inline std::vector<Complex> matvec(const std::vector<std::vector<Complex>>& m,
                                   const std::vector<Complex>& x) {
    std::vector<Complex> y(m.size(), Complex{0.0, 0.0});
    for (std::size_t i = 0; i < m.size(); ++i) {
        for (std::size_t j = 0; j < x.size(); ++j) y[i] += m[i][j] * x[j];
    }
    return y;
}

}  // namespace qwave::testing
