/* Copyright 2026 The nctorus Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License. */

#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <vector>

#include "nctorus/error.hpp"
#include "nctorus/fft.hpp"
#include "nctorus/grid.hpp"
#include "nctorus/lattice.hpp"
#include "nctorus/phase.hpp"

namespace nctorus {

/// (Qf)(u) = u f(u).
inline GridFunction1D apply_Q(const GridFunction1D &f) {
    GridFunction1D g = f;
    for (std::size_t j = 0; j < f.n(); ++j)
        g[j] *= f.x(j);
    return g;
}

/// (Pf)(u) = (hbar / i) f'(u), spectrally.
inline GridFunction1D apply_P(const GridFunction1D &f, double hbar) {
    GridFunction1D g = spectral_derivative(f, 1);
    const complex factor(0.0, -hbar);
    for (auto &v : g.values())
        v *= factor;
    return g;
}

/// (e^{itQ} f)(u) = e^{itu} f(u).
inline GridFunction1D weyl_Q(double t, const GridFunction1D &f) {
    GridFunction1D g = f;
    for (std::size_t j = 0; j < f.n(); ++j)
        g[j] *= std::polar(1.0, t * f.x(j));
    return g;
}

/// (e^{isP} f)(u) = f(u + s hbar) by a Fourier phase ramp; exact on
/// band-limited data and unitary.
inline GridFunction1D weyl_P(double s, const GridFunction1D &f, double hbar) {
    const double shift = s * hbar;
    if (shift == 0.0)
        return f;
    auto F = fft(f.values());
    const std::size_t n = f.n();
    for (std::size_t k = 0; k < n; ++k)
        F[k] *= std::polar(1.0, wavenumber(k, n, f.dx()) * shift);
    return GridFunction1D(f.half_extent(), n, ifft(F));
}

/// sum_{k,l} c_{k,l} e^{i sigma k Q} e^{i sigma l P} f.
inline GridFunction1D rep_lattice_measure(const CoeffLattice2 &c, double sigma, double hbar,
                                          const GridFunction1D &f) {
    GridFunction1D out(f.half_extent(), f.n());
    for (int l = -c.radius_l(); l <= c.radius_l(); ++l) {
        bool any = false;
        for (int k = -c.radius_k(); k <= c.radius_k(); ++k)
            any = any || c(k, l) != complex{};
        if (!any)
            continue;
        GridFunction1D pf = weyl_P(sigma * l, f, hbar);
        for (int k = -c.radius_k(); k <= c.radius_k(); ++k) {
            complex ckl = c(k, l);
            if (ckl == complex{})
                continue;
            for (std::size_t j = 0; j < f.n(); ++j)
                out[j] += ckl * std::polar(1.0, sigma * k * f.x(j)) * pf[j];
        }
    }
    return out;
}

/// Unit-width Gaussian on the default grid (L = 16, n = 512).
inline GridFunction1D default_probe(double half_extent = 16.0, std::size_t n = 512) {
    return GridFunction1D::sample(half_extent, n, [](double u) {
        return complex(std::exp(-0.5 * u * u), 0.0);
    });
}

/// The scalar q with rep(U) rep(V) = q rep(V) rep(U), for rep(U) = e^{i sigma Q}
/// and rep(V) = e^{i sigma P}, measured as the least-squares ratio on a probe.
inline PhaseQ calibrate_q(double sigma, double hbar, const GridFunction1D &probe) {
    GridFunction1D uv = weyl_Q(sigma, weyl_P(sigma, probe, hbar));
    GridFunction1D vu = weyl_P(sigma, weyl_Q(sigma, probe), hbar);
    complex num{};
    double den = 0.0;
    for (std::size_t j = 0; j < probe.n(); ++j) {
        num += std::conj(vu[j]) * uv[j];
        den += std::norm(vu[j]);
    }
    if (!(den > 1e-24))
        throw input_error("probe", "probe function has near-zero norm");
    return PhaseQ::irrational(std::arg(num / den));
}

inline PhaseQ calibrate_q(double sigma, double hbar) {
    return calibrate_q(sigma, hbar, default_probe());
}

} // namespace nctorus
