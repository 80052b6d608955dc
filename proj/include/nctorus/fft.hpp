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

#include <complex>
#include <cstddef>
#include <cstring>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <tuple>
#include <vector>

#include <fftw3.h>

namespace nctorus {

using complex = std::complex<double>;

namespace detail {

struct fftw_buffer {
    explicit fftw_buffer(std::size_t n)
        : ptr(static_cast<fftw_complex *>(fftw_malloc(sizeof(fftw_complex) * (n ? n : 1)))) {
        if (!ptr)
            throw std::bad_alloc();
    }
    ~fftw_buffer() { fftw_free(ptr); }
    fftw_buffer(const fftw_buffer &) = delete;
    fftw_buffer &operator=(const fftw_buffer &) = delete;
    fftw_complex *ptr;
};

/// Process-wide cache of FFTW_ESTIMATE plans keyed by (rows, cols, sign).
/// Planning is serialized; fftw_execute_dft on distinct buffers is
/// thread-safe.
class plan_cache {
public:
    static plan_cache &instance() {
        static plan_cache cache;
        return cache;
    }

    fftw_plan get(int rows, int cols, int sign) {
        std::lock_guard<std::mutex> lock(mutex_);
        auto key = std::make_tuple(rows, cols, sign);
        if (auto it = plans_.find(key); it != plans_.end())
            return it->second;
        std::size_t n = static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols);
        fftw_buffer in(n), out(n);
        fftw_plan p = rows == 1 ? fftw_plan_dft_1d(cols, in.ptr, out.ptr, sign, FFTW_ESTIMATE)
                                : fftw_plan_dft_2d(rows, cols, in.ptr, out.ptr, sign,
                                                   FFTW_ESTIMATE);
        plans_.emplace(key, p);
        return p;
    }

    ~plan_cache() {
        for (auto &kv : plans_)
            fftw_destroy_plan(kv.second);
    }

private:
    std::mutex mutex_;
    std::map<std::tuple<int, int, int>, fftw_plan> plans_;
};

inline std::vector<complex> run_dft(const std::vector<complex> &x, int rows, int cols, int sign) {
    const std::size_t n = static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols);
    fftw_plan plan = plan_cache::instance().get(rows, cols, sign);
    fftw_buffer in(n), out(n);
    std::memcpy(in.ptr, x.data(), n * sizeof(fftw_complex));
    fftw_execute_dft(plan, in.ptr, out.ptr);
    std::vector<complex> y(n);
    std::memcpy(y.data(), out.ptr, n * sizeof(fftw_complex));
    return y;
}

} // namespace detail

/// Unnormalized DFT X_k = sum_j x_j e^{-2 pi i jk/n}.
inline std::vector<complex> fft(const std::vector<complex> &x) {
    return detail::run_dft(x, 1, static_cast<int>(x.size()), FFTW_FORWARD);
}

/// Unnormalized inverse DFT, sum_k X_k e^{+2 pi i jk/n}.
inline std::vector<complex> ifft_unscaled(const std::vector<complex> &x) {
    return detail::run_dft(x, 1, static_cast<int>(x.size()), FFTW_BACKWARD);
}

/// Inverse DFT including the 1/n factor.
inline std::vector<complex> ifft(const std::vector<complex> &x) {
    auto y = ifft_unscaled(x);
    const double s = 1.0 / static_cast<double>(x.size());
    for (auto &v : y)
        v *= s;
    return y;
}

/// Row-major 2D transforms on a rows x cols array.
inline std::vector<complex> fft2(const std::vector<complex> &x, int rows, int cols) {
    return detail::run_dft(x, rows, cols, FFTW_FORWARD);
}

inline std::vector<complex> ifft2(const std::vector<complex> &x, int rows, int cols) {
    auto y = detail::run_dft(x, rows, cols, FFTW_BACKWARD);
    const double s = 1.0 / (static_cast<double>(rows) * cols);
    for (auto &v : y)
        v *= s;
    return y;
}

/// Angular wavenumber of DFT bin k for n samples spaced by dx, in FFT order
/// (0, 1, ..., n/2 - 1, -n/2, ..., -1).
inline double wavenumber(std::size_t k, std::size_t n, double dx) {
    const double base = 2.0 * std::numbers::pi / (static_cast<double>(n) * dx);
    auto kk = static_cast<std::ptrdiff_t>(k);
    if (kk >= static_cast<std::ptrdiff_t>(n / 2))
        kk -= static_cast<std::ptrdiff_t>(n);
    return base * static_cast<double>(kk);
}

} // namespace nctorus
