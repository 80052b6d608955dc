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

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "nctorus/error.hpp"
#include "nctorus/lattice.hpp"
#include "nctorus/matrep.hpp"
#include "nctorus/phase.hpp"
#include "nctorus/torus.hpp"

namespace nctorus {

using Vector = Eigen::VectorXcd;

/// A finite-dimensional *-algebra spanned by monomials U^k V^l.
///
/// torus_quotient(q) is the N^2-dimensional algebra with U^N = V^N = 1; it is
/// associative and isomorphic to Mat_N. truncated_box(rk, rl, q) keeps the
/// monomials of a box and drops product terms that leave it, which breaks
/// associativity; the largest dropped coefficient is reported as tail().
class FiniteAlgebra {
public:
    enum class Kind { torus_quotient, truncated_box };

    static FiniteAlgebra torus_quotient(const PhaseQ &q) {
        const auto n = static_cast<int>(require_rational(q));
        FiniteAlgebra A(Kind::torus_quotient, q);
        for (int k = 0; k < n; ++k)
            for (int l = 0; l < n; ++l)
                A.basis_.emplace_back(k, l);
        A.build();
        return A;
    }

    static FiniteAlgebra truncated_box(int rk, int rl, const PhaseQ &q) {
        if (rk < 0 || rl < 0)
            throw input_error("radius", "box radii must be non-negative");
        FiniteAlgebra A(Kind::truncated_box, q);
        for (int k = -rk; k <= rk; ++k)
            for (int l = -rl; l <= rl; ++l)
                A.basis_.emplace_back(k, l);
        A.build();
        return A;
    }

    Kind kind() const noexcept { return kind_; }
    const PhaseQ &q() const noexcept { return q_; }
    std::size_t dim() const noexcept { return basis_.size(); }
    const std::vector<std::pair<int, int>> &basis() const noexcept { return basis_; }
    bool associative() const noexcept { return kind_ == Kind::torus_quotient; }
    /// Largest coefficient discarded by re-truncating a basis product.
    double tail() const noexcept { return tail_; }

    std::optional<std::size_t> index_of(int k, int l) const {
        auto key = normalize(k, l);
        for (std::size_t i = 0; i < basis_.size(); ++i)
            if (basis_[i] == key)
                return i;
        return std::nullopt;
    }

    Vector unit() const { return basis_vector(*index_of(0, 0)); }

    Vector basis_vector(std::size_t i) const {
        Vector e = Vector::Zero(static_cast<Eigen::Index>(dim()));
        e[static_cast<Eigen::Index>(i)] = 1.0;
        return e;
    }

    /// Coordinates of a torus element (coefficients outside the algebra are
    /// folded for the quotient, dropped for the box).
    Vector from_element(const TorusElement &f) const {
        require_same_q(f.q, q_);
        Vector x = Vector::Zero(static_cast<Eigen::Index>(dim()));
        f.coeffs.for_each([&](int k, int l, complex c) {
            if (auto i = index_of(k, l))
                x[static_cast<Eigen::Index>(*i)] += c;
        });
        return x;
    }

    Vector mul(const Vector &x, const Vector &y) const {
        Vector out = Vector::Zero(static_cast<Eigen::Index>(dim()));
        for (std::size_t i = 0; i < dim(); ++i) {
            complex xi = x[static_cast<Eigen::Index>(i)];
            if (xi == complex{})
                continue;
            for (std::size_t j = 0; j < dim(); ++j) {
                const auto &e = table_[i * dim() + j];
                if (e.target)
                    out[static_cast<Eigen::Index>(*e.target)] +=
                        xi * y[static_cast<Eigen::Index>(j)] * e.phase;
            }
        }
        return out;
    }

    Vector star(const Vector &x) const {
        Vector out = Vector::Zero(static_cast<Eigen::Index>(dim()));
        for (std::size_t i = 0; i < dim(); ++i)
            out[static_cast<Eigen::Index>(star_[i].first)] +=
                std::conj(x[static_cast<Eigen::Index>(i)]) * star_[i].second;
        return out;
    }

    /// Matrix of x -> a x in the basis.
    Eigen::MatrixXcd left_mul_matrix(const Vector &a) const {
        const auto d = static_cast<Eigen::Index>(dim());
        Eigen::MatrixXcd L = Eigen::MatrixXcd::Zero(d, d);
        for (Eigen::Index j = 0; j < d; ++j)
            L.col(j) = mul(a, basis_vector(static_cast<std::size_t>(j)));
        return L;
    }

    /// max |(e_i e_j) e_k - e_i (e_j e_k)| over basis triples.
    double associativity_defect() const {
        double worst = 0.0;
        for (std::size_t i = 0; i < dim(); ++i)
            for (std::size_t j = 0; j < dim(); ++j)
                for (std::size_t k = 0; k < dim(); ++k) {
                    Vector a = basis_vector(i), b = basis_vector(j), c = basis_vector(k);
                    worst = std::max(worst,
                                     (mul(mul(a, b), c) - mul(a, mul(b, c))).cwiseAbs().maxCoeff());
                }
        return worst;
    }

private:
    struct Entry {
        std::optional<std::size_t> target;
        complex phase;
    };

    FiniteAlgebra(Kind kind, const PhaseQ &q) : kind_(kind), q_(q) {}

    std::pair<int, int> normalize(int k, int l) const {
        if (kind_ == Kind::torus_quotient) {
            const auto n = q_.order();
            return {static_cast<int>(detail::mod_floor(k, n)),
                    static_cast<int>(detail::mod_floor(l, n))};
        }
        return {k, l};
    }

    void build() {
        const std::size_t d = dim();
        table_.assign(d * d, Entry{});
        for (std::size_t i = 0; i < d; ++i) {
            for (std::size_t j = 0; j < d; ++j) {
                auto p = q_mul(TorusElement::monomial(basis_[i].first, basis_[i].second, q_),
                               TorusElement::monomial(basis_[j].first, basis_[j].second, q_));
                int k = basis_[i].first + basis_[j].first;
                int l = basis_[i].second + basis_[j].second;
                auto idx = index_of(k, l);
                if (idx)
                    table_[i * d + j] = {idx, p(k, l)};
                else
                    tail_ = std::max(tail_, std::abs(p(k, l)));
            }
        }
        star_.resize(d);
        for (std::size_t i = 0; i < d; ++i) {
            auto a = adjoint(TorusElement::monomial(basis_[i].first, basis_[i].second, q_));
            int k = -basis_[i].first, l = -basis_[i].second;
            star_[i] = {*index_of(k, l), a(k, l)};
        }
    }

    Kind kind_;
    PhaseQ q_;
    std::vector<std::pair<int, int>> basis_;
    std::vector<Entry> table_;
    std::vector<std::pair<std::size_t, complex>> star_;
    double tail_ = 0.0;
};

/// A linear form by its values phi(e_i) on the algebra basis.
struct PositiveForm {
    Vector values;

    complex operator()(const Vector &x) const { return (values.array() * x.array()).sum(); }

    static PositiveForm trace(const FiniteAlgebra &A) {
        return {A.unit()};
    }

    /// phi(f) = <w, pi_0(f) w> with pi_0(U^k V^l) = U0^k V0^l.
    static PositiveForm vector_state(const FiniteAlgebra &A, const Vector &w) {
        const auto n = require_rational(A.q());
        if (w.size() != n)
            throw input_error("w", "vector length must equal N");
        PositiveForm phi{Vector::Zero(static_cast<Eigen::Index>(A.dim()))};
        for (std::size_t i = 0; i < A.dim(); ++i) {
            auto [k, l] = A.basis()[i];
            phi.values[static_cast<Eigen::Index>(i)] = w.dot(clock_shift_monomial(A.q(), k, l) * w);
        }
        return phi;
    }
};

/// G_ij = phi(e_i^* e_j), so phi(f^* f) = f^dagger G f.
inline Eigen::MatrixXcd gram(const PositiveForm &phi, const FiniteAlgebra &A) {
    if (static_cast<std::size_t>(phi.values.size()) != A.dim())
        throw input_error("values", "form has " + std::to_string(phi.values.size()) +
                                        " values for a basis of " + std::to_string(A.dim()));
    const auto d = static_cast<Eigen::Index>(A.dim());
    Eigen::MatrixXcd G(d, d);
    for (Eigen::Index i = 0; i < d; ++i) {
        Vector ei_star = A.star(A.basis_vector(static_cast<std::size_t>(i)));
        for (Eigen::Index j = 0; j < d; ++j)
            G(i, j) = phi(A.mul(ei_star, A.basis_vector(static_cast<std::size_t>(j))));
    }
    return G;
}

struct PositivityResult {
    bool positive = true;
    double min_eigenvalue = 0.0;
    Vector witness; ///< f with phi(f^* f) outside [0, inf) when not positive
};

/// Positive iff G is Hermitian and its smallest eigenvalue is >= -tol.
inline PositivityResult is_positive(const PositiveForm &phi, const FiniteAlgebra &A,
                                    double tol = 1e-10) {
    Eigen::MatrixXcd G = gram(phi, A);
    PositivityResult r;
    if (G.size() == 0)
        return r;
    Eigen::MatrixXcd H = 0.5 * (G + G.adjoint());
    Eigen::MatrixXcd K = (G - G.adjoint()) * complex(0.0, -0.5);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eh(H);
    r.min_eigenvalue = eh.eigenvalues()[0];
    if (r.min_eigenvalue < -tol) {
        r.positive = false;
        r.witness = eh.eigenvectors().col(0);
        return r;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> ek(K);
    Eigen::Index imax = 0;
    ek.eigenvalues().cwiseAbs().maxCoeff(&imax);
    if (std::abs(ek.eigenvalues()[imax]) > tol) {
        r.positive = false;
        r.witness = ek.eigenvectors().col(imax);
    }
    return r;
}

struct GnsTriplet {
    std::size_t quotient_dim = 0;
    Eigen::MatrixXcd basis;           ///< dim x r; columns are orthonormal class representatives
    std::vector<Eigen::MatrixXcd> pi; ///< pi(e_i) on the quotient, one per algebra basis element
    Eigen::MatrixXcd pi_U;            ///< empty when U is not in the algebra
    Eigen::MatrixXcd pi_V;
    Vector omega;                     ///< class of the unit
    double tolerance = 1e-10;
    double reconstruction_residual = 0.0;
    double homomorphism_residual = 0.0;
    double star_residual = 0.0;
    double left_ideal_residual = 0.0;

    Eigen::MatrixXcd operator()(const Vector &f) const {
        auto r = static_cast<Eigen::Index>(quotient_dim);
        Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(r, r);
        for (std::size_t i = 0; i < pi.size(); ++i)
            m += f[static_cast<Eigen::Index>(i)] * pi[i];
        return m;
    }
};

inline double max_abs_entry(const Eigen::MatrixXcd &m) {
    return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

/// GNS construction on A / I_phi.
///
/// The rank of I_phi is decided from the Gram spectrum at 1e-9 of its
/// largest eigenvalue. The orthonormal basis comes from modified Gram-Schmidt
/// over the basis monomials in `order` (basis order by default). Throws
/// tolerance_error when phi is not positive, when I_phi is not a left ideal,
/// or when an invariant of the triplet fails.
inline GnsTriplet gns_build(const PositiveForm &phi, const FiniteAlgebra &A,
                            std::vector<std::size_t> order = {}) {
    const auto d = static_cast<Eigen::Index>(A.dim());
    auto pos = is_positive(phi, A);
    if (!pos.positive)
        throw tolerance_error("form is not positive", std::max(0.0, -pos.min_eigenvalue));
    Eigen::MatrixXcd G = gram(phi, A);
    G = 0.5 * (G + G.adjoint());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(G);
    const double lmax = es.eigenvalues().cwiseAbs().maxCoeff();
    const double cut = 1e-9 * lmax;
    Eigen::Index rank = 0;
    for (Eigen::Index i = 0; i < d; ++i)
        if (es.eigenvalues()[i] > cut)
            ++rank;

    GnsTriplet T;
    T.quotient_dim = static_cast<std::size_t>(rank);
    T.tolerance = std::max(1e-10, 10.0 * A.tail());

    if (order.empty())
        for (std::size_t i = 0; i < A.dim(); ++i)
            order.push_back(i);
    if (order.size() != A.dim())
        throw input_error("order", "orthonormalization order must list every basis index");
    std::vector<bool> seen(A.dim(), false);
    for (auto i : order) {
        if (i >= A.dim() || seen[i])
            throw input_error("order", "orthonormalization order must be a permutation");
        seen[i] = true;
    }

    auto ip = [&](const Vector &x, const Vector &y) { return x.dot(G * y); };
    std::vector<Vector> cols;
    for (auto i : order) {
        if (static_cast<Eigen::Index>(cols.size()) == rank)
            break;
        Vector v = A.basis_vector(i);
        for (const auto &b : cols)
            v -= ip(b, v) * b;
        double nrm2 = ip(v, v).real();
        if (nrm2 > cut)
            cols.push_back(v / std::sqrt(nrm2));
    }
    if (static_cast<Eigen::Index>(cols.size()) != rank)
        throw tolerance_error("Gram-Schmidt found fewer classes than the Gram rank",
                              static_cast<double>(rank - static_cast<Eigen::Index>(cols.size())));
    T.basis = Eigen::MatrixXcd(d, rank);
    for (Eigen::Index c = 0; c < rank; ++c)
        T.basis.col(c) = cols[static_cast<std::size_t>(c)];

    // Null space of G (I_phi) and the left-ideal test G L_a Z = 0.
    Eigen::MatrixXcd Z = es.eigenvectors().leftCols(d - rank);
    const double gscale = std::max(1.0, lmax);
    for (std::size_t i = 0; i < A.dim(); ++i) {
        Eigen::MatrixXcd L = A.left_mul_matrix(A.basis_vector(i));
        if (Z.cols() > 0)
            T.left_ideal_residual =
                std::max(T.left_ideal_residual, max_abs_entry(G * L * Z) / gscale);
        T.pi.push_back(T.basis.adjoint() * G * L * T.basis);
    }
    if (T.left_ideal_residual > T.tolerance)
        throw tolerance_error("I_phi is not a left ideal", T.left_ideal_residual);

    T.omega = T.basis.adjoint() * G * A.unit();
    if (auto u = A.index_of(1, 0))
        T.pi_U = T.pi[*u];
    if (auto v = A.index_of(0, 1))
        T.pi_V = T.pi[*v];

    for (std::size_t i = 0; i < A.dim(); ++i) {
        complex lhs = phi.values[static_cast<Eigen::Index>(i)];
        complex rhs = T.omega.dot(T.pi[i] * T.omega);
        T.reconstruction_residual = std::max(T.reconstruction_residual, std::abs(lhs - rhs));
        Vector ei = A.basis_vector(i);
        T.star_residual =
            std::max(T.star_residual, max_abs_entry(T(A.star(ei)) - T.pi[i].adjoint()));
        for (std::size_t j = 0; j < A.dim(); ++j) {
            Vector prod = A.mul(ei, A.basis_vector(j));
            T.homomorphism_residual = std::max(T.homomorphism_residual,
                                               max_abs_entry(T(prod) - T.pi[i] * T.pi[j]));
        }
    }
    if (T.reconstruction_residual > T.tolerance)
        throw tolerance_error("phi(f) != <Omega, pi(f) Omega>", T.reconstruction_residual);
    if (T.star_residual > T.tolerance)
        throw tolerance_error("pi(f*) != pi(f)^dagger", T.star_residual);
    if (T.homomorphism_residual > T.tolerance)
        throw tolerance_error("pi is not multiplicative", T.homomorphism_residual);
    return T;
}

/// phi_f(g) = phi(f^* g f).
inline PositiveForm state_action(const PositiveForm &phi, const Vector &f, const FiniteAlgebra &A) {
    PositiveForm out{Vector::Zero(static_cast<Eigen::Index>(A.dim()))};
    Vector fs = A.star(f);
    for (std::size_t i = 0; i < A.dim(); ++i)
        out.values[static_cast<Eigen::Index>(i)] = phi(A.mul(A.mul(fs, A.basis_vector(i)), f));
    return out;
}

/// max(0, |phi(f)| - phi(1)^{1/2} phi(f^* f)^{1/2}).
inline double schwarz_check(const PositiveForm &phi, const Vector &f, const FiniteAlgebra &A) {
    double lhs = std::abs(phi(f));
    double one = std::max(0.0, phi(A.unit()).real());
    double ff = std::max(0.0, phi(A.mul(A.star(f), f)).real());
    return std::max(0.0, lhs - std::sqrt(one) * std::sqrt(ff));
}

/// Rank of the orbit {pi(e_i) Omega}; equals quotient_dim when Omega is cyclic.
inline Eigen::Index orbit_rank(const GnsTriplet &T, double rel = 1e-9) {
    if (T.quotient_dim == 0)
        return 0;
    Eigen::MatrixXcd X(static_cast<Eigen::Index>(T.quotient_dim),
                       static_cast<Eigen::Index>(T.pi.size()));
    for (std::size_t i = 0; i < T.pi.size(); ++i)
        X.col(static_cast<Eigen::Index>(i)) = T.pi[i] * T.omega;
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(X);
    auto sv = svd.singularValues();
    Eigen::Index r = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i)
        if (sv[i] > rel * sv[0])
            ++r;
    return r;
}

/// Least-squares intertwiner W with W pi_1(e_i) Omega_1 = pi_2(e_i) Omega_2;
/// returns the largest of the defects of W Omega_1 = Omega_2,
/// W pi_1(e_i) = pi_2(e_i) W and W^dagger W = 1.
inline double unitary_equivalence_residual(const GnsTriplet &T1, const GnsTriplet &T2) {
    if (T1.quotient_dim != T2.quotient_dim || T1.pi.size() != T2.pi.size())
        return INFINITY;
    const auto r = static_cast<Eigen::Index>(T1.quotient_dim);
    if (r == 0)
        return 0.0;
    const auto m = static_cast<Eigen::Index>(T1.pi.size());
    Eigen::MatrixXcd X1(r, m), X2(r, m);
    for (Eigen::Index i = 0; i < m; ++i) {
        X1.col(i) = T1.pi[static_cast<std::size_t>(i)] * T1.omega;
        X2.col(i) = T2.pi[static_cast<std::size_t>(i)] * T2.omega;
    }
    Eigen::MatrixXcd W = X1.transpose().completeOrthogonalDecomposition().solve(X2.transpose()).transpose();
    double res = max_abs_entry(W * T1.omega - T2.omega);
    res = std::max(res, max_abs_entry(W.adjoint() * W - Eigen::MatrixXcd::Identity(r, r)));
    for (std::size_t i = 0; i < T1.pi.size(); ++i)
        res = std::max(res, max_abs_entry(W * T1.pi[i] - T2.pi[i] * W));
    return res;
}

struct DirectSumReport {
    Eigen::Index gram_rank = 0;           ///< rank of sum_phi G_phi
    Eigen::Index representation_rank = 0; ///< rank of f -> (+)_phi pi_phi(f)
    std::size_t dim = 0;
    bool injective = false;
};

/// Injectivity of the direct sum of the GNS representations of a family of
/// positive forms, decided two ways: the common null space of the Gram
/// matrices, and the rank of the stacked representation map itself.
inline DirectSumReport direct_sum_injectivity(const std::vector<PositiveForm> &forms,
                                              const FiniteAlgebra &A, double rel = 1e-9) {
    const auto d = static_cast<Eigen::Index>(A.dim());
    DirectSumReport rep;
    rep.dim = A.dim();
    auto rank_of = [&](const Eigen::MatrixXcd &M) {
        Eigen::JacobiSVD<Eigen::MatrixXcd> svd(M);
        auto sv = svd.singularValues();
        Eigen::Index r = 0;
        for (Eigen::Index i = 0; i < sv.size(); ++i)
            if (sv[0] > 0.0 && sv[i] > rel * sv[0])
                ++r;
        return r;
    };
    Eigen::MatrixXcd S = Eigen::MatrixXcd::Zero(d, d);
    std::vector<Eigen::VectorXcd> flat(A.dim());
    for (const auto &phi : forms) {
        S += gram(phi, A);
        auto T = gns_build(phi, A);
        for (std::size_t i = 0; i < A.dim(); ++i) {
            Eigen::VectorXcd v = Eigen::Map<const Eigen::VectorXcd>(T.pi[i].data(), T.pi[i].size());
            Eigen::VectorXcd joined(flat[i].size() + v.size());
            joined << flat[i], v;
            flat[i] = joined;
        }
    }
    rep.gram_rank = rank_of(S);
    if (!flat.empty() && flat[0].size() > 0) {
        Eigen::MatrixXcd R(flat[0].size(), d);
        for (Eigen::Index i = 0; i < d; ++i)
            R.col(i) = flat[static_cast<std::size_t>(i)];
        rep.representation_rank = rank_of(R);
    }
    rep.injective = rep.gram_rank == d && rep.representation_rank == d;
    return rep;
}

} // namespace nctorus
