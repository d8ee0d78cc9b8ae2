#include "plab/polyspace.hpp"

#include <cmath>

namespace plab {

long basis_dimension(int n, int k) {
    if ((n != 1 && n != 2) || k < 0)
        throw ParameterError("basis_dimension: need n in {1,2}, k >= 0");
    if (n == 1) return k + 1L;
    return (k + 1L) * (k + 2L) / 2L;
}

namespace {

void check_degree_cap(int n, int k) {
    if (n == 1 && k > 128) throw ParameterError("degree cap: k <= 128 for n=1");
    if (n == 2 && k > 32) throw ParameterError("degree cap: k <= 32 for n=2");
}

std::vector<std::array<int, 2>> graded_exponents(int n, int k) {
    std::vector<std::array<int, 2>> exps;
    if (n == 1) {
        for (int d = 0; d <= k; ++d) exps.push_back({d, 0});
    } else {
        for (int d = 0; d <= k; ++d)
            for (int a = d; a >= 0; --a) exps.push_back({a, d - a});
    }
    return exps;
}

} // namespace

PolyBasis make_basis(int n, int k, BasisFamily family) {
    if (n != 1 && n != 2) throw ParameterError("make_basis: n must be 1 or 2");
    if (k < 0) throw ParameterError("make_basis: k must be >= 0");
    check_degree_cap(n, k);
    if (family == BasisFamily::chebyshev_1d && n != 1)
        throw ParameterError("make_basis: chebyshev_1d requires n = 1");
    PolyBasis b;
    b.dim_n = n;
    b.degree_k = k;
    b.family = family;
    b.exponents = graded_exponents(n, k);
    b.size = static_cast<int>(basis_dimension(n, k));
    return b;
}

PolyBasis make_chebyshev_basis(int k, double a, double b) {
    if (a >= b) throw ParameterError("chebyshev basis: requires a < b");
    PolyBasis pb = make_basis(1, k, BasisFamily::chebyshev_1d);
    pb.center1 = cplx((a + b) / 2.0, 0.0);
    pb.scale1 = (b - a) / 2.0;
    return pb;
}

PolyBasis make_circle_basis(int k, cplx center, double r) {
    if (r <= 0.0) throw ParameterError("circle basis: radius must be positive");
    PolyBasis pb = make_basis(1, k, BasisFamily::torus_fourier);
    pb.center1 = center;
    pb.scale1 = r;
    return pb;
}

PolyBasis default_basis_for(const CompactGrid& grid, int k) {
    switch (grid.kind) {
    case GridKind::interval: {
        double lo = 1e300, hi = -1e300;
        for (const auto& p : grid.points) {
            lo = std::min(lo, p.z1.real());
            hi = std::max(hi, p.z1.real());
        }
        return make_chebyshev_basis(k, lo, hi);
    }
    case GridKind::circle:
    case GridKind::disc_boundary: {
        // recover center and radius from the cloud
        cplx c(0.0, 0.0);
        for (const auto& p : grid.points) c += p.z1;
        c /= static_cast<double>(grid.size());
        double r = 0.0;
        for (const auto& p : grid.points) r += std::abs(p.z1 - c);
        r /= static_cast<double>(grid.size());
        return make_circle_basis(k, c, r);
    }
    case GridKind::torus:
        if (grid.dim == 1) return make_circle_basis(k, cplx(0, 0), 1.0);
        return make_basis(2, k, BasisFamily::torus_fourier);
    case GridKind::product:
        return make_basis(2, k, BasisFamily::monomial);
    default:
        return make_basis(grid.dim, k, BasisFamily::monomial);
    }
}

Eigen::MatrixXcd evaluate_basis_matrix(const PolyBasis& basis,
                                       const CompactGrid& grid) {
    const auto n_pts = static_cast<Eigen::Index>(grid.size());
    const auto n_basis = static_cast<Eigen::Index>(basis.size);
    Eigen::MatrixXcd B(n_pts, n_basis);

    if (basis.family == BasisFamily::chebyshev_1d) {
        // T_d(w) by three-term recurrence, complex argument
        for (Eigen::Index i = 0; i < n_pts; ++i) {
            cplx w = (grid.points[i].z1 - basis.center1) / basis.scale1;
            cplx tm1 = 1.0, t0 = w;
            for (int d = 0; d <= basis.degree_k; ++d) {
                cplx v;
                if (d == 0) v = 1.0;
                else if (d == 1) v = w;
                else {
                    v = 2.0 * w * t0 - tm1;
                    tm1 = t0;
                    t0 = v;
                }
                B(i, d) = v;
            }
        }
        return B;
    }

    // monomial / torus_fourier: powers of the (possibly scaled) coordinates
    for (Eigen::Index i = 0; i < n_pts; ++i) {
        const PointN& p = grid.points[i];
        cplx w1 = (p.z1 - basis.center1) / basis.scale1;
        cplx w2 = basis.dim_n == 2 ? (p.z2 - basis.center2) / basis.scale2
                                   : cplx(0, 0);
        std::vector<cplx> pow1(basis.degree_k + 1), pow2(basis.degree_k + 1);
        pow1[0] = 1.0;
        pow2[0] = 1.0;
        for (int d = 1; d <= basis.degree_k; ++d) {
            pow1[d] = pow1[d - 1] * w1;
            pow2[d] = pow2[d - 1] * w2;
        }
        for (Eigen::Index j = 0; j < n_basis; ++j) {
            const auto& a = basis.exponents[j];
            B(i, j) = basis.dim_n == 1 ? pow1[a[0]] : pow1[a[0]] * pow2[a[1]];
        }
    }
    return B;
}

EvalMatrix evaluate_basis(const PolyBasis& basis, const CompactGrid& grid,
                          const WeightFn& weight, int k) {
    EvalMatrix em;
    em.entries = evaluate_basis_matrix(basis, grid);
    if (!em.entries.allFinite()) {
        if (basis.family == BasisFamily::monomial)
            throw ConditioningError(
                "monomial basis overflow on this grid; switch to "
                "chebyshev_1d/torus_fourier");
        throw EvaluationError("non-finite basis value");
    }
    em.row_weights.resize(static_cast<Eigen::Index>(grid.size()));
    for (Eigen::Index i = 0; i < em.row_weights.size(); ++i) {
        double w = weight(grid.points[i]);
        if (!std::isfinite(w))
            throw EvaluationError("weight not finite on grid point");
        em.row_weights(i) = std::exp(-static_cast<double>(k) * w);
    }
    return em;
}

OrthonormalBasis orthonormalize(const PolyBasis& basis,
                                const DiscreteMeasure& measure,
                                const WeightFn& weight, int k) {
    measure.validate();
    const Eigen::Index n_basis = basis.size;
    const auto n_pts = static_cast<Eigen::Index>(measure.support.size());
    if (n_pts < n_basis)
        throw DegenerateSupportError(
            "orthonormalize: support has " + std::to_string(n_pts) +
            " points, need >= " + std::to_string(n_basis));

    EvalMatrix em = evaluate_basis(basis, measure.support, weight, k);
    Eigen::MatrixXcd A = em.entries;
    for (Eigen::Index i = 0; i < n_pts; ++i)
        A.row(i) *= std::sqrt(measure.masses[i]) * em.row_weights(i);

    Eigen::ColPivHouseholderQR<Eigen::MatrixXcd> qr(A);
    Eigen::MatrixXcd R =
        qr.matrixR().topLeftCorner(n_basis, n_basis).triangularView<Eigen::Upper>();
    double rmax = 0.0;
    for (Eigen::Index j = 0; j < n_basis; ++j)
        rmax = std::max(rmax, std::abs(R(j, j)));
    for (Eigen::Index j = 0; j < n_basis; ++j) {
        if (std::abs(R(j, j)) < 1e-13 * rmax) {
            Eigen::Index col = qr.colsPermutation().indices()(j);
            throw DegenerateSupportError(
                "orthonormalize: rank-deficient at basis column " +
                std::to_string(col));
        }
    }

    OrthonormalBasis onb;
    onb.base = basis;
    onb.measure = measure;
    onb.weight = weight;
    onb.k = k;
    onb.condition_estimate = std::abs(R(0, 0)) / std::abs(R(n_basis - 1, n_basis - 1));

    // C = P R^{-1}, columns phase-fixed so the effective R diagonal is
    // positive real (canonical triangular form when no pivoting occurs)
    Eigen::MatrixXcd Rinv =
        R.triangularView<Eigen::Upper>().solve(Eigen::MatrixXcd::Identity(n_basis, n_basis));
    onb.coeffs = qr.colsPermutation() * Rinv;
    for (Eigen::Index j = 0; j < n_basis; ++j) {
        cplx d = R(j, j);
        onb.coeffs.col(j) *= std::conj(d) / std::abs(d);
    }

    // identity-Gram invariant on the defining quadrature
    Eigen::MatrixXcd G = (A * onb.coeffs).adjoint() * (A * onb.coeffs);
    double defect = (G - Eigen::MatrixXcd::Identity(n_basis, n_basis))
                        .cwiseAbs()
                        .maxCoeff();
    if (defect > 1e-8)
        throw ConditioningError(
            "orthonormalize: Gram identity defect " + std::to_string(defect) +
            " (condition " + std::to_string(onb.condition_estimate) + ")");
    return onb;
}

Eigen::MatrixXcd evaluate_sections(const OrthonormalBasis& onb,
                                   const CompactGrid& grid) {
    return evaluate_basis_matrix(onb.base, grid) * onb.coeffs;
}

OrthonormalBasis orthonormal_basis_for(const DiscreteMeasure& measure,
                                       const WeightFn& weight, int k) {
    return orthonormalize(default_basis_for(measure.support, k), measure, weight,
                          k);
}

} // namespace plab
