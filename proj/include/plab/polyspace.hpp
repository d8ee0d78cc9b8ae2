#pragma once

// Graded polynomial spaces of degree <= k in n variables, basis evaluation
// and conditioning-aware orthogonalization against a weighted discrete
// measure.

#include <Eigen/Dense>

#include "plab/domain.hpp"

namespace plab {

enum class BasisFamily { monomial, chebyshev_1d, torus_fourier };

struct PolyBasis {
    int dim_n = 1;
    int degree_k = 0;
    BasisFamily family = BasisFamily::monomial;
    // multi-indices |alpha| <= k in graded-lex order; alpha[1] unused for n=1
    std::vector<std::array<int, 2>> exponents;
    int size = 0; // N_k = C(n+k, n)

    // affine normalization of the evaluation variable, per coordinate:
    // w_j = (z_j - center_j) / scale_j
    cplx center1{0.0, 0.0}, center2{0.0, 0.0};
    double scale1 = 1.0, scale2 = 1.0;
};

long basis_dimension(int n, int k);

PolyBasis make_basis(int n, int k, BasisFamily family);
// Chebyshev basis adapted to [a,b]; n = 1 only.
PolyBasis make_chebyshev_basis(int k, double a, double b);
// Monomials in the centered/scaled coordinate (z - center)/r; orthonormal
// under Haar on the circle |z - center| = r.
PolyBasis make_circle_basis(int k, cplx center, double r);

// chebyshev on intervals, scaled monomials on circles/tori, raw monomials
// otherwise.
PolyBasis default_basis_for(const CompactGrid& grid, int k);

struct EvalMatrix {
    Eigen::MatrixXcd entries;    // (i,j) = b_j(x_i)
    Eigen::VectorXd row_weights; // e^{-k phi(x_i)}
};

EvalMatrix evaluate_basis(const PolyBasis& basis, const CompactGrid& grid,
                          const WeightFn& weight, int k);

// Raw basis values only, no weight factor.
Eigen::MatrixXcd evaluate_basis_matrix(const PolyBasis& basis,
                                       const CompactGrid& grid);

struct OrthonormalBasis {
    PolyBasis base;
    // columns of (raw basis) * coeffs are L^2(mu, k*weight)-orthonormal
    Eigen::MatrixXcd coeffs;
    DiscreteMeasure measure;
    WeightFn weight;
    int k = 0;
    double condition_estimate = 1.0;

    int size() const { return base.size; }
};

// QR with column pivoting of the mass-and-weight-scaled evaluation matrix.
OrthonormalBasis orthonormalize(const PolyBasis& basis,
                                const DiscreteMeasure& measure,
                                const WeightFn& weight, int k);

// Unweighted section values s_j(x_i) on an arbitrary grid.
Eigen::MatrixXcd evaluate_sections(const OrthonormalBasis& onb,
                                   const CompactGrid& grid);

// Convenience: default basis + orthonormalize.
OrthonormalBasis orthonormal_basis_for(const DiscreteMeasure& measure,
                                       const WeightFn& weight, int k);

} // namespace plab
