#pragma once

// Greedy Leja/Fekete extraction for the sup-norm of the determinant section,
// the normalized D_k functional and transfinite-diameter estimation by
// determinant asymptotics.  All determinant bookkeeping is done in
// log-modulus; no raw determinant is ever formed.

#include "plab/gramvol.hpp"

namespace plab {

struct LejaConfig {
    std::vector<int> indices;   // cloud indices of the selected points
    std::vector<PointN> points; // N_k selected points
    double log_det_linf = 0.0;  // log|det(s_i(x_j))| - k * sum phi(x_j)
    int k = 0;
    long n_k = 0;
    int refinement_passes = 0;
};

LejaConfig leja_extract(const CompactGrid& K, const WeightFn& phi, int k,
                        const OrthonormalBasis& onb_reference,
                        int refinement_passes = 1);

// (1 / (k N_k)) * log_det_linf; a certified lower bound of D_k over the cloud.
double dk_functional(const CompactGrid& K, const WeightFn& phi, int k,
                     const OrthonormalBasis& onb_reference,
                     int refinement_passes = 1);

struct TransfiniteEstimate {
    double log_d_inf = 0.0;
    std::vector<std::pair<int, double>> per_k; // (k, per-k log d_inf value)
    double extrapolation_residual = 0.0;
};

// Least-squares fit of a + b/k + c log(k)/k over the schedule; the reference
// basis is the monomial family orthonormal for torus Haar.
TransfiniteEstimate transfinite_diameter_leja(const CompactGrid& K,
                                              const WeightFn& v,
                                              const std::vector<int>& k_schedule);

// Shared extrapolation helper: fit a + b/k + c log(k)/k, return (a, max
// residual over the fit points).
std::pair<double, double> extrapolate_in_k(
    const std::vector<std::pair<int, double>>& per_k);

// Reference orthonormal basis of Corollary A / the Leja transfinite diameter:
// monomials of degree <= k, orthonormal for Haar on the unit torus T^n.
OrthonormalBasis torus_reference_basis(int n, int k);

// n = 1 only: Leja points selected with a cloud-adapted orthonormal basis
// (the reference monomials are hopelessly ill-conditioned at high degree on
// e.g. an interval), with log_det_linf replaced by the exact weighted
// Vandermonde sum log prod |x_i - x_j| - k sum v(x_i), which equals the
// monomial-reference determinant without any matrix factorization.
LejaConfig leja_vandermonde(const CompactGrid& K, const WeightFn& v, int k,
                            int refinement_passes = 1);

} // namespace plab
