#pragma once

// Lifted polynomial dynamics on the Riemann sphere: Green weights via the
// escape-rate iteration, Sylvester resultants of the lifts, preimage clouds,
// and the transfinite-diameter pull-back check.

#include "plab/envelope.hpp"
#include "plab/fekete.hpp"

namespace plab {

// A lift F = (F0, F1) of a degree-d endomorphism of P^1.  Coefficients are
// graded: F_i = sum_j coeff[j] Z0^{d-j} Z1^j, so in the chart z = Z1/Z0 the
// components read as polynomials sum_j coeff[j] z^j of degree <= d.
struct MapLift {
    int degree_d = 2;
    std::vector<cplx> F0, F1; // each of size d + 1

    // f(z) = F1(1, z) / F0(1, z)
    cplx apply_chart(cplx z) const;
};

// Spec string `d=<int>;F0=<coeffs>;F1=<coeffs>`, coefficients comma-separated
// complex numbers `a`, `a+bi` or `a-bi`.
MapLift parse_lift(const std::string& spec);

MapLift scale_lift(const MapLift& F, cplx lambda);

struct GreenWeight {
    MapLift lift;
    CompactGrid grid;
    GridFunction values; // g_F through the Z0 chart
    int iterations_m = 0;
    double residual = 0.0; // sup-norm of the last iterate difference
};

// g_F = lim_m d^{-m} (F^m)^* phi0, computed per point by renormalized orbit
// iteration in log scale.  phi0 defaults (null) to log^+ |z|, the weight of
// the sup-norm on the fibre.
GreenWeight green_weight(const MapLift& F, const WeightFn* phi0,
                         const CompactGrid& grid, int m_max = 60,
                         double tol = 1e-10);

// Pointwise Green value (same iteration, single point); reports the number
// of iterations used when m_used is non-null.
double green_value(const MapLift& F, cplx z, const WeightFn* phi0 = nullptr,
                   int m_max = 60, double tol = 1e-10, int* m_used = nullptr);

// Sylvester determinant of (F0, F1) as binary degree-d forms, normalized so
// that Res(Z0^d, Z1^d) = +1.  Vanishing resultant throws DomainError.
cplx resultant(const MapLift& F);

// All d preimages of every point of K under f (companion-matrix roots of
// F1(1,z) - w F0(1,z)); the cloud has d |K| points.
CompactGrid preimage_cloud(const MapLift& F, const CompactGrid& K);

// Pull-back of a weight on O(1): (d^{-1} f^* psi)(z)
//   = d^{-1} [ psi(f(z)) + log |F0(1, z)| ].
WeightFn pullback_weight(const MapLift& F, const WeightFn& psi);

struct PullbackReport {
    double lhs = 0.0;  // log d_inf(f^{-1}K, d^{-1} f* psi)
    double base = 0.0; // log d_inf(K, psi)
    double rhs = 0.0;  // base / d - log|Res| / d^2
    double gap = 0.0;
    double implied_log_c = 0.0; // lhs - base / d
    double res_log_c = 0.0;     // -log|Res| / d^2
    TransfiniteEstimate lhs_estimate, base_estimate;
};

PullbackReport pullback_check(const MapLift& F, const CompactGrid& K,
                              const WeightFn& psi,
                              const std::vector<int>& k_schedule);

struct PullbackEnvelopeReport {
    double max_gap = 0.0;
    std::size_t eval_count = 0;
};

// P_{f^{-1}K}(d^{-1} f* phi) vs d^{-1} f* P_K(phi) on a shared eval grid,
// both sides through the Bergman estimator at degree k.
PullbackEnvelopeReport pullback_envelope_check(const MapLift& F,
                                               const CompactGrid& K,
                                               const WeightFn& phi, int k,
                                               const CompactGrid& eval_grid);

} // namespace plab
