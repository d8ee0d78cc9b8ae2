#pragma once

// Equilibrium weights P_K(phi): Bergman/Christoffel estimator for generic
// sets, closed-form oracles for the model sets (interval, circle/disc,
// torus, products), plus regularity and pull-back diagnostics.

#include "plab/polyspace.hpp"

namespace plab {

struct ExtremalResult {
    enum class Method { bergman, oracle_interval, oracle_disc, oracle_torus, product };

    Method method = Method::bergman;
    int k_used = 0;
    // P_K(phi) as a function on C^n via the Z_0 identification
    std::function<double(const PointN&)> eval;
    // batch evaluation (matrix-product path for the Bergman estimator)
    std::function<std::vector<double>(const CompactGrid&)> eval_many;
    GridFunction sampled;       // eval restricted to the requested grid
    double sup_defect = 0.0;    // max over K of (values - phi)

    double operator()(const PointN& p) const { return eval(p); }
};

// B_k(x) = (1/2k) log sum_i |s_i(x)|^2 with the s_i L^2(mu_K, k phi)
// orthonormal; converges to P_K(phi) under the Bernstein-Markov property.
ExtremalResult extremal_bergman(const CompactGrid& K, const WeightFn& phi,
                                const DiscreteMeasure& mu_K, int k,
                                const CompactGrid& eval_grid,
                                bool centered = false);

struct OracleParams {
    double a = -1.0, b = 1.0;   // interval
    cplx center{0.0, 0.0};
    double r = 1.0;             // circle / disc
    int torus_n = 1;
};

// Closed-form envelopes, zero weight only:
//   interval [a,b]  : log |w + sqrt(w^2 - 1)|, w the affine map to [-1,1]
//   circle(c, r)    : log^+ (|z - c| / r)
//   torus(n)        : max_j log^+ |z_j|
ExtremalResult extremal_oracle(GridKind kind, const OracleParams& params,
                               const std::string& phi_spec,
                               const CompactGrid& eval_grid);

// Product of two 1-D envelopes on a product set: max of the factors.
ExtremalResult product_envelope(const ExtremalResult& e1,
                                const ExtremalResult& e2,
                                const CompactGrid& eval_grid);

struct RegularityReport {
    double sup_defect = 0.0;      // sup_K (P - phi)
    double contact_fraction = 0.0; // fraction of K with |P - phi| < tol
    bool pass = false;
};

RegularityReport regularity_check(const ExtremalResult& result,
                                  const CompactGrid& K, const WeightFn& phi,
                                  double defect_tol = 0.05,
                                  double contact_tol = 1e-6,
                                  double min_contact_fraction = 0.0);

} // namespace plab
