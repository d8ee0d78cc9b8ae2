#pragma once

// Bergman distortion densities rho_k, Bergman measures beta_k = rho_k mu / N_k,
// Bernstein-Markov growth diagnostics, and weak-convergence checks against a
// reference (equilibrium) measure via moments.

#include "plab/gramvol.hpp"

namespace plab {

struct BergmanDensity {
    std::vector<double> values;  // rho_k at the support points of onb.measure
    int k = 0;
    long n_k = 0;
    double normalization = 0.0;        // int rho_k d mu (exactly N_k in theory)
    double normalization_defect = 0.0; // |normalization / N_k - 1|
    double sup_value = 0.0;            // max over the support
};

// rho_k(x) = sum_j |s_j(x)|^2 e^{-2 k phi(x)} on the measure's own support.
BergmanDensity bergman_density(const OrthonormalBasis& onb);

// rho_k on an arbitrary cloud (the weight must extend there).
std::vector<double> bergman_density_at(const OrthonormalBasis& onb,
                                       const CompactGrid& grid);

// beta_k = N_k^{-1} rho_k mu, renormalized to unit mass.
DiscreteMeasure bergman_measure(const OrthonormalBasis& onb);

struct BMGrowthReport {
    // (k, log sup rho_k) along the schedule
    std::vector<std::pair<int, double>> log_sup_by_k;
    double fitted_slope = 0.0; // extrapolated limit of log(sup rho_k)/(2k)
    bool bm_plausible = false; // limit <= threshold: subexponential growth
};

// Extrapolates log(sup rho_k)/(2k) along the schedule; the Bernstein-Markov
// property forces the limit to 0, so a small limit is the pass signal (a
// polynomially growing sup extrapolates to ~0, an exponential one to the
// positive growth rate).
BMGrowthReport bm_growth_diagnostic(const DiscreteMeasure& mu,
                                    const WeightFn& phi,
                                    const std::vector<int>& k_schedule,
                                    double slope_threshold = 0.01);

struct MomentGap {
    int a = 0, b = 0;    // moment z^a conj(z)^b (per coordinate for n = 2)
    int coord = 1;
    double gap = 0.0;
};

struct MomentComparison {
    int max_order = 0;
    double max_gap = 0.0;
    std::vector<MomentGap> gaps;
    bool pass = false;
};

// Compares the moments int z^a conj(z)^b d(.) of the two measures for all
// a + b <= max_order (coordinate-wise for n = 2).
MomentComparison weak_convergence_check(const DiscreteMeasure& beta,
                                        const DiscreteMeasure& reference,
                                        int max_order = 6, double tol = 0.05);

} // namespace plab
