#pragma once

// Convergence harnesses composing the other modules: determinant-functional
// differences against energy targets, the L^2/L^infinity sandwich, the
// determinant-section limit along both routes, and the derivative check.

#include "plab/bergman.hpp"
#include "plab/energy.hpp"
#include "plab/fekete.hpp"

namespace plab {

enum class ClaimId { thm_a_i, thm_a_ii, cor_a_i, cor_a_ii, lemma_elde, thm_b };

std::string claim_name(ClaimId id);

struct ConvergenceReport {
    ClaimId claim = ClaimId::thm_a_i;
    std::vector<std::pair<double, double>> per_k; // (k or t, lhs value)
    std::vector<std::pair<double, double>> per_k_alt; // second route, optional
    double target = 0.0;
    double extrapolated = 0.0;
    double extrapolated_alt = 0.0;
    double gap = 0.0;
    double tolerance = 0.03;
    bool pass = false;
};

// L_k(mu1, phi1) - L_k(mu2, phi2) along the schedule, extrapolated and
// compared against the equilibrium-energy difference of the supports.
ConvergenceReport verify_theorem_a(const DiscreteMeasure& mu1,
                                   const WeightFn& phi1,
                                   const DiscreteMeasure& mu2,
                                   const WeightFn& phi2,
                                   const std::vector<int>& k_schedule,
                                   double tolerance = 0.03,
                                   const EnergyOptions& opts = {});

struct SandwichRow {
    int k = 0;
    double gap = 0.0;       // D_k - L^2 route, the Fekete/L^2 log-det gap
    double upper = 0.0;     // (1/2k) log sup rho
    bool within = false;    // -slack <= gap <= upper + slack
};

struct SandwichReport {
    std::vector<SandwichRow> rows;
    double extrapolated_gap = 0.0;
    bool sandwich_ok = false; // every row within its bounds
    bool vanishes = false;    // extrapolated gap within tolerance of 0
};

// 0 <= L_k(mu, phi) - L_k(K, phi) <= (1/2k) log sup_K rho_k, checked per k
// with numerical slack; reports whether the gap extrapolates to 0.
SandwichReport verify_lemma_elde(const CompactGrid& K, const WeightFn& phi,
                                 const DiscreteMeasure& mu_on_K,
                                 const std::vector<int>& k_schedule,
                                 double tolerance = 0.03,
                                 double slack = 1e-6);

// (1/(k N_k)) log ||det S_k|| against the energy target, route (i) through
// the extracted configurations and route (ii) through the L^2 norm when a
// measure is supplied.
ConvergenceReport verify_corollary_a(const DiscreteMeasure& nu_ref,
                                     const CompactGrid& K, const WeightFn& phi,
                                     const DiscreteMeasure* mu_opt,
                                     const std::vector<int>& k_schedule,
                                     double tolerance = 0.03,
                                     const EnergyOptions& opts = {});

// Wraps the derivative check as a ConvergenceReport: per_k holds the
// (t, energy) curve, extrapolated the finite-difference slope, target the
// equilibrium-measure pairing.
ConvergenceReport verify_theorem_b(const CompactGrid& K, const WeightFn& phi,
                                   const WeightFn& u,
                                   const std::vector<double>& t_list,
                                   double tolerance = 0.03,
                                   const EnergyOptions& opts = {});

} // namespace plab
