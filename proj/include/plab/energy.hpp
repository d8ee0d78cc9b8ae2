#pragma once

// Discrete Monge-Ampere measures (1-D native via the five-point Laplacian,
// n = 2 through product structure), energy differences, equilibrium
// measures, Robin constants and the Robin/Rumely transfinite-diameter
// formulas, and the equilibrium-energy derivative check.

#include "plab/envelope.hpp"

namespace plab {

// Uniform rectangular mesh; node (i, j) sits at (x0 + i h, y0 + j h).
struct BoxMesh {
    double x0 = 0.0, y0 = 0.0, h = 0.0;
    int nx = 0, ny = 0;

    std::size_t size() const { return static_cast<std::size_t>(nx) * ny; }
    PointN node(int i, int j) const {
        return {1, cplx(x0 + i * h, y0 + j * h), {}};
    }
    CompactGrid as_grid() const;
};

// Mesh covering the hull of K with the given margin on every side.
BoxMesh mesh_covering(const CompactGrid& K, double margin, double h);

struct MAMeasure {
    enum class Source { laplacian_1d, oracle, product };

    DiscreteMeasure measure; // renormalized to mass 1, sparse support
    Source source = Source::laplacian_1d;
    double mass_defect = 0.0;       // |signed total - 1| before clipping
    double clipped_negative = 0.0;  // total magnitude of clipped negatives
};

// masses = positive part of the discrete Laplacian / (2 pi) times cell area;
// dd^c log|z - a| integrates to the unit Dirac in this normalization.
MAMeasure ma_measure_1d(const std::vector<double>& values, const BoxMesh& mesh,
                        double defect_tol = 0.02);

MAMeasure ma_of_envelope(const ExtremalResult& P, const BoxMesh& mesh,
                         double defect_tol = 0.02);

enum class EnvelopeMethod { automatic, oracle, bergman };

struct EnergyOptions {
    EnvelopeMethod method = EnvelopeMethod::automatic;
    int k = 48;            // bergman degree
    int bm_count = 512;    // size of the Bernstein-Markov quadrature on K
    double mesh_h = 0.02;  // Monge-Ampere mesh spacing
    double margin = 1.0;   // mesh margin beyond the hull of K
};

// Oracle (arcsine / Haar) for model sets with zero weight, otherwise the
// Monge-Ampere of the Bergman envelope.  Diagnoses support concentration.
struct EquilibriumResult {
    MAMeasure ma;
    double support_leak = 0.0; // mass fraction farther than tol from K
    bool support_ok = true;
};

EquilibriumResult equilibrium_measure(const CompactGrid& K, const WeightFn& phi,
                                      const EnergyOptions& opts = {});

// Default Bernstein-Markov quadrature measure for a model set.
DiscreteMeasure default_bm_measure(const CompactGrid& K, int count);

struct EnergyDelta {
    double value = 0.0;
    int n = 1;
    std::vector<double> components; // per-j mixed integrals
};

// n = 1: E(phi) - E(psi) = [ int (phi-psi) dMA(phi) + int (phi-psi) dMA(psi) ] / 2
EnergyDelta energy_delta(const std::function<double(const PointN&)>& phi,
                         const std::function<double(const PointN&)>& psi,
                         const MAMeasure& ma_phi, const MAMeasure& ma_psi);

// n = 2: three-term analog; the mixed measure <dd^c phi ^ dd^c psi> must be
// supplied explicitly (product/oracle structure only).
EnergyDelta energy_delta(const std::function<double(const PointN&)>& phi,
                         const std::function<double(const PointN&)>& psi,
                         const MAMeasure& ma_phi, const MAMeasure& mixed,
                         const MAMeasure& ma_psi);

EnergyDelta energy_eq_delta(const CompactGrid& K1, const WeightFn& phi1,
                            const CompactGrid& K2, const WeightFn& phi2,
                            const EnergyOptions& opts = {});

// Angular average of P(R e^{i theta}) - log R at R0, 2 R0, 4 R0,
// Richardson-extrapolated in 1/R.
double robin_constant(const std::function<double(const PointN&)>& P, double R0,
                      int n_theta = 256);
double robin_constant(const ExtremalResult& P, double R0, int n_theta = 256);

// -log d_inf = gamma(K, v) + int P dd^c P  (n = 1)
double transfinite_via_robin(const CompactGrid& K, const WeightFn& v,
                             const EnergyOptions& opts = {});

// Iterated Robin formula on a product of circles (radii r1, r2) with a
// constant weight c on the product set; returns log d_inf.
double rumely_iterated_robin_circles(double r1, double r2, double c = 0.0,
                                     const EnergyOptions& opts = {});

// Entry point taking the product set itself; detects circle radii and a
// constant separable weight, else throws OracleUnavailableError.
double rumely_iterated_robin(const CompactGrid& K, const WeightFn& v,
                             const EnergyOptions& opts = {});

struct TheoremBReport {
    double fd_slope = 0.0;        // central finite difference at t = 0
    double mu_eq_pairing = 0.0;   // int u d mu_eq(K, phi)
    double gap = 0.0;
    double concavity_residual = 0.0; // max positive second difference
    std::vector<std::pair<double, double>> energy_by_t;
};

TheoremBReport theorem_b_check(const CompactGrid& K, const WeightFn& phi,
                               const WeightFn& u, const std::vector<double>& t_list,
                               const EnergyOptions& opts = {});

} // namespace plab
