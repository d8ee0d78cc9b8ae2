#include "plab/bergman.hpp"

#include "plab/fekete.hpp"

#include <cmath>

namespace plab {

std::vector<double> bergman_density_at(const OrthonormalBasis& onb,
                                       const CompactGrid& grid) {
    Eigen::MatrixXcd S = evaluate_sections(onb, grid);
    std::vector<double> rho(grid.size());
    for (Eigen::Index i = 0; i < S.rows(); ++i) {
        double w = onb.weight(grid.points[i]);
        double e = std::exp(-2.0 * onb.k * w);
        rho[i] = S.row(i).squaredNorm() * e;
        if (!std::isfinite(rho[i]))
            throw EvaluationError("bergman_density: non-finite density value");
    }
    return rho;
}

BergmanDensity bergman_density(const OrthonormalBasis& onb) {
    BergmanDensity d;
    d.k = onb.k;
    d.n_k = onb.size();
    d.values = bergman_density_at(onb, onb.measure.support);
    double total = 0.0, sup = 0.0;
    for (std::size_t i = 0; i < d.values.size(); ++i) {
        total += onb.measure.masses[i] * d.values[i];
        sup = std::max(sup, d.values[i]);
    }
    d.normalization = total;
    d.normalization_defect = std::abs(total / static_cast<double>(d.n_k) - 1.0);
    d.sup_value = sup;
    return d;
}

DiscreteMeasure bergman_measure(const OrthonormalBasis& onb) {
    BergmanDensity d = bergman_density(onb);
    DiscreteMeasure beta;
    beta.support = onb.measure.support;
    beta.masses.resize(d.values.size());
    for (std::size_t i = 0; i < d.values.size(); ++i)
        beta.masses[i] = onb.measure.masses[i] * d.values[i] / d.normalization;
    beta.validate();
    return beta;
}

BMGrowthReport bm_growth_diagnostic(const DiscreteMeasure& mu,
                                    const WeightFn& phi,
                                    const std::vector<int>& k_schedule,
                                    double slope_threshold) {
    if (k_schedule.size() < 2)
        throw ParameterError("bm_growth_diagnostic: schedule needs >= 2 entries");
    BMGrowthReport rep;
    for (int k : k_schedule) {
        OrthonormalBasis onb = orthonormal_basis_for(mu, phi, k);
        BergmanDensity d = bergman_density(onb);
        rep.log_sup_by_k.push_back({k, std::log(d.sup_value)});
    }
    // extrapolate log(sup rho_k)/(2k) -> 0 under subexponential growth
    std::vector<std::pair<int, double>> normalized;
    for (auto& [k, y] : rep.log_sup_by_k)
        normalized.push_back({k, y / (2.0 * k)});
    if (normalized.size() >= 3)
        rep.fitted_slope = extrapolate_in_k(normalized).first;
    else
        rep.fitted_slope = normalized.back().second;
    rep.bm_plausible = rep.fitted_slope <= slope_threshold;
    return rep;
}

namespace {

cplx moment(const DiscreteMeasure& mu, int a, int b, int coord) {
    cplx acc(0.0, 0.0);
    for (std::size_t i = 0; i < mu.masses.size(); ++i) {
        cplx z = coord == 1 ? mu.support.points[i].z1 : mu.support.points[i].z2;
        acc += mu.masses[i] * std::pow(z, a) * std::pow(std::conj(z), b);
    }
    return acc;
}

} // namespace

MomentComparison weak_convergence_check(const DiscreteMeasure& beta,
                                        const DiscreteMeasure& reference,
                                        int max_order, double tol) {
    if (max_order < 1)
        throw ParameterError("weak_convergence_check: max_order must be >= 1");
    if (beta.support.dim != reference.support.dim)
        throw ParameterError("weak_convergence_check: dimension mismatch");
    MomentComparison cmp;
    cmp.max_order = max_order;
    const int ncoord = beta.support.dim;
    for (int coord = 1; coord <= ncoord; ++coord)
        for (int a = 0; a <= max_order; ++a)
            for (int b = 0; a + b <= max_order; ++b) {
                if (a == 0 && b == 0) continue;
                double g = std::abs(moment(beta, a, b, coord) -
                                    moment(reference, a, b, coord));
                cmp.gaps.push_back({a, b, coord, g});
                cmp.max_gap = std::max(cmp.max_gap, g);
            }
    cmp.pass = cmp.max_gap <= tol;
    return cmp;
}

} // namespace plab
