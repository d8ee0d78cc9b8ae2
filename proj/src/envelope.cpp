#include "plab/envelope.hpp"

#include <cmath>
#include <memory>

namespace plab {

namespace {

// log sum_i |s_i(x)|^2 with the max modulus factored out, so large-|z|
// evaluations cannot overflow after squaring.
double log_sum_sq(const Eigen::RowVectorXcd& s) {
    double m = 0.0;
    for (Eigen::Index j = 0; j < s.size(); ++j) m = std::max(m, std::abs(s(j)));
    if (!(m > 0.0)) return -std::numeric_limits<double>::infinity();
    double acc = 0.0;
    for (Eigen::Index j = 0; j < s.size(); ++j) {
        double r = std::abs(s(j)) / m;
        acc += r * r;
    }
    return 2.0 * std::log(m) + std::log(acc);
}

GridFunction sample(const ExtremalResult& res, const CompactGrid& grid) {
    GridFunction g;
    g.grid = grid;
    if (res.eval_many) {
        g.values = res.eval_many(grid);
    } else {
        g.values.reserve(grid.size());
        for (const auto& p : grid.points) g.values.push_back(res.eval(p));
    }
    return g;
}

double sup_defect_on(const std::function<double(const PointN&)>& f,
                     const CompactGrid& K, const WeightFn& phi) {
    double d = -std::numeric_limits<double>::infinity();
    for (const auto& p : K.points) d = std::max(d, f(p) - phi(p));
    return d;
}

} // namespace

ExtremalResult extremal_bergman(const CompactGrid& K, const WeightFn& phi,
                                const DiscreteMeasure& mu_K, int k,
                                const CompactGrid& eval_grid, bool centered) {
    if (k < 1) throw ParameterError("extremal_bergman: k must be >= 1");
    auto onb = std::make_shared<OrthonormalBasis>(
        orthonormal_basis_for(mu_K, phi, k));
    double shift =
        centered ? std::log(static_cast<double>(onb->size())) / (2.0 * k) : 0.0;

    ExtremalResult res;
    res.method = ExtremalResult::Method::bergman;
    res.k_used = k;
    res.eval_many = [onb, k, shift](const CompactGrid& grid) {
        std::vector<double> out(grid.size());
        // chunked so huge meshes don't allocate a huge section matrix
        const std::size_t chunk = 4096;
        for (std::size_t base = 0; base < grid.size(); base += chunk) {
            CompactGrid part;
            part.dim = grid.dim;
            std::size_t hi = std::min(grid.size(), base + chunk);
            part.points.assign(grid.points.begin() + base,
                               grid.points.begin() + hi);
            Eigen::MatrixXcd S = evaluate_sections(*onb, part);
            for (Eigen::Index i = 0; i < S.rows(); ++i)
                out[base + i] = log_sum_sq(S.row(i)) / (2.0 * k) - shift;
        }
        return out;
    };
    res.eval = [onb, k, shift](const PointN& p) {
        CompactGrid one;
        one.dim = p.dim;
        one.points = {p};
        Eigen::MatrixXcd S = evaluate_sections(*onb, one);
        return log_sum_sq(S.row(0)) / (2.0 * k) - shift;
    };
    res.sampled = sample(res, eval_grid);
    res.sup_defect = sup_defect_on(res.eval, K, phi);
    return res;
}

ExtremalResult extremal_oracle(GridKind kind, const OracleParams& params,
                               const std::string& phi_spec,
                               const CompactGrid& eval_grid) {
    if (!(phi_spec.empty() || phi_spec == "zero" || phi_spec == "log_z0"))
        throw OracleUnavailableError(
            "extremal_oracle: only the zero weight has a closed form");

    ExtremalResult res;
    res.k_used = 0;
    res.sup_defect = 0.0;

    switch (kind) {
    case GridKind::interval: {
        double m = (params.a + params.b) / 2.0;
        double s = (params.b - params.a) / 2.0;
        if (s <= 0.0) throw ParameterError("oracle: requires a < b");
        res.method = ExtremalResult::Method::oracle_interval;
        res.eval = [m, s](const PointN& p) {
            cplx w = (p.z1 - m) / s;
            // the two sqrt branches give reciprocal moduli; |.| selects the
            // branch with g >= 0, g = 0 on the segment
            cplx t = w + std::sqrt(w * w - 1.0);
            return std::abs(std::log(std::abs(t)));
        };
        break;
    }
    case GridKind::circle:
    case GridKind::disc_boundary: {
        cplx c = params.center;
        double r = params.r;
        if (r <= 0.0) throw ParameterError("oracle: radius must be positive");
        res.method = ExtremalResult::Method::oracle_disc;
        res.eval = [c, r](const PointN& p) {
            return std::max(0.0, std::log(std::abs(p.z1 - c) / r));
        };
        break;
    }
    case GridKind::torus: {
        int n = params.torus_n;
        res.method = ExtremalResult::Method::oracle_torus;
        res.eval = [n](const PointN& p) {
            double v = std::max(0.0, std::log(std::abs(p.z1)));
            if (n == 2 || p.dim == 2)
                v = std::max(v, std::max(0.0, std::log(std::abs(p.z2))));
            return v;
        };
        break;
    }
    default:
        throw OracleUnavailableError("extremal_oracle: unsupported set kind");
    }
    res.sampled = sample(res, eval_grid);
    return res;
}

ExtremalResult product_envelope(const ExtremalResult& e1,
                                const ExtremalResult& e2,
                                const CompactGrid& eval_grid) {
    ExtremalResult res;
    res.method = ExtremalResult::Method::product;
    res.k_used = std::max(e1.k_used, e2.k_used);
    auto f1 = e1.eval, f2 = e2.eval;
    res.eval = [f1, f2](const PointN& p) {
        PointN p1{1, p.z1, {}};
        PointN p2{1, p.z2, {}};
        return std::max(f1(p1), f2(p2));
    };
    res.sampled = sample(res, eval_grid);
    res.sup_defect = std::max(e1.sup_defect, e2.sup_defect);
    return res;
}

RegularityReport regularity_check(const ExtremalResult& result,
                                  const CompactGrid& K, const WeightFn& phi,
                                  double defect_tol, double contact_tol,
                                  double min_contact_fraction) {
    RegularityReport rep;
    rep.sup_defect = -std::numeric_limits<double>::infinity();
    std::size_t contact = 0;
    for (const auto& p : K.points) {
        double d = result(p) - phi(p);
        rep.sup_defect = std::max(rep.sup_defect, d);
        if (std::abs(d) < contact_tol) ++contact;
    }
    rep.contact_fraction = static_cast<double>(contact) / K.size();
    rep.pass = rep.sup_defect <= defect_tol &&
               rep.contact_fraction >= min_contact_fraction;
    return rep;
}

} // namespace plab
