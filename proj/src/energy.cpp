#include "plab/energy.hpp"

#include <cmath>
#include <numbers>

namespace plab {

namespace {

constexpr double kPi = std::numbers::pi;

struct Hull {
    double xlo, xhi, ylo, yhi;
};

Hull hull_of(const CompactGrid& K) {
    Hull h{1e300, -1e300, 1e300, -1e300};
    for (const auto& p : K.points) {
        h.xlo = std::min(h.xlo, p.z1.real());
        h.xhi = std::max(h.xhi, p.z1.real());
        h.ylo = std::min(h.ylo, p.z1.imag());
        h.yhi = std::max(h.yhi, p.z1.imag());
    }
    return h;
}

std::vector<double> eval_on(const ExtremalResult& P, const CompactGrid& grid) {
    if (P.eval_many) return P.eval_many(grid);
    std::vector<double> out;
    out.reserve(grid.size());
    for (const auto& p : grid.points) out.push_back(P.eval(p));
    return out;
}

double integrate(const std::function<double(const PointN&)>& f,
                 const DiscreteMeasure& mu) {
    double acc = 0.0;
    for (std::size_t i = 0; i < mu.masses.size(); ++i)
        acc += mu.masses[i] * f(mu.support.points[i]);
    return acc;
}

double integrate(const ExtremalResult& P, const DiscreteMeasure& mu) {
    std::vector<double> v = eval_on(P, mu.support);
    double acc = 0.0;
    for (std::size_t i = 0; i < mu.masses.size(); ++i)
        acc += mu.masses[i] * v[i];
    return acc;
}

// circle recovery: center = cloud mean, radius = mean distance to it
void circle_params(const CompactGrid& K, cplx* center, double* r) {
    cplx c(0.0, 0.0);
    for (const auto& p : K.points) c += p.z1;
    c /= static_cast<double>(K.size());
    double rr = 0.0;
    for (const auto& p : K.points) rr += std::abs(p.z1 - c);
    rr /= static_cast<double>(K.size());
    *center = c;
    *r = rr;
}

bool is_zero_weight(const WeightFn& w, const CompactGrid& K) {
    for (const auto& p : K.points)
        if (std::abs(w(p)) > 1e-14) return false;
    return true;
}

bool oracle_applicable(const CompactGrid& K, const WeightFn& phi) {
    if (!(K.kind == GridKind::interval || K.kind == GridKind::circle ||
          K.kind == GridKind::disc_boundary ||
          (K.kind == GridKind::torus && K.dim == 1)))
        return false;
    return is_zero_weight(phi, K);
}

ExtremalResult compute_envelope(const CompactGrid& K, const WeightFn& phi,
                                const EnergyOptions& opts) {
    CompactGrid empty;
    empty.dim = K.dim;
    bool use_oracle = opts.method == EnvelopeMethod::oracle ||
                      (opts.method == EnvelopeMethod::automatic &&
                       oracle_applicable(K, phi));
    if (use_oracle) {
        if (!oracle_applicable(K, phi))
            throw OracleUnavailableError("no closed-form envelope for this set");
        OracleParams op;
        if (K.kind == GridKind::interval) {
            Hull h = hull_of(K);
            op.a = h.xlo;
            op.b = h.xhi;
            return extremal_oracle(GridKind::interval, op, "zero", empty);
        }
        circle_params(K, &op.center, &op.r);
        return extremal_oracle(GridKind::circle, op, "zero", empty);
    }
    DiscreteMeasure mu = default_bm_measure(K, opts.bm_count);
    return extremal_bergman(K, phi, mu, opts.k, empty);
}

} // namespace

CompactGrid BoxMesh::as_grid() const {
    CompactGrid g;
    g.dim = 1;
    g.kind = GridKind::custom;
    g.points.reserve(size());
    for (int j = 0; j < ny; ++j)
        for (int i = 0; i < nx; ++i) g.points.push_back(node(i, j));
    g.fill_distance = h * std::numbers::sqrt2 / 2.0;
    return g;
}

BoxMesh mesh_covering(const CompactGrid& K, double margin, double h) {
    if (h <= 0.0 || margin < 0.0) throw ParameterError("mesh: bad parameters");
    Hull hl = hull_of(K);
    BoxMesh m;
    m.x0 = hl.xlo - margin;
    m.y0 = hl.ylo - margin;
    m.h = h;
    m.nx = static_cast<int>(std::ceil((hl.xhi + margin - m.x0) / h)) + 1;
    m.ny = static_cast<int>(std::ceil((hl.yhi + margin - m.y0) / h)) + 1;
    return m;
}

MAMeasure ma_measure_1d(const std::vector<double>& values, const BoxMesh& mesh,
                        double defect_tol) {
    if (values.size() != mesh.size())
        throw ParameterError("ma_measure_1d: value/mesh size mismatch");
    const int nx = mesh.nx, ny = mesh.ny;
    auto at = [&](int i, int j) { return values[static_cast<std::size_t>(j) * nx + i]; };

    MAMeasure ma;
    ma.source = MAMeasure::Source::laplacian_1d;
    double pos = 0.0, neg = 0.0;
    std::vector<std::pair<PointN, double>> atoms;
    const double cell = mesh.h * mesh.h;
    for (int j = 1; j + 1 < ny; ++j) {
        for (int i = 1; i + 1 < nx; ++i) {
            double lap = (at(i + 1, j) + at(i - 1, j) + at(i, j + 1) +
                          at(i, j - 1) - 4.0 * at(i, j)) /
                         cell;
            double mass = lap * cell / (2.0 * kPi);
            if (mass > 0.0) {
                pos += mass;
                atoms.push_back({mesh.node(i, j), mass});
            } else {
                neg += -mass;
            }
        }
    }
    // the signed sum telescopes to the boundary flux, so it detects an
    // under-resolved mesh; the clipped negatives are reported separately
    ma.mass_defect = std::abs((pos - neg) - 1.0);
    ma.clipped_negative = neg;
    if (ma.mass_defect > defect_tol)
        throw ResolutionError("ma_measure_1d: mass defect " +
                              std::to_string(ma.mass_defect) +
                              "; refine the mesh");
    ma.measure.support.dim = 1;
    ma.measure.support.kind = GridKind::custom;
    ma.measure.support.fill_distance = mesh.h;
    for (auto& [p, m] : atoms) {
        ma.measure.support.points.push_back(p);
        ma.measure.masses.push_back(m / pos);
    }
    ma.measure.validate();
    return ma;
}

MAMeasure ma_of_envelope(const ExtremalResult& P, const BoxMesh& mesh,
                         double defect_tol) {
    return ma_measure_1d(eval_on(P, mesh.as_grid()), mesh, defect_tol);
}

DiscreteMeasure default_bm_measure(const CompactGrid& K, int count) {
    switch (K.kind) {
    case GridKind::interval: {
        Hull h = hull_of(K);
        DiscreteMeasure base = arcsine_measure(count);
        double m = (h.xlo + h.xhi) / 2.0, s = (h.xhi - h.xlo) / 2.0;
        for (auto& p : base.support.points) p.z1 = m + s * p.z1;
        base.support.fill_distance *= s;
        return base;
    }
    case GridKind::circle:
    case GridKind::disc_boundary: {
        cplx c;
        double r;
        circle_params(K, &c, &r);
        return haar_measure(make_circle(c, r, count));
    }
    case GridKind::torus:
        if (K.dim == 1) return haar_measure(K);
        return haar_measure(K);
    default:
        return uniform_measure(K);
    }
}

EquilibriumResult equilibrium_measure(const CompactGrid& K, const WeightFn& phi,
                                      const EnergyOptions& opts) {
    EquilibriumResult res;
    bool use_oracle = opts.method == EnvelopeMethod::oracle ||
                      (opts.method == EnvelopeMethod::automatic &&
                       oracle_applicable(K, phi));
    if (use_oracle && oracle_applicable(K, phi)) {
        // analytic equilibrium measures of the model sets
        res.ma.source = MAMeasure::Source::oracle;
        if (K.kind == GridKind::interval) {
            Hull h = hull_of(K);
            DiscreteMeasure m = arcsine_measure(opts.bm_count);
            double mid = (h.xlo + h.xhi) / 2.0, s = (h.xhi - h.xlo) / 2.0;
            for (auto& p : m.support.points) p.z1 = mid + s * p.z1;
            m.support.fill_distance *= s;
            res.ma.measure = m;
        } else {
            cplx c;
            double r;
            circle_params(K, &c, &r);
            res.ma.measure = haar_measure(make_circle(c, r, opts.bm_count));
        }
        return res;
    }

    ExtremalResult P = compute_envelope(K, phi, opts);
    BoxMesh mesh = mesh_covering(K, opts.margin, opts.mesh_h);
    res.ma = ma_of_envelope(P, mesh);

    double tol = std::max(K.fill_distance, 2.0 * mesh.h);
    double leak = 0.0;
    for (std::size_t i = 0; i < res.ma.measure.masses.size(); ++i) {
        const PointN& p = res.ma.measure.support.points[i];
        double dmin = 1e300;
        for (const auto& q : K.points)
            dmin = std::min(dmin, std::abs(p.z1 - q.z1));
        if (dmin > tol) leak += res.ma.measure.masses[i];
    }
    res.support_leak = leak;
    res.support_ok = leak <= 0.02;
    return res;
}

EnergyDelta energy_delta(const std::function<double(const PointN&)>& phi,
                         const std::function<double(const PointN&)>& psi,
                         const MAMeasure& ma_phi, const MAMeasure& ma_psi) {
    auto diff = [&](const PointN& p) { return phi(p) - psi(p); };
    EnergyDelta d;
    d.n = 1;
    d.components = {integrate(diff, ma_phi.measure),
                    integrate(diff, ma_psi.measure)};
    d.value = (d.components[0] + d.components[1]) / 2.0;
    return d;
}

EnergyDelta energy_delta(const std::function<double(const PointN&)>& phi,
                         const std::function<double(const PointN&)>& psi,
                         const MAMeasure& ma_phi, const MAMeasure& mixed,
                         const MAMeasure& ma_psi) {
    auto diff = [&](const PointN& p) { return phi(p) - psi(p); };
    EnergyDelta d;
    d.n = 2;
    d.components = {integrate(diff, ma_phi.measure),
                    integrate(diff, mixed.measure),
                    integrate(diff, ma_psi.measure)};
    d.value = (d.components[0] + d.components[1] + d.components[2]) / 3.0;
    return d;
}

EnergyDelta energy_eq_delta(const CompactGrid& K1, const WeightFn& phi1,
                            const CompactGrid& K2, const WeightFn& phi2,
                            const EnergyOptions& opts) {
    if (K1.dim != 1 || K2.dim != 1)
        throw ParameterError("energy_eq_delta: n = 1 only");
    // use one method for both sides: mixing the closed-form envelope with the
    // degree-k estimator leaves an uncancelled O(log k / k) bias in the
    // difference
    EnergyOptions shared = opts;
    if (opts.method == EnvelopeMethod::automatic &&
        (!oracle_applicable(K1, phi1) || !oracle_applicable(K2, phi2)))
        shared.method = EnvelopeMethod::bergman;
    ExtremalResult P1 = compute_envelope(K1, phi1, shared);
    ExtremalResult P2 = compute_envelope(K2, phi2, shared);

    // shared mesh over both sets
    CompactGrid merged = K1;
    merged.kind = GridKind::custom;
    merged.points.insert(merged.points.end(), K2.points.begin(),
                         K2.points.end());
    BoxMesh mesh = mesh_covering(merged, opts.margin, opts.mesh_h);
    MAMeasure ma1 = ma_of_envelope(P1, mesh);
    MAMeasure ma2 = ma_of_envelope(P2, mesh);

    auto diff_int = [&](const MAMeasure& ma) {
        std::vector<double> v1 = eval_on(P1, ma.measure.support);
        std::vector<double> v2 = eval_on(P2, ma.measure.support);
        double acc = 0.0;
        for (std::size_t i = 0; i < ma.measure.masses.size(); ++i)
            acc += ma.measure.masses[i] * (v1[i] - v2[i]);
        return acc;
    };
    EnergyDelta d;
    d.n = 1;
    d.components = {diff_int(ma1), diff_int(ma2)};
    d.value = (d.components[0] + d.components[1]) / 2.0;
    return d;
}

double robin_constant(const std::function<double(const PointN&)>& P, double R0,
                      int n_theta) {
    if (R0 <= 0.0 || n_theta < 8)
        throw ParameterError("robin_constant: bad parameters");
    auto avg = [&](double R) {
        double acc = 0.0;
        for (int j = 0; j < n_theta; ++j) {
            double th = 2.0 * kPi * j / n_theta;
            acc += P({1, R * cplx(std::cos(th), std::sin(th)), {}});
        }
        return acc / n_theta - std::log(R);
    };
    // a(R) = gamma + c1/R + c2/R^2 at R0, 2R0, 4R0
    double a0 = avg(R0), a1 = avg(2.0 * R0), a2 = avg(4.0 * R0);
    // exact elimination of c1, c2
    // a0 = g + u + v;  a1 = g + u/2 + v/4;  a2 = g + u/4 + v/16
    // with u = c1/R0, v = c2/R0^2
    double g = (a0 - 6.0 * a1 + 8.0 * a2) / 3.0;
    return g;
}

double robin_constant(const ExtremalResult& P, double R0, int n_theta) {
    return robin_constant(P.eval, R0, n_theta);
}

double transfinite_via_robin(const CompactGrid& K, const WeightFn& v,
                             const EnergyOptions& opts) {
    if (K.dim != 1)
        throw ParameterError("transfinite_via_robin: n = 1 only");
    ExtremalResult P = compute_envelope(K, v, opts);
    double R0 = std::max(10.0 * K.diameter(), 10.0);
    double gamma = robin_constant(P, R0);
    BoxMesh mesh = mesh_covering(K, opts.margin, opts.mesh_h);
    MAMeasure ma = ma_of_envelope(P, mesh);
    double I = integrate(P, ma.measure);
    return -(gamma + I);
}

double rumely_iterated_robin_circles(double r1, double r2, double c,
                                     const EnergyOptions& opts) {
    if (r1 <= 0.0 || r2 <= 0.0)
        throw ParameterError("rumely: radii must be positive");

    // envelope of the product set and its equilibrium measure (distinguished
    // boundary); the j = 0 term integrates (log|Z_0| - P) = -P over it
    auto P = [r1, r2, c](const PointN& p) {
        double v1 = std::max(0.0, std::log(std::abs(p.z1) / r1));
        double v2 = std::max(0.0, std::log(std::abs(p.z2) / r2));
        return std::max(v1, v2) + c;
    };
    CompactGrid prod = make_product(make_circle(cplx(0, 0), r1, 64),
                                    make_circle(cplx(0, 0), r2, 64));
    DiscreteMeasure mu_prod = uniform_measure(prod);
    double t0 = -integrate(P, mu_prod);

    // restriction to the line at infinity: q(u) = max(-log r1, log|u/r2|) + c
    auto q = [r1, r2, c](const PointN& p) {
        return std::max(-std::log(r1), std::log(std::abs(p.z1) / r2)) + c;
    };
    double rho = r2 / r1; // circle where dd^c q lives
    double scale = std::max(1.0, rho);
    CompactGrid qcirc = make_circle(cplx(0, 0), rho, 64);
    BoxMesh mesh = mesh_covering(qcirc, opts.margin * scale, opts.mesh_h * scale);
    std::vector<double> qvals;
    qvals.reserve(mesh.size());
    CompactGrid mg = mesh.as_grid();
    for (const auto& p : mg.points) qvals.push_back(q(p));
    MAMeasure maq = ma_measure_1d(qvals, mesh);
    double t1 = -integrate(q, maq.measure);

    double t2 = -robin_constant(q, 10.0 * scale);

    return (t0 + t1 + t2) / 2.0;
}

double rumely_iterated_robin(const CompactGrid& K, const WeightFn& v,
                             const EnergyOptions& opts) {
    if (K.dim != 2 ||
        !(K.kind == GridKind::torus || K.kind == GridKind::product))
        throw OracleUnavailableError(
            "rumely: requires a product-of-circles set in C^2");
    double r1 = 0.0, r2 = 0.0;
    for (const auto& p : K.points) {
        r1 += std::abs(p.z1);
        r2 += std::abs(p.z2);
    }
    r1 /= static_cast<double>(K.size());
    r2 /= static_cast<double>(K.size());
    for (const auto& p : K.points)
        if (std::abs(std::abs(p.z1) - r1) > 1e-9 ||
            std::abs(std::abs(p.z2) - r2) > 1e-9)
            throw OracleUnavailableError(
                "rumely: cloud is not a distinguished product boundary");
    double c = v(K.points.front());
    for (const auto& p : K.points)
        if (std::abs(v(p) - c) > 1e-9)
            throw OracleUnavailableError(
                "rumely: only constant weights are supported");
    return rumely_iterated_robin_circles(r1, r2, c, opts);
}

TheoremBReport theorem_b_check(const CompactGrid& K, const WeightFn& phi,
                               const WeightFn& u,
                               const std::vector<double>& t_list,
                               const EnergyOptions& opts) {
    if (t_list.empty())
        throw ParameterError("theorem_b_check: t_list must be nonempty");
    std::vector<double> ts{0.0};
    for (double t : t_list) {
        if (t <= 0.0)
            throw ParameterError("theorem_b_check: t values must be positive");
        ts.push_back(t);
        ts.push_back(-t);
    }
    std::sort(ts.begin(), ts.end());

    auto shifted = [&](double t) {
        WeightFn w;
        auto pe = phi.eval;
        auto ue = u.eval;
        w.eval = [pe, ue, t](const PointN& p) { return pe(p) + t * ue(p); };
        w.growth = phi.growth;
        w.label = phi.label + "+t*u";
        return w;
    };

    // Bergman envelopes throughout so the estimator bias cancels in the
    // differences
    EnergyOptions eopts = opts;
    eopts.method = EnvelopeMethod::bergman;

    BoxMesh mesh = mesh_covering(K, opts.margin, opts.mesh_h);
    ExtremalResult P0 = compute_envelope(K, shifted(0.0), eopts);
    MAMeasure ma0 = ma_of_envelope(P0, mesh);

    TheoremBReport rep;
    std::vector<std::pair<double, double>> et;
    for (double t : ts) {
        double e;
        if (t == 0.0) {
            e = 0.0;
        } else {
            ExtremalResult Pt = compute_envelope(K, shifted(t), eopts);
            MAMeasure mat = ma_of_envelope(Pt, mesh);
            auto fpt = [&](const DiscreteMeasure& m) {
                std::vector<double> a = eval_on(Pt, m.support);
                std::vector<double> b = eval_on(P0, m.support);
                double acc = 0.0;
                for (std::size_t i = 0; i < m.masses.size(); ++i)
                    acc += m.masses[i] * (a[i] - b[i]);
                return acc;
            };
            e = (fpt(mat.measure) + fpt(ma0.measure)) / 2.0;
        }
        et.push_back({t, e});
    }
    rep.energy_by_t = et;

    double tmin = *std::min_element(t_list.begin(), t_list.end());
    auto energy_at = [&](double t) {
        for (auto& [tt, e] : et)
            if (std::abs(tt - t) < 1e-15) return e;
        throw ParameterError("theorem_b_check: internal t lookup");
    };
    rep.fd_slope = (energy_at(tmin) - energy_at(-tmin)) / (2.0 * tmin);

    // second divided differences over consecutive t triples
    double worst = -1e300;
    for (std::size_t i = 0; i + 2 < et.size(); ++i) {
        auto [ta, fa] = et[i];
        auto [tb, fb] = et[i + 1];
        auto [tc, fc] = et[i + 2];
        double d2 = 2.0 * ((fc - fb) / (tc - tb) - (fb - fa) / (tb - ta)) /
                    (tc - ta);
        worst = std::max(worst, d2);
    }
    rep.concavity_residual = worst;

    EquilibriumResult eq = equilibrium_measure(K, phi, opts);
    rep.mu_eq_pairing = integrate(u.eval, eq.ma.measure);
    rep.gap = std::abs(rep.fd_slope - rep.mu_eq_pairing);
    return rep;
}

} // namespace plab
