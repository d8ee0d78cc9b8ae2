#include "plab/dynamics.hpp"

#include <cmath>
#include <sstream>

namespace plab {

namespace {

cplx eval_poly(const std::vector<cplx>& c, cplx z) {
    cplx acc(0.0, 0.0);
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * z + *it;
    return acc;
}

cplx parse_cplx(const std::string& tok) {
    std::string s = tok;
    if (s.empty()) throw ParameterError("lift spec: empty coefficient");
    if (s.back() == 'i' || s.back() == 'I') {
        s.pop_back();
        // split real and imaginary at the last +/- not in an exponent
        std::size_t cut = std::string::npos;
        for (std::size_t i = s.size(); i-- > 1;) {
            if ((s[i] == '+' || s[i] == '-') &&
                s[i - 1] != 'e' && s[i - 1] != 'E') {
                cut = i;
                break;
            }
        }
        try {
            if (cut == std::string::npos)
                return cplx(0.0, s.empty() || s == "+" ? 1.0
                                 : s == "-"            ? -1.0
                                                       : std::stod(s));
            std::string im = s.substr(cut);
            double iv = im == "+" ? 1.0 : im == "-" ? -1.0 : std::stod(im);
            return cplx(std::stod(s.substr(0, cut)), iv);
        } catch (const std::exception&) {
            throw ParameterError("lift spec: bad coefficient `" + tok + "`");
        }
    }
    try {
        std::size_t used = 0;
        double v = std::stod(s, &used);
        if (used != s.size())
            throw ParameterError("lift spec: bad coefficient `" + tok + "`");
        return cplx(v, 0.0);
    } catch (const ParameterError&) {
        throw;
    } catch (const std::exception&) {
        throw ParameterError("lift spec: bad coefficient `" + tok + "`");
    }
}

std::vector<cplx> parse_coeffs(const std::string& body, int d) {
    std::vector<cplx> out;
    std::stringstream ss(body);
    std::string tok;
    while (std::getline(ss, tok, ',')) out.push_back(parse_cplx(tok));
    if (static_cast<int>(out.size()) != d + 1)
        throw ParameterError("lift spec: expected " + std::to_string(d + 1) +
                             " coefficients, got " + std::to_string(out.size()));
    return out;
}

// log-homogeneous value of the seed at a max-normalized point W
double seed_homog(const WeightFn* phi0, cplx w0, cplx w1) {
    if (!phi0) return 0.0; // log max(|W0|, |W1|) = 0 after normalization
    if (std::abs(w0) < 1e-12) {
        // value at infinity through the logarithmic growth of the seed
        cplx dir = w1 / std::abs(w1);
        cplx zbig = dir * 1e8;
        return std::log(std::abs(w1)) +
               ((*phi0)({1, zbig, {}}) - std::log(std::abs(zbig)));
    }
    return std::log(std::abs(w0)) + (*phi0)({1, w1 / w0, {}});
}

} // namespace

cplx MapLift::apply_chart(cplx z) const {
    return eval_poly(F1, z) / eval_poly(F0, z);
}

MapLift parse_lift(const std::string& spec) {
    MapLift F;
    int d = 0;
    bool have_d = false, have_f0 = false, have_f1 = false;
    std::stringstream ss(spec);
    std::string part;
    std::string f0body, f1body;
    while (std::getline(ss, part, ';')) {
        auto eq = part.find('=');
        if (eq == std::string::npos)
            throw ParameterError("lift spec: expected key=value in `" + part + "`");
        std::string key = part.substr(0, eq), val = part.substr(eq + 1);
        if (key == "d") {
            try {
                d = std::stoi(val);
            } catch (const std::exception&) {
                throw ParameterError("lift spec: bad degree `" + val + "`");
            }
            have_d = true;
        } else if (key == "F0") {
            f0body = val;
            have_f0 = true;
        } else if (key == "F1") {
            f1body = val;
            have_f1 = true;
        } else {
            throw ParameterError("lift spec: unknown key `" + key + "`");
        }
    }
    if (!have_d || !have_f0 || !have_f1)
        throw ParameterError("lift spec: need d=<int>;F0=<coeffs>;F1=<coeffs>");
    if (d < 2 || d > 8)
        throw ParameterError("lift spec: degree must lie in [2, 8]");
    F.degree_d = d;
    F.F0 = parse_coeffs(f0body, d);
    F.F1 = parse_coeffs(f1body, d);
    return F;
}

MapLift scale_lift(const MapLift& F, cplx lambda) {
    MapLift G = F;
    for (auto& c : G.F0) c *= lambda;
    for (auto& c : G.F1) c *= lambda;
    return G;
}

double green_value(const MapLift& F, cplx z, const WeightFn* phi0, int m_max,
                   double tol, int* m_used) {
    const double d = F.degree_d;
    cplx w0(1.0, 0.0), w1 = z;
    double mx = std::max(std::abs(w0), std::abs(w1));
    double logscale = std::log(mx); // log-norm of the un-normalized orbit point
    w0 /= mx;
    w1 /= mx;
    double dm = 1.0; // d^m
    double prev = logscale + seed_homog(phi0, w0, w1);
    for (int m = 1; m <= m_max; ++m) {
        // homogeneous evaluation through the chart: F_i(W0, W1)
        //   = W0^d * P_i(W1 / W0) when W0 dominates, symmetric otherwise
        cplx f0, f1;
        if (std::abs(w0) >= std::abs(w1)) {
            cplx t = w1 / w0;
            cplx p0 = eval_poly(F.F0, t), p1 = eval_poly(F.F1, t);
            cplx w0d = std::pow(w0, F.degree_d);
            f0 = w0d * p0;
            f1 = w0d * p1;
        } else {
            // reversed coefficients give F_i(W0, W1) = W1^d * P_i^rev(W0/W1)
            cplx t = w0 / w1;
            std::vector<cplx> r0(F.F0.rbegin(), F.F0.rend());
            std::vector<cplx> r1(F.F1.rbegin(), F.F1.rend());
            cplx w1d = std::pow(w1, F.degree_d);
            f0 = w1d * eval_poly(r0, t);
            f1 = w1d * eval_poly(r1, t);
        }
        double nv = std::max(std::abs(f0), std::abs(f1));
        if (!(nv > 0.0))
            throw DomainError("green_weight: orbit hit a common zero of the lift");
        w0 = f0 / nv;
        w1 = f1 / nv;
        logscale = d * logscale + std::log(nv);
        dm *= d;
        double cur = (logscale + seed_homog(phi0, w0, w1)) / dm;
        if (std::abs(cur - prev) < tol) {
            if (m_used) *m_used = m;
            return cur;
        }
        prev = cur;
    }
    throw IterationError("green_weight: no convergence after " +
                         std::to_string(m_max) + " iterations; residual " +
                         std::to_string(std::abs(prev)));
}

GreenWeight green_weight(const MapLift& F, const WeightFn* phi0,
                         const CompactGrid& grid, int m_max, double tol) {
    GreenWeight g;
    g.lift = F;
    g.grid = grid;
    g.values.grid = grid;
    g.values.values.reserve(grid.size());
    const double d = F.degree_d;
    double worst = 0.0;
    int worst_m = 0;
    for (const auto& p : grid.points) {
        int used = 0;
        double v = green_value(F, p.z1, phi0, m_max, tol, &used);
        worst_m = std::max(worst_m, used);
        g.values.values.push_back(v);
        // fixed-point residual |d^{-1} g(f(z)) + d^{-1} log|F0(1,z)| - g(z)|
        cplx pz0 = eval_poly(F.F0, p.z1);
        if (std::abs(pz0) > 0.0) {
            double pulled =
                (green_value(F, F.apply_chart(p.z1), phi0, m_max, tol) +
                 std::log(std::abs(pz0))) /
                d;
            double r = std::abs(pulled - v);
            if (r > worst) worst = r;
        }
    }
    g.residual = worst;
    g.iterations_m = worst_m;
    if (worst > 10.0 * tol + 1e-9)
        throw IterationError("green_weight: fixed-point residual " +
                             std::to_string(worst));
    return g;
}

cplx resultant(const MapLift& F) {
    const int d = F.degree_d;
    const int n = 2 * d;
    Eigen::MatrixXcd S = Eigen::MatrixXcd::Zero(n, n);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j <= d; ++j) {
            S(i, i + j) = F.F0[j];
            S(d + i, i + j) = F.F1[j];
        }
    Eigen::FullPivLU<Eigen::MatrixXcd> lu(S);
    if (lu.rank() < n)
        throw DomainError("resultant: vanishing resultant, degenerate map");
    cplx det = lu.determinant();
    if (!(std::abs(det) > 0.0))
        throw DomainError("resultant: vanishing resultant, degenerate map");
    return det;
}

CompactGrid preimage_cloud(const MapLift& F, const CompactGrid& K) {
    if (K.dim != 1) throw ParameterError("preimage_cloud: P^1 only");
    const int d = F.degree_d;
    CompactGrid pre;
    pre.dim = 1;
    pre.kind = GridKind::custom;
    pre.fill_distance = K.fill_distance;
    for (const auto& p : K.points) {
        // roots of F1(1,z) - w F0(1,z)
        std::vector<cplx> c(d + 1);
        double cmax = 0.0;
        for (int j = 0; j <= d; ++j) {
            c[j] = F.F1[j] - p.z1 * F.F0[j];
            cmax = std::max(cmax, std::abs(c[j]));
        }
        if (!(cmax > 0.0))
            throw DomainError("preimage_cloud: identically zero fibre equation");
        int deg = d;
        while (deg > 0 && std::abs(c[deg]) < 1e-13 * cmax) --deg;
        if (deg == 0)
            throw DomainError("preimage_cloud: constant fibre equation");
        Eigen::MatrixXcd comp = Eigen::MatrixXcd::Zero(deg, deg);
        for (int i = 1; i < deg; ++i) comp(i, i - 1) = 1.0;
        for (int i = 0; i < deg; ++i) comp(i, deg - 1) = -c[i] / c[deg];
        Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(comp, false);
        for (int i = 0; i < deg; ++i)
            pre.points.push_back({1, es.eigenvalues()(i), {}});
    }
    return pre;
}

WeightFn pullback_weight(const MapLift& F, const WeightFn& psi) {
    WeightFn w;
    const double d = F.degree_d;
    auto f0 = F.F0;
    MapLift Fc = F;
    auto pe = psi.eval;
    w.eval = [Fc, f0, pe, d](const PointN& p) {
        cplx p0 = eval_poly(f0, p.z1);
        if (!(std::abs(p0) > 0.0))
            throw EvaluationError("pullback_weight: F0 vanishes at the point");
        return (pe({1, Fc.apply_chart(p.z1), {}}) + std::log(std::abs(p0))) / d;
    };
    w.growth = WeightFn::Growth::logarithmic;
    w.label = "pullback(" + psi.label + ")";
    return w;
}

PullbackReport pullback_check(const MapLift& F, const CompactGrid& K,
                              const WeightFn& psi,
                              const std::vector<int>& k_schedule) {
    PullbackReport rep;
    const double d = F.degree_d;
    CompactGrid preK = preimage_cloud(F, K);
    WeightFn pulled = pullback_weight(F, psi);
    rep.lhs_estimate = transfinite_diameter_leja(preK, pulled, k_schedule);
    rep.base_estimate = transfinite_diameter_leja(K, psi, k_schedule);
    rep.lhs = rep.lhs_estimate.log_d_inf;
    rep.base = rep.base_estimate.log_d_inf;
    rep.res_log_c = -std::log(std::abs(resultant(F))) / (d * d);
    rep.rhs = rep.base / d + rep.res_log_c;
    rep.gap = std::abs(rep.lhs - rep.rhs);
    rep.implied_log_c = rep.lhs - rep.base / d;
    return rep;
}

PullbackEnvelopeReport pullback_envelope_check(const MapLift& F,
                                               const CompactGrid& K,
                                               const WeightFn& phi, int k,
                                               const CompactGrid& eval_grid) {
    const double d = F.degree_d;
    CompactGrid preK = preimage_cloud(F, K);
    WeightFn pulled = pullback_weight(F, phi);
    CompactGrid empty;
    empty.dim = 1;
    ExtremalResult lhs =
        extremal_bergman(preK, pulled, uniform_measure(preK), k, empty);
    ExtremalResult base =
        extremal_bergman(K, phi, uniform_measure(K), k, empty);

    PullbackEnvelopeReport rep;
    rep.eval_count = eval_grid.size();
    for (const auto& p : eval_grid.points) {
        cplx p0 = eval_poly(F.F0, p.z1);
        if (!(std::abs(p0) > 0.0)) continue;
        double rhs =
            (base.eval({1, F.apply_chart(p.z1), {}}) + std::log(std::abs(p0))) /
            d;
        rep.max_gap = std::max(rep.max_gap, std::abs(lhs.eval(p) - rhs));
    }
    return rep;
}

} // namespace plab
