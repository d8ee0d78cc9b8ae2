#include "plab/fekete.hpp"

#include <cmath>

namespace plab {

OrthonormalBasis torus_reference_basis(int n, int k) {
    // Monomials are exactly orthonormal under Haar on the torus (count >
    // 2k avoids aliasing), so the coefficient matrix is the identity;
    // running a QR here would only rotate tied columns of different degrees
    // together, which wrecks determinant evaluations downstream.
    int count = std::max(2 * k + 1, 16);
    CompactGrid torus = make_torus(n, count);
    OrthonormalBasis onb;
    onb.base = make_basis(n, k, BasisFamily::monomial);
    onb.coeffs = Eigen::MatrixXcd::Identity(onb.base.size, onb.base.size);
    onb.measure = haar_measure(torus);
    onb.weight = zero_weight();
    onb.k = k;
    return onb;
}

namespace {

// Weighted section values: row p = [s_1(x_p), ..., s_N(x_p)] e^{-k phi(x_p)}.
Eigen::MatrixXcd weighted_rows(const CompactGrid& K, const WeightFn& phi, int k,
                               const OrthonormalBasis& onb) {
    Eigen::MatrixXcd V = evaluate_sections(onb, K);
    for (Eigen::Index i = 0; i < V.rows(); ++i) {
        double w = phi(K.points[i]);
        if (!std::isfinite(w))
            throw EvaluationError("leja: weight not finite on cloud point");
        V.row(i) *= std::exp(-static_cast<double>(k) * w);
    }
    if (!V.allFinite())
        throw EvaluationError("leja: non-finite weighted section value");
    return V;
}

// Residual of `row` against the orthonormal rows U(0..m-1), re-orthogonalized
// twice for accuracy.  Returns the residual vector in place and its norm.
double mgs_residual(Eigen::VectorXcd& row, const Eigen::MatrixXcd& U,
                    Eigen::Index m) {
    for (int pass = 0; pass < 2; ++pass)
        for (Eigen::Index j = 0; j < m; ++j) {
            // <row, u_j> with the u_j stored as rows of U
            cplx c = (U.row(j).conjugate().array() * row.transpose().array()).sum();
            row -= c * U.row(j).transpose();
        }
    return row.norm();
}

// log|det| of the N selected rows of V, via Householder QR.
double logdet_of_rows(const Eigen::MatrixXcd& V, const std::vector<int>& rows) {
    const auto n = static_cast<Eigen::Index>(rows.size());
    Eigen::MatrixXcd M(n, V.cols());
    for (Eigen::Index i = 0; i < n; ++i) M.row(i) = V.row(rows[i]);
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(M);
    double logdet = 0.0;
    for (Eigen::Index j = 0; j < n; ++j) {
        double d = std::abs(qr.matrixQR()(j, j));
        if (d <= 0.0 || !std::isfinite(std::log(d)))
            return -std::numeric_limits<double>::infinity();
        logdet += std::log(d);
    }
    return logdet;
}

} // namespace

LejaConfig leja_extract(const CompactGrid& K, const WeightFn& phi, int k,
                        const OrthonormalBasis& onb_reference,
                        int refinement_passes) {
    const long n_k = onb_reference.size();
    const auto m_cloud = static_cast<long>(K.size());
    if (m_cloud < n_k)
        throw ParameterError("leja_extract: cloud smaller than N_k = " +
                             std::to_string(n_k));

    Eigen::MatrixXcd V = weighted_rows(K, phi, k, onb_reference);
    const Eigen::Index N = n_k;

    // Column equilibration: scaling column j by 1/c_j shifts every candidate
    // log|det| by the same -sum log c_j, so the selection is unchanged while
    // the dynamic range (e.g. r^k across monomial columns on a radius-r
    // cloud) no longer destroys the QR/MGS determinants.
    double logdet_correction = 0.0;
    for (Eigen::Index j = 0; j < V.cols(); ++j) {
        double c = V.col(j).cwiseAbs().maxCoeff();
        if (!(c > 0.0))
            throw DegenerateSupportError(
                "leja_extract: cloud does not span the section space");
        V.col(j) /= c;
        logdet_correction += std::log(c);
    }

    Eigen::VectorXd resid2 = V.rowwise().squaredNorm();
    std::vector<char> taken(m_cloud, 0);
    Eigen::MatrixXcd U(N, N); // orthonormal rows spanning the selection
    std::vector<int> sel;
    sel.reserve(N);
    double logdet = 0.0;

    for (Eigen::Index step = 0; step < N; ++step) {
        int best = -1;
        double bestval = -1.0;
        for (long p = 0; p < m_cloud; ++p) {
            if (taken[p]) continue;
            if (resid2(p) > bestval) { // strict > : lowest index wins ties
                bestval = resid2(p);
                best = static_cast<int>(p);
            }
        }
        if (best < 0 || !(bestval > 0.0))
            throw DegenerateSupportError(
                "leja_extract: cloud does not span the section space");
        Eigen::VectorXcd row = V.row(best).transpose();
        double rnorm = mgs_residual(row, U, step);
        if (!(rnorm > 0.0))
            throw DegenerateSupportError(
                "leja_extract: degenerate configuration at step " +
                std::to_string(step));
        logdet += std::log(rnorm);
        U.row(step) = (row / rnorm).transpose();
        taken[best] = 1;
        sel.push_back(best);

        // downdate candidate residuals against the new direction
        for (long p = 0; p < m_cloud; ++p) {
            if (taken[p]) continue;
            cplx c = (U.row(step).conjugate().array() * V.row(p).array()).sum();
            resid2(p) = std::max(0.0, resid2(p) - std::norm(c));
        }
    }

    // coordinate-wise re-optimization over the cloud
    double cur = logdet_of_rows(V, sel);
    for (int pass = 0; pass < refinement_passes; ++pass) {
        bool changed = false;
        for (Eigen::Index pos = 0; pos < N; ++pos) {
            // orthonormal basis of the other N-1 rows
            Eigen::MatrixXcd Mo(N - 1, N);
            Eigen::Index r = 0;
            for (Eigen::Index i = 0; i < N; ++i)
                if (i != pos) Mo.row(r++) = V.row(sel[i]);
            Eigen::HouseholderQR<Eigen::MatrixXcd> qr(Mo.adjoint());
            Eigen::MatrixXcd Q =
                qr.householderQ() * Eigen::MatrixXcd::Identity(N, N - 1);
            // residual norm of each candidate row against that span
            Eigen::MatrixXcd proj = V * Q;
            int best = sel[pos];
            double bestr = -1.0;
            for (long p = 0; p < m_cloud; ++p) {
                bool in_use = false;
                for (Eigen::Index i = 0; i < N; ++i)
                    if (i != pos && sel[i] == static_cast<int>(p)) in_use = true;
                if (in_use) continue;
                double r2 = V.row(p).squaredNorm() - proj.row(p).squaredNorm();
                if (r2 > bestr) {
                    bestr = r2;
                    best = static_cast<int>(p);
                }
            }
            if (best != sel[pos]) {
                std::vector<int> trial = sel;
                trial[pos] = best;
                double val = logdet_of_rows(V, trial);
                if (val > cur + 1e-12) {
                    sel = trial;
                    cur = val;
                    changed = true;
                }
            }
        }
        if (!changed) break;
    }
    logdet = std::max(logdet, cur) + logdet_correction;

    LejaConfig cfg;
    cfg.indices = sel;
    for (int idx : sel) cfg.points.push_back(K.points[idx]);
    cfg.log_det_linf = logdet;
    cfg.k = k;
    cfg.n_k = n_k;
    cfg.refinement_passes = refinement_passes;
    return cfg;
}

double dk_functional(const CompactGrid& K, const WeightFn& phi, int k,
                     const OrthonormalBasis& onb_reference,
                     int refinement_passes) {
    LejaConfig cfg = leja_extract(K, phi, k, onb_reference, refinement_passes);
    return cfg.log_det_linf /
           (static_cast<double>(k) * static_cast<double>(cfg.n_k));
}

std::pair<double, double> extrapolate_in_k(
    const std::vector<std::pair<int, double>>& per_k) {
    if (per_k.size() < 3)
        throw ParameterError("extrapolation needs >= 3 schedule points");
    const auto m = static_cast<Eigen::Index>(per_k.size());
    Eigen::MatrixXd X(m, 3);
    Eigen::VectorXd y(m);
    for (Eigen::Index i = 0; i < m; ++i) {
        double k = per_k[i].first;
        X(i, 0) = 1.0;
        X(i, 1) = 1.0 / k;
        X(i, 2) = std::log(k) / k;
        y(i) = per_k[i].second;
    }
    Eigen::Vector3d beta = X.colPivHouseholderQr().solve(y);
    double resid = (X * beta - y).cwiseAbs().maxCoeff();
    return {beta(0), resid};
}

LejaConfig leja_vandermonde(const CompactGrid& K, const WeightFn& v, int k,
                            int refinement_passes) {
    if (K.dim != 1)
        throw ParameterError("leja_vandermonde: one-variable clouds only");
    OrthonormalBasis comp = orthonormal_basis_for(uniform_measure(K), v, k);
    LejaConfig cfg = leja_extract(K, v, k, comp, refinement_passes);
    const long N = cfg.n_k;
    double logdet = 0.0;
    for (long i = 0; i < N; ++i) {
        for (long j = i + 1; j < N; ++j)
            logdet +=
                std::log(std::abs(cfg.points[j].z1 - cfg.points[i].z1));
        logdet -= static_cast<double>(k) * v(cfg.points[i]);
    }
    cfg.log_det_linf = logdet;
    return cfg;
}

TransfiniteEstimate transfinite_diameter_leja(const CompactGrid& K,
                                              const WeightFn& v,
                                              const std::vector<int>& k_schedule) {
    if (k_schedule.size() < 3)
        throw ParameterError("transfinite: schedule needs >= 3 entries");
    for (std::size_t i = 1; i < k_schedule.size(); ++i)
        if (k_schedule[i] <= k_schedule[i - 1])
            throw ParameterError("transfinite: schedule must be increasing");

    const int n = K.dim;
    TransfiniteEstimate est;
    for (int k : k_schedule) {
        OrthonormalBasis ref = torus_reference_basis(n, k);
        int passes = k <= 48 ? 1 : 0;
        double dk;
        if (n == 1) {
            LejaConfig cfg = leja_vandermonde(K, v, k, passes);
            dk = cfg.log_det_linf /
                 (static_cast<double>(k) * static_cast<double>(cfg.n_k));
        } else {
            dk = dk_functional(K, v, k, ref, passes);
        }
        est.per_k.push_back({k, (n + 1.0) / n * dk});
    }
    auto [a, resid] = extrapolate_in_k(est.per_k);
    est.log_d_inf = a;
    est.extrapolation_residual = resid;
    return est;
}

} // namespace plab
