#include "plab/gramvol.hpp"

#include <cmath>

#include "plab/ddouble.hpp"

namespace plab {

double log_factorial(long n) {
    return std::lgamma(static_cast<double>(n) + 1.0);
}

Eigen::MatrixXcd gram_matrix(const OrthonormalBasis& onb,
                             const DiscreteMeasure& target_measure,
                             const WeightFn& target_weight, int k) {
    target_measure.validate();
    Eigen::MatrixXcd S = evaluate_sections(onb, target_measure.support);
    const auto n_pts = static_cast<Eigen::Index>(target_measure.support.size());
    for (Eigen::Index i = 0; i < n_pts; ++i) {
        double w = target_weight(target_measure.support.points[i]);
        if (!std::isfinite(w))
            throw EvaluationError("gram_matrix: weight not finite");
        S.row(i) *= std::sqrt(target_measure.masses[i]) *
                    std::exp(-static_cast<double>(k) * w);
    }
    if (!S.allFinite())
        throw EvaluationError("gram_matrix: non-finite section value");
    Eigen::MatrixXcd H = S.adjoint() * S;
    // symmetrize away roundoff
    return (H + H.adjoint()) / 2.0;
}

namespace {

// Cholesky log-determinant of the real symmetric embedding of a Hermitian
// matrix, carried in double-double.  det [[Re, -Im], [Im, Re]] = |det H|^2.
double real_embedding_logdet_dd(const Eigen::MatrixXcd& H) {
    const Eigen::Index n = H.rows();
    const Eigen::Index m = 2 * n;
    std::vector<std::vector<DDouble>> a(m, std::vector<DDouble>(m));
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j) {
            a[i][j] = DDouble(H(i, j).real());
            a[i][n + j] = DDouble(-H(i, j).imag());
            a[n + i][j] = DDouble(H(i, j).imag());
            a[n + i][n + j] = DDouble(H(i, j).real());
        }
    double logdet = 0.0;
    for (Eigen::Index j = 0; j < m; ++j) {
        DDouble d = a[j][j];
        for (Eigen::Index p = 0; p < j; ++p) d -= a[j][p] * a[j][p];
        if (d.hi <= 0.0)
            throw DegenerateSupportError(
                "logdet: matrix not positive definite (dd pivot "
                + std::to_string(d.hi) + ")");
        DDouble l = dd::sqrt(d);
        a[j][j] = l;
        logdet += dd::log(d);
        for (Eigen::Index i = j + 1; i < m; ++i) {
            DDouble s = a[i][j];
            for (Eigen::Index p = 0; p < j; ++p) s -= a[i][p] * a[j][p];
            a[i][j] = s / l;
        }
    }
    return logdet / 2.0; // log |det H|
}

} // namespace

LogDetResult hermitian_logdet(const Eigen::MatrixXcd& H) {
    const Eigen::Index n = H.rows();
    if (n == 0) throw ParameterError("logdet: empty matrix");
    double trace = H.real().trace();

    Eigen::MatrixXcd L = H;
    double logdet = 0.0;
    double dmin = 1e300, dmax = 0.0;
    bool escalate = false;
    const double eps = std::numeric_limits<double>::epsilon();
    for (Eigen::Index j = 0; j < n && !escalate; ++j) {
        double d = L(j, j).real();
        for (Eigen::Index p = 0; p < j; ++p) d -= std::norm(L(j, p));
        if (d < eps * trace) {
            escalate = true;
            break;
        }
        dmin = std::min(dmin, d);
        dmax = std::max(dmax, d);
        double l = std::sqrt(d);
        logdet += std::log(d);
        L(j, j) = l;
        for (Eigen::Index i = j + 1; i < n; ++i) {
            cplx s = L(i, j);
            for (Eigen::Index p = 0; p < j; ++p)
                s -= L(i, p) * std::conj(L(j, p));
            L(i, j) = s / l;
        }
    }

    LogDetResult r;
    if (!escalate) {
        r.value = logdet;
        r.cond = dmax / dmin;
        r.prec = Precision::double_prec;
        return r;
    }
    r.value = real_embedding_logdet_dd(H);
    r.cond = std::numeric_limits<double>::infinity();
    r.prec = Precision::double_double;
    return r;
}

LDelta l_delta(const DiscreteMeasure& mu1, const WeightFn& phi1,
               const DiscreteMeasure& mu2, const WeightFn& phi2, int k) {
    if (k < 1) throw ParameterError("l_delta: k must be >= 1");
    OrthonormalBasis onb2 = orthonormal_basis_for(mu2, phi2, k);
    Eigen::MatrixXcd H = gram_matrix(onb2, mu1, phi1, k);
    LogDetResult ld = hermitian_logdet(H);
    LDelta out;
    out.k = k;
    out.n_k = basis_dimension(mu1.support.dim, k);
    out.value = -ld.value / (2.0 * k * static_cast<double>(out.n_k));
    out.cond = std::max(onb2.condition_estimate, ld.cond);
    out.prec = ld.prec;
    return out;
}

bool section_monomial_logdet(const OrthonormalBasis& onb, double* out) {
    const PolyBasis& b = onb.base;
    // all families evaluate as graded polynomials in the scaled coordinates,
    // so the basis-to-monomial conversion is graded-triangular and its
    // determinant is the product of the leading coefficients
    double conv = 0.0;
    for (int j = 0; j < b.size; ++j) {
        int a = b.exponents[j][0];
        int c = b.dim_n == 2 ? b.exponents[j][1] : 0;
        if (b.family == BasisFamily::chebyshev_1d && a >= 1)
            conv += (a - 1) * std::log(2.0);
        conv -= a * std::log(b.scale1) + c * std::log(b.scale2);
    }
    Eigen::FullPivLU<Eigen::MatrixXcd> lu(onb.coeffs);
    if (!lu.isInvertible()) return false;
    *out = lu.matrixLU().diagonal().array().abs().log().sum() + conv;
    return true;
}

double det_section_l2_norm(const OrthonormalBasis& onb_reference,
                           const DiscreteMeasure& mu, const WeightFn& phi,
                           int k) {
    const long n_k = onb_reference.size();
    // Coefficient identity: an L^2(mu, k phi)-orthonormal basis B satisfies
    // det Gram(ref; mu, k phi) = |det C_ref / det C_B|^2 with C the monomial
    // coefficient matrices, so no factorization of the (often severely
    // ill-conditioned) Gram matrix is needed.
    double c_ref = 0.0, c_ad = 0.0;
    if (section_monomial_logdet(onb_reference, &c_ref)) {
        OrthonormalBasis adapted = orthonormal_basis_for(mu, phi, k);
        if (adapted.size() == n_k && section_monomial_logdet(adapted, &c_ad))
            return 0.5 * (log_factorial(n_k) + 2.0 * (c_ref - c_ad));
    }
    Eigen::MatrixXcd H = gram_matrix(onb_reference, mu, phi, k);
    LogDetResult ld = hermitian_logdet(H);
    return 0.5 * (log_factorial(n_k) + ld.value);
}

} // namespace plab
