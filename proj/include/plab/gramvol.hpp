#pragma once

// Gram matrices of orthonormal sections against a target weighted measure,
// log-determinants with extended-precision escalation, differences of the
// normalized log-volume functionals, and L^2 norms of determinant sections.

#include "plab/polyspace.hpp"

namespace plab {

enum class Precision { double_prec, double_double };

// H_{ij} = sum_x mass(x) s_i(x) conj(s_j(x)) e^{-2k phi(x)}
Eigen::MatrixXcd gram_matrix(const OrthonormalBasis& onb,
                             const DiscreteMeasure& target_measure,
                             const WeightFn& target_weight, int k);

struct LogDetResult {
    double value = 0.0;
    double cond = 1.0;
    Precision prec = Precision::double_prec;
};

// log det of a Hermitian positive definite matrix via Cholesky; escalates to
// double-double when a pivot drops below eps * trace.
LogDetResult hermitian_logdet(const Eigen::MatrixXcd& H);

struct LDelta {
    double value = 0.0; // L_k(mu1, phi1) - L_k(mu2, phi2)
    int k = 0;
    long n_k = 0;
    double cond = 1.0;
    Precision prec = Precision::double_prec;
};

LDelta l_delta(const DiscreteMeasure& mu1, const WeightFn& phi1,
               const DiscreteMeasure& mu2, const WeightFn& phi2, int k);

// log || det S_k ||_{L^2(mu, k phi)} = (log N_k! + log det Gram) / 2
double det_section_l2_norm(const OrthonormalBasis& onb_reference,
                           const DiscreteMeasure& mu, const WeightFn& phi,
                           int k);

double log_factorial(long n); // via lgamma

// log |det| of the monomial-coefficient matrix of the sections; false when
// the coefficient matrix is numerically singular.
bool section_monomial_logdet(const OrthonormalBasis& onb, double* out);

} // namespace plab
