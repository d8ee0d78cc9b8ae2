#pragma once

// Double-double arithmetic: an unevaluated sum of two doubles giving roughly
// 106 bits of mantissa.  Only the handful of operations needed by the
// extended-precision Cholesky path is provided.

#include <cmath>

namespace plab {

struct DDouble {
    double hi = 0.0;
    double lo = 0.0;

    constexpr DDouble() = default;
    constexpr DDouble(double x) : hi(x), lo(0.0) {}
    constexpr DDouble(double h, double l) : hi(h), lo(l) {}

    explicit operator double() const { return hi + lo; }
};

namespace dd {

// Error-free sum of two doubles (Knuth).
inline DDouble two_sum(double a, double b) {
    double s = a + b;
    double bb = s - a;
    double err = (a - (s - bb)) + (b - bb);
    return {s, err};
}

// Error-free sum assuming |a| >= |b|.
inline DDouble quick_two_sum(double a, double b) {
    double s = a + b;
    return {s, b - (s - a)};
}

// Error-free product via fma.
inline DDouble two_prod(double a, double b) {
    double p = a * b;
    return {p, std::fma(a, b, -p)};
}

inline DDouble add(const DDouble& a, const DDouble& b) {
    DDouble s = two_sum(a.hi, b.hi);
    double lo = s.lo + a.lo + b.lo;
    return quick_two_sum(s.hi, lo);
}

inline DDouble sub(const DDouble& a, const DDouble& b) {
    return add(a, {-b.hi, -b.lo});
}

inline DDouble mul(const DDouble& a, const DDouble& b) {
    DDouble p = two_prod(a.hi, b.hi);
    double lo = p.lo + a.hi * b.lo + a.lo * b.hi;
    return quick_two_sum(p.hi, lo);
}

inline DDouble div(const DDouble& a, const DDouble& b) {
    double q1 = a.hi / b.hi;
    DDouble r = sub(a, mul(b, DDouble(q1)));
    double q2 = r.hi / b.hi;
    r = sub(r, mul(b, DDouble(q2)));
    double q3 = r.hi / b.hi;
    DDouble q = quick_two_sum(q1, q2);
    return add(q, DDouble(q3));
}

inline DDouble sqrt(const DDouble& a) {
    if (a.hi <= 0.0) return {std::sqrt(a.hi), 0.0};
    double s = std::sqrt(a.hi);
    DDouble r = sub(a, two_prod(s, s));
    double corr = (r.hi + r.lo) / (2.0 * s);
    return quick_two_sum(s, corr);
}

// log of a positive DDouble, accurate to double precision (sufficient: only
// the final log-determinant sum consumes it).
inline double log(const DDouble& a) {
    return std::log(a.hi) + std::log1p(a.lo / a.hi);
}

} // namespace dd

inline DDouble operator+(const DDouble& a, const DDouble& b) { return dd::add(a, b); }
inline DDouble operator-(const DDouble& a, const DDouble& b) { return dd::sub(a, b); }
inline DDouble operator*(const DDouble& a, const DDouble& b) { return dd::mul(a, b); }
inline DDouble operator/(const DDouble& a, const DDouble& b) { return dd::div(a, b); }
inline DDouble& operator+=(DDouble& a, const DDouble& b) { a = a + b; return a; }
inline DDouble& operator-=(DDouble& a, const DDouble& b) { a = a - b; return a; }

} // namespace plab
