#pragma once

// Compact sets, weights and discrete measures in C^n (n = 1, 2), the common
// currency of the whole library.  Sets are finite point clouds; sup-norms over
// a set are always approximated by the max over its cloud, with fill_distance
// recording how fine the cloud is.

#include <array>
#include <complex>
#include <functional>
#include <string>
#include <vector>

#include "plab/errors.hpp"

namespace plab {

using cplx = std::complex<double>;

struct PointN {
    int dim = 1; // 1 or 2
    cplx z1{0.0, 0.0};
    cplx z2{0.0, 0.0};

    double abs_max() const {
        double a = std::abs(z1);
        return dim == 1 ? a : std::max(a, std::abs(z2));
    }
};

bool points_equal(const PointN& a, const PointN& b, double tol = 0.0);

enum class GridKind { interval, circle, torus, disc_boundary, product, custom };

struct CompactGrid {
    int dim = 1;
    GridKind kind = GridKind::custom;
    std::vector<PointN> points;
    // Max distance from any point of the intended continuum set to the cloud.
    // Computed analytically for parametric kinds, user-declared otherwise.
    double fill_distance = 0.0;

    std::size_t size() const { return points.size(); }
    double diameter() const;
};

struct WeightFn {
    enum class Growth { bounded_support, logarithmic };

    std::function<double(const PointN&)> eval;
    Growth growth = Growth::bounded_support;
    std::string label;

    double operator()(const PointN& p) const { return eval(p); }
};

struct DiscreteMeasure {
    CompactGrid support;
    std::vector<double> masses; // >= 0, sum 1 within 1e-12

    void validate() const;
};

struct GridFunction {
    CompactGrid grid;
    std::vector<double> values;
};

// --- parametric sets ------------------------------------------------------

CompactGrid make_interval(double a, double b, int count);
CompactGrid make_circle(cplx center, double r, int count);
CompactGrid make_disc_boundary(double r, int count);
// n-torus point grid of size count^n (n = 1 gives the unit circle cloud).
CompactGrid make_torus(int n, int count);
CompactGrid make_product(const CompactGrid& g1, const CompactGrid& g2);

// --- reference measures ---------------------------------------------------

// Uniform masses on a circle/torus cloud.
DiscreteMeasure haar_measure(const CompactGrid& grid);

// Gauss-Chebyshev discretization of dx / (pi sqrt(1-x^2)) on [-1,1]:
// Chebyshev nodes, equal masses.
DiscreteMeasure arcsine_measure(int count);

// Uniform probability measure on the nodes of a cloud (area-measure stand-in
// for filled domains).
DiscreteMeasure uniform_measure(const CompactGrid& grid);

// Filled unit-disc cloud (polar grid), for area-measure experiments.
CompactGrid make_disc_filled(double r, int rings, int per_ring);

// --- file I/O -------------------------------------------------------------

// CSV header `re1,im1[,re2,im2][,mass]`, one point per row.
CompactGrid load_pointcloud(const std::string& path);
DiscreteMeasure load_measure(const std::string& path);
void save_pointcloud(const CompactGrid& grid, const std::string& path);
void save_measure(const DiscreteMeasure& mu, const std::string& path);

// --- weights --------------------------------------------------------------

WeightFn zero_weight();
WeightFn constant_weight(double c);

// Weight spec strings: `zero`, `poly:c0,c1,...` (v(z) = sum c_j |z|^{2j}, 1-D),
// `log_z0` (the torus reference, identically 0 as a function), `expr:<id>`
// for a registered built-in (re2 = Re(z)^2, re = Re(z), absq = |z|^2).
WeightFn parse_weight(const std::string& spec);

} // namespace plab
