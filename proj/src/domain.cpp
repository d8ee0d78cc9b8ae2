#include "plab/domain.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

namespace plab {

namespace {

constexpr double kPi = std::numbers::pi;

double dist(const PointN& a, const PointN& b) {
    double d1 = std::abs(a.z1 - b.z1);
    if (a.dim == 1) return d1;
    double d2 = std::abs(a.z2 - b.z2);
    return std::hypot(d1, d2);
}

} // namespace

bool points_equal(const PointN& a, const PointN& b, double tol) {
    if (a.dim != b.dim) return false;
    return dist(a, b) <= tol;
}

double CompactGrid::diameter() const {
    double d = 0.0;
    for (std::size_t i = 0; i < points.size(); ++i)
        for (std::size_t j = i + 1; j < points.size(); ++j)
            d = std::max(d, dist(points[i], points[j]));
    return d;
}

void DiscreteMeasure::validate() const {
    if (support.points.size() != masses.size())
        throw ParameterError("measure: mass/point count mismatch");
    double total = 0.0;
    for (double m : masses) {
        if (!(m >= 0.0)) throw ParameterError("measure: negative mass");
        total += m;
    }
    if (std::abs(total - 1.0) > 1e-12)
        throw ParameterError("measure: masses do not sum to 1");
}

CompactGrid make_interval(double a, double b, int count) {
    if (a >= b) throw ParameterError("interval: requires a < b");
    if (count < 3) throw ParameterError("interval: count must be >= 3");
    CompactGrid g;
    g.dim = 1;
    g.kind = GridKind::interval;
    g.points.reserve(count);
    double h = (b - a) / (count - 1);
    for (int j = 0; j < count; ++j)
        g.points.push_back({1, cplx(a + j * h, 0.0), {}});
    g.fill_distance = h / 2.0;
    return g;
}

CompactGrid make_circle(cplx center, double r, int count) {
    if (r <= 0.0) throw ParameterError("circle: radius must be positive");
    if (count < 4) throw ParameterError("circle: count must be >= 4");
    CompactGrid g;
    g.dim = 1;
    g.kind = GridKind::circle;
    g.points.reserve(count);
    for (int j = 0; j < count; ++j) {
        double th = 2.0 * kPi * j / count;
        g.points.push_back({1, center + r * cplx(std::cos(th), std::sin(th)), {}});
    }
    // half-chord between adjacent nodes bounds the arc-to-cloud distance
    g.fill_distance = r * std::sqrt(2.0 - 2.0 * std::cos(kPi / count));
    return g;
}

CompactGrid make_disc_boundary(double r, int count) {
    CompactGrid g = make_circle(cplx(0.0, 0.0), r, count);
    g.kind = GridKind::disc_boundary;
    return g;
}

CompactGrid make_torus(int n, int count) {
    if (n != 1 && n != 2) throw ParameterError("torus: n must be 1 or 2");
    if (count < 4) throw ParameterError("torus: count must be >= 4");
    CompactGrid g;
    g.dim = n;
    g.kind = GridKind::torus;
    if (n == 1) {
        g = make_circle(cplx(0.0, 0.0), 1.0, count);
        g.kind = GridKind::torus;
        g.dim = 1;
        return g;
    }
    g.points.reserve(static_cast<std::size_t>(count) * count);
    for (int a = 0; a < count; ++a) {
        double ta = 2.0 * kPi * a / count;
        cplx za(std::cos(ta), std::sin(ta));
        for (int b = 0; b < count; ++b) {
            double tb = 2.0 * kPi * b / count;
            g.points.push_back({2, za, cplx(std::cos(tb), std::sin(tb))});
        }
    }
    g.fill_distance = std::sqrt(2.0) * std::sqrt(2.0 - 2.0 * std::cos(kPi / count));
    return g;
}

CompactGrid make_product(const CompactGrid& g1, const CompactGrid& g2) {
    if (g1.dim != 1 || g2.dim != 1)
        throw ParameterError("product: factors must be 1-dimensional");
    CompactGrid g;
    g.dim = 2;
    g.kind = GridKind::product;
    g.points.reserve(g1.size() * g2.size());
    for (const auto& p : g1.points)
        for (const auto& q : g2.points)
            g.points.push_back({2, p.z1, q.z1});
    g.fill_distance = std::hypot(g1.fill_distance, g2.fill_distance);
    return g;
}

DiscreteMeasure haar_measure(const CompactGrid& grid) {
    if (grid.kind != GridKind::torus && grid.kind != GridKind::circle &&
        grid.kind != GridKind::disc_boundary)
        throw DomainError("haar_measure: grid must be a circle or torus cloud");
    DiscreteMeasure mu;
    mu.support = grid;
    mu.masses.assign(grid.size(), 1.0 / static_cast<double>(grid.size()));
    mu.validate();
    return mu;
}

DiscreteMeasure arcsine_measure(int count) {
    if (count < 2) throw ParameterError("arcsine: count must be >= 2");
    DiscreteMeasure mu;
    mu.support.dim = 1;
    mu.support.kind = GridKind::interval; // Chebyshev cloud on [-1, 1]
    mu.support.points.reserve(count);
    for (int j = 0; j < count; ++j) {
        double x = std::cos((2.0 * j + 1.0) * kPi / (2.0 * count));
        mu.support.points.push_back({1, cplx(x, 0.0), {}});
    }
    mu.support.fill_distance = kPi / count; // arc-parameter spacing bound
    mu.masses.assign(count, 1.0 / count);
    mu.validate();
    return mu;
}

DiscreteMeasure uniform_measure(const CompactGrid& grid) {
    if (grid.points.empty()) throw ParameterError("uniform_measure: empty grid");
    DiscreteMeasure mu;
    mu.support = grid;
    mu.masses.assign(grid.size(), 1.0 / static_cast<double>(grid.size()));
    mu.validate();
    return mu;
}

CompactGrid make_disc_filled(double r, int rings, int per_ring) {
    if (r <= 0.0 || rings < 2 || per_ring < 8)
        throw ParameterError("disc_filled: bad parameters");
    CompactGrid g;
    g.dim = 1;
    g.kind = GridKind::custom;
    g.points.push_back({1, cplx(0.0, 0.0), {}});
    for (int i = 1; i <= rings; ++i) {
        double ri = r * i / rings;
        for (int j = 0; j < per_ring; ++j) {
            double th = 2.0 * kPi * j / per_ring + 0.5 * kPi * (i % 2) / per_ring;
            g.points.push_back({1, ri * cplx(std::cos(th), std::sin(th)), {}});
        }
    }
    g.fill_distance = std::max(r / rings, 2.0 * kPi * r / per_ring) / 2.0;
    return g;
}

// --- CSV ------------------------------------------------------------------

namespace {

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;
};

CsvTable read_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IngestionError("cannot open " + path);
    CsvTable t;
    std::string line;
    if (!std::getline(in, line)) throw IngestionError("empty file " + path);
    {
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) t.header.push_back(cell);
    }
    int rowno = 1;
    while (std::getline(in, line)) {
        ++rowno;
        if (line.empty()) continue;
        std::vector<double> row;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) {
            try {
                std::size_t pos = 0;
                double v = std::stod(cell, &pos);
                row.push_back(v);
            } catch (...) {
                throw IngestionError(path + ": malformed value at row " +
                                     std::to_string(rowno));
            }
        }
        if (row.size() != t.header.size())
            throw IngestionError(path + ": wrong column count at row " +
                                 std::to_string(rowno));
        t.rows.push_back(std::move(row));
    }
    return t;
}

CompactGrid grid_from_table(const CsvTable& t, bool* has_mass,
                            std::vector<double>* masses,
                            const std::string& path) {
    const auto& h = t.header;
    int dim = 0;
    bool mass = false;
    if (h.size() >= 2 && h[0] == "re1" && h[1] == "im1") {
        if (h.size() == 2) dim = 1;
        else if (h.size() == 3 && h[2] == "mass") { dim = 1; mass = true; }
        else if (h.size() == 4 && h[2] == "re2" && h[3] == "im2") dim = 2;
        else if (h.size() == 5 && h[2] == "re2" && h[3] == "im2" && h[4] == "mass") {
            dim = 2; mass = true;
        }
    } else if (h.size() >= 2 && h[0] == "re" && h[1] == "im") {
        // tolerated 1-D shorthand
        if (h.size() == 2) dim = 1;
        else if (h.size() == 3 && h[2] == "mass") { dim = 1; mass = true; }
    }
    if (dim == 0) throw IngestionError(path + ": unrecognized header");

    CompactGrid g;
    g.dim = dim;
    g.kind = GridKind::custom;
    int rowno = 1;
    for (const auto& row : t.rows) {
        ++rowno;
        PointN p;
        p.dim = dim;
        p.z1 = cplx(row[0], row[1]);
        if (dim == 2) p.z2 = cplx(row[2], row[3]);
        for (const auto& q : g.points)
            if (points_equal(p, q))
                throw IngestionError(path + ": duplicate point at row " +
                                     std::to_string(rowno));
        g.points.push_back(p);
        if (mass && masses) masses->push_back(row.back());
    }
    if (g.points.empty()) throw IngestionError(path + ": no points");
    if (has_mass) *has_mass = mass;
    return g;
}

} // namespace

CompactGrid load_pointcloud(const std::string& path) {
    CsvTable t = read_csv(path);
    return grid_from_table(t, nullptr, nullptr, path);
}

DiscreteMeasure load_measure(const std::string& path) {
    CsvTable t = read_csv(path);
    bool has_mass = false;
    DiscreteMeasure mu;
    mu.support = grid_from_table(t, &has_mass, &mu.masses, path);
    if (!has_mass) throw IngestionError(path + ": mass column required");
    double total = 0.0;
    for (double m : mu.masses) {
        if (m < 0.0) throw IngestionError(path + ": negative mass");
        total += m;
    }
    if (std::abs(total - 1.0) > 1e-9)
        throw IngestionError(path + ": masses sum to " + std::to_string(total));
    // absorb sub-1e-9 rounding from the file
    for (double& m : mu.masses) m /= total;
    mu.validate();
    return mu;
}

void save_pointcloud(const CompactGrid& grid, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IngestionError("cannot write " + path);
    out.precision(17);
    out << (grid.dim == 1 ? "re1,im1" : "re1,im1,re2,im2") << "\n";
    for (const auto& p : grid.points) {
        out << p.z1.real() << "," << p.z1.imag();
        if (grid.dim == 2) out << "," << p.z2.real() << "," << p.z2.imag();
        out << "\n";
    }
}

void save_measure(const DiscreteMeasure& mu, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IngestionError("cannot write " + path);
    out.precision(17);
    out << (mu.support.dim == 1 ? "re1,im1,mass" : "re1,im1,re2,im2,mass") << "\n";
    for (std::size_t i = 0; i < mu.support.points.size(); ++i) {
        const auto& p = mu.support.points[i];
        out << p.z1.real() << "," << p.z1.imag();
        if (mu.support.dim == 2)
            out << "," << p.z2.real() << "," << p.z2.imag();
        out << "," << mu.masses[i] << "\n";
    }
}

// --- weights --------------------------------------------------------------

WeightFn zero_weight() {
    return {[](const PointN&) { return 0.0; }, WeightFn::Growth::bounded_support,
            "zero"};
}

WeightFn constant_weight(double c) {
    return {[c](const PointN&) { return c; }, WeightFn::Growth::bounded_support,
            "const:" + std::to_string(c)};
}

WeightFn parse_weight(const std::string& spec) {
    if (spec == "zero" || spec.empty()) return zero_weight();
    if (spec == "log_z0") {
        // torus reference psi = log|Z_0|, identically 0 in the function picture
        WeightFn w = zero_weight();
        w.label = "log_z0";
        return w;
    }
    if (spec.rfind("poly:", 0) == 0) {
        std::vector<double> coeffs;
        std::stringstream ss(spec.substr(5));
        std::string cell;
        while (std::getline(ss, cell, ',')) {
            try {
                coeffs.push_back(std::stod(cell));
            } catch (...) {
                throw ParameterError("weight: bad coefficient in " + spec);
            }
        }
        if (coeffs.empty()) throw ParameterError("weight: empty poly spec");
        WeightFn w;
        w.eval = [coeffs](const PointN& p) {
            double r2 = std::norm(p.z1);
            double v = 0.0, pw = 1.0;
            for (double c : coeffs) {
                v += c * pw;
                pw *= r2;
            }
            return v;
        };
        w.growth = WeightFn::Growth::bounded_support;
        w.label = spec;
        return w;
    }
    if (spec.rfind("expr:", 0) == 0) {
        std::string id = spec.substr(5);
        WeightFn w;
        w.growth = WeightFn::Growth::bounded_support;
        w.label = spec;
        if (id == "re2") {
            w.eval = [](const PointN& p) {
                double x = p.z1.real();
                return x * x;
            };
        } else if (id == "re") {
            w.eval = [](const PointN& p) { return p.z1.real(); };
        } else if (id == "absq") {
            w.eval = [](const PointN& p) { return std::norm(p.z1); };
        } else if (id == "logplus") {
            w.eval = [](const PointN& p) {
                return std::max(0.0, std::log(std::abs(p.z1)));
            };
            w.growth = WeightFn::Growth::logarithmic;
        } else {
            throw ParameterError("weight: unknown expr id " + id);
        }
        return w;
    }
    throw ParameterError("weight: unrecognized spec " + spec);
}

} // namespace plab
