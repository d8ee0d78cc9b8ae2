#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>

#include "plab/ddouble.hpp"
#include "plab/gramvol.hpp"

using namespace plab;

TEST_CASE("interval grid geometry") {
    CompactGrid g = make_interval(-1.0, 1.0, 9);
    CHECK(g.size() == 9);
    CHECK(g.kind == GridKind::interval);
    CHECK(g.points.front().z1.real() == doctest::Approx(-1.0));
    CHECK(g.points.back().z1.real() == doctest::Approx(1.0));
    CHECK(g.fill_distance == doctest::Approx(0.125));
    CHECK(g.diameter() == doctest::Approx(2.0));
    CHECK_THROWS_AS(make_interval(-1.0, 1.0, 2), ParameterError);
    CHECK_THROWS_AS(make_interval(1.0, -1.0, 9), ParameterError);
}

TEST_CASE("circle grid geometry") {
    CompactGrid g = make_circle(cplx(1.0, -0.5), 2.0, 64);
    CHECK(g.size() == 64);
    for (const auto& p : g.points)
        CHECK(std::abs(p.z1 - cplx(1.0, -0.5)) == doctest::Approx(2.0));
    double expected =
        2.0 * std::sqrt(2.0 - 2.0 * std::cos(std::numbers::pi / 64));
    CHECK(g.fill_distance == doctest::Approx(expected));
}

TEST_CASE("torus grid sizes") {
    CHECK(make_torus(1, 16).size() == 16);
    CHECK(make_torus(2, 8).size() == 64);
    CHECK(make_torus(2, 8).dim == 2);
}

TEST_CASE("arcsine measure moments") {
    DiscreteMeasure mu = arcsine_measure(64);
    mu.validate();
    double m1 = 0.0, m2 = 0.0;
    for (std::size_t i = 0; i < mu.masses.size(); ++i) {
        double x = mu.support.points[i].z1.real();
        m1 += mu.masses[i] * x;
        m2 += mu.masses[i] * x * x;
    }
    CHECK(std::abs(m1) < 1e-14);
    CHECK(m2 == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("haar measure requires a circle-like grid") {
    CHECK_THROWS_AS(haar_measure(make_interval(-1.0, 1.0, 9)), DomainError);
    DiscreteMeasure h = haar_measure(make_circle(cplx(0, 0), 1.0, 32));
    h.validate();
    CHECK(h.masses[0] == doctest::Approx(1.0 / 32));
}

TEST_CASE("measure validation rejects bad masses") {
    DiscreteMeasure mu = arcsine_measure(8);
    mu.masses[0] += 0.5;
    CHECK_THROWS_AS(mu.validate(), ParameterError);
}

TEST_CASE("pointcloud CSV round trip") {
    CompactGrid g = make_circle(cplx(0.25, 0.0), 1.5, 17);
    save_pointcloud(g, "unit_core_cloud.csv");
    CompactGrid back = load_pointcloud("unit_core_cloud.csv");
    REQUIRE(back.size() == g.size());
    for (std::size_t i = 0; i < g.size(); ++i)
        CHECK(std::abs(back.points[i].z1 - g.points[i].z1) < 1e-15);
    std::remove("unit_core_cloud.csv");
}

TEST_CASE("measure CSV round trip and ingestion errors") {
    DiscreteMeasure mu = arcsine_measure(12);
    save_measure(mu, "unit_core_measure.csv");
    DiscreteMeasure back = load_measure("unit_core_measure.csv");
    REQUIRE(back.masses.size() == mu.masses.size());
    back.validate();
    std::remove("unit_core_measure.csv");

    {
        std::ofstream f("unit_core_bad.csv");
        f << "re1,im1\n0.0,0.0\nnot_a_number,1.0\n";
    }
    CHECK_THROWS_AS(load_pointcloud("unit_core_bad.csv"), IngestionError);
    std::remove("unit_core_bad.csv");
    CHECK_THROWS_AS(load_pointcloud("unit_core_missing.csv"), IngestionError);
}

TEST_CASE("weight spec parsing") {
    WeightFn z = parse_weight("zero");
    CHECK(z({1, cplx(2.0, 1.0), {}}) == 0.0);
    WeightFn p = parse_weight("poly:0.5,0.25");
    CHECK(p({1, cplx(2.0, 0.0), {}}) == doctest::Approx(0.5 + 0.25 * 4.0));
    WeightFn r = parse_weight("expr:re2");
    CHECK(r({1, cplx(3.0, 5.0), {}}) == doctest::Approx(9.0));
    CHECK_THROWS_AS(parse_weight("nonsense:spec"), ParameterError);
    CHECK_THROWS_AS(parse_weight("poly:abc"), ParameterError);
}

TEST_CASE("double-double error-free transforms") {
    DDouble s = dd::two_sum(1e16, 1.0);
    CHECK(static_cast<double>(s - DDouble(1e16)) == doctest::Approx(1.0));
    DDouble p = dd::two_prod(1.0 + 1e-8, 1.0 - 1e-8);
    // exact product is 1 - 1e-16; the lo limb must carry the tail
    DDouble err = p - DDouble(1.0);
    CHECK(static_cast<double>(err) == doctest::Approx(-1e-16).epsilon(1e-6));
    DDouble r = dd::sqrt(DDouble(2.0));
    DDouble back = r * r - DDouble(2.0);
    CHECK(std::abs(static_cast<double>(back)) < 1e-30);
    CHECK(dd::log(DDouble(std::exp(1.0))) == doctest::Approx(1.0));
    DDouble q = dd::div(DDouble(1.0), DDouble(3.0));
    DDouble resid = q * DDouble(3.0) - DDouble(1.0);
    CHECK(std::abs(static_cast<double>(resid)) < 1e-31);
}

TEST_CASE("basis dimensions and caps") {
    CHECK(basis_dimension(1, 8) == 9);
    CHECK(basis_dimension(2, 3) == 10);
    CHECK_THROWS_AS(make_basis(1, 129, BasisFamily::monomial), ParameterError);
    CHECK_THROWS_AS(make_basis(2, 33, BasisFamily::monomial), ParameterError);
}

TEST_CASE("chebyshev recurrence values") {
    PolyBasis b = make_chebyshev_basis(3, -1.0, 1.0);
    CompactGrid g;
    g.dim = 1;
    g.points = {{1, cplx(0.5, 0.0), {}}};
    Eigen::MatrixXcd V = evaluate_basis_matrix(b, g);
    CHECK(V(0, 0).real() == doctest::Approx(1.0));
    CHECK(V(0, 1).real() == doctest::Approx(0.5));
    CHECK(V(0, 2).real() == doctest::Approx(-0.5));
    CHECK(V(0, 3).real() == doctest::Approx(-1.0));
}

TEST_CASE("circle basis is scaled monomials") {
    PolyBasis b = make_circle_basis(4, cplx(1.0, 0.0), 2.0);
    CompactGrid g;
    g.dim = 1;
    g.points = {{1, cplx(3.0, 0.0), {}}};
    Eigen::MatrixXcd V = evaluate_basis_matrix(b, g);
    for (int j = 0; j <= 4; ++j) CHECK(V(0, j).real() == doctest::Approx(1.0));
}

TEST_CASE("orthonormalization satisfies the Gram identity") {
    DiscreteMeasure mu = haar_measure(make_circle(cplx(0, 0), 1.0, 64));
    OrthonormalBasis onb = orthonormal_basis_for(mu, zero_weight(), 8);
    Eigen::MatrixXcd G = gram_matrix(onb, mu, zero_weight(), 8);
    CHECK((G - Eigen::MatrixXcd::Identity(9, 9)).cwiseAbs().maxCoeff() < 1e-10);
    CHECK(onb.condition_estimate >= 1.0);
}

TEST_CASE("degenerate support is diagnosed") {
    CompactGrid g = make_interval(-1.0, 1.0, 3);
    DiscreteMeasure mu = uniform_measure(g);
    CHECK_THROWS_AS(orthonormal_basis_for(mu, zero_weight(), 8),
                    DegenerateSupportError);
}

TEST_CASE("hermitian logdet with escalation") {
    Eigen::MatrixXcd H = Eigen::MatrixXcd::Zero(2, 2);
    H(0, 0) = 2.0;
    H(1, 1) = 3.0;
    LogDetResult r = hermitian_logdet(H);
    CHECK(r.value == doctest::Approx(std::log(6.0)));
    CHECK(r.prec == Precision::double_prec);

    H(1, 1) = 1e-18; // pivot far below eps * trace forces the dd path
    LogDetResult r2 = hermitian_logdet(H);
    CHECK(r2.prec == Precision::double_double);
    CHECK(r2.value == doctest::Approx(std::log(2.0) + std::log(1e-18)));
}

TEST_CASE("l_delta shifts by additive weight constants") {
    DiscreteMeasure mu = haar_measure(make_circle(cplx(0, 0), 1.0, 128));
    for (int k : {4, 8, 16}) {
        LDelta d = l_delta(mu, constant_weight(0.37), mu, zero_weight(), k);
        CHECK(d.value == doctest::Approx(0.37).epsilon(1e-10));
    }
}

TEST_CASE("l_delta is antisymmetric") {
    DiscreteMeasure mu1 = haar_measure(make_circle(cplx(0, 0), 2.0, 128));
    DiscreteMeasure mu2 = haar_measure(make_circle(cplx(0, 0), 1.0, 128));
    LDelta a = l_delta(mu1, zero_weight(), mu2, zero_weight(), 8);
    LDelta b = l_delta(mu2, zero_weight(), mu1, zero_weight(), 8);
    CHECK(a.value == doctest::Approx(-b.value).epsilon(1e-10));
}

TEST_CASE("l_delta between circle radii") {
    DiscreteMeasure mu1 = haar_measure(make_circle(cplx(0, 0), 2.0, 256));
    DiscreteMeasure mu2 = haar_measure(make_circle(cplx(0, 0), 1.0, 256));
    for (int k : {8, 16, 32}) {
        LDelta d = l_delta(mu1, zero_weight(), mu2, zero_weight(), k);
        // exact value at every k: -(1/2kN) * sum_j j log 4 = -log(2)/2
        CHECK(d.value == doctest::Approx(-0.5 * std::log(2.0)).epsilon(1e-9));
    }
}

TEST_CASE("determinant-section self norm") {
    DiscreteMeasure mu = haar_measure(make_circle(cplx(0, 0), 1.0, 128));
    for (int k : {4, 8, 16, 32}) {
        OrthonormalBasis onb = orthonormal_basis_for(mu, zero_weight(), k);
        double v = det_section_l2_norm(onb, mu, zero_weight(), k);
        CHECK(std::abs(v - 0.5 * log_factorial(k + 1)) < 1e-8);
    }
}
