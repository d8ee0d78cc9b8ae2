#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "plab/dynamics.hpp"
#include "plab/verify.hpp"

using namespace plab;

namespace {

MapLift square_lift() { return parse_lift("d=2;F0=1,0,0;F1=0,0,1"); }

} // namespace

TEST_CASE("lift spec parsing") {
    MapLift F = parse_lift("d=2;F0=1,0,0;F1=0.5,0,1");
    CHECK(F.degree_d == 2);
    CHECK(F.F0.size() == 3);
    CHECK(F.F1[0] == cplx(0.5, 0.0));
    MapLift G = parse_lift("d=2;F0=1+2i,0,-3i;F1=0,i,1e-3");
    CHECK(G.F0[0] == cplx(1.0, 2.0));
    CHECK(G.F0[2] == cplx(0.0, -3.0));
    CHECK(G.F1[1] == cplx(0.0, 1.0));
    CHECK(G.F1[2] == cplx(1e-3, 0.0));
    CHECK_THROWS_AS(parse_lift("d=2;F0=1,0;F1=0,0,1"), ParameterError);
    CHECK_THROWS_AS(parse_lift("d=9;F0=1;F1=1"), ParameterError);
    CHECK_THROWS_AS(parse_lift("F0=1,0,0;F1=0,0,1"), ParameterError);
    CHECK_THROWS_AS(parse_lift("d=2;F0=1,x,0;F1=0,0,1"), ParameterError);
}

TEST_CASE("chart application") {
    MapLift F = square_lift();
    CHECK(std::abs(F.apply_chart(cplx(3.0, 0.0)) - cplx(9.0, 0.0)) < 1e-15);
    MapLift G = parse_lift("d=2;F0=1,0,0;F1=0.25,0,1"); // z^2 + 1/4
    CHECK(std::abs(G.apply_chart(cplx(2.0, 0.0)) - cplx(4.25, 0.0)) < 1e-15);
}

TEST_CASE("green weight of the squaring map is exact") {
    MapLift F = square_lift();
    for (double re : {0.1, 0.5, 1.0, 2.0, 5.0})
        for (double im : {0.0, 0.7}) {
            cplx z(re, im);
            double expect = std::max(0.0, std::log(std::abs(z)));
            CHECK(std::abs(green_value(F, z) - expect) < 1e-10);
        }
}

TEST_CASE("green weight lift-scaling law") {
    MapLift F = parse_lift("d=2;F0=1,0,0;F1=0.1,0,1");
    MapLift G = scale_lift(F, cplx(4.0, 0.0));
    for (double re : {0.3, 1.5, 3.0}) {
        double d = green_value(G, cplx(re, 0.4)) - green_value(F, cplx(re, 0.4));
        CHECK(d == doctest::Approx(std::log(4.0)).epsilon(1e-9));
    }
}

TEST_CASE("green weight matches brute-force escape rates") {
    // f(z) = z^2 + c, escaping orbit
    cplx c(0.1, 0.05);
    MapLift F = parse_lift("d=2;F0=1,0,0;F1=0.1+0.05i,0,1");
    for (cplx z : {cplx(1.7, 0.0), cplx(0.5, 1.4), cplx(-2.0, 0.3)}) {
        cplx w = z;
        double scale = 1.0;
        for (int m = 0; m < 40; ++m) {
            w = w * w + c;
            scale *= 0.5;
            if (std::abs(w) > 1e12) break;
        }
        double brute = scale * std::log(std::abs(w));
        CHECK(green_value(F, z) == doctest::Approx(brute).epsilon(1e-6));
    }
}

TEST_CASE("green weight seed independence") {
    MapLift F = parse_lift("d=2;F0=1,0,0;F1=0.2,0,1");
    WeightFn seed;
    seed.eval = [](const PointN& p) {
        return std::max(0.0, std::log(std::abs(p.z1) / 2.0));
    };
    seed.growth = WeightFn::Growth::logarithmic;
    for (double re : {0.5, 2.0, 4.0}) {
        double a = green_value(F, cplx(re, 0.3));
        double b = green_value(F, cplx(re, 0.3), &seed);
        CHECK(a == doctest::Approx(b).epsilon(1e-8));
    }
}

TEST_CASE("green weight over a grid reports its residual") {
    MapLift F = square_lift();
    GreenWeight g = green_weight(F, nullptr, make_circle(cplx(0, 0), 3.0, 16));
    CHECK(g.residual < 1e-9);
    for (double v : g.values.values)
        CHECK(v == doctest::Approx(std::log(3.0)).epsilon(1e-10));
}

TEST_CASE("resultant normalization and homogeneity") {
    for (int d = 2; d <= 8; ++d) {
        std::string spec = "d=" + std::to_string(d) + ";F0=1";
        for (int j = 0; j < d; ++j) spec += ",0";
        spec += ";F1=";
        for (int j = 0; j < d; ++j) spec += "0,";
        spec += "1";
        MapLift F = parse_lift(spec);
        cplx r = resultant(F);
        CHECK(r.real() == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(std::abs(r.imag()) < 1e-12);
    }
    MapLift F = square_lift();
    cplx r4 = resultant(scale_lift(F, cplx(3.0, 0.0)));
    CHECK(r4.real() == doctest::Approx(81.0).epsilon(1e-12));
    // common factor Z1: (Z0 Z1, Z1^2)
    MapLift bad = parse_lift("d=2;F0=0,1,0;F1=0,0,1");
    CHECK_THROWS_AS(resultant(bad), DomainError);
}

TEST_CASE("preimages of a circle under squaring") {
    MapLift F = square_lift();
    CompactGrid K = make_circle(cplx(0, 0), 4.0, 32);
    CompactGrid pre = preimage_cloud(F, K);
    CHECK(pre.size() == 64);
    for (const auto& p : pre.points)
        CHECK(std::abs(p.z1) == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("pullback weight of the squaring map vanishes") {
    WeightFn w = pullback_weight(square_lift(), zero_weight());
    CHECK(w({1, cplx(1.7, 0.4), {}}) == doctest::Approx(0.0).epsilon(1e-15));
}

TEST_CASE("pullback transfinite-diameter identity") {
    MapLift F = square_lift();
    CompactGrid K = make_circle(cplx(0, 0), 4.0, 128);
    PullbackReport rep = pullback_check(F, K, zero_weight(), {8, 12, 16, 20});
    CHECK(rep.base == doctest::Approx(std::log(4.0)).epsilon(0.05));
    CHECK(rep.lhs == doctest::Approx(std::log(2.0)).epsilon(0.05));
    CHECK(rep.gap <= 0.03);
    CHECK(rep.res_log_c == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("pullback envelope identity") {
    MapLift F = square_lift();
    CompactGrid K = make_circle(cplx(0, 0), 4.0, 128);
    CompactGrid ring = make_circle(cplx(0, 0), 3.0, 24);
    PullbackEnvelopeReport rep =
        pullback_envelope_check(F, K, zero_weight(), 24, ring);
    CHECK(rep.max_gap <= 0.05);
}

TEST_CASE("theorem a harness: identical pairs") {
    DiscreteMeasure mu = haar_measure(make_circle(cplx(0, 0), 1.0, 128));
    ConvergenceReport rep = verify_theorem_a(mu, zero_weight(), mu,
                                             zero_weight(), {8, 16, 24});
    for (auto& [k, v] : rep.per_k) CHECK(std::abs(v) < 1e-12);
    CHECK(rep.target == doctest::Approx(0.0).epsilon(1e-9));
    CHECK(rep.pass);
}

TEST_CASE("theorem a harness: circle radii") {
    DiscreteMeasure mu1 = haar_measure(make_circle(cplx(0, 0), 2.0, 256));
    DiscreteMeasure mu2 = haar_measure(make_circle(cplx(0, 0), 1.0, 256));
    ConvergenceReport rep = verify_theorem_a(mu1, zero_weight(), mu2,
                                             zero_weight(), {8, 16, 24, 32});
    CHECK(rep.extrapolated ==
          doctest::Approx(-0.5 * std::log(2.0)).epsilon(1e-6));
    CHECK(rep.pass);
}

TEST_CASE("corollary a harness on a scaled circle") {
    DiscreteMeasure ref = haar_measure(make_circle(cplx(0, 0), 1.0, 256));
    CompactGrid K = make_circle(cplx(0, 0), 2.0, 360);
    DiscreteMeasure mu = haar_measure(K);
    ConvergenceReport rep = verify_corollary_a(ref, K, zero_weight(), &mu,
                                               {8, 16, 24, 32});
    CHECK(rep.target == doctest::Approx(0.5 * std::log(2.0)).epsilon(0.05));
    CHECK(rep.pass);
    CHECK(std::abs(rep.extrapolated - rep.extrapolated_alt) <= 0.06);
}

TEST_CASE("lemma sandwich on the Haar circle") {
    CompactGrid K = make_circle(cplx(0, 0), 1.0, 256);
    DiscreteMeasure mu = haar_measure(K);
    SandwichReport rep =
        verify_lemma_elde(K, zero_weight(), mu, {8, 16, 24, 32});
    CHECK(rep.sandwich_ok);
    CHECK(rep.vanishes);
    for (const auto& r : rep.rows)
        CHECK(r.upper ==
              doctest::Approx(std::log(r.k + 1.0) / (2.0 * r.k)).epsilon(1e-6));
}

TEST_CASE("claim names") {
    CHECK(claim_name(ClaimId::thm_b) == "thm_b");
    CHECK(claim_name(ClaimId::lemma_elde) == "lemma_elde");
}
