#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hs/delta.hpp"
#include "hs/spectral.hpp"

#include <cmath>
#include <numbers>
#include <random>

using hs::cplx;
using hs::DeltaAtom;
using hs::DeltaComb;
using doctest::Approx;

TEST_CASE("DeltaComb canonicalization: ordering, merging, zero removal")
{
    const DeltaComb c({DeltaAtom{2.0, 0, cplx{1.0, 0.0}}, DeltaAtom{-1.0, 1, cplx{2.0, 0.0}},
                       DeltaAtom{-1.0, 0, cplx{0.5, 0.0}}, DeltaAtom{2.0, 0, cplx{-1.0, 0.0}},
                       DeltaAtom{0.0, 0, cplx{3.0, 0.0}}});
    // the two atoms at (2, 0) cancel; remaining sorted by (location, order)
    REQUIRE(c.size() == 3);
    CHECK(c.atoms()[0].location == -1.0);
    CHECK(c.atoms()[0].order == 0);
    CHECK(c.atoms()[1].location == -1.0);
    CHECK(c.atoms()[1].order == 1);
    CHECK(c.atoms()[2].location == 0.0);

    // equality is decidable through the canonical form
    const DeltaComb d({DeltaAtom{-1.0, 1, cplx{2.0, 0.0}}, DeltaAtom{0.0, 0, cplx{3.0, 0.0}},
                       DeltaAtom{-1.0, 0, cplx{0.5, 0.0}}});
    CHECK(c == d);

    CHECK_THROWS_AS(DeltaComb({DeltaAtom{0.0, -1, cplx{1.0, 0.0}}}), hs::invalid_parameter);
    CHECK_THROWS_AS(DeltaComb({DeltaAtom{std::nan(""), 0, cplx{1.0, 0.0}}}),
                    hs::invalid_parameter);
}

TEST_CASE("delta_gram_h1 closed-form entries")
{
    const hs::GramMatrix g = hs::delta_gram_h1({0.0, 1.0});
    CHECK(g.values(0, 0).real() == Approx(0.5).epsilon(1e-15));
    CHECK(g.values(1, 1).real() == Approx(0.5).epsilon(1e-15));
    CHECK(g.values(0, 1).real() == Approx(0.5 * std::exp(-1.0)).epsilon(1e-15));
    CHECK(g.values(0, 1).real() == Approx(0.1839397).epsilon(1e-6));

    const hs::GramMatrix single = hs::delta_gram_h1({-7.3});
    CHECK(single.values(0, 0).real() == Approx(0.5).epsilon(1e-15));

    CHECK_THROWS_AS(hs::delta_gram_h1({0.0, 1.0, 0.0}), hs::duplicate_atom);
}

TEST_CASE("delta_gram_h1 is positive definite on distinct points")
{
    const hs::GramMatrix g = hs::delta_gram_h1({0.0, 0.1, 0.2});
    CHECK(g.min_eigenvalue() > 0.0);
    CHECK(g.positive_definite());

    // up to 12 random distinct points: Cholesky must succeed
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> dist(-10.0, 10.0);
    for (int trial = 0; trial < 10; ++trial) {
        std::vector<double> pts;
        while (pts.size() < 12) {
            const double p = dist(rng);
            bool dup = false;
            for (double q : pts)
                if (std::fabs(p - q) < 1e-3)
                    dup = true;
            if (!dup)
                pts.push_back(p);
        }
        CHECK(hs::delta_gram_h1(pts).positive_definite());
    }
}

TEST_CASE("comb_inner_hminus1 closed-form values")
{
    const DeltaComb d0 = DeltaComb::delta(0.0);
    const DeltaComb d1 = DeltaComb::delta(1.0);
    CHECK(hs::comb_inner_hminus1(d0, d0).real() == Approx(0.5).epsilon(1e-15));
    CHECK(hs::comb_inner_hminus1(d0, d1).real() == Approx(0.1839397).epsilon(1e-6));
    CHECK(std::abs(hs::comb_inner_hminus1(d0, DeltaComb{})) == 0.0);

    const DeltaComb dprime = DeltaComb::delta(0.0, cplx{1.0, 0.0}, 1);
    CHECK_THROWS_AS(hs::comb_inner_hminus1(dprime, d0), hs::unsupported_atom);
}

TEST_CASE("comb_inner_hminus1 is sesquilinear and conjugate symmetric")
{
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> dist(-5.0, 5.0);
    for (int trial = 0; trial < 20; ++trial) {
        const DeltaComb u({DeltaAtom{dist(rng), 0, cplx{dist(rng), dist(rng)}},
                           DeltaAtom{dist(rng), 0, cplx{dist(rng), dist(rng)}}});
        const DeltaComb v({DeltaAtom{dist(rng), 0, cplx{dist(rng), dist(rng)}}});
        const DeltaComb w({DeltaAtom{dist(rng), 0, cplx{dist(rng), dist(rng)}}});
        const cplx lam{dist(rng), dist(rng)};

        const cplx lhs = hs::comb_inner_hminus1(u.scaled(lam) + v, w);
        const cplx rhs = lam * hs::comb_inner_hminus1(u, w) + hs::comb_inner_hminus1(v, w);
        CHECK(std::abs(lhs - rhs) <= 1e-12 * (1.0 + std::abs(lhs)));

        const cplx sym = hs::comb_inner_hminus1(w, u);
        CHECK(std::abs(hs::comb_inner_hminus1(u, w) - std::conj(sym)) <=
              1e-13 * (1.0 + std::abs(sym)));
    }
}

TEST_CASE("closed form vs spectral quadrature for combs in [-10, 10]")
{
    // distinct atom locations: the oscillatory truncation error stays tiny
    const DeltaComb u({DeltaAtom{-1.0, 0, cplx{1.0, 0.0}}, DeltaAtom{0.5, 0, cplx{2.0, 0.0}}});
    const DeltaComb v({DeltaAtom{0.3, 0, cplx{1.0, 0.0}}, DeltaAtom{2.0, 0, cplx{-1.0, 0.0}}});
    const hs::SpectralGrid grid = hs::make_grid(16384.0, 1u << 19);
    const cplx quad =
        hs::hs_inner(hs::spectral_comb(u, grid), hs::spectral_comb(v, grid),
                     hs::SobolevOrder(-1.0));
    const cplx closed = hs::comb_inner_hminus1(u, v);
    CHECK(std::abs(quad - closed) <= 1e-6);

    // self inner product carries the slow diagonal tail: widest grid
    const hs::SpectralGrid wide = hs::make_grid(1048576.0, 1u << 24);
    const DeltaComb w({DeltaAtom{-8.0, 0, cplx{0.8, 0.0}}, DeltaAtom{9.0, 0, cplx{0.5, 0.0}}});
    const hs::SpectralFunction what = hs::spectral_comb(w, wide);
    const cplx norm_quad = hs::hs_inner(what, what, hs::SobolevOrder(-1.0));
    CHECK(std::abs(norm_quad - hs::comb_inner_hminus1(w, w)) <= 1e-6);
}

TEST_CASE("phi_sequence atoms and preconditions")
{
    const DeltaComb phi0 = hs::phi_sequence(0.25, 0);
    REQUIRE(phi0.size() == 1);
    CHECK(phi0.atoms()[0].location == 0.0);
    CHECK(phi0.atoms()[0].weight == cplx{1.0, 0.0});

    const DeltaComb phi1 = hs::phi_sequence(0.3, 1);
    REQUIRE(phi1.size() == 3);
    CHECK(phi1.atoms()[0].weight.real() == Approx(1.0));
    CHECK(phi1.atoms()[1].location == 1.0);
    CHECK(phi1.atoms()[1].weight.real() == Approx(-0.3));
    CHECK(phi1.atoms()[2].location == 2.0);
    CHECK(phi1.atoms()[2].weight.real() == Approx(0.09));

    CHECK_THROWS_AS(hs::phi_sequence(0.5, 1), hs::invalid_parameter); // 0.5 > 1/e
    CHECK_THROWS_AS(hs::phi_sequence(0.0, 1), hs::invalid_parameter);
    CHECK_THROWS_AS(hs::phi_sequence(0.2, -1), hs::invalid_parameter);
}

TEST_CASE("phi_sequence satisfies the two-atom extension recurrence")
{
    const double alpha = 0.25;
    for (int n = 1; n <= 6; ++n) {
        const DeltaComb lhs = hs::phi_sequence(alpha, n);
        const DeltaComb rhs =
            hs::phi_sequence(alpha, n - 1) +
            DeltaComb::delta(2.0 * n - 1.0, cplx{-std::pow(alpha, 2 * n - 1), 0.0}) +
            DeltaComb::delta(2.0 * n, cplx{std::pow(alpha, 2 * n), 0.0});
        CHECK(hs::approx_equal(lhs, rhs, 1e-15));
    }
}

TEST_CASE("each sequence member extends the previous one below 2N + 1/2")
{
    const double alpha = 0.36;
    for (int n = 0; n <= 5; ++n) {
        const DeltaComb cur = hs::phi_sequence(alpha, n);
        const DeltaComb next = hs::phi_sequence(alpha, n + 1);
        const double cutoff = 2.0 * n + 0.5;
        std::vector<DeltaAtom> cur_low, next_low;
        for (const auto& a : cur.atoms())
            if (a.location < cutoff)
                cur_low.push_back(a);
        for (const auto& a : next.atoms())
            if (a.location < cutoff)
                next_low.push_back(a);
        CHECK(DeltaComb(cur_low) == DeltaComb(next_low));
    }
}

TEST_CASE("phi_norm_sq: base case, frozen value, and Gram oracle")
{
    CHECK(hs::phi_norm_sq(0.1, 0) == Approx(0.5).epsilon(1e-15));
    CHECK(hs::phi_norm_sq(0.3, 1) == Approx(0.440933).epsilon(1e-5));

    // independent Gram quadratic form
    for (double alpha : {0.1, 0.25, 0.36}) {
        for (int n : {1, 3, 7}) {
            const DeltaComb comb = hs::phi_sequence(alpha, n);
            std::vector<double> pts;
            for (const auto& a : comb.atoms())
                pts.push_back(a.location);
            const hs::GramMatrix g = hs::delta_gram_h1(pts);
            cplx quad{0.0, 0.0};
            for (std::size_t i = 0; i < pts.size(); ++i)
                for (std::size_t j = 0; j < pts.size(); ++j)
                    quad += comb.atoms()[i].weight * std::conj(comb.atoms()[j].weight) *
                            g.values(static_cast<Eigen::Index>(i),
                                     static_cast<Eigen::Index>(j));
            CHECK(hs::phi_norm_sq(alpha, n) ==
                  Approx(quad.real()).epsilon(1e-12));
            // and the comb inner product route
            CHECK(hs::phi_norm_sq(alpha, n) ==
                  Approx(hs::comb_inner_hminus1(comb, comb).real()).epsilon(1e-12));
        }
    }
}

TEST_CASE("norms decrease strictly in N")
{
    // the closed-form step stays strictly negative at every N; the plain
    // double sums resolve the strict drop only while the step is above
    // their rounding floor
    for (double alpha : {0.1, 0.25, 0.36}) {
        double prev = hs::phi_norm_sq(alpha, 0);
        CHECK(prev == Approx(0.5));
        for (int n = 1; n <= 10; ++n) {
            const double cur = hs::phi_norm_sq(alpha, n);
            const double step = hs::phi_norm_diff(alpha, n);
            CHECK(step < 0.0);
            if (std::fabs(step) > 1e-13 * prev)
                CHECK(cur < prev);
            else
                CHECK(cur <= prev + 1e-15);
            prev = cur;
        }
    }
}

namespace {

// cancellation-free Gram route for the norm step: with
// t = phi_N - phi_{N-1} (two atoms), the step is 2 Re(phi_{N-1}, t) + (t, t),
// every term already at the scale of the answer
double gram_norm_step(double alpha, int n)
{
    const DeltaComb prev = hs::phi_sequence(alpha, n - 1);
    const DeltaComb tail =
        DeltaComb::delta(2.0 * n - 1.0, cplx{-std::pow(alpha, 2 * n - 1), 0.0}) +
        DeltaComb::delta(2.0 * n, cplx{std::pow(alpha, 2 * n), 0.0});
    return 2.0 * hs::comb_inner_hminus1(prev, tail).real() +
           hs::comb_inner_hminus1(tail, tail).real();
}

} // namespace

TEST_CASE("closed-form step matches the Gram-computed step to 1e-10 relative")
{
    for (double alpha : {0.1, 0.25, 0.36}) {
        for (int n = 1; n <= 10; ++n) {
            const double closed = hs::phi_norm_diff(alpha, n);
            const double gram = gram_norm_step(alpha, n);
            CHECK(std::fabs(closed - gram) <= 1e-10 * std::fabs(closed));
        }
    }
}

TEST_CASE("phi_norm_diff: frozen value, sign, and telescoping consistency")
{
    CHECK(hs::phi_norm_diff(0.3, 1) == Approx(-0.059067).epsilon(1e-4));
    CHECK(std::fabs(hs::phi_norm_diff(0.3, 1) - (-0.059067)) <= 1e-5);

    for (double alpha : {0.1, 0.25, 0.36}) {
        for (int n = 1; n <= 10; ++n) {
            const double diff = hs::phi_norm_diff(alpha, n);
            CHECK(diff < 0.0);
            const double from_sums =
                hs::phi_norm_sq(alpha, n) - hs::phi_norm_sq(alpha, n - 1);
            CHECK(diff == Approx(from_sums).epsilon(1e-10));
        }
        // telescoping from 1/2 all the way down
        double total = 0.5;
        for (int n = 1; n <= 10; ++n)
            total += hs::phi_norm_diff(alpha, n);
        CHECK(total == Approx(hs::phi_norm_sq(alpha, 10)).epsilon(1e-10));
    }
    CHECK_THROWS_AS(hs::phi_norm_diff(0.3, 0), hs::invalid_parameter);
}

TEST_CASE("difference magnitudes decay geometrically")
{
    // the closed form's prefactor is alpha^{4N-2}; with the growing bracket the
    // observed step ratio lands between alpha^4 and (alpha/e)^2
    for (double alpha : {0.1, 0.25, 0.36}) {
        double prev = std::fabs(hs::phi_norm_diff(alpha, 1));
        for (int n = 2; n <= 10; ++n) {
            const double cur = std::fabs(hs::phi_norm_diff(alpha, n));
            CHECK(cur < prev);
            const double ratio = cur / prev;
            CHECK(ratio >= std::pow(alpha, 4.0));
            CHECK(ratio <= 1.05 * std::pow(alpha / std::numbers::e, 2.0));
            prev = cur;
        }
    }
}

TEST_CASE("spectral_comb handles derivative atoms")
{
    const hs::SpectralGrid grid = hs::make_grid(16.0, 64);
    const DeltaComb dprime = DeltaComb::delta(0.5, cplx{2.0, 0.0}, 1);
    const hs::SpectralFunction rep = hs::spectral_comb(dprime, grid);
    for (std::size_t j = 0; j < grid.num_points; j += 13) {
        const double xi = grid.xi(j);
        const cplx expected = 0.3989422804014326779 * 2.0 * cplx{0.0, xi} *
                              std::polar(1.0, 0.5 * xi);
        CHECK(std::abs(rep.values[j] - expected) <= 1e-12 * (1.0 + std::abs(expected)));
    }
}
