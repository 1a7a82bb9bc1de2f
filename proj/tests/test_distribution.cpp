#include <cmath>

#include "doctest.h"
#include "oneshot/distribution.hpp"
#include "testutil.hpp"

using namespace oneshot;

TEST_CASE("distribution constructors validate") {
    CHECK_THROWS_AS(ClassicalDistribution({0.5, 0.6}), validation_error);
    CHECK_THROWS_AS(ClassicalDistribution({-0.1, 1.1}), validation_error);
    CHECK_THROWS_AS(ClassicalDistribution(std::vector<double>{}), validation_error);
    CHECK_NOTHROW(ClassicalDistribution({0.25, 0.75}));
    CHECK_NOTHROW(ClassicalDistribution::sub_normalized({0.25, 0.25}));
    CHECK_THROWS_AS(ClassicalDistribution::sub_normalized({0.75, 0.75}), validation_error);
}

TEST_CASE("density operator validates") {
    CMat m(2, 2);
    m(0, 0) = 0.5;
    m(1, 1) = 0.5;
    CHECK_NOTHROW(DensityOperator{m});

    CMat neg(2, 2);
    neg(0, 0) = 1.5;
    neg(1, 1) = -0.5;
    CHECK_THROWS_AS(DensityOperator{neg}, validation_error);

    CMat big(2, 2);
    big(0, 0) = 1.0;
    big(1, 1) = 1.0;
    CHECK_THROWS_AS(DensityOperator{big}, validation_error);
    CHECK_THROWS_AS(DensityOperator::sub_normalized(big), validation_error);
    big *= 0.4;
    CHECK_NOTHROW(DensityOperator::sub_normalized(big));
}

TEST_CASE("sequence space indexing is big-endian in the slot order") {
    SequenceSpace sp(3, 4);
    CHECK(sp.dimension() == 81);
    CHECK(sp.index_of({0, 0, 0, 0}) == 0);
    CHECK(sp.index_of({1, 0, 0, 0}) == 27);
    CHECK(sp.index_of({0, 0, 0, 2}) == 2);
    CHECK(sp.symbols_of(27) == std::vector<int>{1, 0, 0, 0});
}

TEST_CASE("sequence space capacity cap") {
    CHECK_THROWS_AS(SequenceSpace(2, 30), capacity_error);  // 2^30 over the 2^22 default
    CHECK_NOTHROW(SequenceSpace(2, 22));
}

TEST_CASE("poisson_truncated basics") {
    const ClassicalDistribution p0 = poisson_truncated(0.0, 5, 10);
    CHECK(p0[0] == doctest::Approx(1.0));
    CHECK(p0.size() == 11);
    CHECK(p0.total() == doctest::Approx(1.0).epsilon(1e-14));

    const ClassicalDistribution p = poisson_truncated(3.0, 40);
    CHECK(p[3] == doctest::Approx(std::exp(-3.0) * 27.0 / 6.0).epsilon(1e-12));
    CHECK(std::abs(p.total() - 1.0) < 1e-12);

    CHECK_THROWS_AS(poisson_truncated(-1.0, 5, 5), domain_error);
    CHECK_THROWS_AS(poisson_truncated(1.0, 6, 5), domain_error);
}

TEST_CASE("poisson default fold point controls the folded tail") {
    const int fold = poisson_default_fold_point(6.0, 1e-12);
    const ClassicalDistribution p = poisson_truncated(6.0, fold);
    CHECK(p[fold] <= 1e-12);

    // the cumulative-sum oracle: tail mass above fold-1 computed directly
    double pmf = std::exp(-6.0);
    double cum = 0.0;
    for (int k = 0; k < fold; ++k) {
        cum += pmf;
        pmf *= 6.0 / double(k + 1);
    }
    CHECK(p[fold] == doctest::Approx(std::max(0.0, 1.0 - cum)).epsilon(1e-9));
    CHECK(1.0 - cum <= 1e-12);
}

TEST_CASE("iid_power: products and marginals") {
    const ClassicalDistribution coin({0.5, 0.5});
    const ClassicalDistribution sq = iid_power(coin, 2);
    CHECK(sq.size() == 4);
    for (int y = 0; y < 4; ++y) CHECK(sq[y] == doctest::Approx(0.25));

    const ClassicalDistribution point({0.0, 1.0});
    const ClassicalDistribution p3 = iid_power(point, 3);
    CHECK(p3[7] == doctest::Approx(1.0));

    // marginal oracle on each coordinate of a biased cube
    std::mt19937_64 rng(5);
    const ClassicalDistribution p = testutil::random_distribution(rng, 3);
    const ClassicalDistribution cube = iid_power(p, 3);
    for (int slot = 0; slot < 3; ++slot) {
        std::vector<double> marg(3, 0.0);
        for (int y = 0; y < cube.size(); ++y)
            marg[static_cast<size_t>(cube.space()->symbols_of(y)[static_cast<size_t>(slot)])] += cube[y];
        for (int s = 0; s < 3; ++s) CHECK(marg[static_cast<size_t>(s)] == doctest::Approx(p[s]).epsilon(1e-12));
    }
}

TEST_CASE("iid_power respects the outcome capacity") {
    const ClassicalDistribution coin({0.5, 0.5});
    CHECK_THROWS_AS(iid_power(coin, 30), capacity_error);
}

TEST_CASE("iid_power splits multiplicatively across block sizes") {
    std::mt19937_64 rng(9);
    const ClassicalDistribution p = testutil::random_distribution(rng, 2);
    const ClassicalDistribution whole = iid_power(p, 5);
    const ClassicalDistribution a = iid_power(p, 2);
    const ClassicalDistribution b = iid_power(p, 3);
    for (int i = 0; i < a.size(); ++i)
        for (int j = 0; j < b.size(); ++j)
            CHECK(whole[i * b.size() + j] == doctest::Approx(a[i] * b[j]).epsilon(1e-12));
}

TEST_CASE("iid_power on density operators") {
    CMat m(2, 2);
    m(0, 0) = 0.75;
    m(1, 1) = 0.25;
    m(0, 1) = cplx(0.1, 0.2);
    m(1, 0) = cplx(0.1, -0.2);
    const DensityOperator rho(m);
    const DensityOperator r2 = iid_power(rho, 2);
    CHECK(r2.dim() == 4);
    CHECK(trace(r2.matrix()).real() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(testutil::max_abs_diff(r2.matrix(), kron(m, m)) == 0.0);
}

TEST_CASE("embed_signal_with_arrival: delays and mixtures") {
    const ClassicalDistribution null_symbol({1.0, 0.0});
    SequenceSpace one(2, 1);
    const ClassicalDistribution signal(one, {0.0, 1.0});  // a single "on" slot

    // point arrival at 0 with no padding reproduces the signal
    const ClassicalDistribution same =
        embed_signal_with_arrival(signal, null_symbol, ClassicalDistribution({1.0}), 1);
    CHECK(same[1] == doctest::Approx(1.0));

    // fixed delay zero, two extra slots: signal (x) null^2
    const ClassicalDistribution padded =
        embed_signal_with_arrival(signal, null_symbol, ClassicalDistribution({1.0}), 3);
    CHECK(padded[4] == doctest::Approx(1.0));  // sequence (1,0,0)

    // uniform arrival over {0,1} in two slots: 50/50 between (1,0) and (0,1)
    const ClassicalDistribution mixed =
        embed_signal_with_arrival(signal, null_symbol, ClassicalDistribution({0.5, 0.5}), 2);
    CHECK(mixed[2] == doctest::Approx(0.5));
    CHECK(mixed[1] == doctest::Approx(0.5));

    CHECK_THROWS_AS(
        embed_signal_with_arrival(signal, null_symbol, ClassicalDistribution({0.5, 0.5}), 1),
        domain_error);
}

TEST_CASE("embed_signal_with_arrival is affine in the arrival distribution") {
    std::mt19937_64 rng(13);
    SequenceSpace two(2, 2);
    std::vector<double> sig_mass{0.1, 0.2, 0.3, 0.4};
    const ClassicalDistribution signal(two, sig_mass);
    const ClassicalDistribution null_symbol({0.9, 0.1});
    const int n = 5;

    const ClassicalDistribution a0({1.0, 0.0, 0.0, 0.0});
    const ClassicalDistribution a1({0.0, 0.25, 0.5, 0.25});
    const double lam = 0.3;
    std::vector<double> mixed_mass(4);
    for (int i = 0; i < 4; ++i) mixed_mass[static_cast<size_t>(i)] = lam * a0[i] + (1.0 - lam) * a1[i];
    const ClassicalDistribution amix(mixed_mass);

    const auto e0 = embed_signal_with_arrival(signal, null_symbol, a0, n);
    const auto e1 = embed_signal_with_arrival(signal, null_symbol, a1, n);
    const auto em = embed_signal_with_arrival(signal, null_symbol, amix, n);
    for (int y = 0; y < em.size(); ++y)
        CHECK(em[y] == doctest::Approx(lam * e0[y] + (1.0 - lam) * e1[y]).epsilon(1e-12));
}

TEST_CASE("classical_to_density and pinch") {
    const DensityOperator d = classical_to_density(ClassicalDistribution({1.0, 0.0}));
    CHECK(d.matrix()(0, 0).real() == doctest::Approx(1.0));
    CHECK(d.matrix()(1, 1).real() == doctest::Approx(0.0));

    const DensityOperator u = classical_to_density(ClassicalDistribution({0.25, 0.25, 0.25, 0.25}));
    for (int i = 0; i < 4; ++i) CHECK(u.matrix()(i, i).real() == doctest::Approx(0.25));

    const ClassicalDistribution p = pinch(DensityOperator(u.matrix()));
    for (int i = 0; i < 4; ++i) CHECK(p[i] == doctest::Approx(0.25));

    // the equal superposition pinches to a fair coin
    CMat sup(2, 2);
    sup(0, 0) = sup(0, 1) = sup(1, 0) = sup(1, 1) = 0.5;
    const ClassicalDistribution coin = pinch(DensityOperator(sup));
    CHECK(coin[0] == doctest::Approx(0.5));
    CHECK(coin[1] == doctest::Approx(0.5));

    // pinch preserves trace on random states
    std::mt19937_64 rng(21);
    for (int trial = 0; trial < 8; ++trial) {
        const DensityOperator rho = testutil::random_density(rng, 4);
        CHECK(pinch(rho).total() == doctest::Approx(trace(rho.matrix()).real()).epsilon(1e-10));
    }

    // diagonal round trip
    std::vector<double> mass{0.3, 0.7};
    const ClassicalDistribution back = pinch(classical_to_density(ClassicalDistribution(mass)));
    CHECK(back[0] == doctest::Approx(0.3).epsilon(1e-14));
    CHECK(back[1] == doctest::Approx(0.7).epsilon(1e-14));
}
