#include "oracles.hpp"

#include "qsc/errors.hpp"
#include "qsc/neuromorphic.hpp"

#include <doctest.h>

#include <numbers>

using namespace qsc;
using namespace qsc::neuro;
using std::numbers::pi;

namespace {

SpikeTrain train(std::vector<double> t, double t_max = 1.0, double dt = 0.01) { return {std::move(t), t_max, dt}; }

SpikeTrain bits_train(std::vector<std::uint8_t> bits) { return SpikeTrain::from_binary(bits, 0.01); }

}  // namespace

TEST_SUITE("neuromorphic") {

TEST_CASE("spike train binary round trip and validation") {
    const auto s = train({0.0, 0.03, 0.5, 0.99});
    const auto bits = s.to_binary();
    CHECK(bits.size() == 100);
    CHECK(bits[3] == 1);
    CHECK(bits[50] == 1);
    const auto back = SpikeTrain::from_binary(bits, 0.01);
    REQUIRE(back.size() == 4);
    for (std::size_t i = 0; i < 4; ++i) CHECK(back.times[i] == doctest::Approx(s.times[i]));
    CHECK_NOTHROW(validate(s));
    CHECK_THROWS_AS(validate(train({0.2, 0.1})), ArgumentError);
    CHECK_THROWS_AS(validate(train({1.5})), ArgumentError);
}

TEST_CASE("population_encode examples") {
    PopulationGrid grid;
    grid.points = Matrix::Zero(3, 1);
    grid.points(1, 0) = 1.0;
    grid.points(2, 0) = 1000.0;
    grid.sigma_tuning = 1.0;
    grid.max_rate = 10;
    Vector x(1);
    x << 0.0;
    const auto trains = population_encode(x, grid);
    CHECK(trains[0].size() == 10);  // at the preferred point
    CHECK(trains[1].size() == 6);   // one sigma away: round(10 * exp(-1/2))
    CHECK(trains[2].size() == 0);
    for (const auto& t : trains) CHECK_NOTHROW(validate(t));
    // evenly spaced over the window
    CHECK(trains[0].times[1] - trains[0].times[0] == doctest::Approx(0.1));
}

TEST_CASE("lattice grid") {
    const auto g = make_lattice_grid(2, 8);
    CHECK(g.neurons() == 64);
    CHECK(g.sigma_tuning == doctest::Approx(pi / 7));
    CHECK(g.points.minCoeff() == 0.0);
    CHECK(g.points.maxCoeff() == doctest::Approx(pi));
    CHECK(default_nodes_per_dim(2) == 8);
    CHECK(default_nodes_per_dim(4) == 3);
    CHECK(default_nodes_per_dim(10) == 2);
    CHECK_THROWS_AS(make_lattice_grid(2, 8, 0.0, 1.0, 0.01, 500), ArgumentError);
}

TEST_CASE("lif examples") {
    std::vector<std::uint8_t> quiet(100, 0);
    CHECK(lif_run(bits_train(quiet), {}).empty());

    std::vector<std::uint8_t> one(100, 0);
    one[10] = 1;
    const auto out = lif_run(bits_train(one), {0.7, 1.0, 0.5});
    REQUIRE(out.size() == 1);
    CHECK(out.times[0] == doctest::Approx(0.10));

    std::vector<std::uint8_t> dense(100, 1);
    CHECK(lif_run(bits_train(dense), {0.9, 0.0, 1.0}).empty());
    CHECK(!lif_run(bits_train(dense), {}).empty());
}

TEST_CASE("qlif angles") {
    CHECK(qlif_memory_angle(0.0) == 0.0);
    CHECK(qlif_memory_angle(1.0) == doctest::Approx(pi));
    CHECK(qlif_memory_angle(0.5) == doctest::Approx(pi / 2));
    CHECK(qlif_memory_angle(1.0 + 1e-13) == doctest::Approx(pi));
    CHECK_THROWS_AS(qlif_memory_angle(1.1), ArgumentError);
    CHECK_THROWS_AS(qlif_memory_angle(-0.01), ArgumentError);

    CHECK(qlif_decay_angle(0.0, 0.1, 1.0) == 0.0);
    CHECK(qlif_decay_angle(1.0, std::log(2.0), 1.0) == doctest::Approx(-pi / 2));
    CHECK(std::abs(qlif_decay_angle(0.8, 50.0, 1.0) + qlif_memory_angle(0.8)) < 1e-9);
}

TEST_CASE("qlif step examples") {
    QLIFConfig c;
    c.theta = pi;
    CHECK(qlif_step(0.0, 1, c) == doctest::Approx(1.0));
    CHECK(qlif_step(0.0, 0, c) == 0.0);
    c.tau_delay = std::log(2.0);
    c.t1 = 1.0;
    CHECK(qlif_step(1.0, 0, c) == doctest::Approx(0.5));
}

TEST_CASE("qlif decay identity, range and unified form") {
    oracle::Gen g(21);
    for (int t = 0; t < 20000; ++t) {
        QLIFConfig c;
        c.theta = g.uniform(1e-3, pi);
        c.tau_delay = g.uniform(1e-3, 5.0);
        c.t1 = g.uniform(0.1, 5.0);
        const double a = g.uniform(0.0, 1.0);
        const double decayed = qlif_step(a, 0, c);
        CHECK(std::abs(decayed - a * std::exp(-c.tau_delay / c.t1)) <= 1e-9);
        const double driven = qlif_step(a, 1, c);
        CHECK((driven >= 0.0 && driven <= 1.0));
        CHECK(qlif_step_unified(a, 0, c) == decayed);
        CHECK(qlif_step_unified(a, 1, c) == driven);
    }
}

TEST_CASE("qlif run examples") {
    std::vector<std::uint8_t> bits(100, 0);
    for (int i = 0; i < 100; i += 7) bits[static_cast<std::size_t>(i)] = 1;
    QLIFConfig full;
    full.theta = pi;
    CHECK(qlif_run(bits_train(bits), full).to_binary() == bits_train(bits).to_binary());

    CHECK(qlif_run(bits_train(std::vector<std::uint8_t>(100, 0)), {}).empty());

    std::vector<std::uint8_t> single(100, 0);
    single[40] = 1;
    QLIFConfig strict;
    strict.alpha_thresh = 0.9;
    CHECK(qlif_run(bits_train(single), strict).empty());
    CHECK(qlif_step(0.0, 1, strict) == doctest::Approx(std::pow(std::sin(pi / 8), 2)));

    const auto a = qlif_run(bits_train(bits), {});
    const auto b = qlif_run(bits_train(bits), {});
    CHECK(a.times == b.times);
}

TEST_CASE("vp examples") {
    CHECK(vp_distance(train({0.1, 0.4}), train({0.1, 0.4}), 10) == 0.0);
    CHECK(vp_distance(train({1.0}, 2.0), train({}, 2.0), 5) == 1.0);
    CHECK(vp_distance(train({1.0}, 2.0), train({1.5}, 2.0), 1) == doctest::Approx(0.5));
    CHECK(vp_distance(train({1.0}, 2.0), train({1.5}, 2.0), 10) == doctest::Approx(2.0));
    CHECK_THROWS_AS(vp_distance(train({}), train({}), -1), ArgumentError);
}

TEST_CASE("vp equals exhaustive matching on small trains") {
    // every pair of trains with at most 3 spikes on a 5-bin grid
    std::vector<std::vector<double>> all;
    for (int mask = 0; mask < 32; ++mask) {
        if (__builtin_popcount(static_cast<unsigned>(mask)) > 3) continue;
        std::vector<double> t;
        for (int b = 0; b < 5; ++b)
            if (mask & (1 << b)) t.push_back(b * 0.2);
        all.push_back(t);
    }
    for (double q : {0.0, 1.0, 4.0, 12.0}) {
        for (const auto& a : all) {
            for (const auto& b : all) {
                const double d = vp_distance(train(a), train(b), q);
                CHECK(std::abs(d - oracle::vp_exhaustive(a, b, q)) < 1e-12);
                CHECK(d == vp_distance(train(b), train(a), q));
            }
        }
    }
}

TEST_CASE("vp metric properties on random trains") {
    oracle::Gen g(22);
    for (int t = 0; t < 2000; ++t) {
        const double q = g.uniform(0, 30);
        const auto a = train(g.spike_times(4, 100, 0.01));
        const auto b = train(g.spike_times(4, 100, 0.01));
        const auto c = train(g.spike_times(4, 100, 0.01));
        const double ab = vp_distance(a, b, q);
        CHECK(ab <= vp_distance(a, c, q) + vp_distance(c, b, q) + 1e-12);
        CHECK(ab <= static_cast<double>(a.size() + b.size()));
        const double na = static_cast<double>(a.size());
        const double nb = static_cast<double>(b.size());
        CHECK(ab <= std::min(na, nb) * q * 1.0 + std::abs(na - nb) + 1e-12);
    }
}

TEST_CASE("vr examples") {
    CHECK(vr_distance(train({0.2, 0.3}), train({0.2, 0.3}), 0.05) == 0.0);
    CHECK(vr_distance(train({0.4}), train({}), 0.05) == doctest::Approx(std::sqrt(0.5)));
    const double tau = 0.1;
    CHECK(vr_distance(train({0.0}), train({tau * std::log(2.0)}), tau) == doctest::Approx(std::sqrt(0.5)));
    CHECK(std::abs(vr_distance(train({0.4}), train({}), 0.05) - oracle::vr_numeric({0.4}, {}, 0.05)) <= 1e-6);
    CHECK_THROWS_AS(vr_distance(train({}), train({}), 0.0), ArgumentError);
}

TEST_CASE("vr closed form matches numerical integration") {
    oracle::Gen g(23);
    for (int t = 0; t < 200; ++t) {
        const double tau = g.uniform(0.01, 0.5);
        const auto a = g.spike_times(6, 100, 0.01);
        const auto b = g.spike_times(6, 100, 0.01);
        CHECK(std::abs(vr_distance(train(a), train(b), tau) - oracle::vr_numeric(a, b, tau)) <= 1e-4);
    }
}

TEST_CASE("vr small tau counts coincidences") {
    oracle::Gen g(24);
    for (int t = 0; t < 200; ++t) {
        const auto a = g.spike_times(8, 20, 0.05);
        const auto b = g.spike_times(8, 20, 0.05);
        std::size_t common = 0;
        for (double x : a) common += std::count(b.begin(), b.end(), x);
        const double expect = std::sqrt((static_cast<double>(a.size() + b.size()) - 2.0 * common) / 2.0);
        CHECK(std::abs(vr_distance(train(a), train(b), 1e-4) - expect) <= 1e-6);
        CHECK(vr_distance(train(a), train(b), 0.03) == vr_distance(train(b), train(a), 0.03));
    }
}

TEST_CASE("sample_distance") {
    const std::vector<SpikeTrain> a = {train({0.1}), train({0.2, 0.5})};
    const std::vector<SpikeTrain> b = {train({}), train({0.2, 0.55})};
    MetricParams p;
    p.vp_q = 10;
    CHECK(sample_distance(a, a, p) == 0.0);
    CHECK(sample_distance(a, b, p) == doctest::Approx(1.5));
    CHECK(sample_distance(a, b, p) == sample_distance(b, a, p));
    p.metric = SpikeMetric::vr;
    CHECK(sample_distance(a, b, p) == sample_distance(b, a, p));
    CHECK_THROWS_AS(sample_distance(a, {train({})}, p), ArgumentError);
}

TEST_CASE("distance kernel and median heuristic") {
    Matrix D(2, 2);
    D << 0, 2, 2, 0;
    const auto K = distance_kernel(D, 0.25);
    CHECK(K.values(0, 1) == doctest::Approx(std::exp(-1.0)));
    CHECK(K.values(0, 0) == 1.0);
    CHECK((distance_kernel(D, 0.0).values.array() == 1.0).all());

    Matrix E(3, 3);
    E << 0, 1, 2, 1, 0, 3, 2, 3, 0;
    CHECK(median_heuristic_gamma(E) == doctest::Approx(0.25));
    CHECK(median_heuristic_gamma(Matrix::Zero(3, 3)) == 1.0);
}

TEST_CASE("neuromorphic kernel: invariants, determinism, serial == parallel") {
    oracle::Gen g(25);
    const Matrix X = g.matrix(25, 2, 0, pi);
    for (auto neuron : {NeuronKind::lif, NeuronKind::qlif}) {
        for (auto metric : {SpikeMetric::vp, SpikeMetric::vr}) {
            NeuromorphicConfig cfg;
            cfg.neuron = neuron;
            cfg.metric.metric = metric;
            const auto a = neuromorphic_kernel(X, cfg, Exec::serial);
            const auto b = neuromorphic_kernel(X, cfg, Exec::parallel);
            CHECK(check_kernel_invariants(a.kernel) == "");
            CHECK(a.kernel.values == b.kernel.values);
            CHECK(a.distances == b.distances);
            CHECK(a.output_trains.size() == 25);
            CHECK(a.output_trains[0].size() == 64);
        }
    }
}

}  // TEST_SUITE
