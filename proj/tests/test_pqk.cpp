#include "oracles.hpp"

#include "qsc/errors.hpp"
#include "qsc/pqk.hpp"

#include <doctest.h>

#include <numbers>

using namespace qsc;
using std::numbers::pi;

namespace {

pqk::EncodingParams random_params(oracle::Gen& g, std::size_t d) {
    pqk::EncodingParams p;
    for (std::size_t i = 0; i < d; ++i) {
        p.alpha.push_back(g.uniform(0, 2));
        p.beta.push_back(g.uniform(0, 2));
        p.gamma_rot.push_back(g.uniform(0, 2));
    }
    return p;
}

std::vector<double> as_std(const Vector& v) { return {v.data(), v.data() + v.size()}; }

}  // namespace

TEST_SUITE("pqk") {

TEST_CASE("rotation gates are unitary") {
    oracle::Gen g(1);
    for (int t = 0; t < 50; ++t) {
        const double th = g.uniform(-7, 7);
        for (const auto& gate : {pqk::rx(th), pqk::ry(th), pqk::rz(th)}) {
            // columns orthonormal
            const double c0 = std::norm(gate.m00) + std::norm(gate.m10);
            const double c1 = std::norm(gate.m01) + std::norm(gate.m11);
            const auto dot = std::conj(gate.m00) * gate.m01 + std::conj(gate.m10) * gate.m11;
            CHECK(c0 == doctest::Approx(1.0).epsilon(1e-14));
            CHECK(c1 == doctest::Approx(1.0).epsilon(1e-14));
            CHECK(std::abs(dot) < 1e-14);
        }
    }
}

TEST_CASE("encode_qubit examples") {
    auto s = pqk::encode_qubit(0.7, 0, 0, 0);
    CHECK(std::abs(s.a0 - pqk::Complex(1, 0)) < 1e-15);
    CHECK(std::abs(s.a1) < 1e-15);

    s = pqk::encode_qubit(pi, 1, 0, 0);
    CHECK(std::abs(s.a0) < 1e-15);
    CHECK(std::abs(s.a1 - pqk::Complex(0, -1)) < 1e-15);

    s = pqk::encode_qubit(pi / 2, 0, 1, 0);
    CHECK(std::abs(s.a0 - std::cos(pi / 4)) < 1e-15);
    CHECK(std::abs(s.a1 - std::sin(pi / 4)) < 1e-15);

    oracle::Gen g(2);
    for (int t = 0; t < 200; ++t) {
        const auto q = pqk::encode_qubit(g.uniform(0, pi), g.uniform(0, 2), g.uniform(0, 2), g.uniform(0, 2));
        CHECK(std::norm(q.a0) + std::norm(q.a1) == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("fidelity examples") {
    const auto p1 = pqk::EncodingParams{{1.0}, {0.0}, {0.0}};
    Vector a(1), b(1);
    a << pi;
    b << 0.0;
    CHECK(pqk::fidelity(a, b, p1) == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(pqk::fidelity(a, a, p1) == doctest::Approx(1.0));

    const auto p2 = pqk::EncodingParams::uniform(3, 1.0);
    CHECK_THROWS_AS(pqk::fidelity(a, b, p2), ArgumentError);
}

TEST_CASE("fidelity matches full statevector simulation") {
    oracle::Gen g(3);
    for (int t = 0; t < 300; ++t) {
        const auto d = static_cast<std::size_t>(g.integer(1, 4));
        const auto p = random_params(g, d);
        const Vector x = g.matrix(static_cast<Eigen::Index>(d), 1, 0, pi);
        const Vector y = g.matrix(static_cast<Eigen::Index>(d), 1, 0, pi);
        const double expect = oracle::statevector_fidelity(as_std(x), as_std(y), p.alpha, p.beta, p.gamma_rot);
        CHECK(std::abs(pqk::fidelity(x, y, p) - expect) <= 1e-10);
    }
}

TEST_CASE("fidelity is symmetric and bounded") {
    oracle::Gen g(4);
    for (int t = 0; t < 300; ++t) {
        const auto p = random_params(g, 3);
        const Vector x = g.matrix(3, 1, 0, pi);
        const Vector y = g.matrix(3, 1, 0, pi);
        const double f = pqk::fidelity(x, y, p);
        CHECK(std::abs(f - pqk::fidelity(y, x, p)) <= 1e-12);
        CHECK(f >= 0.0);
        CHECK(f <= 1.0 + 1e-12);
    }
}

TEST_CASE("gram") {
    oracle::Gen g(5);
    SUBCASE("zero params give all ones") {
        const auto K = pqk::gram(g.matrix(6, 2, 0, pi), pqk::EncodingParams::uniform(2, 0.0));
        CHECK((K.values.array() - 1.0).abs().maxCoeff() < 1e-15);
        CHECK(K.kind == KernelKind::pqk);
    }
    SUBCASE("duplicate rows give duplicate kernel rows") {
        Matrix X = g.matrix(5, 2, 0, pi);
        X.row(4) = X.row(1);
        const auto K = pqk::gram(X, random_params(g, 2));
        CHECK((K.values.row(1) - K.values.row(4)).cwiseAbs().maxCoeff() < 1e-12);
    }
    SUBCASE("entries match statevector oracle, d=2") {
        const Matrix X = g.matrix(3, 2, 0, pi);
        const auto p = random_params(g, 2);
        const auto K = pqk::gram(X, p);
        for (Eigen::Index i = 0; i < 3; ++i) {
            for (Eigen::Index j = 0; j < 3; ++j) {
                const double expect = oracle::statevector_fidelity(as_std(X.row(i).transpose()), as_std(X.row(j).transpose()),
                                                                   p.alpha, p.beta, p.gamma_rot);
                CHECK(std::abs(K.values(i, j) - expect) <= 1e-10);
            }
        }
    }
    SUBCASE("invariants and serial == parallel") {
        for (int t = 0; t < 20; ++t) {
            const auto d = g.integer(1, 5);
            const Matrix X = g.matrix(g.integer(2, 30), d, 0, pi);
            const auto p = random_params(g, static_cast<std::size_t>(d));
            const auto a = pqk::gram(X, p, Exec::serial);
            const auto b = pqk::gram(X, p, Exec::parallel);
            CHECK(check_kernel_invariants(a) == "");
            CHECK(a.values == b.values);
        }
    }
}

TEST_CASE("kta examples") {
    Matrix I2 = Matrix::Identity(2, 2);
    CHECK(pqk::kta(I2, {0, 1}) == doctest::Approx(1.0));
    CHECK(pqk::kta(I2, {0, 0}) == doctest::Approx(1.0 / std::sqrt(2.0)));
    CHECK(pqk::kta_loss(I2, {0, 0}) == doctest::Approx(1.0 - 1.0 / std::sqrt(2.0)));

    const Labels y = {0, 1, 1, 2, 0, 2, 2};
    Matrix YYt(7, 7);
    for (int i = 0; i < 7; ++i)
        for (int j = 0; j < 7; ++j) YYt(i, j) = y[i] == y[j];
    CHECK(pqk::kta(YYt, y) == doctest::Approx(1.0));
    CHECK(pqk::kta_loss(YYt, y) == doctest::Approx(0.0));

    CHECK_THROWS_AS(pqk::kta(Matrix::Zero(3, 3), {0, 1, 0}), NumericError);
}

TEST_CASE("kta is invariant under positive scaling") {
    oracle::Gen g(6);
    for (int t = 0; t < 100; ++t) {
        const Matrix X = g.matrix(12, 2, 0, pi);
        const auto K = pqk::gram(X, random_params(g, 2)).values;
        const auto y = g.labels(12, 3);
        const double c = std::exp(g.uniform(-5, 5));
        CHECK(std::abs(pqk::kta(c * K, y) - pqk::kta(K, y)) <= 1e-10);
        const double loss = pqk::kta_loss(K, y);
        CHECK(loss >= -1e-12);
        CHECK(loss <= 1.0 + 1e-12);
    }
}

TEST_CASE("search_params") {
    oracle::Gen g(7);
    Matrix X = g.matrix(40, 2, 0, pi);
    Labels y(40);
    for (Eigen::Index i = 0; i < 40; ++i) {
        y[static_cast<std::size_t>(i)] = i % 2;
        X(i, 0) = i % 2 ? g.uniform(2.4, pi) : g.uniform(0, 0.7);  // separated on feature 0
    }

    SUBCASE("budget 1 returns the only candidate") {
        const auto r = pqk::search_params(X, y, 1, 11);
        REQUIRE(r.trace.size() == 1);
        CHECK(r.best_index == 0);
        CHECK(r.best.alpha == r.trace[0].params.alpha);
    }
    SUBCASE("best is the maximum of the trace and beats the all-ones kernel") {
        const auto r = pqk::search_params(X, y, 60, 12);
        for (const auto& c : r.trace) CHECK(c.kta <= r.best_kta);
        CHECK(r.trace[r.best_index].kta == r.best_kta);
        const double ones = pqk::kta(Matrix::Ones(40, 40), y);
        CHECK(r.best_kta >= ones);
        for (double v : r.best.alpha) CHECK((v >= 0.0 && v <= 2.0));
    }
    SUBCASE("deterministic and identical across execution paths") {
        const auto a = pqk::search_params(X, y, 30, 13, Exec::serial);
        const auto b = pqk::search_params(X, y, 30, 13, Exec::parallel);
        CHECK(a.best_index == b.best_index);
        CHECK(a.best.alpha == b.best.alpha);
        CHECK(a.best.beta == b.best.beta);
        CHECK(a.best.gamma_rot == b.best.gamma_rot);
        CHECK(a.best_kta == b.best_kta);
    }
    SUBCASE("bad params rejected") {
        CHECK_THROWS_AS(pqk::validate(pqk::EncodingParams{{2.5}, {0.0}, {0.0}}), ArgumentError);
        CHECK_THROWS_AS(pqk::validate(pqk::EncodingParams{{1.0}, {0.0}, {}}), ArgumentError);
    }
}

}  // TEST_SUITE
