#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "qdopt/brute_force.hpp"
#include "qdopt/problem.hpp"
#include "qdopt/rng.hpp"

using namespace qdopt;

namespace {

Matrix random_coupling(std::size_t n, Rng& rng) {
    Matrix J(n, n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) J(i, j) = J(j, i) = rng.uniform(-1.0, 1.0);
    return J;
}

Matrix random_qubo_matrix(std::size_t n, Rng& rng) {
    Matrix Q(n, n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) Q(i, j) = Q(j, i) = rng.uniform(-1.0, 1.0);
    return Q;
}

// Independent energy oracle: naive full double sum, no row pointers.
double naive_ising_energy(const IsingProblem& p, const SpinConfig& s) {
    double e = p.offset;
    for (std::size_t i = 0; i < p.n; ++i)
        for (std::size_t j = 0; j < p.n; ++j) e += p.J(i, j) * s[i] * s[j];
    return e;
}

double naive_qubo_value(const QuboProblem& p, const BinaryVector& q) {
    double e = 0.0;
    for (std::size_t i = 0; i < p.n; ++i)
        for (std::size_t j = 0; j < p.n; ++j) e += p.Q(i, j) * q[i] * q[j];
    return e;
}

}  // namespace

TEST_CASE("ising energy on the two-spin antiferromagnet") {
    Matrix J(2, 2, 0.0);
    J(0, 1) = J(1, 0) = 1.0;
    IsingProblem p = make_ising(2, J);
    REQUIRE(ising_energy(p, {+1, +1}) == Catch::Approx(2.0));
    REQUIRE(ising_energy(p, {-1, -1}) == Catch::Approx(2.0));
    REQUIRE(ising_energy(p, {+1, -1}) == Catch::Approx(-2.0));
    REQUIRE(ising_energy(p, {-1, +1}) == Catch::Approx(-2.0));
}

TEST_CASE("ising energy matches the naive double sum") {
    Rng rng(100);
    for (int rep = 0; rep < 20; ++rep) {
        std::size_t n = 2 + rng.below(9);
        IsingProblem p = make_ising(n, random_coupling(n, rng));
        p.offset = rng.uniform(-2.0, 2.0);
        SpinConfig s(n);
        for (auto& x : s) x = rng.spin();
        REQUIRE(ising_energy(p, s) == Catch::Approx(naive_ising_energy(p, s)).epsilon(1e-12));
    }
}

TEST_CASE("qubo value on the documented 2x2 example") {
    Matrix Q(2, 2, 0.0);
    Q(0, 0) = 1.0;
    Q(0, 1) = Q(1, 0) = 2.0;
    Q(1, 1) = 4.0;
    QuboProblem p = make_qubo(2, Q, Direction::Minimize);
    REQUIRE(qubo_value(p, {0, 0}) == Catch::Approx(0.0));
    REQUIRE(qubo_value(p, {1, 0}) == Catch::Approx(1.0));
    REQUIRE(qubo_value(p, {0, 1}) == Catch::Approx(4.0));
    REQUIRE(qubo_value(p, {1, 1}) == Catch::Approx(9.0));
}

TEST_CASE("qubo value matches the naive double sum") {
    Rng rng(101);
    for (int rep = 0; rep < 20; ++rep) {
        std::size_t n = 2 + rng.below(9);
        QuboProblem p = make_qubo(n, random_qubo_matrix(n, rng), Direction::Minimize);
        BinaryVector q(n);
        for (auto& x : q) x = rng.bit();
        REQUIRE(qubo_value(p, q) == Catch::Approx(naive_qubo_value(p, q)).epsilon(1e-12));
    }
}

TEST_CASE("validation rejects malformed problems") {
    Matrix J(2, 2, 0.0);
    J(0, 1) = 1.0;  // asymmetric
    REQUIRE_THROWS_AS(make_ising(2, J), InputError);

    Matrix D(2, 2, 0.0);
    D(0, 0) = 1.0;  // nonzero diagonal
    REQUIRE_THROWS_AS(make_ising(2, D), InputError);

    Matrix N(2, 2, 0.0);
    N(0, 1) = N(1, 0) = std::nan("");
    REQUIRE_THROWS_AS(make_ising(2, N), InputError);

    Matrix W(2, 3, 0.0);  // wrong shape
    REQUIRE_THROWS_AS(make_ising(2, W), InputError);

    REQUIRE_THROWS_AS(make_qubo(2, N, Direction::Minimize), InputError);

    IsingProblem p = make_ising(2, Matrix(2, 2, 0.0));
    REQUIRE_THROWS_AS(ising_energy(p, {+1}), InputError);          // wrong length
    REQUIRE_THROWS_AS(ising_energy(p, {+1, 0}), InputError);       // not a spin
    QuboProblem q = make_qubo(2, Matrix(2, 2, 0.0), Direction::Minimize);
    REQUIRE_THROWS_AS(qubo_value(q, {0, 2}), InputError);          // not a bit
}

TEST_CASE("spins and bits round-trip") {
    SpinConfig s{+1, -1, -1, +1};
    BinaryVector q = spins_to_bits(s);
    REQUIRE(q == BinaryVector{1, 0, 0, 1});
    REQUIRE(bits_to_spins(q) == s);
}

TEST_CASE("qubo_to_ising constants on the 2x2 example") {
    Matrix Q(2, 2, 0.0);
    Q(0, 0) = 1.0;
    Q(0, 1) = Q(1, 0) = 2.0;
    Q(1, 1) = 4.0;
    QuboProblem p = make_qubo(2, Q, Direction::Minimize);
    IsingProblem c = qubo_to_ising(p);
    REQUIRE(c.n == 3);
    REQUIRE(c.J(1, 2) == Catch::Approx(0.5));   // Q01 / 4
    REQUIRE(c.J(0, 1) == Catch::Approx(0.75));  // row sum (1+2) / 4
    REQUIRE(c.J(0, 2) == Catch::Approx(1.5));   // row sum (2+4) / 4
    REQUIRE(c.offset == Catch::Approx(3.5));    // (sum Q + trace Q) / 4
    for (std::size_t i = 0; i < 3; ++i) REQUIRE(c.J(i, i) == 0.0);
}

TEST_CASE("qubo_to_ising preserves values through the embedding") {
    Rng rng(102);
    for (int rep = 0; rep < 10; ++rep) {
        std::size_t n = 2 + rng.below(7);
        Matrix Q = random_qubo_matrix(n, rng);

        QuboProblem mn = make_qubo(n, Q, Direction::Minimize);
        QuboProblem mx = make_qubo(n, Q, Direction::Maximize);
        IsingProblem cn = qubo_to_ising(mn);
        IsingProblem cx = qubo_to_ising(mx);

        for (std::uint64_t mask = 0; mask < (1ULL << n); ++mask) {
            BinaryVector q(n);
            for (std::size_t i = 0; i < n; ++i) q[i] = static_cast<int>((mask >> i) & 1);
            SpinConfig s = qubo_embed(q);
            REQUIRE(s[0] == +1);
            double v = qubo_value(mn, q);
            REQUIRE(ising_energy(cn, s) == Catch::Approx(v).margin(1e-12));
            REQUIRE(ising_energy(cx, s) == Catch::Approx(-v).margin(1e-12));
            REQUIRE(ising_extract(s) == q);
        }
    }
}

TEST_CASE("ising_extract uses the gauge freedom of the ancilla") {
    // Global flip leaves the energy invariant; extraction must normalize it.
    SpinConfig flipped{-1, -1, +1};
    REQUIRE(ising_extract(flipped) == BinaryVector{1, 0});
    REQUIRE_THROWS_AS(ising_extract(SpinConfig{+1}), InputError);
}

TEST_CASE("maxcut triangle compiles and evaluates") {
    std::vector<Edge> edges{{0, 1, 1.0}, {0, 2, 1.0}, {1, 2, 1.0}};
    IsingProblem p = maxcut_to_ising(edges, 3);
    REQUIRE(p.J(0, 1) == Catch::Approx(0.5));
    REQUIRE(total_weight(edges) == Catch::Approx(3.0));

    SpinConfig s{+1, +1, -1};
    REQUIRE(cut_value(edges, s) == Catch::Approx(2.0));
    // Cut identity: cut = (W - E) / 2 with E over J = w/2.
    REQUIRE(cut_value(edges, s) ==
            Catch::Approx((total_weight(edges) - ising_energy(p, s)) / 2.0));

    // The optimum of a triangle cuts two of three edges.
    Solution g = brute_force_ground_state(p);
    REQUIRE((total_weight(edges) - g.energy) / 2.0 == Catch::Approx(2.0));
}

TEST_CASE("maxcut cut identity on random graphs") {
    Rng rng(103);
    for (int rep = 0; rep < 10; ++rep) {
        std::size_t n = 3 + rng.below(8);
        std::vector<Edge> edges;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j)
                if (rng.uniform() < 0.6)
                    edges.push_back({i, j, rng.uniform(-1.0, 1.0)});
        if (edges.empty()) continue;
        IsingProblem p = maxcut_to_ising(edges, n);
        SpinConfig s(n);
        for (auto& x : s) x = rng.spin();
        REQUIRE(cut_value(edges, s) ==
                Catch::Approx((total_weight(edges) - ising_energy(p, s)) / 2.0).margin(1e-9));
    }
}

TEST_CASE("maxcut rejects bad edge lists") {
    REQUIRE_THROWS_AS(maxcut_to_ising({{0, 0, 1.0}}, 3), InputError);           // self loop
    REQUIRE_THROWS_AS(maxcut_to_ising({{0, 3, 1.0}}, 3), InputError);           // out of range
    REQUIRE_THROWS_AS(maxcut_to_ising({{0, 1, 1.0}, {1, 0, 2.0}}, 3), InputError);  // duplicate
}

TEST_CASE("brute force finds known ground states") {
    Matrix J(2, 2, 0.0);
    J(0, 1) = J(1, 0) = 1.0;
    Solution s = brute_force_ground_state(make_ising(2, J));
    REQUIRE(s.energy == Catch::Approx(-2.0));
    REQUIRE(s.config[0] * s.config[1] == -1);
    REQUIRE(s.config[0] == +1);  // gauge-normalized tie break

    // Ferromagnet: all aligned.
    Matrix F(4, 4, 0.0);
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = i + 1; j < 4; ++j) F(i, j) = F(j, i) = -1.0;
    Solution f = brute_force_ground_state(make_ising(4, F));
    REQUIRE(f.energy == Catch::Approx(-12.0));
    REQUIRE(f.config == SpinConfig{+1, +1, +1, +1});
}

TEST_CASE("brute force agrees with exhaustive scan on random instances") {
    Rng rng(104);
    for (int rep = 0; rep < 10; ++rep) {
        std::size_t n = 2 + rng.below(9);
        IsingProblem p = make_ising(n, random_coupling(n, rng));

        double best = 1e300;
        for (std::uint64_t mask = 0; mask < (1ULL << n); ++mask) {
            SpinConfig s(n);
            for (std::size_t i = 0; i < n; ++i) s[i] = (mask >> i) & 1 ? +1 : -1;
            best = std::min(best, naive_ising_energy(p, s));
        }
        Solution g = brute_force_ground_state(p);
        REQUIRE(g.energy == Catch::Approx(best).margin(1e-12));
        REQUIRE(ising_energy(p, g.config) == Catch::Approx(best).margin(1e-12));
    }
}

TEST_CASE("brute force qubo respects direction") {
    Rng rng(105);
    for (int rep = 0; rep < 10; ++rep) {
        std::size_t n = 2 + rng.below(7);
        Matrix Q = random_qubo_matrix(n, rng);
        QuboProblem mn = make_qubo(n, Q, Direction::Minimize);
        QuboProblem mx = make_qubo(n, Q, Direction::Maximize);

        double lo = 1e300, hi = -1e300;
        for (std::uint64_t mask = 0; mask < (1ULL << n); ++mask) {
            BinaryVector q(n);
            for (std::size_t i = 0; i < n; ++i) q[i] = static_cast<int>((mask >> i) & 1);
            double v = naive_qubo_value(mn, q);
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
        REQUIRE(brute_force_ground_state(mn).energy == Catch::Approx(lo).margin(1e-12));
        REQUIRE(brute_force_ground_state(mx).energy == Catch::Approx(hi).margin(1e-12));
    }
}

TEST_CASE("brute force enforces the capacity cap") {
    Matrix J(25, 25, 0.0);
    REQUIRE_THROWS_AS(brute_force_ground_state(make_ising(25, J)), CapacityError);
}
