#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <string>

#include "qdopt/io.hpp"
#include "qdopt/rng.hpp"

using namespace qdopt;

TEST_CASE("problem text parses headers, comments, and entries") {
    std::string text =
        "# a comment line\n"
        "ising 3   # trailing comment\n"
        "\n"
        "0 1 -1.5\n"
        "1 2 0.25\n";
    ParsedProblem p = parse_problem_text(text);
    REQUIRE(p.is_ising);
    REQUIRE(p.ising.n == 3);
    REQUIRE(p.ising.J(0, 1) == Catch::Approx(-1.5));
    REQUIRE(p.ising.J(1, 0) == Catch::Approx(-1.5));
    REQUIRE(p.ising.J(1, 2) == Catch::Approx(0.25));
    REQUIRE(p.ising.J(0, 2) == 0.0);
}

TEST_CASE("qubo text carries an optional direction") {
    ParsedProblem d = parse_problem_text("qubo 2\n0 0 1\n0 1 2\n1 1 4\n");
    REQUIRE(!d.is_ising);
    REQUIRE(d.qubo.direction == Direction::Minimize);
    REQUIRE(d.qubo.Q(0, 1) == Catch::Approx(2.0));

    ParsedProblem mx = parse_problem_text("qubo 2 max\n0 1 1\n");
    REQUIRE(mx.qubo.direction == Direction::Maximize);
    ParsedProblem mn = parse_problem_text("qubo 2 min\n");
    REQUIRE(mn.qubo.direction == Direction::Minimize);
}

TEST_CASE("problem text rejects malformed input") {
    REQUIRE_THROWS_AS(parse_problem_text(""), ParseError);
    REQUIRE_THROWS_AS(parse_problem_text("# only comments\n"), ParseError);
    REQUIRE_THROWS_AS(parse_problem_text("spin 3\n"), ParseError);
    REQUIRE_THROWS_AS(parse_problem_text("ising 0\n"), ParseError);
    REQUIRE_THROWS_AS(parse_problem_text("ising 3\n0 1\n"), ParseError);
    REQUIRE_THROWS_AS(parse_problem_text("ising 3\n1 0 1.0\n"), ParseError);   // i > j
    REQUIRE_THROWS_AS(parse_problem_text("ising 3\n1 1 1.0\n"), ParseError);   // diagonal
    REQUIRE_THROWS_AS(parse_problem_text("ising 3\n0 3 1.0\n"), ParseError);   // range
    REQUIRE_THROWS_AS(parse_problem_text("ising 3\n0 1 xyz\n"), ParseError);   // value
    REQUIRE_THROWS_AS(parse_problem_text("ising 3\n0 1 inf\n"), ParseError);   // finite
    REQUIRE_THROWS_AS(parse_problem_text("ising 3\n0 1 1\n0 1 2\n"), ParseError);  // dup
    REQUIRE_THROWS_AS(parse_problem_text("qubo 2 down\n"), ParseError);
    REQUIRE_THROWS_AS(parse_problem_text("qubo 2 min extra\n"), ParseError);
}

TEST_CASE("problem text round-trips exactly") {
    Rng rng(700);
    for (int rep = 0; rep < 5; ++rep) {
        std::size_t n = 2 + rng.below(9);
        Matrix J(n, n, 0.0);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j)
                if (rng.uniform() < 0.7) J(i, j) = J(j, i) = rng.uniform(-1.0, 1.0);
        IsingProblem p = make_ising(n, J);
        ParsedProblem back = parse_problem_text(ising_to_text(p));
        REQUIRE(back.is_ising);
        REQUIRE(back.ising.n == n);
        REQUIRE(back.ising.J == p.J);

        Matrix Q(n, n, 0.0);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i; j < n; ++j)
                if (rng.uniform() < 0.7) Q(i, j) = Q(j, i) = rng.uniform(-2.0, 2.0);
        Direction dir = rng.bit() ? Direction::Maximize : Direction::Minimize;
        QuboProblem q = make_qubo(n, Q, dir);
        ParsedProblem qback = parse_problem_text(qubo_to_text(q));
        REQUIRE(!qback.is_ising);
        REQUIRE(qback.qubo.Q == q.Q);
        REQUIRE(qback.qubo.direction == dir);
    }
}

TEST_CASE("ising text refuses a constant term") {
    IsingProblem p = make_ising(2, Matrix(2, 2, 0.0));
    p.offset = 1.0;
    REQUIRE_THROWS_AS(ising_to_text(p), InputError);
}

TEST_CASE("dataset csv parses and round-trips") {
    std::string text =
        "b0,b1,b2,target\r\n"
        "0,1,0,1.5\n"
        "1,1,1,-2.25\r\n";
    PropertyDataset d = parse_dataset_csv(text);
    REQUIRE(d.n == 3);
    REQUIRE(d.count() == 2);
    REQUIRE(d.target_names == std::vector<std::string>{"target"});
    REQUIRE(d.target(0, 0) == Catch::Approx(1.5));
    REQUIRE(d.row_bits(1) == BinaryVector{1, 1, 1});

    PropertyDataset back = parse_dataset_csv(dataset_to_csv(d));
    REQUIRE(back.bits == d.bits);
    REQUIRE(back.targets == d.targets);
    REQUIRE(back.target_names == d.target_names);
}

TEST_CASE("dataset csv supports multiple targets") {
    std::string text =
        "b0,b1,pic50,qed\n"
        "0,1,9.5,0.8\n"
        "1,0,7.25,0.5\n";
    PropertyDataset d = parse_dataset_csv(text);
    REQUIRE(d.target_names == std::vector<std::string>{"pic50", "qed"});
    REQUIRE(d.target(1, 1) == Catch::Approx(0.5));
    PropertyDataset back = parse_dataset_csv(dataset_to_csv(d));
    REQUIRE(back.targets == d.targets);
    REQUIRE(back.target_names == d.target_names);
}

TEST_CASE("dataset csv rejects malformed input") {
    REQUIRE_THROWS_AS(parse_dataset_csv(""), ParseError);
    REQUIRE_THROWS_AS(parse_dataset_csv("x0,target\n0,1\n"), ParseError);     // bad header
    REQUIRE_THROWS_AS(parse_dataset_csv("b0,b1\n0,1\n"), ParseError);         // no target
    REQUIRE_THROWS_AS(parse_dataset_csv("b0,target\n2,1\n"), ParseError);     // bad bit
    REQUIRE_THROWS_AS(parse_dataset_csv("b0,target\n0.0,1\n"), ParseError);   // bad bit
    REQUIRE_THROWS_AS(parse_dataset_csv("b0,target\n0,1,9\n"), ParseError);   // ragged
    REQUIRE_THROWS_AS(parse_dataset_csv("b0,target\n0\n"), ParseError);       // ragged
    REQUIRE_THROWS_AS(parse_dataset_csv("b0,target\n0,zzz\n"), ParseError);   // bad target
}

TEST_CASE("fm model json round-trips") {
    FactorModel m;
    m.n = 3;
    m.K = 2;
    m.V = Matrix(3, 2, 0.0);
    Rng rng(701);
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t k = 0; k < 2; ++k) m.V(i, k) = rng.uniform(-1.0, 1.0);
    m.transform.scale = -1.0;
    m.transform.shift = 17.25;

    FactorModel back = fm_from_json(fm_to_json(m).dump());
    REQUIRE(back.n == 3);
    REQUIRE(back.K == 2);
    REQUIRE(back.V == m.V);
    REQUIRE(back.transform.scale == m.transform.scale);
    REQUIRE(back.transform.shift == m.transform.shift);
}

TEST_CASE("fm model json rejects malformed documents") {
    REQUIRE_THROWS_AS(fm_from_json("not json"), ParseError);
    REQUIRE_THROWS_AS(fm_from_json("[1,2]"), ParseError);
    REQUIRE_THROWS_AS(fm_from_json(R"({"n":2,"K":1})"), ParseError);  // missing V
    REQUIRE_THROWS_AS(fm_from_json(R"({"n":2,"K":1,"V":[1,2,3],"target_transform":{"scale":1,"shift":0}})"),
                      ParseError);  // wrong V size
    REQUIRE_THROWS_AS(fm_from_json(R"({"n":2,"K":1,"V":[1,"x"],"target_transform":{"scale":1,"shift":0}})"),
                      ParseError);  // non-numeric
    REQUIRE_THROWS_AS(fm_from_json(R"({"n":2,"K":1,"V":[1,2]})"), ParseError);  // no transform
    REQUIRE_THROWS_AS(fm_from_json(R"({"n":2,"K":1,"V":[1,2],"target_transform":{"scale":0,"shift":0}})"),
                      ParseError);  // zero scale
}

TEST_CASE("rbm model json round-trips") {
    RbmModel m;
    m.n_v = 2;
    m.n_h = 3;
    m.W = Matrix(2, 3, 0.0);
    Rng rng(702);
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 3; ++j) m.W(i, j) = rng.uniform(-1.0, 1.0);
    m.b_v = {0.5, -0.5};
    m.b_h = {0.1, 0.2, 0.3};

    RbmModel back = rbm_from_json(rbm_to_json(m).dump());
    REQUIRE(back.n_v == 2);
    REQUIRE(back.n_h == 3);
    REQUIRE(back.W == m.W);
    REQUIRE(back.b_v == m.b_v);
    REQUIRE(back.b_h == m.b_h);

    REQUIRE_THROWS_AS(rbm_from_json(R"({"n_v":1,"n_h":1,"W":[0],"b_v":[0]})"), ParseError);
    REQUIRE_THROWS_AS(rbm_from_json(R"({"n_v":1,"n_h":1,"W":[0,0],"b_v":[0],"b_h":[0]})"),
                      ParseError);
}

TEST_CASE("solution json keeps the documented key order") {
    Solution s;
    s.config = {+1, -1};
    s.energy = -2.0;
    s.seed = 42;
    s.restart_index = 3;
    s.best_step = 17;
    std::string out = solution_to_json(s).dump();
    std::size_t pe = out.find("\"energy\"");
    std::size_t pc = out.find("\"config\"");
    std::size_t ps = out.find("\"seed\"");
    std::size_t pr = out.find("\"restart_index\"");
    std::size_t pb = out.find("\"best_step\"");
    REQUIRE(pe != std::string::npos);
    REQUIRE(pe < pc);
    REQUIRE(pc < ps);
    REQUIRE(ps < pr);
    REQUIRE(pr < pb);
    REQUIRE(out.find("-2.0") != std::string::npos);
}

TEST_CASE("file helpers signal open failures") {
    REQUIRE_THROWS_AS(read_text_file("/nonexistent/path/file.txt"), ParseError);
    REQUIRE_THROWS_AS(write_text_file("/nonexistent/dir/file.txt", "x"), InputError);
}
