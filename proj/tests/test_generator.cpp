#include <doctest.h>

#include "mcsp/generator.hpp"
#include "mcsp/oracle.hpp"
#include "mcsp/solver.hpp"

using namespace mcsp;

TEST_CASE("planted decomposition is a valid partition of the right size") {
    for (std::uint64_t seed : {1ull, 2ull, 3ull, 17ull, 923ull}) {
        GenParams p;
        p.n = 200;
        p.k = 12;
        p.d = 6;
        p.seed = seed;
        Generated g = generate(p);
        CHECK(g.inst.n1() == p.n);
        CHECK(g.inst.n2() == p.n);
        CHECK(g.planted.size() <= p.k);
        MatchSet M = matchset_of(g.planted);
        CHECK(validate_csp(g.inst, M).empty());
        // re-deriving blocks may merge planted blocks, never split them
        CHECK(blocks_of(g.inst, M).size() <= p.k);

        OccurrenceIndex idx = build_index(g.inst);
        CHECK(idx.d <= p.d);
    }
}

TEST_CASE("defaults follow the family and noise conventions") {
    GenParams p;
    p.n = 1000;
    p.d = 6;
    CHECK(p.f_value() == 500);
    CHECK(p.delta_value() == 100);
}

TEST_CASE("zero noise yields a balanced instance without deletions") {
    GenParams p;
    p.n = 60;
    p.k = 5;
    p.d = 4;
    p.delta = 0;
    p.seed = 7;
    Generated g = generate(p);
    CHECK(g.planted.deleted1.empty());
    CHECK(g.planted.deleted2.empty());
    CHECK(g.inst.n1() == g.inst.n2());
    OccurrenceIndex idx = build_index(g.inst);
    for (int a = 0; a < g.inst.alphabet_size; ++a)
        CHECK(idx.count(a, Side::S1) == idx.count(a, Side::S2));
}

TEST_CASE("single block without noise copies the string") {
    GenParams p;
    p.n = 30;
    p.k = 1;
    p.d = 3;
    p.delta = 0;
    p.seed = 5;
    Generated g = generate(p);
    CHECK(g.inst.s1 == g.inst.s2);
    CHECK(solve_minimum(g.inst).size == 1);
}

TEST_CASE("same seed reproduces the instance byte for byte") {
    GenParams p;
    p.n = 300;
    p.k = 20;
    p.d = 6;
    p.seed = 42;
    std::string a = instance_to_text(generate(p).inst);
    std::string b = instance_to_text(generate(p).inst);
    CHECK(a == b);
    p.seed = 43;
    CHECK(instance_to_text(generate(p).inst) != a);
}

TEST_CASE("noise letters stay on one string and within the occurrence cap") {
    GenParams p;
    p.n = 240;
    p.k = 10;
    p.d = 5;
    p.seed = 99;
    Generated g = generate(p);
    OccurrenceIndex idx = build_index(g.inst);
    for (int a = 0; a < g.inst.alphabet_size; ++a) {
        CHECK(idx.count(a, Side::S1) <= p.d);
        CHECK(idx.count(a, Side::S2) <= p.d);
    }
    // every deleted marker must be abundant for the planted CSP to be valid
    for (int pos : g.planted.deleted1)
        CHECK(idx.is_abundant(g.inst, {Side::S1, pos}));
    for (int pos : g.planted.deleted2)
        CHECK(idx.is_abundant(g.inst, {Side::S2, pos}));
}

TEST_CASE("solved minimum never exceeds the planted size") {
    for (std::uint64_t seed = 0; seed < 8; ++seed) {
        GenParams p;
        p.n = 120;
        p.k = 8;
        p.d = 6;
        p.seed = seed;
        Generated g = generate(p);
        MinimumResult m = solve_minimum(g.inst);
        REQUIRE(m.status == SolveStatus::Solved);
        CHECK(m.size <= p.k);
    }
}

TEST_CASE("average candidate-match density lands near half the cap") {
    // the d* statistic over many seeds should sit around d/2
    double sum = 0.0;
    int runs = 50;
    for (int s = 0; s < runs; ++s) {
        GenParams p;
        p.n = 1000;
        p.d = 6;
        p.k = 90;
        p.seed = 1000 + static_cast<std::uint64_t>(s);
        sum += build_index(generate(p).inst).d_star;
    }
    double avg = sum / runs;
    CHECK(avg > 0.8 * 3.0);
    CHECK(avg < 1.2 * 3.0);
}

TEST_CASE("infeasible letter budgets are rejected") {
    GenParams p;
    p.n = 100;
    p.k = 5;
    p.d = 2;
    p.f = 10;  // capacity 20 < 90
    CHECK_THROWS_AS(generate(p), Infeasible);

    GenParams bad;
    bad.n = 10;
    bad.delta = 10;
    CHECK_THROWS_AS(generate(bad), std::invalid_argument);
}
