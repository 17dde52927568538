#include <doctest.h>

#include <sstream>

#include "mcsp/instance.hpp"
#include "test_util.hpp"

using namespace mcsp;
using testutil::ti;
using testutil::tw;

TEST_CASE("parsing whitespace tokens") {
    Instance inst = parse_instance(std::string("a b\nb a\n"));
    CHECK(inst.n1() == 2);
    CHECK(inst.n2() == 2);
    CHECK(inst.letter1(1) == inst.letter2(2));
    CHECK(inst.letter1(2) == inst.letter2(1));
    CHECK(!inst.k.has_value());
}

TEST_CASE("parsing with budget, comments and crlf") {
    Instance inst = parse_instance(std::string("# header\na b c\r\nc b a\n3\n\n"));
    CHECK(inst.n1() == 3);
    CHECK(inst.k == 3);
}

TEST_CASE("parse errors") {
    try {
        parse_instance(std::string("a\n"));
        FAIL("expected ParseError");
    } catch (const ParseError &e) {
        CHECK(e.kind() == ParseError::Kind::EmptyString);
    }
    try {
        parse_instance(std::string("a\n \n3\n"));
        FAIL("expected ParseError");
    } catch (const ParseError &e) {
        CHECK(e.kind() == ParseError::Kind::EmptyString);
    }
    try {
        parse_instance(std::string("a\nb\nxyz\n"));
        FAIL("expected ParseError");
    } catch (const ParseError &e) {
        CHECK(e.kind() == ParseError::Kind::MalformedBudget);
    }
    try {
        parse_instance(std::string("a b\nb a\n-1\n"));
        FAIL("expected ParseError");
    } catch (const ParseError &e) {
        CHECK(e.kind() == ParseError::Kind::MalformedBudget);
    }
}

TEST_CASE("per-character tokenization of the running example") {
    Instance inst = ti(testutil::kExampleS1, testutil::kExampleS2);
    CHECK(inst.n1() == 29);
    CHECK(inst.n2() == 28);
    CHECK(inst.alphabet_size == 4);

    OccurrenceIndex idx = build_index(inst);
    // letter c appears three times in S1 and twice in S2
    for (int a = 0; a < inst.alphabet_size; ++a) {
        if (inst.token_of(a) == "c") {
            CHECK(idx.count(a, Side::S1) == 3);
            CHECK(idx.count(a, Side::S2) == 2);
            CHECK(idx.is_abundant(inst, {Side::S1, idx.positions(a, Side::S1).front()}));
            CHECK(idx.is_rare(inst, {Side::S2, idx.positions(a, Side::S2).front()}));
        }
    }
}

TEST_CASE("round trip through text form") {
    Instance inst = tw("a b a", "a b", 2);
    std::string text = instance_to_text(inst);
    CHECK(text == "a b a\na b\n2\n");
    Instance again = parse_instance(text);
    CHECK(again.s1 == inst.s1);
    CHECK(again.s2 == inst.s2);
    CHECK(again.k == inst.k);
}

TEST_CASE("occurrence index counts and flags") {
    Instance inst = ti("aba", "ab");
    OccurrenceIndex idx = build_index(inst);
    int a = inst.letter1(1), b = inst.letter1(2);
    CHECK(idx.count(a, Side::S1) == 2);
    CHECK(idx.count(a, Side::S2) == 1);
    CHECK(idx.is_abundant(inst, {Side::S1, 1}));
    CHECK(idx.is_abundant(inst, {Side::S1, 3}));
    CHECK(idx.is_rare(inst, {Side::S2, 1}));
    CHECK(idx.is_rare(inst, {Side::S1, 2}));
    CHECK(idx.is_rare(inst, {Side::S2, 2}));
    CHECK(idx.count(b, Side::S1) == 1);
    CHECK(idx.d == 2);
    // matches: a contributes 2, b contributes 1
    CHECK(idx.total_matches == 3);
    CHECK(idx.d_star == doctest::Approx(2.0 * 3 / 5));
}

TEST_CASE("equal counts mean rare everywhere") {
    Instance inst = ti("ab", "ba");
    OccurrenceIndex idx = build_index(inst);
    for (Side s : {Side::S1, Side::S2})
        for (int p = 1; p <= 2; ++p) CHECK(idx.is_rare(inst, {s, p}));
    CHECK(idx.d == 1);
}

TEST_CASE("candidate match enumeration") {
    Instance inst = ti("ab", "ba");
    OccurrenceIndex idx = build_index(inst);
    auto ms = candidate_matches_of(inst, idx, {Side::S1, 1});
    REQUIRE(ms.size() == 1);
    CHECK(ms[0] == CandidateMatch{1, 2});

    Instance inst2 = ti("aa", "a");
    OccurrenceIndex idx2 = build_index(inst2);
    auto ms2 = candidate_matches_of(inst2, idx2, {Side::S2, 1});
    REQUIRE(ms2.size() == 2);
    CHECK(ms2[0] == CandidateMatch{1, 1});
    CHECK(ms2[1] == CandidateMatch{2, 1});

    Instance inst3 = ti("ax", "ay");
    OccurrenceIndex idx3 = build_index(inst3);
    CHECK(candidate_matches_of(inst3, idx3, {Side::S1, 2}).empty());
}

TEST_CASE("parallel relation") {
    Instance ident = ti("ab", "ab");
    CHECK(is_parallel(ident, {1, 1}, {2, 2}));
    CHECK(is_parallel(ident, {2, 2}, {1, 1}));  // symmetric

    Instance crossed = ti("ab", "ba");
    CHECK(!is_parallel(crossed, {1, 2}, {2, 1}));

    Instance interior = ti("acb", "axb");
    CHECK(!is_parallel(interior, {1, 1}, {3, 3}));

    Instance gap = ti("acb", "acb");
    CHECK(is_parallel(gap, {1, 1}, {3, 3}));  // interior letters agree

    // same S1 marker twice is never parallel
    Instance dup = ti("a", "aa");
    CHECK(!is_parallel(dup, {1, 1}, {1, 2}));
}

TEST_CASE("intermediate pairs of a parallel pair are candidate matches") {
    std::mt19937_64 rng(7);
    for (int it = 0; it < 200; ++it) {
        Instance inst = testutil::random_instance(rng, 10, 3, 3);
        OccurrenceIndex idx = build_index(inst);
        for (int p = 1; p <= inst.n1(); ++p) {
            for (const auto &m1 : candidate_matches_of(inst, idx, {Side::S1, p})) {
                for (int p2 = p + 1; p2 <= inst.n1(); ++p2) {
                    for (const auto &m2 : candidate_matches_of(inst, idx, {Side::S1, p2})) {
                        if (!is_parallel(inst, m1, m2)) continue;
                        for (int i = 0; i <= p2 - p; ++i)
                            CHECK(inst.letter1(m1.p1 + i) == inst.letter2(m1.p2 + i));
                    }
                }
            }
        }
    }
}
