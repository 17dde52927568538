#include <doctest.h>

#include <random>

#include "mcsp/oracle.hpp"
#include "mcsp/reduction.hpp"
#include "test_util.hpp"

using namespace mcsp;
using testutil::ti;
using testutil::tw;

namespace {

std::string letters1(const Instance &inst) {
    std::string s;
    for (int v : inst.s1) s += inst.token_of(v);
    return s;
}
std::string letters2(const Instance &inst) {
    std::string s;
    for (int v : inst.s2) s += inst.token_of(v);
    return s;
}

}  // namespace

TEST_CASE("contracting a parallel unique pair") {
    Instance inst = ti("pqa", "pqb");
    auto app = rule_parallel_unique(inst);
    REQUIRE(app.has_value());
    CHECK(app->k_dec == 0);
    CHECK(letters1(app->inst) == "pa");
    CHECK(letters2(app->inst) == "pb");
    const auto *rec = std::get_if<ContractRecord>(&app->record);
    REQUIRE(rec != nullptr);
    CHECK(rec->s1_start == 1);
    CHECK(rec->s2_start == 1);
    CHECK(rec->len == 2);
}

TEST_CASE("non-parallel unique matches are left alone") {
    CHECK(!rule_parallel_unique(ti("paq", "qap")).has_value());
}

TEST_CASE("repeated contraction collapses identical unique strings") {
    Instance inst = ti("pqr", "pqr");
    ReduceResult r = reduce_fixpoint(inst, /*rule1_only=*/true);
    CHECK(letters1(r.inst) == "p");
    CHECK(letters2(r.inst) == "p");
    CHECK(r.k_decrement == 0);
    CHECK(r.stats.applications[0] == 2);
    CHECK(oracle_minimum(inst).size == oracle_minimum(r.inst).size);
}

TEST_CASE("removing an enclosed unique match, no new parallel pair") {
    Instance inst = ti("pmq", "qmp");
    auto app = rule_unique_border(inst);
    REQUIRE(app.has_value());
    CHECK(app->k_dec == 1);
    CHECK(letters1(app->inst) == "pq");
    CHECK(letters2(app->inst) == "qp");
    CHECK(oracle_minimum(inst).size == 3);
    CHECK(oracle_minimum(app->inst).size == 2);
}

TEST_CASE("shared left neighbor keeps k unchanged") {
    Instance inst = ti("pmqr", "pmrq");
    auto app = rule_unique_border(inst);
    REQUIRE(app.has_value());
    CHECK(app->k_dec == 0);
    CHECK(letters1(app->inst) == "pqr");
    CHECK(oracle_minimum(inst).size == oracle_minimum(app->inst).size);
}

TEST_CASE("one newly parallel pair decrements k by two") {
    Instance inst = ti("pmqba", "pqamb");
    auto app = rule_unique_border(inst);
    REQUIRE(app.has_value());
    const auto *rec = std::get_if<RemovePairRecord>(&app->record);
    REQUIRE(rec != nullptr);
    CHECK(rec->s1_pos == 2);
    CHECK(rec->s2_pos == 4);
    CHECK(app->k_dec == 2);
    CHECK(oracle_minimum(inst).size == oracle_minimum(app->inst).size + 2);
}

TEST_CASE("two newly parallel pairs decrement k by three") {
    Instance inst = ti("xmyab", "xyamb");
    auto app = rule_unique_border(inst);
    REQUIRE(app.has_value());
    CHECK(app->k_dec == 3);
    CHECK(oracle_minimum(inst).size == oracle_minimum(app->inst).size + 3);
}

TEST_CASE("boundary markers disable the removal rule") {
    // m sits at the S2 boundary, so no removal even though S1 is interior
    CHECK(!rule_unique_border(ti("pmq", "mpq")).has_value());
}

TEST_CASE("relabeling a single-match marker") {
    Instance inst = ti("xay", "paqar");
    auto app = rule_star(inst);
    REQUIRE(app.has_value());
    const auto *rec = std::get_if<RelabelRecord>(&app->record);
    REQUIRE(rec != nullptr);
    REQUIRE(rec->markers.size() == 1);
    CHECK(rec->markers[0] == Marker{Side::S2, 2});
    CHECK(app->inst.letter2(2) == inst.alphabet_size);
    CHECK(app->inst.alphabet_size == inst.alphabet_size + 1);
    CHECK(oracle_minimum(inst).size == oracle_minimum(app->inst).size);
}

TEST_CASE("relabeling is blocked when every candidate sits next to a parallel match") {
    CHECK(!rule_star(ti("xay", "xaqay")).has_value());
}

TEST_CASE("a letter unique on both sides is not a relabeling candidate") {
    CHECK(!rule_star(ti("xay", "xby")).has_value());
}

TEST_CASE("splitting a two-by-two letter") {
    Instance inst = ti("paqar", "satau");
    auto app = rule_k22(inst);
    REQUIRE(app.has_value());
    const auto *rec = std::get_if<RelabelRecord>(&app->record);
    REQUIRE(rec != nullptr);
    CHECK(rec->markers ==
          std::vector<Marker>{Marker{Side::S1, 2}, Marker{Side::S2, 4}});
    CHECK(app->inst.letter1(2) == app->inst.letter2(4));
    CHECK(app->inst.letter1(4) == inst.letter1(4));
    CHECK(oracle_minimum(inst).size == oracle_minimum(app->inst).size);
}

TEST_CASE("two-by-two split is blocked by a parallel neighbor match") {
    CHECK(!rule_k22(ti("paqar", "patau")).has_value());
}

TEST_CASE("two-versus-one occurrences are not the two-by-two shape") {
    CHECK(!rule_k22(ti("xay", "paqar")).has_value());
}

TEST_CASE("fixpoint is the identity without applicable shapes") {
    Instance inst = ti("aabb", "abab");
    ReduceResult r = reduce_fixpoint(inst);
    CHECK(r.trace.empty());
    CHECK(r.k_decrement == 0);
    CHECK(r.inst.s1 == inst.s1);
    CHECK(r.inst.s2 == inst.s2);
    CHECK(r.stats.matches_removed == 0);
}

TEST_CASE("forward replay of the trace reproduces the reduced instance") {
    std::mt19937_64 rng(17);
    for (int it = 0; it < 300; ++it) {
        Instance inst = testutil::random_instance(rng, 10, 6, 2);
        ReduceResult r = reduce_fixpoint(inst);
        Instance replay = inst;
        for (const auto &rec : r.trace.records) apply_record(replay, rec);
        CHECK(replay.s1 == r.inst.s1);
        CHECK(replay.s2 == r.inst.s2);
        CHECK(replay.alphabet_size == r.inst.alphabet_size);
        CHECK(r.trace.total_k_decrement() == r.k_decrement);
    }
}

TEST_CASE("fixpoint preserves the minimum up to the recorded decrements") {
    std::mt19937_64 rng(18);
    int changed = 0;
    for (int it = 0; it < 400; ++it) {
        Instance inst = testutil::random_instance(rng, 10, 6, 2);
        ReduceResult r = reduce_fixpoint(inst);
        if (!r.trace.empty()) ++changed;
        int orig = oracle_minimum(inst).size;
        int reduced = oracle_minimum(r.inst).size;
        CHECK(orig == reduced + r.k_decrement);
        CHECK(r.stats.n1_reduced == r.inst.n1());
        CHECK(r.stats.n2_reduced == r.inst.n2());
        CHECK(r.stats.matches_removed >= 0);
    }
    CHECK(changed > 50);  // the fuzz corpus must actually exercise the rules
}

TEST_CASE("lifting the reduced optimum reaches the original minimum") {
    std::mt19937_64 rng(19);
    int lifted_nontrivial = 0;
    for (int it = 0; it < 400; ++it) {
        Instance inst = testutil::random_instance(rng, 10, 6, 2);
        ReduceResult r = reduce_fixpoint(inst);
        OracleResult best = oracle_minimum(r.inst);
        BlockDecomposition reduced = blocks_of(r.inst, best.matchset);
        BlockDecomposition lifted = lift_solution(inst, r.trace, reduced);
        CHECK(validate_csp(inst, matchset_of(lifted)).empty());
        CHECK(lifted.size() == oracle_minimum(inst).size);
        if (!r.trace.empty()) ++lifted_nontrivial;
    }
    CHECK(lifted_nontrivial > 50);
}

TEST_CASE("lifting an empty trace is the identity") {
    Instance inst = ti("ab", "ba");
    MatchSet P;
    P.add({1, 2});
    P.add({2, 1});
    BlockDecomposition d = blocks_of(inst, P);
    BlockDecomposition lifted = lift_solution(inst, {}, d);
    CHECK(lifted.blocks == d.blocks);
}
