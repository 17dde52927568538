#include "mcsp/reduction.hpp"

#include <algorithm>
#include <cassert>

namespace mcsp {

int RewriteTrace::total_k_decrement() const {
    int dec = 0;
    for (const auto &r : records)
        if (const auto *rp = std::get_if<RemovePairRecord>(&r)) dec += rp->k_dec;
    return dec;
}

void apply_record(Instance &inst, const RewriteRecord &rec) {
    std::visit(
        [&](const auto &r) {
            using R = std::decay_t<decltype(r)>;
            if constexpr (std::is_same_v<R, ContractRecord>) {
                inst.s1.erase(inst.s1.begin() + r.s1_start,
                              inst.s1.begin() + r.s1_start + r.len - 1);
                inst.s2.erase(inst.s2.begin() + r.s2_start,
                              inst.s2.begin() + r.s2_start + r.len - 1);
            } else if constexpr (std::is_same_v<R, RemovePairRecord>) {
                inst.s1.erase(inst.s1.begin() + r.s1_pos - 1);
                inst.s2.erase(inst.s2.begin() + r.s2_pos - 1);
            } else {
                for (Marker m : r.markers) {
                    assert(inst.letter(m) == r.old_letter);
                    inst.seq(m.side)[static_cast<size_t>(m.pos - 1)] = r.fresh_letter;
                }
                inst.alphabet_size = std::max(inst.alphabet_size, r.fresh_letter + 1);
            }
        },
        rec);
}

namespace {

bool is_unique_matched(const OccurrenceIndex &idx, int letter) {
    return idx.count(letter, Side::S1) == 1 && idx.count(letter, Side::S2) == 1;
}

CandidateMatch unique_match(const OccurrenceIndex &idx, int letter) {
    return {idx.positions(letter, Side::S1).front(), idx.positions(letter, Side::S2).front()};
}

/// True iff m is parallel to some candidate match of a left/right neighbor of
/// either of its endpoints (a block of size one would arise otherwise).
bool parallel_to_neighbor_match(const Instance &inst, const OccurrenceIndex &idx,
                                const CandidateMatch &m) {
    Marker ends[2] = {{Side::S1, m.p1}, {Side::S2, m.p2}};
    for (Marker u : ends) {
        for (int dpos : {-1, +1}) {
            Marker n{u.side, u.pos + dpos};
            if (n.pos < 1 || n.pos > inst.length(n.side)) continue;
            for (const auto &mn : candidate_matches_of(inst, idx, n))
                if (is_parallel(inst, m, mn)) return true;
        }
    }
    return false;
}

}  // namespace

std::optional<RuleApplication> rule_parallel_unique(const Instance &inst) {
    OccurrenceIndex idx = build_index(inst);
    // unique letters with a candidate match, in S1 order; checking consecutive
    // pairs suffices: a parallel non-consecutive pair implies a parallel
    // consecutive one
    std::vector<CandidateMatch> uniques;
    for (int a = 0; a < inst.alphabet_size; ++a)
        if (is_unique_matched(idx, a)) uniques.push_back(unique_match(idx, a));
    std::sort(uniques.begin(), uniques.end());
    for (size_t i = 0; i + 1 < uniques.size(); ++i) {
        const auto &x = uniques[i];
        const auto &xp = uniques[i + 1];
        if (!is_parallel(inst, x, xp)) continue;
        RuleApplication app;
        app.record = ContractRecord{x.p1, x.p2, xp.p1 - x.p1 + 1};
        app.inst = inst;
        apply_record(app.inst, app.record);
        return app;
    }
    return std::nullopt;
}

std::optional<RuleApplication> rule_unique_border(const Instance &inst) {
    OccurrenceIndex idx = build_index(inst);
    for (int p = 2; p < inst.n1(); ++p) {
        int a = inst.letter1(p);
        if (!is_unique_matched(idx, a)) continue;
        int q = idx.positions(a, Side::S2).front();
        if (q <= 1 || q >= inst.n2()) continue;
        int la = inst.letter1(p - 1), ra = inst.letter1(p + 1);
        int lb = inst.letter2(q - 1), rb = inst.letter2(q + 1);
        if (!is_unique_matched(idx, la) || !is_unique_matched(idx, ra) ||
            !is_unique_matched(idx, lb) || !is_unique_matched(idx, rb))
            continue;

        int k_dec;
        if (la == lb || ra == rb) {
            k_dec = 0;  // {u,v} is parallel to a neighbor match, so no block is lost
        } else {
            Instance reduced = inst;
            reduced.s1.erase(reduced.s1.begin() + p - 1);
            reduced.s2.erase(reduced.s2.begin() + q - 1);
            OccurrenceIndex ridx = build_index(reduced);
            int newly = 0;
            if (is_parallel(reduced, unique_match(ridx, la), unique_match(ridx, ra))) ++newly;
            if (is_parallel(reduced, unique_match(ridx, lb), unique_match(ridx, rb))) ++newly;
            k_dec = 1 + newly;
        }
        RuleApplication app;
        app.record = RemovePairRecord{p, q, k_dec};
        app.k_dec = k_dec;
        app.inst = inst;
        apply_record(app.inst, app.record);
        return app;
    }
    return std::nullopt;
}

std::optional<RuleApplication> rule_star(const Instance &inst) {
    OccurrenceIndex idx = build_index(inst);
    for (int a = 0; a < inst.alphabet_size; ++a) {
        int c1 = idx.count(a, Side::S1), c2 = idx.count(a, Side::S2);
        if (std::min(c1, c2) != 1 || std::max(c1, c2) < 2) continue;
        Side minority = c1 == 1 ? Side::S1 : Side::S2;
        int upos = idx.positions(a, minority).front();
        for (int vpos : idx.positions(a, other(minority))) {
            CandidateMatch m = minority == Side::S1 ? CandidateMatch{upos, vpos}
                                                    : CandidateMatch{vpos, upos};
            if (parallel_to_neighbor_match(inst, idx, m)) continue;
            int fresh = inst.alphabet_size;
            RuleApplication app;
            app.record = RelabelRecord{{Marker{other(minority), vpos}}, a, fresh};
            app.inst = inst;
            apply_record(app.inst, app.record);
            return app;
        }
    }
    return std::nullopt;
}

std::optional<RuleApplication> rule_k22(const Instance &inst) {
    OccurrenceIndex idx = build_index(inst);
    for (int a = 0; a < inst.alphabet_size; ++a) {
        if (idx.count(a, Side::S1) != 2 || idx.count(a, Side::S2) != 2) continue;
        int u = idx.positions(a, Side::S1)[0], v = idx.positions(a, Side::S1)[1];
        int w = idx.positions(a, Side::S2)[0], z = idx.positions(a, Side::S2)[1];
        // premise covers the pairing destroyed by the relabeling
        if (parallel_to_neighbor_match(inst, idx, {u, w})) continue;
        if (parallel_to_neighbor_match(inst, idx, {v, z})) continue;
        int fresh = inst.alphabet_size;
        RuleApplication app;
        app.record = RelabelRecord{{Marker{Side::S1, u}, Marker{Side::S2, z}}, a, fresh};
        app.inst = inst;
        apply_record(app.inst, app.record);
        return app;
    }
    return std::nullopt;
}

ReduceResult reduce_fixpoint(const Instance &inst, bool rule1_only) {
    ReduceResult res;
    res.inst = inst;
    long long matches_before = build_index(inst).total_matches;
    using RuleFn = std::optional<RuleApplication> (*)(const Instance &);
    RuleFn rules[] = {rule_parallel_unique, rule_unique_border, rule_star, rule_k22};
    int n_rules = rule1_only ? 1 : 4;
    for (bool progress = true; progress;) {
        progress = false;
        for (int r = 0; r < n_rules; ++r) {
            if (auto app = rules[r](res.inst)) {
                res.inst = std::move(app->inst);
                res.k_decrement += app->k_dec;
                res.trace.records.push_back(std::move(app->record));
                ++res.stats.applications[r];
                progress = true;
                break;  // restart from the first rule
            }
        }
    }
    res.stats.n1_reduced = res.inst.n1();
    res.stats.n2_reduced = res.inst.n2();
    res.stats.matches_removed = matches_before - build_index(res.inst).total_matches;
    return res;
}

BlockDecomposition lift_solution(const Instance &original, const RewriteTrace &trace,
                                 const BlockDecomposition &reduced) {
    MatchSet M = matchset_of(reduced);
    for (auto it = trace.records.rbegin(); it != trace.records.rend(); ++it) {
        std::visit(
            [&](const auto &r) {
                using R = std::decay_t<decltype(r)>;
                if constexpr (std::is_same_v<R, ContractRecord>) {
                    bool anchor_seen = false;
                    for (auto &m : M.matches) {
                        if (m.p1 == r.s1_start) {
                            if (m.p2 != r.s2_start)
                                throw InconsistentTrace(
                                    "contracted unique marker not matched to its partner");
                            anchor_seen = true;
                        }
                        if (m.p1 > r.s1_start) m.p1 += r.len - 1;
                        if (m.p2 > r.s2_start) m.p2 += r.len - 1;
                    }
                    if (!anchor_seen)
                        throw InconsistentTrace("contracted unique marker unmatched in solution");
                    for (int i = 1; i < r.len; ++i) M.add({r.s1_start + i, r.s2_start + i});
                } else if constexpr (std::is_same_v<R, RemovePairRecord>) {
                    for (auto &m : M.matches) {
                        if (m.p1 >= r.s1_pos) ++m.p1;
                        if (m.p2 >= r.s2_pos) ++m.p2;
                    }
                    M.add({r.s1_pos, r.s2_pos});
                }
                // RelabelRecord: positions are unchanged
            },
            *it);
    }
    M.sort_canonical();
    try {
        return blocks_of(original, M);
    } catch (const InvalidCSP &e) {
        throw InconsistentTrace(std::string("lifted solution invalid: ") + e.what());
    }
}

}  // namespace mcsp
