#include "mcsp/solver.hpp"

#include <algorithm>
#include <cassert>
#include <chrono>

namespace mcsp {

namespace {

using Clock = std::chrono::steady_clock;

struct BudgetStop {};

struct Search {
    const Instance &inst;
    const OccurrenceIndex &idx;
    int k;
    SearchStats &stats;
    long long node_budget;  // remaining, <0 means unlimited
    bool has_deadline = false;
    Clock::time_point deadline;

    Sample T;
    std::vector<char> in1, in2;  // membership in M(T)
    std::optional<MatchSet> found;

    Search(const Instance &i, const OccurrenceIndex &ix, int budget_k, SearchStats &st)
        : inst(i), idx(ix), k(budget_k), stats(st), node_budget(-1) {
        in1.assign(static_cast<size_t>(inst.n1()) + 1, 0);
        in2.assign(static_cast<size_t>(inst.n2()) + 1, 0);
    }

    void push(CandidateMatch m) {
        T.matches.push_back(m);
        in1[static_cast<size_t>(m.p1)] = 1;
        in2[static_cast<size_t>(m.p2)] = 1;
    }
    void pop() {
        CandidateMatch m = T.matches.back();
        T.matches.pop_back();
        in1[static_cast<size_t>(m.p1)] = 0;
        in2[static_cast<size_t>(m.p2)] = 0;
    }

    bool free_marker(Marker m) const {
        return m.side == Side::S1 ? !in1[static_cast<size_t>(m.pos)]
                                  : !in2[static_cast<size_t>(m.pos)];
    }

    std::vector<CandidateMatch> free_partners(Marker u) const {
        std::vector<CandidateMatch> out;
        for (const auto &m : candidate_matches_of(inst, idx, u)) {
            Marker partner = u.side == Side::S1 ? Marker{Side::S2, m.p2} : Marker{Side::S1, m.p1};
            if (free_marker(partner)) out.push_back(m);
        }
        // try extendable matches first: a partner whose flanking letters also
        // agree can grow into a block, which is where solutions live
        std::stable_sort(out.begin(), out.end(), [&](const CandidateMatch &a,
                                                     const CandidateMatch &b) {
            return extend_score(a) > extend_score(b);
        });
        return out;
    }

    int extend_score(const CandidateMatch &m) const {
        int s = 0;
        if (m.p1 > 1 && m.p2 > 1 && inst.letter1(m.p1 - 1) == inst.letter2(m.p2 - 1)) ++s;
        if (m.p1 < inst.n1() && m.p2 < inst.n2() &&
            inst.letter1(m.p1 + 1) == inst.letter2(m.p2 + 1))
            ++s;
        return s;
    }

    bool dfs(int depth) {
        ++stats.nodes_visited;
        if (node_budget >= 0 && stats.nodes_visited > node_budget) throw BudgetStop{};
        if (has_deadline && Clock::now() > deadline) throw BudgetStop{};

        if (static_cast<int>(T.matches.size()) > k) {
            ++stats.aborts_budget;
            return false;
        }
        stats.max_depth = std::max(stats.max_depth, depth);
        SampleGraph G = build_sample_graph(inst, T);
        if (G.parallel_black) {
            ++stats.aborts_parallel_black;
            return false;
        }
        auto comps = classify_components(inst, idx, G);

        // Fail-first selection: among the rare isolated vertices, branch on
        // the one with the fewest unsampled partners (branching on any of
        // them is correct, so the pick only affects the tree size). Rare odd
        // paths are picked the same way when no isolated vertex is left.
        bool have_singleton = false, have_odd = false;
        std::vector<CandidateMatch> children;
        for (const auto &c : comps) {
            if (c.kind != ComponentKind::Singleton) continue;
            Marker m = G.marker(c.vertices.front());
            if (!idx.is_rare(inst, m)) continue;
            auto part = free_partners(m);
            if (!have_singleton || part.size() < children.size()) {
                children = std::move(part);
                have_singleton = true;
                if (children.empty()) break;
            }
        }
        if (!have_singleton) {
            for (const auto &c : comps) {
                if (c.kind != ComponentKind::OddPathRare) continue;
                std::vector<CandidateMatch> cand;
                for (size_t i = 0; i < c.vertices.size(); i += 2) {
                    auto part = free_partners(G.marker(c.vertices[i]));
                    cand.insert(cand.end(), part.begin(), part.end());
                }
                if (!have_odd || cand.size() < children.size()) {
                    children = std::move(cand);
                    have_odd = true;
                    if (children.empty()) break;
                }
            }
        }

        if (!have_singleton && !have_odd) {
            found = construct_P_T(inst, idx, G, comps);
            return true;
        }
        if (have_singleton) {
            assert(static_cast<int>(children.size()) <= idx.d);
            stats.branches_rule1 += static_cast<long long>(children.size());
            stats.max_rule1_children =
                std::max(stats.max_rule1_children, static_cast<int>(children.size()));
        } else {
            assert(static_cast<long long>(children.size()) <=
                   static_cast<long long>(idx.d) * idx.d);
            stats.branches_rule2 += static_cast<long long>(children.size());
            stats.max_rule2_children =
                std::max(stats.max_rule2_children, static_cast<int>(children.size()));
        }
        for (const auto &m : children) {
            push(m);
            bool ok = dfs(depth + 1);
            pop();
            if (ok) return true;
        }
        return false;
    }
};

struct Prepared {
    Instance work;
    RewriteTrace trace;
    int k_decrement = 0;
    ReductionStats rstats;
    OccurrenceIndex idx;
    Sample initial;
};

Prepared prepare(const Instance &inst, const SolverOptions &opts) {
    Prepared p;
    if (opts.use_reduction) {
        ReduceResult rr = reduce_fixpoint(inst);
        p.work = std::move(rr.inst);
        p.trace = std::move(rr.trace);
        p.k_decrement = rr.k_decrement;
        p.rstats = rr.stats;
    } else if (opts.use_kprime_init) {
        // the k' initialization is only sound on a parallel-unique-reduced
        // instance (the initial sample must be non-redundant)
        ReduceResult rr = reduce_fixpoint(inst, /*rule1_only=*/true);
        p.work = std::move(rr.inst);
        p.trace = std::move(rr.trace);
        p.rstats = rr.stats;
    } else {
        p.work = inst;
        p.rstats.n1_reduced = inst.n1();
        p.rstats.n2_reduced = inst.n2();
    }
    p.idx = build_index(p.work);
    if (opts.use_kprime_init) p.initial = initial_sample_kprime(p.work, p.idx);
    return p;
}

BlockDecomposition lift(const Instance &original, const Prepared &p, const MatchSet &M) {
    BlockDecomposition reduced = blocks_of(p.work, M);
    if (p.trace.empty()) return reduced;
    return lift_solution(original, p.trace, reduced);
}

}  // namespace

int kprime_of(const Instance &inst, const BlockDecomposition &d) {
    OccurrenceIndex idx = build_index(inst);
    int kprime = 0;
    for (const auto &b : d.blocks) {
        bool has_unique = false;
        for (int i = 0; i < b.len && !has_unique; ++i) {
            int a = inst.letter1(b.s1_start + i);
            has_unique = idx.count(a, Side::S1) <= 1 && idx.count(a, Side::S2) <= 1;
        }
        if (!has_unique) ++kprime;
    }
    return kprime;
}

Sample initial_sample_kprime(const Instance &inst, const OccurrenceIndex &idx) {
    Sample T;
    for (int a = 0; a < inst.alphabet_size; ++a)
        if (idx.count(a, Side::S1) == 1 && idx.count(a, Side::S2) == 1)
            T.matches.push_back(
                {idx.positions(a, Side::S1).front(), idx.positions(a, Side::S2).front()});
    std::sort(T.matches.begin(), T.matches.end());
    return T;
}

namespace {

// One depth-first run with sample budget k on the prepared instance.
// Returns Solved/NoSolution, or BudgetExhausted on a node or time stop.
SolveStatus run_search(const Prepared &p, int k, const SolverOptions &opts,
                       Clock::time_point t0, SearchStats &stats,
                       std::optional<MatchSet> &found) {
    Search s(p.work, p.idx, k, stats);
    if (opts.node_budget) s.node_budget = *opts.node_budget;
    if (opts.time_budget_secs) {
        s.has_deadline = true;
        s.deadline = t0 + std::chrono::duration_cast<Clock::duration>(
                              std::chrono::duration<double>(*opts.time_budget_secs));
    }
    for (const auto &m : p.initial.matches) s.push(m);
    try {
        if (s.dfs(1)) {
            found = std::move(s.found);
            return SolveStatus::Solved;
        }
        return SolveStatus::NoSolution;
    } catch (const BudgetStop &) {
        return SolveStatus::BudgetExhausted;
    }
}

}  // namespace

DecisionResult solve_decision(const Instance &inst, int k, const SolverOptions &opts) {
    auto t0 = Clock::now();
    DecisionResult res;
    Prepared p = prepare(inst, opts);
    res.stats.d = p.idx.d;
    res.stats.reductions_applied = p.rstats.applications[0] + p.rstats.applications[1] +
                                   p.rstats.applications[2] + p.rstats.applications[3];
    int kw = k - p.k_decrement;
    res.status = SolveStatus::NoSolution;
    if (kw >= 0) {
        std::optional<MatchSet> found;
        res.status = run_search(p, kw, opts, t0, res.stats, found);
        if (res.status == SolveStatus::Solved) res.decomposition = lift(inst, p, *found);
    }
    res.stats.wall_time_secs = std::chrono::duration<double>(Clock::now() - t0).count();
    return res;
}

MinimumResult solve_minimum(const Instance &inst, const SolverOptions &opts) {
    auto t0 = Clock::now();
    MinimumResult res;
    Prepared p = prepare(inst, opts);
    res.stats.d = p.idx.d;
    res.reduction = p.rstats;
    res.stats.reductions_applied = p.rstats.applications[0] + p.rstats.applications[1] +
                                   p.rstats.applications[2] + p.rstats.applications[3];

    int lb = static_cast<int>(p.initial.matches.size());
    res.lower_bound = lb + p.k_decrement;
    int k_max = std::min(p.work.n1(), p.work.n2());
    for (int k = lb; k <= k_max; ++k) {
        res.upper_tried = k + p.k_decrement;
        std::optional<MatchSet> found;
        SolveStatus st = run_search(p, k, opts, t0, res.stats, found);
        if (st == SolveStatus::Solved) {
            res.decomposition = lift(inst, p, *found);
            res.size = res.decomposition->size();
            res.kprime = kprime_of(inst, *res.decomposition);
            res.status = SolveStatus::Solved;
            break;
        }
        if (st == SolveStatus::BudgetExhausted) {
            res.status = SolveStatus::BudgetExhausted;
            break;
        }
    }
    res.stats.wall_time_secs = std::chrono::duration<double>(Clock::now() - t0).count();
    return res;
}

}  // namespace mcsp
