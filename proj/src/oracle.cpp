#include "mcsp/oracle.hpp"

#include <algorithm>

namespace mcsp {

double oracle_assignment_estimate(const Instance &inst) {
    OccurrenceIndex idx = build_index(inst);
    double est = 1.0;
    for (size_t a = 0; a < idx.occ.size(); ++a) {
        int c1 = static_cast<int>(idx.occ[a][0].size());
        int c2 = static_cast<int>(idx.occ[a][1].size());
        int lo = std::min(c1, c2), hi = std::max(c1, c2);
        for (int i = 0; i < lo; ++i) est *= static_cast<double>(hi - i);
        if (est > 1e18) return est;
    }
    return est;
}

namespace {

struct Enumerator {
    const Instance &inst;
    // one entry per rare minority marker: its position plus the majority
    // occurrence list of its letter
    struct Slot {
        Side minority_side;
        int pos;
        const std::vector<int> *majority;
        std::vector<char> *used;
    };
    std::vector<Slot> slots;
    std::vector<std::vector<char>> used_storage;
    std::vector<int> to2, to1;  // partner arrays, 0 = unmatched
    int best = -1;
    MatchSet best_set;

    explicit Enumerator(const Instance &i) : inst(i) {
        to2.assign(static_cast<size_t>(inst.n1()) + 1, 0);
        to1.assign(static_cast<size_t>(inst.n2()) + 1, 0);
    }

    int block_count() const {
        int count = 0;
        for (int p = 1; p <= inst.n1(); ++p) {
            int q = to2[static_cast<size_t>(p)];
            if (q == 0) continue;
            int prev = p == 1 ? 0 : to2[static_cast<size_t>(p - 1)];
            if (prev == 0 || prev != q - 1) ++count;
        }
        return count;
    }

    void record() {
        int count = block_count();
        if (best >= 0 && count >= best) return;
        best = count;
        best_set.matches.clear();
        for (int p = 1; p <= inst.n1(); ++p)
            if (to2[static_cast<size_t>(p)] != 0) best_set.add({p, to2[static_cast<size_t>(p)]});
    }

    void dfs(size_t i) {
        if (i == slots.size()) {
            record();
            return;
        }
        auto &s = slots[i];
        for (size_t j = 0; j < s.majority->size(); ++j) {
            if ((*s.used)[j]) continue;
            (*s.used)[j] = 1;
            int mpos = (*s.majority)[j];
            int p = s.minority_side == Side::S1 ? s.pos : mpos;
            int q = s.minority_side == Side::S1 ? mpos : s.pos;
            to2[static_cast<size_t>(p)] = q;
            to1[static_cast<size_t>(q)] = p;
            dfs(i + 1);
            to2[static_cast<size_t>(p)] = 0;
            to1[static_cast<size_t>(q)] = 0;
            (*s.used)[j] = 0;
        }
    }
};

}  // namespace

OracleResult oracle_minimum(const Instance &inst, const OracleLimits &limits) {
    double est = oracle_assignment_estimate(inst);
    if (est > static_cast<double>(limits.max_assignments))
        throw TooLarge(est, "oracle assignment space too large (" + std::to_string(est) + " > " +
                                std::to_string(limits.max_assignments) + ")");

    OccurrenceIndex idx = build_index(inst);
    Enumerator e(inst);
    e.used_storage.reserve(idx.occ.size());
    for (size_t a = 0; a < idx.occ.size(); ++a) {
        const auto &o1 = idx.occ[a][0];
        const auto &o2 = idx.occ[a][1];
        if (o1.empty() || o2.empty()) continue;
        // ties resolved toward S1 as the minority side
        Side minority = o1.size() <= o2.size() ? Side::S1 : Side::S2;
        const auto &mino = minority == Side::S1 ? o1 : o2;
        const auto &majo = minority == Side::S1 ? o2 : o1;
        e.used_storage.emplace_back(majo.size(), 0);
        for (int pos : mino)
            e.slots.push_back({minority, pos, &majo, &e.used_storage.back()});
    }
    e.dfs(0);
    OracleResult r;
    r.size = e.best;
    r.matchset = std::move(e.best_set);
    r.matchset.sort_canonical();
    return r;
}

}  // namespace mcsp
