#include "mcsp/csp.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>

namespace mcsp {

void MatchSet::sort_canonical() { std::sort(matches.begin(), matches.end()); }

namespace {

// partner[0][p] = matched S2 position of S1[p] (0 if unmatched), and vice versa.
struct Partners {
    std::vector<int> to2, to1;
    bool ok = true;
    std::vector<Violation> violations;
};

Partners build_partners(const Instance &inst, const MatchSet &P) {
    Partners r;
    r.to2.assign(static_cast<size_t>(inst.n1()) + 1, 0);
    r.to1.assign(static_cast<size_t>(inst.n2()) + 1, 0);
    for (const auto &m : P.matches) {
        if (m.p1 < 1 || m.p1 > inst.n1() || m.p2 < 1 || m.p2 > inst.n2()) {
            r.violations.push_back({"match (" + std::to_string(m.p1) + "," + std::to_string(m.p2) +
                                    ") is out of range"});
            r.ok = false;
            continue;
        }
        if (inst.letter1(m.p1) != inst.letter2(m.p2)) {
            r.violations.push_back({"pair (" + std::to_string(m.p1) + "," + std::to_string(m.p2) +
                                    ") is not a candidate match (letters differ)"});
            r.ok = false;
            continue;
        }
        if (r.to2[static_cast<size_t>(m.p1)] != 0) {
            r.violations.push_back({"S1[" + std::to_string(m.p1) + "] appears in two matches"});
            r.ok = false;
        }
        if (r.to1[static_cast<size_t>(m.p2)] != 0) {
            r.violations.push_back({"S2[" + std::to_string(m.p2) + "] appears in two matches"});
            r.ok = false;
        }
        r.to2[static_cast<size_t>(m.p1)] = m.p2;
        r.to1[static_cast<size_t>(m.p2)] = m.p1;
    }
    return r;
}

}  // namespace

std::vector<Violation> validate_csp(const Instance &inst, const MatchSet &P) {
    Partners r = build_partners(inst, P);
    std::vector<Violation> v = std::move(r.violations);
    OccurrenceIndex idx = build_index(inst);
    for (Side s : {Side::S1, Side::S2}) {
        const auto &to = s == Side::S1 ? r.to2 : r.to1;
        for (int p = 1; p <= inst.length(s); ++p) {
            if (to[static_cast<size_t>(p)] == 0 && idx.is_rare(inst, {s, p}))
                v.push_back({std::string("rare marker S") + (s == Side::S1 ? "1" : "2") + "[" +
                             std::to_string(p) + "] is unmatched"});
        }
    }
    return v;
}

BlockDecomposition blocks_of(const Instance &inst, const MatchSet &P) {
    auto violations = validate_csp(inst, P);
    if (!violations.empty()) throw InvalidCSP("not a CSP: " + violations.front().what);

    Partners r = build_partners(inst, P);
    BlockDecomposition d;
    int p = 1;
    while (p <= inst.n1()) {
        int q = r.to2[static_cast<size_t>(p)];
        if (q == 0) {
            d.deleted1.push_back(p);
            ++p;
            continue;
        }
        // adjacent matches are parallel exactly when partners are consecutive
        int len = 1;
        while (p + len <= inst.n1() &&
               r.to2[static_cast<size_t>(p + len)] == q + len)
            ++len;
        d.blocks.push_back({p, q, len});
        p += len;
    }
    for (int q = 1; q <= inst.n2(); ++q)
        if (r.to1[static_cast<size_t>(q)] == 0) d.deleted2.push_back(q);
    return d;
}

MatchSet matchset_of(const BlockDecomposition &d) {
    MatchSet P;
    for (const auto &b : d.blocks)
        for (int i = 0; i < b.len; ++i) P.add({b.s1_start + i, b.s2_start + i});
    P.sort_canonical();
    return P;
}

void write_solution(std::ostream &out, const BlockDecomposition &d) {
    out << "size " << d.size() << '\n';
    for (const auto &b : d.blocks)
        out << "B " << b.s1_start << ' ' << b.s2_start << ' ' << b.len << '\n';
    out << "D1";
    for (int p : d.deleted1) out << ' ' << p;
    out << '\n';
    out << "D2";
    for (int p : d.deleted2) out << ' ' << p;
    out << '\n';
}

std::string solution_to_text(const BlockDecomposition &d) {
    std::ostringstream out;
    write_solution(out, d);
    return out.str();
}

BlockDecomposition read_solution(std::istream &in) {
    BlockDecomposition d;
    std::string line;
    bool saw_size = false;
    while (std::getline(in, line)) {
        if (line.empty() || line.front() == '#') continue;
        std::istringstream ls(line);
        std::string tag;
        ls >> tag;
        if (tag == "size") {
            saw_size = true;
        } else if (tag == "B") {
            Block b{};
            if (!(ls >> b.s1_start >> b.s2_start >> b.len))
                throw std::runtime_error("malformed block line: " + line);
            d.blocks.push_back(b);
        } else if (tag == "D1" || tag == "D2") {
            auto &del = tag == "D1" ? d.deleted1 : d.deleted2;
            int p;
            while (ls >> p) del.push_back(p);
        } else {
            throw std::runtime_error("unknown solution line: " + line);
        }
    }
    if (!saw_size) throw std::runtime_error("solution has no size line");
    return d;
}

}  // namespace mcsp
