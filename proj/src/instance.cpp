#include "mcsp/instance.hpp"

#include <algorithm>
#include <istream>
#include <sstream>

namespace mcsp {

std::string Instance::token_of(int letter_id) const {
    if (table && letter_id < table->size()) return table->token(letter_id);
    return "~" + std::to_string(letter_id);
}

namespace {

std::vector<std::string> tokenize(const std::string &line, bool per_char) {
    std::vector<std::string> out;
    if (per_char) {
        for (char c : line)
            if (!std::isspace(static_cast<unsigned char>(c))) out.emplace_back(1, c);
    } else {
        std::istringstream ls(line);
        std::string tok;
        while (ls >> tok) out.push_back(tok);
    }
    return out;
}

}  // namespace

Instance parse_instance(std::istream &in, bool per_char) {
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (!line.empty() && line.front() == '#') continue;
        lines.push_back(line);
    }
    // trailing blank lines are tolerated
    while (!lines.empty() && tokenize(lines.back(), per_char).empty()) lines.pop_back();

    if (lines.size() < 2)
        throw ParseError(ParseError::Kind::EmptyString,
                         "expected two token lines (S1 and S2), got " +
                             std::to_string(lines.size()));
    if (lines.size() > 3)
        throw ParseError(ParseError::Kind::MissingLine, "too many non-comment lines");

    auto table = std::make_shared<TokenTable>();
    Instance inst;
    for (int i = 0; i < 2; ++i) {
        auto toks = tokenize(lines[static_cast<size_t>(i)], per_char);
        if (toks.empty())
            throw ParseError(ParseError::Kind::EmptyString,
                             std::string("string S") + (i == 0 ? "1" : "2") + " has no tokens");
        auto &seq = i == 0 ? inst.s1 : inst.s2;
        seq.reserve(toks.size());
        for (const auto &t : toks) seq.push_back(table->intern(t));
    }
    if (lines.size() == 3) {
        auto toks = tokenize(lines[2], false);
        if (toks.size() != 1 || toks[0].find_first_not_of("0123456789") != std::string::npos)
            throw ParseError(ParseError::Kind::MalformedBudget,
                             "line 3 must be a non-negative integer budget");
        try {
            inst.k = std::stoi(toks[0]);
        } catch (const std::exception &) {
            throw ParseError(ParseError::Kind::MalformedBudget, "budget out of range");
        }
    }
    inst.alphabet_size = table->size();
    inst.table = std::move(table);
    return inst;
}

Instance parse_instance(const std::string &text, bool per_char) {
    std::istringstream in(text);
    return parse_instance(in, per_char);
}

std::string instance_to_text(const Instance &inst) {
    std::ostringstream out;
    for (Side s : {Side::S1, Side::S2}) {
        const auto &seq = inst.seq(s);
        for (size_t i = 0; i < seq.size(); ++i) {
            if (i) out << ' ';
            out << inst.token_of(seq[i]);
        }
        out << '\n';
    }
    if (inst.k) out << *inst.k << '\n';
    return out.str();
}

OccurrenceIndex build_index(const Instance &inst) {
    OccurrenceIndex idx;
    idx.occ.resize(static_cast<size_t>(inst.alphabet_size));
    for (Side s : {Side::S1, Side::S2}) {
        const auto &seq = inst.seq(s);
        for (int p = 1; p <= static_cast<int>(seq.size()); ++p)
            idx.occ[static_cast<size_t>(seq[static_cast<size_t>(p - 1)])][static_cast<int>(s)]
                .push_back(p);
    }
    for (const auto &o : idx.occ) {
        int c1 = static_cast<int>(o[0].size());
        int c2 = static_cast<int>(o[1].size());
        idx.d = std::max({idx.d, c1, c2});
        idx.total_matches += static_cast<long long>(c1) * c2;
    }
    idx.d_star =
        2.0 * static_cast<double>(idx.total_matches) / static_cast<double>(inst.n1() + inst.n2());
    return idx;
}

std::vector<CandidateMatch> candidate_matches_of(const Instance &inst, const OccurrenceIndex &idx,
                                                 Marker u) {
    std::vector<CandidateMatch> out;
    int a = inst.letter(u);
    for (int q : idx.positions(a, other(u.side))) {
        if (u.side == Side::S1)
            out.push_back({u.pos, q});
        else
            out.push_back({q, u.pos});
    }
    return out;  // position lists are sorted, so partner order is ascending
}

bool is_parallel(const Instance &inst, const CandidateMatch &m1, const CandidateMatch &m2) {
    if (m1 == m2) return false;
    const CandidateMatch &a = m1.p1 < m2.p1 ? m1 : m2;
    const CandidateMatch &b = m1.p1 < m2.p1 ? m2 : m1;
    if (a.p1 == b.p1 || a.p2 >= b.p2) return false;
    int len = b.p1 - a.p1;
    if (b.p2 - a.p2 != len) return false;
    for (int i = 1; i < len; ++i)
        if (inst.letter1(a.p1 + i) != inst.letter2(a.p2 + i)) return false;
    return true;
}

}  // namespace mcsp
