#ifndef MCSP_CSP_HPP
#define MCSP_CSP_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include "mcsp/instance.hpp"

namespace mcsp {

/// A set of pairwise disjoint candidate matches, kept sorted by S1 position.
struct MatchSet {
    std::vector<CandidateMatch> matches;

    void add(CandidateMatch m) { matches.push_back(m); }
    void sort_canonical();
    size_t size() const { return matches.size(); }
};

struct Violation {
    std::string what;
};

/// Empty result means P is a CSP: every element is a candidate match,
/// matches are pairwise disjoint, and every rare marker is matched.
std::vector<Violation> validate_csp(const Instance &inst, const MatchSet &P);

struct Block {
    int s1_start;
    int s2_start;
    int len;

    friend bool operator==(const Block &a, const Block &b) = default;
};

struct BlockDecomposition {
    std::vector<Block> blocks;       // in S1 order
    std::vector<int> deleted1;       // unmatched S1 positions, ascending
    std::vector<int> deleted2;       // unmatched S2 positions, ascending

    int size() const { return static_cast<int>(blocks.size()); }
};

class InvalidCSP : public std::runtime_error {
public:
    explicit InvalidCSP(const std::string &msg) : std::runtime_error(msg) {}
};

/// Blocks are the maximal runs of consecutive matches with consecutive
/// partners; single left-to-right scan. Throws InvalidCSP if P is not a CSP.
BlockDecomposition blocks_of(const Instance &inst, const MatchSet &P);

/// Rebuilds the match set by pairing the i-th markers of each block pair.
MatchSet matchset_of(const BlockDecomposition &d);

/// "size <b>" / "B <s1> <s2> <len>" / "D1 ..." / "D2 ..." text format.
void write_solution(std::ostream &out, const BlockDecomposition &d);
std::string solution_to_text(const BlockDecomposition &d);
BlockDecomposition read_solution(std::istream &in);

}  // namespace mcsp

#endif
