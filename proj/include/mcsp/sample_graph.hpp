#ifndef MCSP_SAMPLE_GRAPH_HPP
#define MCSP_SAMPLE_GRAPH_HPP

#include <iosfwd>
#include <vector>

#include "mcsp/csp.hpp"
#include "mcsp/instance.hpp"

namespace mcsp {

/// A set of pairwise disjoint candidate matches in insertion order along
/// the search path.
struct Sample {
    std::vector<CandidateMatch> matches;
};

class NotDisjoint : public std::runtime_error {
public:
    explicit NotDisjoint(const std::string &msg) : std::runtime_error(msg) {}
};

class PreconditionViolated : public std::runtime_error {
public:
    explicit PreconditionViolated(const std::string &msg) : std::runtime_error(msg) {}
};

/// Edge-colored multigraph over markers. Each vertex has at most one black,
/// one green and one red incident edge, stored as partner slots.
struct SampleGraph {
    int n1 = 0, n2 = 0;
    std::vector<int> black, green, red;  // vertex -> partner vertex, -1 if none
    bool parallel_black = false;

    int vertex_count() const { return n1 + n2; }
    int vid(Marker m) const { return m.side == Side::S1 ? m.pos - 1 : n1 + m.pos - 1; }
    Marker marker(int v) const {
        return v < n1 ? Marker{Side::S1, v + 1} : Marker{Side::S2, v - n1 + 1};
    }
    int degree(int v) const {
        size_t u = static_cast<size_t>(v);
        return (black[u] >= 0) + (green[u] >= 0) + (red[u] >= 0);
    }
};

/// Builds G_T by walking left (red) and right (green) from every black edge;
/// parallel black edges are detected during the same walks.
SampleGraph build_sample_graph(const Instance &inst, const Sample &T);

bool has_parallel_black_edges(const Instance &inst, const SampleGraph &G);

enum class ComponentKind {
    Singleton,
    BlackPath,
    GreenEvenPath,
    RedEvenPath,
    OddPathRare,
    OddPathAbundant,
    Cycle
};

struct Component {
    ComponentKind kind;
    std::vector<int> vertices;  // in path order; cycles start at smallest vertex id
};

/// Components ordered by their smallest (side,pos) vertex.
std::vector<Component> classify_components(const Instance &inst, const OccurrenceIndex &idx,
                                           const SampleGraph &G);

struct BranchTarget {
    enum class Kind { None, RareSingleton, RareOddPath } kind = Kind::None;
    std::vector<Marker> markers;  // the singleton, or the u_i of the odd path
};

BranchTarget find_branch_target(const Instance &inst, const OccurrenceIndex &idx,
                                const SampleGraph &G);
BranchTarget find_branch_target(const Instance &inst, const OccurrenceIndex &idx,
                                const SampleGraph &G, const std::vector<Component> &comps);

/// Black edges, plus green edges of green even paths / odd paths / cycles,
/// plus red edges of red even paths. Requires no rare singleton, no rare odd
/// path and no parallel black edges.
MatchSet construct_P_T(const Instance &inst, const OccurrenceIndex &idx, const SampleGraph &G);
MatchSet construct_P_T(const Instance &inst, const OccurrenceIndex &idx, const SampleGraph &G,
                       const std::vector<Component> &comps);

/// DOT output for debugging (--dump-graph).
void write_dot(std::ostream &out, const Instance &inst, const SampleGraph &G);

}  // namespace mcsp

#endif
