#include "mcsp/sample_graph.hpp"

#include <algorithm>
#include <cassert>
#include <ostream>

namespace mcsp {

SampleGraph build_sample_graph(const Instance &inst, const Sample &T) {
    SampleGraph G;
    G.n1 = inst.n1();
    G.n2 = inst.n2();
    G.black.assign(static_cast<size_t>(G.vertex_count()), -1);
    G.green.assign(static_cast<size_t>(G.vertex_count()), -1);
    G.red.assign(static_cast<size_t>(G.vertex_count()), -1);

    for (const auto &m : T.matches) {
        if (m.p1 < 1 || m.p1 > G.n1 || m.p2 < 1 || m.p2 > G.n2)
            throw std::out_of_range("sample match out of range");
        assert(inst.letter1(m.p1) == inst.letter2(m.p2));
        int v = m.p1 - 1, w = G.n1 + m.p2 - 1;
        if (G.black[static_cast<size_t>(v)] >= 0 || G.black[static_cast<size_t>(w)] >= 0)
            throw NotDisjoint("sample matches share marker at S1[" + std::to_string(m.p1) +
                              "]/S2[" + std::to_string(m.p2) + "]");
        G.black[static_cast<size_t>(v)] = w;
        G.black[static_cast<size_t>(w)] = v;
    }

    // From each black edge, walk outward adding parallel extension edges.
    // The walk continues on letter equality alone so that a later black edge
    // in parallel position is still reached and flagged; green/red edges stop
    // at the first sampled marker on either side.
    for (const auto &m : T.matches) {
        for (int dir : {+1, -1}) {
            bool blocked = false;
            for (int t = 1;; ++t) {
                int p = m.p1 + dir * t, q = m.p2 + dir * t;
                if (p < 1 || p > G.n1 || q < 1 || q > G.n2) break;
                if (inst.letter1(p) != inst.letter2(q)) break;
                int v = p - 1, w = G.n1 + q - 1;
                bool b1 = G.black[static_cast<size_t>(v)] >= 0;
                bool b2 = G.black[static_cast<size_t>(w)] >= 0;
                if (b1 && G.black[static_cast<size_t>(v)] == w) G.parallel_black = true;
                if (b1 || b2) blocked = true;
                if (!blocked) {
                    auto &slots = dir > 0 ? G.green : G.red;
                    assert(slots[static_cast<size_t>(v)] == -1 ||
                           slots[static_cast<size_t>(v)] == w);
                    slots[static_cast<size_t>(v)] = w;
                    slots[static_cast<size_t>(w)] = v;
                }
            }
        }
    }
    return G;
}

bool has_parallel_black_edges(const Instance &, const SampleGraph &G) {
    return G.parallel_black;
}

namespace {

// The partner of v over the edge not leading back to prev. Interior path
// vertices have exactly two distinct partners.
int next_on_path(const SampleGraph &G, int v, int prev) {
    for (const auto *slots : {&G.black, &G.green, &G.red}) {
        int w = (*slots)[static_cast<size_t>(v)];
        if (w >= 0 && w != prev) return w;
    }
    return -1;
}

}  // namespace

std::vector<Component> classify_components(const Instance &inst, const OccurrenceIndex &idx,
                                           const SampleGraph &G) {
    std::vector<Component> comps;
    std::vector<char> visited(static_cast<size_t>(G.vertex_count()), 0);

    for (int v0 = 0; v0 < G.vertex_count(); ++v0) {
        if (visited[static_cast<size_t>(v0)]) continue;

        if (G.degree(v0) == 0) {
            visited[static_cast<size_t>(v0)] = 1;
            comps.push_back({ComponentKind::Singleton, {v0}});
            continue;
        }

        // Find an endpoint (degree-1 vertex) of the component, if any.
        std::vector<int> stack{v0};
        std::vector<int> members;
        visited[static_cast<size_t>(v0)] = 1;
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            members.push_back(v);
            for (const auto *slots : {&G.black, &G.green, &G.red}) {
                int w = (*slots)[static_cast<size_t>(v)];
                if (w >= 0 && !visited[static_cast<size_t>(w)]) {
                    visited[static_cast<size_t>(w)] = 1;
                    stack.push_back(w);
                }
            }
        }

        std::vector<int> endpoints;
        for (int v : members)
            if (G.degree(v) == 1) endpoints.push_back(v);

        Component c;
        if (endpoints.empty()) {
            // Cycle. Walk from the smallest vertex, multi-edge pairs included.
            int start = *std::min_element(members.begin(), members.end());
            c.vertices.push_back(start);
            if (members.size() == 2) {
                // two-vertex cycle: green and red edges between the same pair
                c.vertices.push_back(G.green[static_cast<size_t>(start)]);
            } else {
                int prev = start, cur = G.green[static_cast<size_t>(start)];
                while (cur != start) {
                    c.vertices.push_back(cur);
                    int nxt = next_on_path(G, cur, prev);
                    prev = cur;
                    cur = nxt;
                }
            }
            c.kind = ComponentKind::Cycle;
        } else {
            assert(endpoints.size() == 2);
            int start = std::min(endpoints[0], endpoints[1]);
            int prev = -1, cur = start;
            while (cur >= 0) {
                c.vertices.push_back(cur);
                int nxt = next_on_path(G, cur, prev);
                prev = cur;
                cur = nxt;
            }
            assert(c.vertices.size() == members.size());

            bool has_black = G.black[static_cast<size_t>(start)] >= 0 ||
                             G.black[static_cast<size_t>(c.vertices.back())] >= 0;
            if (has_black) {
                c.kind = ComponentKind::BlackPath;
            } else if (c.vertices.size() % 2 == 1) {
                c.kind = idx.is_rare(inst, G.marker(start)) ? ComponentKind::OddPathRare
                                                            : ComponentKind::OddPathAbundant;
            } else {
                bool starts_green = G.green[static_cast<size_t>(start)] >= 0;
                c.kind = starts_green ? ComponentKind::GreenEvenPath : ComponentKind::RedEvenPath;
            }
        }
        comps.push_back(std::move(c));
    }
    return comps;
}

BranchTarget find_branch_target(const Instance &inst, const OccurrenceIndex &idx,
                                const SampleGraph &G, const std::vector<Component> &comps) {
    BranchTarget t;
    for (const auto &c : comps) {
        if (c.kind != ComponentKind::Singleton) continue;
        Marker m = G.marker(c.vertices.front());
        if (idx.is_rare(inst, m)) {
            t.kind = BranchTarget::Kind::RareSingleton;
            t.markers = {m};
            return t;
        }
    }
    for (const auto &c : comps) {
        if (c.kind != ComponentKind::OddPathRare) continue;
        t.kind = BranchTarget::Kind::RareOddPath;
        for (size_t i = 0; i < c.vertices.size(); i += 2)
            t.markers.push_back(G.marker(c.vertices[i]));
        return t;
    }
    return t;
}

BranchTarget find_branch_target(const Instance &inst, const OccurrenceIndex &idx,
                                const SampleGraph &G) {
    return find_branch_target(inst, idx, G, classify_components(inst, idx, G));
}

MatchSet construct_P_T(const Instance &inst, const OccurrenceIndex &idx, const SampleGraph &G,
                       const std::vector<Component> &comps) {
    if (G.parallel_black) throw PreconditionViolated("sample graph has parallel black edges");
    MatchSet P;
    auto add_color_edges = [&](const Component &c, const std::vector<int> &slots) {
        for (int v : c.vertices) {
            if (v >= G.n1) continue;
            int w = slots[static_cast<size_t>(v)];
            if (w >= 0) P.add({v + 1, w - G.n1 + 1});
        }
    };
    for (const auto &c : comps) {
        switch (c.kind) {
            case ComponentKind::Singleton: {
                Marker m = G.marker(c.vertices.front());
                if (idx.is_rare(inst, m))
                    throw PreconditionViolated(
                        "rare isolated vertex " +
                        std::string(m.side == Side::S1 ? "S1[" : "S2[") + std::to_string(m.pos) +
                        "]");
                break;  // abundant: the marker is deleted
            }
            case ComponentKind::OddPathRare:
                throw PreconditionViolated("rare odd path component");
            case ComponentKind::BlackPath: {
                int v = c.vertices.front() < G.n1 ? c.vertices.front() : c.vertices.back();
                P.add({v + 1, G.black[static_cast<size_t>(v)] - G.n1 + 1});
                break;
            }
            case ComponentKind::GreenEvenPath:
            case ComponentKind::OddPathAbundant:
            case ComponentKind::Cycle:
                add_color_edges(c, G.green);
                break;
            case ComponentKind::RedEvenPath:
                add_color_edges(c, G.red);
                break;
        }
    }
    P.sort_canonical();
    return P;
}

MatchSet construct_P_T(const Instance &inst, const OccurrenceIndex &idx, const SampleGraph &G) {
    return construct_P_T(inst, idx, G, classify_components(inst, idx, G));
}

void write_dot(std::ostream &out, const Instance &inst, const SampleGraph &G) {
    out << "graph sample_graph {\n";
    for (int v = 0; v < G.vertex_count(); ++v) {
        Marker m = G.marker(v);
        out << "  v" << v << " [label=\"" << (m.side == Side::S1 ? "s1" : "s2") << ':' << m.pos
            << ':' << inst.token_of(inst.letter(m)) << "\"];\n";
    }
    struct {
        const std::vector<int> &slots;
        const char *color;
    } layers[] = {{G.black, "black"}, {G.green, "green"}, {G.red, "red"}};
    for (const auto &l : layers)
        for (int v = 0; v < G.vertex_count(); ++v)
            if (l.slots[static_cast<size_t>(v)] > v)
                out << "  v" << v << " -- v" << l.slots[static_cast<size_t>(v)] << " [color="
                    << l.color << "];\n";
    out << "}\n";
}

}  // namespace mcsp
