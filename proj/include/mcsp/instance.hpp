#ifndef MCSP_INSTANCE_HPP
#define MCSP_INSTANCE_HPP

#include <array>
#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace mcsp {

enum class Side : int { S1 = 0, S2 = 1 };

inline Side other(Side s) { return s == Side::S1 ? Side::S2 : Side::S1; }

/// An occurrence of a letter at a 1-based position in one of the two strings.
struct Marker {
    Side side;
    int pos;

    friend bool operator==(const Marker &a, const Marker &b) = default;
    friend auto operator<=>(const Marker &a, const Marker &b) = default;
};

/// Cross-string pair of equal-letter markers, S1 member first.
struct CandidateMatch {
    int p1;  // position in S1
    int p2;  // position in S2

    friend bool operator==(const CandidateMatch &a, const CandidateMatch &b) = default;
    friend auto operator<=>(const CandidateMatch &a, const CandidateMatch &b) = default;
};

class ParseError : public std::runtime_error {
public:
    enum class Kind { EmptyString, MalformedBudget, MissingLine };

    ParseError(Kind kind, const std::string &msg) : std::runtime_error(msg), kind_(kind) {}
    Kind kind() const { return kind_; }

private:
    Kind kind_;
};

/// Bijective token <-> id interning. Ids are dense, starting at 0.
class TokenTable {
public:
    int intern(const std::string &tok) {
        auto it = ids_.find(tok);
        if (it != ids_.end()) return it->second;
        int id = static_cast<int>(tokens_.size());
        tokens_.push_back(tok);
        ids_.emplace(tok, id);
        return id;
    }

    const std::string &token(int id) const { return tokens_.at(static_cast<size_t>(id)); }
    int size() const { return static_cast<int>(tokens_.size()); }

private:
    std::vector<std::string> tokens_;
    std::unordered_map<std::string, int> ids_;
};

struct Instance {
    std::vector<int> s1, s2;  // letter ids, index 0 holds position 1
    std::optional<int> k;     // optional block budget from the input file
    std::shared_ptr<const TokenTable> table;
    // Letters with id >= table->size() are fresh letters introduced by data
    // reduction; they never collide with input tokens.
    int alphabet_size = 0;

    int n1() const { return static_cast<int>(s1.size()); }
    int n2() const { return static_cast<int>(s2.size()); }
    int length(Side s) const { return s == Side::S1 ? n1() : n2(); }

    const std::vector<int> &seq(Side s) const { return s == Side::S1 ? s1 : s2; }
    std::vector<int> &seq(Side s) { return s == Side::S1 ? s1 : s2; }

    int letter(Side s, int pos) const { return seq(s)[static_cast<size_t>(pos - 1)]; }
    int letter(Marker m) const { return letter(m.side, m.pos); }
    int letter1(int pos) const { return s1[static_cast<size_t>(pos - 1)]; }
    int letter2(int pos) const { return s2[static_cast<size_t>(pos - 1)]; }

    std::string token_of(int letter_id) const;
};

/// Parses the two-or-three line instance format ('#' lines are comments).
/// With per_char, every non-space character of a line is its own token.
Instance parse_instance(std::istream &in, bool per_char = false);
Instance parse_instance(const std::string &text, bool per_char = false);

/// Serializes back to the instance text format (S1 line, S2 line, optional k).
std::string instance_to_text(const Instance &inst);

/// Per-letter occurrence lists plus the d and d* statistics.
struct OccurrenceIndex {
    std::vector<std::array<std::vector<int>, 2>> occ;  // occ[letter][side]
    int d = 0;                   // max occurrences of any letter in either string
    double d_star = 0.0;         // average candidate matches per marker
    long long total_matches = 0; // sum over letters of count1 * count2

    int count(int letter, Side s) const {
        return static_cast<int>(occ[static_cast<size_t>(letter)][static_cast<int>(s)].size());
    }
    const std::vector<int> &positions(int letter, Side s) const {
        return occ[static_cast<size_t>(letter)][static_cast<int>(s)];
    }

    bool is_abundant(const Instance &inst, Marker m) const {
        int a = inst.letter(m);
        return count(a, m.side) > count(a, other(m.side));
    }
    bool is_rare(const Instance &inst, Marker m) const { return !is_abundant(inst, m); }
};

OccurrenceIndex build_index(const Instance &inst);

/// All candidate matches containing u, ordered by the partner's position.
std::vector<CandidateMatch> candidate_matches_of(const Instance &inst, const OccurrenceIndex &idx,
                                                 Marker u);

/// True iff the two matches span identical intervals ([x,x'] == [y,y']).
bool is_parallel(const Instance &inst, const CandidateMatch &m1, const CandidateMatch &m2);

}  // namespace mcsp

#endif
