#ifndef MCSP_REDUCTION_HPP
#define MCSP_REDUCTION_HPP

#include <optional>
#include <variant>
#include <vector>

#include "mcsp/csp.hpp"
#include "mcsp/instance.hpp"

namespace mcsp {

/// Two unique-letter matches in parallel position; [s1_start, s1_start+len-1]
/// and [s2_start, s2_start+len-1] were contracted to their first markers.
struct ContractRecord {
    int s1_start, s2_start, len;
};

/// A unique match removed from both strings with a k decrement of 0..3.
struct RemovePairRecord {
    int s1_pos, s2_pos, k_dec;
};

/// Markers rewritten to a previously unused letter; positions unchanged.
struct RelabelRecord {
    std::vector<Marker> markers;
    int old_letter, fresh_letter;
};

using RewriteRecord = std::variant<ContractRecord, RemovePairRecord, RelabelRecord>;

/// Coordinates in each record refer to the instance *before* that record's
/// application; forward replay reproduces the reduced instance exactly.
struct RewriteTrace {
    std::vector<RewriteRecord> records;

    int total_k_decrement() const;
    bool empty() const { return records.empty(); }
};

class InconsistentTrace : public std::runtime_error {
public:
    explicit InconsistentTrace(const std::string &msg) : std::runtime_error(msg) {}
};

void apply_record(Instance &inst, const RewriteRecord &rec);

struct RuleApplication {
    Instance inst;
    RewriteRecord record;
    int k_dec = 0;
};

std::optional<RuleApplication> rule_parallel_unique(const Instance &inst);
std::optional<RuleApplication> rule_unique_border(const Instance &inst);
std::optional<RuleApplication> rule_star(const Instance &inst);
std::optional<RuleApplication> rule_k22(const Instance &inst);

struct ReductionStats {
    int n1_reduced = 0, n2_reduced = 0;
    long long matches_removed = 0;  // delta column
    long long applications[4] = {0, 0, 0, 0};
};

struct ReduceResult {
    Instance inst;
    int k_decrement = 0;
    RewriteTrace trace;
    ReductionStats stats;
};

/// Applies rules 1..4 in order, restarting after every hit, until none fires.
ReduceResult reduce_fixpoint(const Instance &inst, bool rule1_only = false);

/// Maps a decomposition of the reduced instance back to original coordinates
/// by reversing the trace at the match level and re-deriving blocks.
BlockDecomposition lift_solution(const Instance &original, const RewriteTrace &trace,
                                 const BlockDecomposition &reduced);

}  // namespace mcsp

#endif
