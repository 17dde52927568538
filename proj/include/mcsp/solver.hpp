#ifndef MCSP_SOLVER_HPP
#define MCSP_SOLVER_HPP

#include <optional>

#include "mcsp/csp.hpp"
#include "mcsp/instance.hpp"
#include "mcsp/reduction.hpp"
#include "mcsp/sample_graph.hpp"

namespace mcsp {

struct SolverOptions {
    bool use_reduction = true;
    bool use_kprime_init = true;
    std::optional<long long> node_budget;
    std::optional<double> time_budget_secs;
};

struct SearchStats {
    long long nodes_visited = 0;
    int max_depth = 0;  // matches added below the initial sample, <= k+1 levels
    long long branches_rule1 = 0;
    long long branches_rule2 = 0;
    long long aborts_budget = 0;
    long long aborts_parallel_black = 0;
    long long reductions_applied = 0;
    int max_rule1_children = 0;
    int max_rule2_children = 0;
    int d = 0;
    double wall_time_secs = 0.0;
};

enum class SolveStatus { Solved, NoSolution, BudgetExhausted };

struct DecisionResult {
    SolveStatus status = SolveStatus::NoSolution;
    std::optional<BlockDecomposition> decomposition;  // original coordinates
    SearchStats stats;
};

/// Depth-first branching: abort when |T| > k or on parallel black edges,
/// branch on the first rare singleton, else on a rare odd path, else read
/// off P_T. Children are explored in partner-position order.
DecisionResult solve_decision(const Instance &inst, int k, const SolverOptions &opts = {});

/// One candidate match per unique letter that has one. Requires the instance
/// to be reduced with respect to the parallel-unique rule.
Sample initial_sample_kprime(const Instance &inst, const OccurrenceIndex &idx);

struct MinimumResult {
    SolveStatus status = SolveStatus::NoSolution;
    int size = -1;
    std::optional<BlockDecomposition> decomposition;
    SearchStats stats;
    int lower_bound = 0;   // |initial sample| + reduction decrements
    int upper_tried = -1;  // last k attempted (bound interval on budget stop)
    int kprime = 0;        // blocks without a unique letter in the solution
    ReductionStats reduction;
};

/// Iterative deepening over k, starting from the initial-sample lower bound.
MinimumResult solve_minimum(const Instance &inst, const SolverOptions &opts = {});

/// Number of blocks that contain no letter unique to both strings.
int kprime_of(const Instance &inst, const BlockDecomposition &d);

}  // namespace mcsp

#endif
