#ifndef MCSP_ORACLE_HPP
#define MCSP_ORACLE_HPP

#include <stdexcept>

#include "mcsp/csp.hpp"
#include "mcsp/instance.hpp"

namespace mcsp {

struct OracleLimits {
    long long max_assignments = 10'000'000;
};

class TooLarge : public std::runtime_error {
public:
    TooLarge(double estimate, const std::string &msg)
        : std::runtime_error(msg), estimate_(estimate) {}
    double estimate() const { return estimate_; }

private:
    double estimate_;
};

struct OracleResult {
    int size = 0;
    MatchSet matchset;
};

/// Exhaustive minimum: per letter, every injection of the minority-side
/// occurrences into the majority side is enumerated; the Cartesian product
/// over letters covers exactly the CSPs of the instance.
OracleResult oracle_minimum(const Instance &inst, const OracleLimits &limits = {});

/// Product over letters of the per-letter injection counts.
double oracle_assignment_estimate(const Instance &inst);

}  // namespace mcsp

#endif
