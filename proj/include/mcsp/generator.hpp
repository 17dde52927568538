#ifndef MCSP_GENERATOR_HPP
#define MCSP_GENERATOR_HPP

#include <cstdint>
#include <optional>
#include <stdexcept>

#include "mcsp/csp.hpp"
#include "mcsp/instance.hpp"

namespace mcsp {

struct GenParams {
    int n = 1000;  // per-string length, noise included
    int k = 50;    // planted block count
    int d = 6;     // per-letter per-string occurrence cap
    std::optional<int> f;      // letter family count, default 3n/d
    std::optional<int> delta;  // noise markers per string, default n/10
    std::uint64_t seed = 0;

    int f_value() const { return f ? *f : 3 * n / d; }
    int delta_value() const { return delta ? *delta : n / 10; }
};

class Infeasible : public std::runtime_error {
public:
    explicit Infeasible(const std::string &msg) : std::runtime_error(msg) {}
};

struct Generated {
    Instance inst;
    BlockDecomposition planted;  // valid CSP of size <= k
};

/// Plants k blocks of total length n - delta (letters drawn from a pool with
/// d copies per family), permutes them independently per string and fills
/// delta noise markers into random gaps. Every noise letter keeps its
/// occurrences on one string only, so each noise marker stays abundant and
/// the planted decomposition remains a common string partition. Byte
/// deterministic for a fixed seed and build.
Generated generate(const GenParams &params);

}  // namespace mcsp

#endif
