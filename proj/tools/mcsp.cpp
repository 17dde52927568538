// Command-line front end: solve, min, oracle, gen, check, bench.
//
// Exit codes for solve/min/oracle: 0 solved, 1 no solution within the budget
// k, 2 wall-clock or node budget exhausted, 3 input error.

#include <CLI11.hpp>
#include <json.hpp>

#include <atomic>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <thread>
#include <vector>

#include "mcsp/generator.hpp"
#include "mcsp/oracle.hpp"
#include "mcsp/solver.hpp"

using namespace mcsp;
using nlohmann::json;

namespace {

constexpr int kExitSolved = 0;
constexpr int kExitNoSolution = 1;
constexpr int kExitBudget = 2;
constexpr int kExitInput = 3;

struct CommonFlags {
    bool chars = false;
    bool no_reduction = false;
    bool no_kprime = false;
    std::optional<double> budget;
    std::optional<long long> node_budget;
    std::string stats_json;
    std::string dump_graph;
};

void add_common(CLI::App *cmd, CommonFlags &fl) {
    cmd->add_flag("--chars", fl.chars, "treat every character as its own token");
    cmd->add_flag("--no-reduction", fl.no_reduction, "disable data reduction");
    cmd->add_flag("--no-kprime", fl.no_kprime, "disable the unique-letter initial sample");
    cmd->add_option("--budget", fl.budget, "wall-clock budget in seconds");
    cmd->add_option("--node-budget", fl.node_budget, "search node budget");
    cmd->add_option("--stats-json", fl.stats_json, "write search statistics as JSON ('-' = stdout)");
    cmd->add_option("--dump-graph", fl.dump_graph,
                    "write the initial sample graph in DOT format ('-' = stdout)");
}

std::optional<double> env_budget() {
    const char *v = std::getenv("MCSP_BUDGET_SECS");
    if (!v || !*v) return std::nullopt;
    try {
        return std::stod(v);
    } catch (const std::exception &) {
        return std::nullopt;
    }
}

SolverOptions solver_options(const CommonFlags &fl) {
    SolverOptions opts;
    opts.use_reduction = !fl.no_reduction;
    opts.use_kprime_init = !fl.no_kprime;
    opts.time_budget_secs = fl.budget ? fl.budget : env_budget();
    opts.node_budget = fl.node_budget;
    return opts;
}

Instance load_instance(const std::string &path, bool chars) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    return parse_instance(in, chars);
}

void write_stats(const std::string &dest, const json &j) {
    if (dest == "-") {
        std::cout << j.dump(2) << "\n";
        return;
    }
    std::ofstream out(dest);
    out << j.dump(2) << "\n";
}

json stats_json(const SearchStats &st) {
    return json{{"nodes_visited", st.nodes_visited},
                {"max_depth", st.max_depth},
                {"branches_rule1", st.branches_rule1},
                {"branches_rule2", st.branches_rule2},
                {"aborts_budget", st.aborts_budget},
                {"aborts_parallel_black", st.aborts_parallel_black},
                {"reductions_applied", st.reductions_applied},
                {"max_rule1_children", st.max_rule1_children},
                {"max_rule2_children", st.max_rule2_children},
                {"d", st.d},
                {"wall_time_secs", st.wall_time_secs}};
}

const char *status_name(SolveStatus s) {
    switch (s) {
        case SolveStatus::Solved: return "solved";
        case SolveStatus::NoSolution: return "no-solution";
        default: return "budget-exhausted";
    }
}

void maybe_dump_graph(const CommonFlags &fl, const Instance &inst) {
    if (fl.dump_graph.empty()) return;
    OccurrenceIndex idx = build_index(inst);
    SampleGraph G = build_sample_graph(inst, initial_sample_kprime(inst, idx));
    if (fl.dump_graph == "-") {
        write_dot(std::cout, inst, G);
    } else {
        std::ofstream out(fl.dump_graph);
        write_dot(out, inst, G);
    }
}

int status_exit(SolveStatus s) {
    switch (s) {
        case SolveStatus::Solved: return kExitSolved;
        case SolveStatus::NoSolution: return kExitNoSolution;
        default: return kExitBudget;
    }
}

int cmd_solve(const std::string &file, std::optional<int> k_flag, const CommonFlags &fl) {
    Instance inst = load_instance(file, fl.chars);
    std::optional<int> k = k_flag ? k_flag : inst.k;
    if (!k) throw std::runtime_error("no block budget: pass --k or a third input line");
    maybe_dump_graph(fl, inst);
    DecisionResult r = solve_decision(inst, *k, solver_options(fl));
    if (r.status == SolveStatus::Solved) {
        write_solution(std::cout, *r.decomposition);
    } else {
        std::cout << "NO\n";
    }
    if (!fl.stats_json.empty()) {
        json j = stats_json(r.stats);
        j["status"] = status_name(r.status);
        j["k"] = *k;
        write_stats(fl.stats_json, j);
    }
    return status_exit(r.status);
}

int cmd_min(const std::string &file, const CommonFlags &fl) {
    Instance inst = load_instance(file, fl.chars);
    maybe_dump_graph(fl, inst);
    MinimumResult r = solve_minimum(inst, solver_options(fl));
    if (r.status == SolveStatus::Solved) {
        write_solution(std::cout, *r.decomposition);
    } else {
        std::cout << "NO " << r.lower_bound << " " << r.upper_tried << "\n";
    }
    if (!fl.stats_json.empty()) {
        json j = stats_json(r.stats);
        j["status"] = status_name(r.status);
        j["size"] = r.size;
        j["lower_bound"] = r.lower_bound;
        j["upper_tried"] = r.upper_tried;
        j["kprime"] = r.kprime;
        j["reduction"] = {{"n1_reduced", r.reduction.n1_reduced},
                          {"n2_reduced", r.reduction.n2_reduced},
                          {"matches_removed", r.reduction.matches_removed},
                          {"applications", r.reduction.applications}};
        write_stats(fl.stats_json, j);
    }
    return status_exit(r.status);
}

int cmd_oracle(const std::string &file, bool chars, long long max_assignments) {
    Instance inst = load_instance(file, chars);
    OracleLimits lim;
    if (max_assignments > 0) lim.max_assignments = max_assignments;
    OracleResult r = oracle_minimum(inst, lim);
    write_solution(std::cout, blocks_of(inst, r.matchset));
    return kExitSolved;
}

int cmd_gen(const GenParams &params, const std::string &out_path,
            const std::string &planted_path) {
    Generated g = generate(params);
    if (out_path.empty() || out_path == "-") {
        std::cout << instance_to_text(g.inst);
    } else {
        std::ofstream out(out_path);
        out << instance_to_text(g.inst);
    }
    if (!planted_path.empty()) {
        std::ofstream out(planted_path);
        write_solution(out, g.planted);
    }
    return kExitSolved;
}

int cmd_check(const std::string &inst_file, const std::string &sol_file, bool chars) {
    Instance inst = load_instance(inst_file, chars);
    std::ifstream in(sol_file);
    if (!in) throw std::runtime_error("cannot open " + sol_file);
    BlockDecomposition d = read_solution(in);
    MatchSet P = matchset_of(d);
    auto violations = validate_csp(inst, P);
    if (!violations.empty()) {
        for (const auto &v : violations) std::cerr << "violation: " << v.what << "\n";
        return kExitNoSolution;
    }
    std::cout << "OK size " << blocks_of(inst, P).size() << "\n";
    return kExitSolved;
}

struct SweepCell {
    GenParams params;
    int reps = 1;
    std::uint64_t seed_base = 0;
};

// One line per cell: n k d delta f reps seed_base ('-' = generator default).
std::vector<SweepCell> read_sweep(const std::string &path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::vector<SweepCell> cells;
    std::string line;
    while (std::getline(in, line)) {
        size_t h = line.find('#');
        if (h != std::string::npos) line.resize(h);
        std::istringstream ls(line);
        std::vector<std::string> tok;
        std::string t;
        while (ls >> t) tok.push_back(t);
        if (tok.empty()) continue;
        if (tok.size() != 7) throw std::runtime_error("malformed sweep line: " + line);
        const std::string &nf = tok[0], &kf = tok[1], &df = tok[2], &deltaf = tok[3],
                          &ff = tok[4], &repsf = tok[5], &basef = tok[6];
        SweepCell c;
        c.params.n = std::stoi(nf);
        c.params.k = std::stoi(kf);
        c.params.d = std::stoi(df);
        if (deltaf != "-") c.params.delta = std::stoi(deltaf);
        if (ff != "-") c.params.f = std::stoi(ff);
        c.reps = std::stoi(repsf);
        c.seed_base = std::stoull(basef);
        cells.push_back(c);
    }
    return cells;
}

struct BenchRow {
    std::string id;
    int n1 = 0, n2 = 0;
    int k_found = -1;  // -1 on timeout
    int kprime = 0;
    int d = 0;
    double d_star = 0.0;
    int n1_reduced = 0, n2_reduced = 0;
    long long delta_removed = 0;
    double t_seconds = 0.0;
    bool timeout = false;
};

BenchRow bench_one(const SweepCell &c, int rep, std::optional<double> budget) {
    GenParams p = c.params;
    p.seed = c.seed_base + static_cast<std::uint64_t>(rep);
    Generated g = generate(p);
    BenchRow row;
    row.id = "n" + std::to_string(p.n) + "_k" + std::to_string(p.k) + "_d" +
             std::to_string(p.d) + "_s" + std::to_string(p.seed);
    row.n1 = g.inst.n1();
    row.n2 = g.inst.n2();
    OccurrenceIndex idx = build_index(g.inst);
    row.d = idx.d;
    row.d_star = idx.d_star;

    SolverOptions opts;
    opts.time_budget_secs = budget;
    DecisionResult r = solve_decision(g.inst, p.k, opts);
    row.t_seconds = r.stats.wall_time_secs;
    ReduceResult red = reduce_fixpoint(g.inst);
    row.n1_reduced = red.stats.n1_reduced;
    row.n2_reduced = red.stats.n2_reduced;
    row.delta_removed = red.stats.matches_removed;
    if (r.status == SolveStatus::Solved) {
        row.k_found = r.decomposition->size();
        row.kprime = kprime_of(g.inst, *r.decomposition);
    } else {
        row.timeout = true;
    }
    return row;
}

int cmd_bench(const std::string &sweep_file, const std::string &csv_path,
              std::optional<double> budget, int workers) {
    std::vector<SweepCell> cells = read_sweep(sweep_file);
    struct Job {
        size_t cell;
        int rep;
    };
    std::vector<Job> jobs;
    for (size_t ci = 0; ci < cells.size(); ++ci)
        for (int r = 0; r < cells[ci].reps; ++r) jobs.push_back({ci, r});

    std::vector<BenchRow> rows(jobs.size());
    std::atomic<size_t> next{0};
    auto work = [&] {
        for (size_t i = next.fetch_add(1); i < jobs.size(); i = next.fetch_add(1))
            rows[i] = bench_one(cells[jobs[i].cell], jobs[i].rep, budget);
    };
    if (workers <= 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        for (int w = 0; w < workers; ++w) pool.emplace_back(work);
        for (auto &t : pool) t.join();
    }

    std::ostringstream csv;
    csv << "id,n1,n2,k_found,kprime,d,d_star,n1_reduced,n2_reduced,delta,t_seconds\n";
    for (const auto &row : rows) {
        csv << row.id << ',' << row.n1 << ',' << row.n2 << ',';
        if (row.timeout)
            csv << "TIMEOUT,TIMEOUT";
        else
            csv << row.k_found << ',' << row.kprime;
        csv << ',' << row.d << ',' << row.d_star << ',' << row.n1_reduced << ','
            << row.n2_reduced << ',' << row.delta_removed << ',' << row.t_seconds << "\n";
    }
    if (csv_path.empty() || csv_path == "-") {
        std::cout << csv.str();
    } else {
        std::ofstream out(csv_path);
        out << csv.str();
    }

    // per-cell mean solve time on stderr so the CSV stays purely per-instance
    size_t at = 0;
    for (size_t ci = 0; ci < cells.size(); ++ci) {
        double sum = 0.0;
        int solved = 0;
        for (int r = 0; r < cells[ci].reps; ++r, ++at) {
            sum += rows[at].t_seconds;
            solved += rows[at].timeout ? 0 : 1;
        }
        std::cerr << "cell n=" << cells[ci].params.n << " k=" << cells[ci].params.k
                  << " d=" << cells[ci].params.d << ": solved " << solved << "/"
                  << cells[ci].reps << ", mean time "
                  << (cells[ci].reps ? sum / cells[ci].reps : 0.0) << " s\n";
    }
    return kExitSolved;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Exact minimum common string partition solver"};
    app.require_subcommand(1);

    std::string file, sol_file, out_path, planted_path, sweep_file, csv_path;
    std::optional<int> k_flag;
    CommonFlags solve_fl, min_fl;
    bool oracle_chars = false, check_chars = false;
    long long max_assignments = 0;
    GenParams gen_params;
    std::optional<double> bench_budget;
    int workers = 1;

    CLI::App *solve = app.add_subcommand("solve", "decide whether a partition of size <= k exists");
    solve->add_option("file", file)->required();
    solve->add_option("--k", k_flag, "block budget (defaults to the input's third line)");
    add_common(solve, solve_fl);

    CLI::App *min = app.add_subcommand("min", "compute a minimum common string partition");
    min->add_option("file", file)->required();
    add_common(min, min_fl);

    CLI::App *oracle = app.add_subcommand("oracle", "brute-force minimum for small instances");
    oracle->add_option("file", file)->required();
    oracle->add_flag("--chars", oracle_chars, "treat every character as its own token");
    oracle->add_option("--max-assignments", max_assignments, "enumeration size limit");

    CLI::App *gen = app.add_subcommand("gen", "generate a synthetic instance");
    gen->add_option("--n", gen_params.n, "string length");
    gen->add_option("--k", gen_params.k, "planted block count");
    gen->add_option("--d", gen_params.d, "per-letter occurrence cap");
    gen->add_option("--f", gen_params.f, "letter family count (default 3n/d)");
    gen->add_option("--delta", gen_params.delta, "noise markers per string (default n/10)");
    gen->add_option("--seed", gen_params.seed, "random seed");
    gen->add_option("-o,--out", out_path, "output file (default stdout)");
    gen->add_option("--planted", planted_path, "also write the planted solution");

    CLI::App *check = app.add_subcommand("check", "validate a solution file against an instance");
    check->add_option("instance", file)->required();
    check->add_option("solution", sol_file)->required();
    check->add_flag("--chars", check_chars, "treat every character as its own token");

    CLI::App *bench = app.add_subcommand("bench", "run a benchmark sweep to CSV");
    bench->add_option("sweep", sweep_file, "sweep spec: lines of n k d delta f reps seed_base")
        ->required();
    bench->add_option("-o,--out", csv_path, "CSV output file (default stdout)");
    bench->add_option("--budget", bench_budget, "per-instance wall-clock budget in seconds");
    bench->add_option("--workers", workers, "parallel worker threads");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kExitInput;
    }

    try {
        if (*solve) return cmd_solve(file, k_flag, solve_fl);
        if (*min) return cmd_min(file, min_fl);
        if (*oracle) return cmd_oracle(file, oracle_chars, max_assignments);
        if (*gen) return cmd_gen(gen_params, out_path, planted_path);
        if (*check) return cmd_check(file, sol_file, check_chars);
        if (*bench) {
            if (!bench_budget) bench_budget = env_budget();
            return cmd_bench(sweep_file, csv_path, bench_budget, workers);
        }
    } catch (const TooLarge &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    }
    return kExitInput;
}
