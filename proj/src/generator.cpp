#include "mcsp/generator.hpp"

#include <algorithm>
#include <random>
#include <string>

namespace mcsp {

namespace {

// modulo draw: the bias is irrelevant here and the output does not depend on
// the standard library's distribution internals
int draw(std::mt19937_64 &rng, int bound) {
    return static_cast<int>(rng() % static_cast<std::uint64_t>(bound));
}

void partial_shuffle(std::vector<int> &v, int prefix, std::mt19937_64 &rng) {
    int sz = static_cast<int>(v.size());
    for (int i = 0; i < prefix && i + 1 < sz; ++i)
        std::swap(v[static_cast<size_t>(i)], v[static_cast<size_t>(i + draw(rng, sz - i))]);
}

}  // namespace

Generated generate(const GenParams &params) {
    const int n = params.n, k = params.k, d = params.d;
    const int f = params.f_value(), delta = params.delta_value();
    if (n < 1 || k < 1 || d < 1 || f < 1) throw std::invalid_argument("n, k, d, f must be >= 1");
    if (delta < 0 || delta >= n) throw std::invalid_argument("delta must be in [0, n)");
    const int m = n - delta;
    if (k > m) throw std::invalid_argument("k exceeds block content length n - delta");
    if (static_cast<long long>(d) * f < m)
        throw Infeasible("letter budget d*f = " + std::to_string(static_cast<long long>(d) * f) +
                         " below block content " + std::to_string(m));

    std::mt19937_64 rng(params.seed);

    // block lengths: uniform composition of m into k positive parts
    std::vector<int> lens;
    if (k == 1) {
        lens.push_back(m);
    } else {
        std::vector<int> cuts(static_cast<size_t>(m - 1));
        for (int i = 0; i < m - 1; ++i) cuts[static_cast<size_t>(i)] = i + 1;
        partial_shuffle(cuts, k - 1, rng);
        cuts.resize(static_cast<size_t>(k - 1));
        std::sort(cuts.begin(), cuts.end());
        int prev = 0;
        for (int c : cuts) {
            lens.push_back(c - prev);
            prev = c;
        }
        lens.push_back(m - prev);
    }

    // block content: m letters off a pool holding d copies of each family
    std::vector<int> pool(static_cast<size_t>(d) * f);
    for (int a = 0; a < f; ++a)
        for (int c = 0; c < d; ++c) pool[static_cast<size_t>(a) * d + c] = a;
    partial_shuffle(pool, m, rng);

    std::vector<std::vector<int>> blocks(static_cast<size_t>(k));
    {
        int at = 0;
        for (int b = 0; b < k; ++b) {
            blocks[static_cast<size_t>(b)].assign(pool.begin() + at,
                                                  pool.begin() + at + lens[static_cast<size_t>(b)]);
            at += lens[static_cast<size_t>(b)];
        }
    }

    std::vector<int> cap[2];
    cap[0].assign(static_cast<size_t>(f), d);
    cap[1].assign(static_cast<size_t>(f), d);
    for (int i = 0; i < m; ++i) {
        --cap[0][static_cast<size_t>(pool[static_cast<size_t>(i)])];
        --cap[1][static_cast<size_t>(pool[static_cast<size_t>(i)])];
    }
    std::vector<int> owner(static_cast<size_t>(f), -1);  // which string took noise of the letter

    Generated out;
    std::vector<int> start[2];
    start[0].assign(static_cast<size_t>(k), 0);
    start[1].assign(static_cast<size_t>(k), 0);

    for (int s = 0; s < 2; ++s) {
        std::vector<int> order(static_cast<size_t>(k));
        for (int b = 0; b < k; ++b) order[static_cast<size_t>(b)] = b;
        partial_shuffle(order, k, rng);

        std::vector<std::vector<int>> noise(static_cast<size_t>(k) + 1);
        for (int i = 0; i < delta; ++i) {
            std::vector<int> eligible;
            for (int a = 0; a < f; ++a)
                if (cap[s][static_cast<size_t>(a)] > 0 &&
                    (owner[static_cast<size_t>(a)] == -1 || owner[static_cast<size_t>(a)] == s))
                    eligible.push_back(a);
            if (eligible.empty())
                throw Infeasible("no letter left with free capacity for noise");
            int a = eligible[static_cast<size_t>(draw(rng, static_cast<int>(eligible.size())))];
            owner[static_cast<size_t>(a)] = s;
            --cap[s][static_cast<size_t>(a)];
            noise[static_cast<size_t>(draw(rng, k + 1))].push_back(a);
        }

        std::vector<int> &seq = s == 0 ? out.inst.s1 : out.inst.s2;
        std::vector<int> &del = s == 0 ? out.planted.deleted1 : out.planted.deleted2;
        for (int g = 0; g <= k; ++g) {
            for (int a : noise[static_cast<size_t>(g)]) {
                del.push_back(static_cast<int>(seq.size()) + 1);
                seq.push_back(a);
            }
            if (g < k) {
                int b = order[static_cast<size_t>(g)];
                start[s][static_cast<size_t>(b)] = static_cast<int>(seq.size()) + 1;
                const auto &blk = blocks[static_cast<size_t>(b)];
                seq.insert(seq.end(), blk.begin(), blk.end());
            }
        }
    }

    for (int b = 0; b < k; ++b)
        out.planted.blocks.push_back(
            {start[0][static_cast<size_t>(b)], start[1][static_cast<size_t>(b)],
             lens[static_cast<size_t>(b)]});
    std::sort(out.planted.blocks.begin(), out.planted.blocks.end(),
              [](const Block &x, const Block &y) { return x.s1_start < y.s1_start; });

    auto table = std::make_shared<TokenTable>();
    for (int a = 0; a < f; ++a) table->intern(std::to_string(a));
    out.inst.table = std::move(table);
    out.inst.alphabet_size = f;
    return out;
}

}  // namespace mcsp
