/**
 * @file state_sum.hpp
 * @brief Brute-force chromatic evaluation of a spin network by summing over
 *        every choice of strand permutation on every edge.
 *
 * Conventions. An edge with label k carries k strands. Looking along the
 * edge from end 0 to end 1, strands are numbered 0..k-1 left to right (the
 * edge frame). A state assigns a permutation s to every edge: the strand at
 * frame position t at end 0 leaves at frame position s(t) at end 1, and it
 * crosses every strand it overtakes (one crossing per inversion of s).
 *
 * At a vertex, looking outward along an edge end, positions are numbered left
 * to right; at end 0 that agrees with the frame, at end 1 it is reversed.
 * With ends h0, h1, h2 counterclockwise and labels a0, a1, a2, the
 * (a_i + a_{i+1} - a_{i+2}) / 2 leftmost strands of h_i turn to h_{i+1},
 * outward position t on h_i meeting position a_{i+1} - 1 - t on h_{i+1}.
 */
#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <numeric>
#include <string>
#include <thread>
#include <vector>

#include "skeinlab/diagram.hpp"
#include "skeinlab/errors.hpp"
#include "skeinlab/morse_layout.hpp"
#include "skeinlab/network.hpp"
#include "skeinlab/rational.hpp"

namespace skeinlab {

inline constexpr std::uint64_t default_state_budget = 10'000'000;

/// Budget from SKEINLAB_STATE_BUDGET when set to a positive integer, else the default.
inline std::uint64_t state_budget_from_env() {
    if (const char* s = std::getenv("SKEINLAB_STATE_BUDGET")) {
        char* end = nullptr;
        unsigned long long v = std::strtoull(s, &end, 10);
        if (end != s && *end == '\0' && v > 0) return v;
    }
    return default_state_budget;
}

struct BruteOptions {
    std::uint64_t budget = state_budget_from_env();
    unsigned threads = 0;  ///< 0 picks hardware concurrency
};

/// One permutation per edge (closed edges included); perms[e][t] is the end-1 position of strand t.
struct State {
    std::vector<std::vector<int>> perms;
};

/// Loops of a resolved state.
struct StateLoops {
    std::size_t loop_count = 0;
    std::size_t even_loops = 0;       ///< loops meeting an even number of crossings
    std::vector<long long> crossings;  ///< crossing incidence per loop (self crossings once)

    /// (-1)^(even loops) 2^(loops)
    Rational value() const {
        BigInt v = BigInt(1) << loop_count;
        return Rational(even_loops % 2 == 0 ? v : BigInt(-v));
    }
};

namespace detail {

/// Static strand endpoints of a network and the vertex / closed-edge matching between them.
struct Endpoints {
    std::vector<int> label, base0, base1;
    std::vector<int> match;  // endpoint -> endpoint it is glued to outside the edge bundles
    std::vector<int> edge_of, pos_of;
    std::vector<char> at_end1;
    int segments = 0;  // total strands

    explicit Endpoints(const SpinNetwork& net) {
        const auto& edges = net.edges();
        int next = 0;
        for (const auto& e : edges) {
            int k = static_cast<int>(e.label);
            label.push_back(k);
            base0.push_back(next);
            base1.push_back(next + k);
            for (int end = 0; end < 2; ++end)
                for (int p = 0; p < k; ++p) {
                    edge_of.push_back(static_cast<int>(label.size()) - 1);
                    pos_of.push_back(p);
                    at_end1.push_back(static_cast<char>(end));
                }
            next += 2 * k;
            segments += k;
        }
        match.assign(static_cast<std::size_t>(next), -1);
        for (std::size_t e = 0; e < edges.size(); ++e) {
            if (!edges[e].closed) continue;
            for (int p = 0; p < label[e]; ++p) glue(base1[e] + p, base0[e] + p);
        }
        for (std::size_t v = 0; v < net.vertices().size(); ++v) {
            const auto& ends = net.vertex(v).ends;
            auto labels = net.vertex_labels(v);
            for (int i = 0; i < 3; ++i) {
                int j = (i + 1) % 3, k = (i + 2) % 3;
                long long n = (labels[static_cast<std::size_t>(i)] + labels[static_cast<std::size_t>(j)] -
                               labels[static_cast<std::size_t>(k)]) / 2;
                int aj = static_cast<int>(labels[static_cast<std::size_t>(j)]);
                for (int t = 0; t < n; ++t)
                    glue(endpoint(ends[static_cast<std::size_t>(i)], t), endpoint(ends[static_cast<std::size_t>(j)], aj - 1 - t));
            }
        }
        for (int m : match)
            if (m == -1) throw Error("internal consistency: unmatched strand endpoint");
    }

    /// Endpoint id of outward position p at an edge end.
    int endpoint(const EdgeEnd& end, int p) const {
        std::size_t e = end.edge;
        return end.end == 0 ? base0[e] + p : base1[e] + (label[e] - 1 - p);
    }

    void glue(int a, int b) {
        if (match[static_cast<std::size_t>(a)] != -1 || match[static_cast<std::size_t>(b)] != -1)
            throw Error("internal consistency: strand endpoint glued twice");
        match[static_cast<std::size_t>(a)] = b;
        match[static_cast<std::size_t>(b)] = a;
    }
};

/// Reusable scratch for tracing the loops of one state.
class LoopTracer {
    const Endpoints& ep_;
    std::vector<int> loop_of_;  // loop id per strand segment
    std::vector<int> seg_base_;
    std::vector<unsigned char> parity_;

  public:
    explicit LoopTracer(const Endpoints& ep) : ep_(ep), loop_of_(static_cast<std::size_t>(ep.segments)) {
        int s = 0;
        for (int k : ep.label) {
            seg_base_.push_back(s);
            s += k;
        }
    }

    /// Trace loops; perms and inverses are indexed by edge. Returns loop count and fills parity.
    template <class Perm>
    std::size_t trace(const std::vector<Perm>& perm, const std::vector<Perm>& inv,
                      std::vector<long long>* crossings = nullptr) {
        std::fill(loop_of_.begin(), loop_of_.end(), -1);
        int loops = 0;
        for (std::size_t e = 0; e < ep_.label.size(); ++e) {
            for (int t0 = 0; t0 < ep_.label[e]; ++t0) {
                if (loop_of_[static_cast<std::size_t>(seg_base_[e] + t0)] != -1) continue;
                const int start = ep_.base0[e] + t0;
                int x = start;
                while (true) {
                    const int xe = ep_.edge_of[static_cast<std::size_t>(x)];
                    const int xp = ep_.pos_of[static_cast<std::size_t>(x)];
                    int t, y;
                    if (!ep_.at_end1[static_cast<std::size_t>(x)]) {
                        t = xp;
                        y = ep_.base1[static_cast<std::size_t>(xe)] + perm[static_cast<std::size_t>(xe)][static_cast<std::size_t>(xp)];
                    } else {
                        t = inv[static_cast<std::size_t>(xe)][static_cast<std::size_t>(xp)];
                        y = ep_.base0[static_cast<std::size_t>(xe)] + t;
                    }
                    loop_of_[static_cast<std::size_t>(seg_base_[static_cast<std::size_t>(xe)] + t)] = loops;
                    x = ep_.match[static_cast<std::size_t>(y)];
                    if (x == start) break;
                }
                ++loops;
            }
        }
        parity_.assign(static_cast<std::size_t>(loops), 0);
        if (crossings) crossings->assign(static_cast<std::size_t>(loops), 0);
        for (std::size_t e = 0; e < ep_.label.size(); ++e) {
            const int k = ep_.label[e];
            const auto& s = perm[e];
            for (int a = 0; a < k; ++a)
                for (int b = a + 1; b < k; ++b) {
                    if (s[static_cast<std::size_t>(a)] < s[static_cast<std::size_t>(b)]) continue;
                    int la = loop_of_[static_cast<std::size_t>(seg_base_[e] + a)];
                    int lb = loop_of_[static_cast<std::size_t>(seg_base_[e] + b)];
                    parity_[static_cast<std::size_t>(la)] ^= 1;
                    if (crossings) ++(*crossings)[static_cast<std::size_t>(la)];
                    if (lb != la) {
                        parity_[static_cast<std::size_t>(lb)] ^= 1;
                        if (crossings) ++(*crossings)[static_cast<std::size_t>(lb)];
                    }
                }
        }
        return static_cast<std::size_t>(loops);
    }

    std::size_t even_loops() const {
        return static_cast<std::size_t>(std::count(parity_.begin(), parity_.end(), 0));
    }
};

inline void check_budget(const SpinNetwork& net, std::uint64_t budget) {
    BigInt count = net.state_count();
    if (count > BigInt(budget))
        throw BudgetError("state count " + count.str() + " exceeds the budget of " + std::to_string(budget) +
                              " states; use the recoupling evaluator or raise SKEINLAB_STATE_BUDGET",
                          count.str());
}

/// Set perm to the index-th permutation of k in lexicographic order.
inline void unrank_permutation(std::uint64_t index, int k, std::vector<int>& perm) {
    std::vector<int> pool(static_cast<std::size_t>(k));
    std::iota(pool.begin(), pool.end(), 0);
    perm.resize(static_cast<std::size_t>(k));
    std::uint64_t f = 1;  // (k - 1 - i)!
    for (int i = 2; i < k; ++i) f *= static_cast<std::uint64_t>(i);
    for (int i = 0; i < k; ++i) {
        std::uint64_t q = index / f;
        index %= f;
        perm[static_cast<std::size_t>(i)] = pool[static_cast<std::size_t>(q)];
        pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(q));
        if (k - 1 - i > 1) f /= static_cast<std::uint64_t>(k - 1 - i);
    }
}

inline void invert(const std::vector<int>& p, std::vector<int>& inv) {
    inv.resize(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) inv[static_cast<std::size_t>(p[i])] = static_cast<int>(i);
}

}  // namespace detail

/// Loops of one explicit state.
inline StateLoops resolve_state(const SpinNetwork& net, const State& state) {
    detail::Endpoints ep(net);
    if (state.perms.size() != net.edges().size()) throw StructuralError("state has the wrong number of permutations");
    std::vector<std::vector<int>> inv(state.perms.size());
    for (std::size_t e = 0; e < state.perms.size(); ++e) {
        if (state.perms[e].size() != static_cast<std::size_t>(ep.label[e]))
            throw StructuralError("permutation size does not match edge label");
        detail::invert(state.perms[e], inv[e]);
    }
    detail::LoopTracer tracer(ep);
    StateLoops out;
    out.loop_count = tracer.trace(state.perms, inv, &out.crossings);
    out.even_loops = tracer.even_loops();
    return out;
}

/**
 * Visit every state in lexicographic order (last edge varies fastest).
 * Validates the network and enforces the state budget before the first call.
 */
inline void resolve(const SpinNetwork& net, const std::function<void(const State&)>& visit,
                    std::uint64_t budget = state_budget_from_env()) {
    require_evaluable(net);
    detail::check_budget(net, budget);
    State s;
    for (const auto& e : net.edges()) {
        std::vector<int> p(static_cast<std::size_t>(e.label));
        std::iota(p.begin(), p.end(), 0);
        s.perms.push_back(std::move(p));
    }
    while (true) {
        visit(s);
        std::size_t e = s.perms.size();
        while (e > 0) {
            --e;
            if (std::next_permutation(s.perms[e].begin(), s.perms[e].end())) break;
            if (e == 0) return;  // next_permutation already reset it to identity
        }
        if (s.perms.empty()) return;
    }
}

/**
 * Exact brute-force evaluation: (1 / prod label!) * sum over states of
 * (-1)^(even loops) 2^(loops). The work is split into contiguous ranges of
 * the state index; per-range integer tallies make the result independent of
 * scheduling.
 */
inline Rational evaluate_brute(const SpinNetwork& net, const BruteOptions& opts = {}) {
    require_evaluable(net);
    detail::check_budget(net, opts.budget);
    const detail::Endpoints ep(net);
    const std::size_t edges = ep.label.size();
    const std::uint64_t total = static_cast<std::uint64_t>(net.state_count());
    const std::size_t max_loops = static_cast<std::size_t>(ep.segments);

    unsigned threads = opts.threads ? opts.threads : std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::uint64_t>(threads, total / 4096 + 1));

    // tally[w][loops] = sum of signs over states with that many loops
    std::vector<std::vector<long long>> tally(threads, std::vector<long long>(max_loops + 1, 0));

    auto work = [&](unsigned w) {
        const std::uint64_t lo = total * w / threads, hi = total * (w + 1) / threads;
        if (lo >= hi) return;
        // Decode lo into per-edge permutation ranks (mixed radix, last edge fastest).
        std::vector<std::vector<int>> perm(edges), inv(edges);
        std::uint64_t rest = lo;
        for (std::size_t e = edges; e-- > 0;) {
            std::uint64_t radix = static_cast<std::uint64_t>(factorial(ep.label[e]));
            detail::unrank_permutation(rest % radix, ep.label[e], perm[e]);
            rest /= radix;
        }
        for (std::size_t e = 0; e < edges; ++e) detail::invert(perm[e], inv[e]);
        detail::LoopTracer tracer(ep);
        auto& mine = tally[w];
        for (std::uint64_t i = lo; i < hi; ++i) {
            std::size_t loops = tracer.trace(perm, inv);
            mine[loops] += tracer.even_loops() % 2 == 0 ? 1 : -1;
            for (std::size_t e = edges; e-- > 0;) {
                bool more = std::next_permutation(perm[e].begin(), perm[e].end());
                detail::invert(perm[e], inv[e]);
                if (more) break;
            }
        }
    };

    if (threads == 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < threads; ++w) pool.emplace_back(work, w);
        for (auto& th : pool) th.join();
    }

    BigInt sum = 0;
    for (std::size_t loops = 0; loops <= max_loops; ++loops) {
        long long c = 0;
        for (const auto& t : tally) c += t[loops];
        if (c != 0) sum += BigInt(c) << loops;
    }
    return Rational(sum, net.state_count());
}

/**
 * Draw one state as an explicit strand diagram: every edge bundle with its
 * permutation realized by adjacent transpositions, every vertex as a planar
 * fan of turning strands.
 */
inline StrandDiagram explode_state(const SpinNetwork& net, const State& state) {
    require_evaluable(net);
    const auto& edges = net.edges();
    if (state.perms.size() != edges.size()) throw StructuralError("state has the wrong number of permutations");
    PlaneMap m;
    // port[e][end][frame position]: degree-2 vertex, slot 0 faces the network vertex, slot 1 the bundle.
    std::vector<std::array<std::vector<int>, 2>> port(edges.size());
    for (std::size_t e = 0; e < edges.size(); ++e) {
        const int k = static_cast<int>(edges[e].label);
        const auto& sigma = state.perms[e];
        if (sigma.size() != static_cast<std::size_t>(k)) throw StructuralError("permutation size does not match edge label");
        struct Dangling {
            int vertex, slot;
        };
        std::vector<Dangling> dangling;
        std::vector<int> start(static_cast<std::size_t>(k));
        for (int t = 0; t < k; ++t) {
            int v = m.add_vertex(2);
            start[static_cast<std::size_t>(t)] = v;
            dangling.push_back({v, 1});
        }
        // Bubble sort the strands into their end-1 positions; each swap is one crossing.
        std::vector<int> at(static_cast<std::size_t>(k));
        std::iota(at.begin(), at.end(), 0);
        for (bool swapped = true; swapped;) {
            swapped = false;
            for (int i = 0; i + 1 < k; ++i) {
                auto ui = static_cast<std::size_t>(i);
                if (sigma[static_cast<std::size_t>(at[ui])] < sigma[static_cast<std::size_t>(at[ui + 1])]) continue;
                // Counterclockwise: bottom-left, bottom-right, top-right, top-left.
                int x = m.add_vertex(4);
                m.join(dangling[ui].vertex, dangling[ui].slot, x, 0);
                m.join(dangling[ui + 1].vertex, dangling[ui + 1].slot, x, 1);
                dangling[ui] = {x, 3};
                dangling[ui + 1] = {x, 2};
                std::swap(at[ui], at[ui + 1]);
                swapped = true;
            }
        }
        if (edges[e].closed) {
            for (int j = 0; j < k; ++j)
                m.join(dangling[static_cast<std::size_t>(j)].vertex, dangling[static_cast<std::size_t>(j)].slot,
                       start[static_cast<std::size_t>(j)], 0);
            continue;
        }
        port[e][0] = start;
        for (int j = 0; j < k; ++j) {
            int v = m.add_vertex(2);
            m.join(dangling[static_cast<std::size_t>(j)].vertex, dangling[static_cast<std::size_t>(j)].slot, v, 1);
            port[e][1].push_back(v);
        }
    }
    for (std::size_t v = 0; v < net.vertices().size(); ++v) {
        const auto& ends = net.vertex(v).ends;
        auto labels = net.vertex_labels(v);
        auto port_at = [&](const EdgeEnd& end, long long outward) {
            long long k = edges[end.edge].label;
            long long frame = end.end == 0 ? outward : k - 1 - outward;
            return port[end.edge][static_cast<std::size_t>(end.end)][static_cast<std::size_t>(frame)];
        };
        for (std::size_t i = 0; i < 3; ++i) {
            std::size_t j = (i + 1) % 3, k = (i + 2) % 3;
            long long n = (labels[i] + labels[j] - labels[k]) / 2;
            for (long long t = 0; t < n; ++t) m.join(port_at(ends[i], t), 0, port_at(ends[j], labels[j] - 1 - t), 0);
        }
    }
    return m.to_diagram();
}

}  // namespace skeinlab
