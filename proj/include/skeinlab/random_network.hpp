/**
 * @file random_network.hpp
 * @brief Random planar trivalent networks with admissible labels, for
 *        randomized cross-checks between evaluators.
 */
#pragma once

#include <algorithm>
#include <array>
#include <numeric>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "skeinlab/network.hpp"

namespace skeinlab {

namespace detail {

/// Mutable rotation system used while growing a random graph.
struct GrowingGraph {
    std::vector<std::array<EdgeEnd, 3>> rot;
    std::vector<std::array<std::pair<int, int>, 2>> at;  // (vertex, slot) per edge end

    std::size_t add_edge() {
        at.push_back({std::pair{-1, -1}, std::pair{-1, -1}});
        return at.size() - 1;
    }
    void place(int v, int slot, EdgeEnd end) {
        rot[static_cast<std::size_t>(v)][static_cast<std::size_t>(slot)] = end;
        at[end.edge][static_cast<std::size_t>(end.end)] = {v, slot};
    }

    SpinNetwork to_network(const std::vector<EdgeLabel>& labels) const {
        SpinNetwork net;
        for (std::size_t e = 0; e < at.size(); ++e) net.add_edge("e" + std::to_string(e), labels[e]);
        for (std::size_t v = 0; v < rot.size(); ++v) net.add_vertex("v" + std::to_string(v), rot[v]);
        return net;
    }

    /// Insert a vertex on dart d; returns the new vertex. Its slot 1 is left for a chord into the face on the left.
    int split(const Dart& d, EdgeEnd& toward_head) {
        const int a = d.from;
        auto [y, sy] = at[d.edge][static_cast<std::size_t>(1 - a)];
        int w = static_cast<int>(rot.size());
        rot.push_back({});
        std::size_t e2 = add_edge();
        place(y, sy, EdgeEnd{e2, 1});
        place(w, 0, EdgeEnd{e2, 0});
        place(w, 2, EdgeEnd{d.edge, 1 - a});
        toward_head = EdgeEnd{e2, 0};
        return w;
    }
};

}  // namespace detail

/// Admissible labels in [0, max_label] for every edge, chosen at random by backtracking.
template <class Rng>
std::optional<std::vector<EdgeLabel>> random_admissible_labels(const SpinNetwork& shape, EdgeLabel max_label,
                                                                Rng& rng) {
    const std::size_t m = shape.edges().size();
    std::vector<EdgeLabel> labels(m, -1);
    std::vector<std::vector<EdgeLabel>> options(m);
    for (auto& o : options) {
        o.resize(static_cast<std::size_t>(max_label + 1));
        std::iota(o.begin(), o.end(), 0);
        std::shuffle(o.begin(), o.end(), rng);
    }
    auto consistent = [&](std::size_t e) {
        for (int end = 0; end < 2; ++end) {
            std::size_t v = shape.edge(e).vertex[static_cast<std::size_t>(end)];
            if (v == npos) continue;
            std::array<EdgeLabel, 3> l;
            bool complete = true;
            for (std::size_t s = 0; s < 3; ++s) {
                l[s] = labels[shape.vertex(v).ends[s].edge];
                complete = complete && l[s] >= 0;
            }
            if (complete && !admissible(l[0], l[1], l[2])) return false;
        }
        return true;
    };
    std::vector<std::size_t> choice(m, 0);
    std::size_t e = 0;
    while (e < m) {
        if (choice[e] == options[e].size()) {
            choice[e] = 0;
            labels[e] = -1;
            if (e == 0) return std::nullopt;
            --e;
            ++choice[e];
            continue;
        }
        labels[e] = options[e][choice[e]];
        if (consistent(e)) ++e;
        else ++choice[e];
    }
    return labels;
}

/**
 * Random connected planar trivalent network with `vertices` vertices
 * (rounded up to an even number >= 2), grown from a theta graph by joining
 * two points on the boundary of a random face. Multi-edges appear naturally.
 */
template <class Rng>
SpinNetwork random_planar_network(std::size_t vertices, EdgeLabel max_label, Rng& rng) {
    detail::GrowingGraph g;
    g.rot.resize(2);
    for (int e = 0; e < 3; ++e) g.add_edge();
    g.place(0, 0, {0, 0});
    g.place(0, 1, {1, 0});
    g.place(0, 2, {2, 0});
    g.place(1, 0, {0, 1});
    g.place(1, 1, {2, 1});
    g.place(1, 2, {1, 1});

    auto pick = [&](std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng); };
    while (g.rot.size() < vertices) {
        SpinNetwork shape = g.to_network(std::vector<EdgeLabel>(g.at.size(), 0));
        auto faces = shape.faces();
        const auto& face = faces[pick(faces.size())];
        Dart d1 = face[pick(face.size())], d2 = face[pick(face.size())];
        EdgeEnd head1{}, head2{};
        int w1 = g.split(d1, head1);
        if (d2 == d1) d2 = Dart{head1.edge, head1.end};
        int w2 = g.split(d2, head2);
        std::size_t chord = g.add_edge();
        g.place(w1, 1, {chord, 0});
        g.place(w2, 1, {chord, 1});
    }
    SpinNetwork shape = g.to_network(std::vector<EdgeLabel>(g.at.size(), 0));
    while (true) {
        if (auto labels = random_admissible_labels(shape, max_label, rng)) return g.to_network(*labels);
    }
}

}  // namespace skeinlab
