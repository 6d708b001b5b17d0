/**
 * @file morse_layout.hpp
 * @brief Turn a plane curve map (degree-2 path points and degree-4 transversal
 *        crossings, with a rotation system) into a StrandDiagram drawn with
 *        monotone strands between cups, caps and crossings.
 *
 * The layout works per connected component:
 *   1. every edge is subdivided twice so the graph is simple;
 *   2. each face gets a center vertex joined to all its corners, making the
 *      graph 2-connected with triangular faces (the added edges are "ghosts");
 *   3. an st-numbering orients every edge upward;
 *   4. a sweep from s to t emits one small gadget per vertex.
 *
 * Ghost edges never produce diagram nodes; they only keep the sweep planar.
 */
#pragma once

#include <algorithm>
#include <cstddef>
#include <list>
#include <string>
#include <vector>

#include "skeinlab/diagram.hpp"
#include "skeinlab/errors.hpp"

namespace skeinlab {

/**
 * @brief Closed curves in the plane as a combinatorial map.
 *
 * Vertices have degree 2 (a point on a strand) or 4 (a crossing where slots
 * 0-2 and 1-3 belong to the same strand). Slots are listed counterclockwise.
 */
class PlaneMap {
    std::vector<int> degree_;
    std::vector<int> first_half_;
    std::vector<int> twin_;
    std::vector<int> vertex_of_;

  public:
    int add_vertex(int degree) {
        if (degree != 2 && degree != 4) throw StructuralError("plane map vertices have degree 2 or 4");
        int v = static_cast<int>(degree_.size());
        degree_.push_back(degree);
        first_half_.push_back(static_cast<int>(twin_.size()));
        for (int s = 0; s < degree; ++s) {
            twin_.push_back(-1);
            vertex_of_.push_back(v);
        }
        return v;
    }

    int half(int v, int slot) const {
        if (v < 0 || v >= vertex_count() || slot < 0 || slot >= degree_[static_cast<std::size_t>(v)])
            throw StructuralError("plane map slot out of range");
        return first_half_[static_cast<std::size_t>(v)] + slot;
    }

    void join(int v, int slot, int w, int wslot) {
        int a = half(v, slot), b = half(w, wslot);
        if (a == b) throw StructuralError("cannot join a slot to itself");
        if (twin_[static_cast<std::size_t>(a)] != -1 || twin_[static_cast<std::size_t>(b)] != -1)
            throw StructuralError("plane map slot joined twice");
        twin_[static_cast<std::size_t>(a)] = b;
        twin_[static_cast<std::size_t>(b)] = a;
    }

    int vertex_count() const { return static_cast<int>(degree_.size()); }
    int degree(int v) const { return degree_.at(static_cast<std::size_t>(v)); }
    int half_count() const { return static_cast<int>(twin_.size()); }
    int twin(int h) const { return twin_.at(static_cast<std::size_t>(h)); }
    int vertex_of(int h) const { return vertex_of_.at(static_cast<std::size_t>(h)); }
    int slot_of(int h) const { return h - first_half_[static_cast<std::size_t>(vertex_of(h))]; }

    void require_complete() const {
        for (int t : twin_)
            if (t == -1) throw StructuralError("plane map has an unjoined slot");
    }

    /// Euler characteristic check, V - E + F = 2 per connected component.
    bool is_planar() const;

    /// Monotone strand diagram of the same curves.
    StrandDiagram to_diagram() const;
};

namespace detail {

/// General rotation-system graph used while building the layout.
struct LayoutGraph {
    std::vector<std::vector<int>> rot;  // counterclockwise half-edges per vertex
    std::vector<int> twin, vertex_of;
    std::vector<bool> strand;       // half-edge lies on a strand (not a ghost)
    std::vector<int> strand_degree;  // 0, 2 or 4

    int add_vertex(int sdeg) {
        rot.emplace_back();
        strand_degree.push_back(sdeg);
        return static_cast<int>(rot.size()) - 1;
    }
    int add_half(int v, bool is_strand) {
        twin.push_back(-1);
        vertex_of.push_back(v);
        strand.push_back(is_strand);
        return static_cast<int>(twin.size()) - 1;
    }
    void pair(int a, int b) {
        twin[static_cast<std::size_t>(a)] = b;
        twin[static_cast<std::size_t>(b)] = a;
    }
    int other(int h) const { return vertex_of[static_cast<std::size_t>(twin[static_cast<std::size_t>(h)])]; }

    /// Index of every half-edge inside its vertex rotation.
    std::vector<int> rotation_index() const {
        std::vector<int> idx(twin.size(), -1);
        for (const auto& r : rot)
            for (std::size_t i = 0; i < r.size(); ++i) idx[static_cast<std::size_t>(r[i])] = static_cast<int>(i);
        return idx;
    }

    /// Faces as half-edge cycles; the face lies to the left of each half-edge.
    std::vector<std::vector<int>> faces() const {
        auto idx = rotation_index();
        std::vector<bool> seen(twin.size(), false);
        std::vector<std::vector<int>> out;
        for (std::size_t h0 = 0; h0 < twin.size(); ++h0) {
            if (seen[h0]) continue;
            std::vector<int> face;
            int h = static_cast<int>(h0);
            while (!seen[static_cast<std::size_t>(h)]) {
                seen[static_cast<std::size_t>(h)] = true;
                face.push_back(h);
                int g = twin[static_cast<std::size_t>(h)];
                const auto& r = rot[static_cast<std::size_t>(vertex_of[static_cast<std::size_t>(g)])];
                int i = idx[static_cast<std::size_t>(g)];
                h = r[static_cast<std::size_t>((i + static_cast<int>(r.size()) - 1) % static_cast<int>(r.size()))];
            }
            out.push_back(std::move(face));
        }
        return out;
    }

    std::vector<int> components(int* count) const {
        std::vector<int> comp(rot.size(), -1);
        int c = 0;
        for (std::size_t v0 = 0; v0 < rot.size(); ++v0) {
            if (comp[v0] != -1) continue;
            std::vector<int> stack{static_cast<int>(v0)};
            comp[v0] = c;
            while (!stack.empty()) {
                int v = stack.back();
                stack.pop_back();
                for (int h : rot[static_cast<std::size_t>(v)]) {
                    int w = other(h);
                    if (comp[static_cast<std::size_t>(w)] == -1) {
                        comp[static_cast<std::size_t>(w)] = c;
                        stack.push_back(w);
                    }
                }
            }
            ++c;
        }
        *count = c;
        return comp;
    }
};

inline LayoutGraph graph_from_map(const PlaneMap& m) {
    LayoutGraph g;
    for (int v = 0; v < m.vertex_count(); ++v) {
        g.add_vertex(m.degree(v));
        for (int s = 0; s < m.degree(v); ++s) g.rot.back().push_back(g.add_half(v, true));
    }
    for (int h = 0; h < m.half_count(); ++h) g.twin[static_cast<std::size_t>(h)] = m.twin(h);
    return g;
}

/// Replace every edge by a path of three edges.
inline LayoutGraph subdivided(const LayoutGraph& in) {
    LayoutGraph g = in;
    const std::size_t halves = in.twin.size();
    for (std::size_t h = 0; h < halves; ++h) {
        int t = in.twin[h];
        if (static_cast<int>(h) > t) continue;
        int a = g.add_vertex(2), b = g.add_vertex(2);
        int a0 = g.add_half(a, true), a1 = g.add_half(a, true);
        int b0 = g.add_half(b, true), b1 = g.add_half(b, true);
        g.rot[static_cast<std::size_t>(a)] = {a0, a1};
        g.rot[static_cast<std::size_t>(b)] = {b0, b1};
        g.pair(static_cast<int>(h), a0);
        g.pair(a1, b0);
        g.pair(b1, t);
    }
    return g;
}

/// Add a ghost vertex inside every face, joined to each of its corners.
inline LayoutGraph stellated(const LayoutGraph& in) {
    LayoutGraph g = in;
    auto faces = in.faces();
    // corner_after[h]: ghost half-edge inserted right after h (counterclockwise) at h's vertex.
    std::vector<int> corner_after(in.twin.size(), -1);
    for (const auto& face : faces) {
        int f = g.add_vertex(0);
        for (int h : face) {
            int v = in.vertex_of[static_cast<std::size_t>(h)];
            int at_v = g.add_half(v, false);
            int at_f = g.add_half(f, false);
            g.pair(at_v, at_f);
            g.rot[static_cast<std::size_t>(f)].push_back(at_f);
            corner_after[static_cast<std::size_t>(h)] = at_v;
        }
    }
    for (std::size_t v = 0; v < in.rot.size(); ++v) {
        std::vector<int> r;
        for (int h : in.rot[v]) {
            r.push_back(h);
            r.push_back(corner_after[static_cast<std::size_t>(h)]);
        }
        g.rot[v] = std::move(r);
    }
    return g;
}

/**
 * st-numbering of a 2-connected component, given the half-edge `st` at s
 * leading to t. Returns the vertices from s to t.
 */
inline std::vector<int> st_order(const LayoutGraph& g, int st_half) {
    const int s = g.vertex_of[static_cast<std::size_t>(st_half)];
    const int t = g.other(st_half);
    const std::size_t n = g.rot.size();
    std::vector<int> pre(n, -1), parent(n, -1), low(n, -1), preorder;

    struct Frame {
        int v, in_half;
        std::size_t next;
    };
    std::vector<std::vector<int>> adj(n);
    for (std::size_t v = 0; v < n; ++v) adj[v] = g.rot[v];
    {
        auto& a = adj[static_cast<std::size_t>(s)];
        std::rotate(a.begin(), std::find(a.begin(), a.end(), st_half), a.end());
    }
    std::vector<Frame> stack;
    pre[static_cast<std::size_t>(s)] = 0;
    low[static_cast<std::size_t>(s)] = s;
    preorder.push_back(s);
    stack.push_back({s, -1, 0});
    int counter = 1;
    while (!stack.empty()) {
        Frame& fr = stack.back();
        const auto& a = adj[static_cast<std::size_t>(fr.v)];
        if (fr.next == a.size()) {
            int v = fr.v;
            stack.pop_back();
            if (!stack.empty()) {
                int p = stack.back().v;
                if (pre[static_cast<std::size_t>(low[static_cast<std::size_t>(v)])] <
                    pre[static_cast<std::size_t>(low[static_cast<std::size_t>(p)])])
                    low[static_cast<std::size_t>(p)] = low[static_cast<std::size_t>(v)];
            }
            continue;
        }
        int h = a[fr.next++];
        if (g.twin[static_cast<std::size_t>(h)] == fr.in_half) continue;
        int w = g.other(h);
        if (pre[static_cast<std::size_t>(w)] == -1) {
            pre[static_cast<std::size_t>(w)] = counter++;
            low[static_cast<std::size_t>(w)] = w;
            parent[static_cast<std::size_t>(w)] = fr.v;
            preorder.push_back(w);
            stack.push_back({w, g.twin[static_cast<std::size_t>(h)], 0});
        } else if (pre[static_cast<std::size_t>(w)] < pre[static_cast<std::size_t>(low[static_cast<std::size_t>(fr.v)])]) {
            low[static_cast<std::size_t>(fr.v)] = w;
        }
    }

    std::list<int> order{s, t};
    std::vector<std::list<int>::iterator> where(n);
    where[static_cast<std::size_t>(s)] = order.begin();
    where[static_cast<std::size_t>(t)] = std::next(order.begin());
    std::vector<int> sign(n, 1);
    sign[static_cast<std::size_t>(s)] = -1;
    for (int v : preorder) {
        if (v == s || v == t) continue;
        int p = parent[static_cast<std::size_t>(v)];
        if (sign[static_cast<std::size_t>(low[static_cast<std::size_t>(v)])] == -1) {
            where[static_cast<std::size_t>(v)] = order.insert(where[static_cast<std::size_t>(p)], v);
            sign[static_cast<std::size_t>(p)] = 1;
        } else {
            where[static_cast<std::size_t>(v)] = order.insert(std::next(where[static_cast<std::size_t>(p)]), v);
            sign[static_cast<std::size_t>(p)] = -1;
        }
    }
    return {order.begin(), order.end()};
}

}  // namespace detail

inline bool PlaneMap::is_planar() const {
    require_complete();
    auto g = detail::graph_from_map(*this);
    int comps = 0;
    g.components(&comps);
    long long v = vertex_count(), e = half_count() / 2, f = static_cast<long long>(g.faces().size());
    return v - e + f == 2LL * comps;
}

inline StrandDiagram PlaneMap::to_diagram() const {
    if (!is_planar()) throw UnsupportedError("curve map is not planar");
    using detail::LayoutGraph;
    LayoutGraph g = detail::stellated(detail::subdivided(detail::graph_from_map(*this)));
    auto idx = g.rotation_index();
    int comps = 0;
    auto comp = g.components(&comps);

    StrandDiagram d;
    std::vector<int> rank(g.rot.size(), -1);
    // Open output port travelling up each strand edge, keyed by the edge's lower half.
    std::vector<PortId> open(g.twin.size(), no_port);

    for (int c = 0; c < comps; ++c) {
        // A strand edge between two subdivision points; both ends have strand degree 2.
        int st = -1;
        for (std::size_t h = 0; h < g.twin.size() && st == -1; ++h) {
            if (!g.strand[h] || comp[static_cast<std::size_t>(g.vertex_of[h])] != c) continue;
            if (g.strand_degree[static_cast<std::size_t>(g.vertex_of[h])] == 0) continue;
            st = static_cast<int>(h);
        }
        if (st == -1) continue;  // a lone face vertex cannot occur, but nothing to draw anyway
        auto order = detail::st_order(g, st);
        for (std::size_t i = 0; i < order.size(); ++i) rank[static_cast<std::size_t>(order[i])] = static_cast<int>(i);

        const int s = order.front(), t = order.back();
        std::vector<int> active;  // lower half-edges of edges crossing the sweep line, left to right
        for (int v : order) {
            const auto& r = g.rot[static_cast<std::size_t>(v)];
            const int deg = static_cast<int>(r.size());
            auto is_out = [&](int h) { return rank[static_cast<std::size_t>(g.other(h))] > rank[static_cast<std::size_t>(v)]; };
            std::vector<int> ins, outs;  // left to right
            if (v == s) {
                int i0 = idx[static_cast<std::size_t>(st)];
                for (int k = 0; k < deg; ++k) outs.push_back(r[static_cast<std::size_t>(((i0 - k) % deg + deg) % deg)]);
            } else if (v == t) {
                int i0 = idx[static_cast<std::size_t>(g.twin[static_cast<std::size_t>(st)])];
                for (int k = 0; k < deg; ++k) ins.push_back(r[static_cast<std::size_t>((i0 + k) % deg)]);
            } else {
                int start = -1;
                for (int i = 0; i < deg; ++i)
                    if (!is_out(r[static_cast<std::size_t>(i)]) && is_out(r[static_cast<std::size_t>((i + deg - 1) % deg)])) {
                        if (start != -1) throw Error("internal consistency: st orientation is not bipolar");
                        start = i;
                    }
                if (start == -1) throw Error("internal consistency: st orientation is not bipolar");
                int k = 0;
                while (k < deg && !is_out(r[static_cast<std::size_t>((start + k) % deg)])) {
                    ins.push_back(r[static_cast<std::size_t>((start + k) % deg)]);
                    ++k;
                }
                for (int j = 1; j <= deg - k; ++j) outs.push_back(r[static_cast<std::size_t>(((start - j) % deg + deg) % deg)]);
            }

            // Locate the incoming edges on the sweep line.
            std::size_t at = active.size();
            if (!ins.empty()) {
                int lower0 = g.twin[static_cast<std::size_t>(ins.front())];
                auto it = std::find(active.begin(), active.end(), lower0);
                if (it == active.end()) throw Error("internal consistency: edge missing from sweep line");
                at = static_cast<std::size_t>(it - active.begin());
                for (std::size_t k = 0; k < ins.size(); ++k)
                    if (at + k >= active.size() || active[at + k] != g.twin[static_cast<std::size_t>(ins[k])])
                        throw Error("internal consistency: incoming edges are not contiguous on the sweep line");
            } else if (v != s) {
                throw Error("internal consistency: vertex without incoming edges");
            }

            std::vector<PortId> in_ports;
            std::vector<int> out_strands;
            for (int h : ins)
                if (g.strand[static_cast<std::size_t>(h)]) in_ports.push_back(open[static_cast<std::size_t>(g.twin[static_cast<std::size_t>(h)])]);
            for (int h : outs)
                if (g.strand[static_cast<std::size_t>(h)]) out_strands.push_back(h);

            std::vector<PortId> out_ports;
            const std::size_t ni = in_ports.size(), no = out_strands.size();
            auto link = [&](PortId from, NodeId node, int slot) { d.connect(from, d.port(node, slot)); };
            if (ni + no == 2) {
                if (ni == 1) {
                    out_ports = {in_ports[0]};
                } else if (no == 2) {
                    NodeId n = d.add_node(NodeKind::cup);
                    out_ports = {d.port(n, 0), d.port(n, 1)};
                } else {
                    NodeId n = d.add_node(NodeKind::cap);
                    link(in_ports[0], n, 0);
                    link(in_ports[1], n, 1);
                }
            } else if (ni + no == 4) {
                if (ni == 2) {
                    NodeId x = d.add_node(NodeKind::crossing);
                    link(in_ports[0], x, 0);
                    link(in_ports[1], x, 1);
                    out_ports = {d.port(x, 2), d.port(x, 3)};
                } else if (ni == 0) {
                    NodeId a = d.add_node(NodeKind::cup), b = d.add_node(NodeKind::cup);
                    NodeId x = d.add_node(NodeKind::crossing);
                    d.connect(d.port(a, 1), d.port(x, 0));
                    d.connect(d.port(b, 0), d.port(x, 1));
                    out_ports = {d.port(a, 0), d.port(x, 2), d.port(x, 3), d.port(b, 1)};
                } else if (ni == 4) {
                    NodeId x = d.add_node(NodeKind::crossing);
                    link(in_ports[1], x, 0);
                    link(in_ports[2], x, 1);
                    NodeId c1 = d.add_node(NodeKind::cap), c2 = d.add_node(NodeKind::cap);
                    link(in_ports[0], c1, 0);
                    d.connect(d.port(x, 2), d.port(c1, 1));
                    d.connect(d.port(x, 3), d.port(c2, 0));
                    link(in_ports[3], c2, 1);
                } else if (ni == 1) {
                    NodeId cup = d.add_node(NodeKind::cup), x = d.add_node(NodeKind::crossing);
                    link(in_ports[0], x, 0);
                    d.connect(d.port(cup, 0), d.port(x, 1));
                    out_ports = {d.port(x, 2), d.port(x, 3), d.port(cup, 1)};
                } else {
                    NodeId x = d.add_node(NodeKind::crossing), cap = d.add_node(NodeKind::cap);
                    link(in_ports[0], x, 0);
                    link(in_ports[1], x, 1);
                    d.connect(d.port(x, 3), d.port(cap, 0));
                    link(in_ports[2], cap, 1);
                    out_ports = {d.port(x, 2)};
                }
            } else if (ni + no != 0) {
                throw Error("internal consistency: strand degree " + std::to_string(ni + no) + " in layout");
            }
            for (std::size_t k = 0; k < no; ++k) open[static_cast<std::size_t>(out_strands[k])] = out_ports[k];

            active.erase(active.begin() + static_cast<std::ptrdiff_t>(at),
                         active.begin() + static_cast<std::ptrdiff_t>(at + ins.size()));
            active.insert(active.begin() + static_cast<std::ptrdiff_t>(at), outs.begin(), outs.end());
        }
        if (!active.empty()) throw Error("internal consistency: sweep ended with open edges");
    }
    d.require_closed();
    return d;
}

}  // namespace skeinlab
