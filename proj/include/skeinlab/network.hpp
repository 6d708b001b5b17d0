/**
 * @file network.hpp
 * @brief Spin networks: labeled trivalent graphs with a rotation system.
 *
 * Each vertex lists its three edge ends in counterclockwise order. Each edge
 * has two ends (0 and 1); a loop edge has both ends at the same vertex. An
 * edge flagged `closed` has no vertex at all and stands for a plain circle.
 */
#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <map>
#include <numeric>
#include <string>
#include <vector>

#include "skeinlab/errors.hpp"
#include "skeinlab/rational.hpp"
#include "skeinlab/recoupling.hpp"

namespace skeinlab {

inline constexpr std::size_t npos = static_cast<std::size_t>(-1);

struct EdgeEnd {
    std::size_t edge = npos;
    int end = 0;
    friend bool operator==(const EdgeEnd&, const EdgeEnd&) = default;
};

struct NetEdge {
    std::string id;
    EdgeLabel label = 0;
    bool closed = false;
    /// Vertex and rotation slot at each end (npos for closed edges).
    std::array<std::size_t, 2> vertex{npos, npos};
    std::array<int, 2> slot{-1, -1};
};

struct NetVertex {
    std::string id;
    std::array<EdgeEnd, 3> ends;  ///< counterclockwise
};

struct Violation {
    enum class Kind { parity, inequality } kind;
    std::string vertex;
    std::array<EdgeLabel, 3> labels;
    std::string message;
};

/// A dart walks an edge starting from end `from`.
struct Dart {
    std::size_t edge = npos;
    int from = 0;
    friend bool operator==(const Dart&, const Dart&) = default;
};

class SpinNetwork {
    std::vector<NetEdge> edges_;
    std::vector<NetVertex> vertices_;

  public:
    std::size_t add_edge(std::string id, EdgeLabel label, bool closed = false) {
        if (label < 0) throw StructuralError("edge '" + id + "' has negative label");
        edges_.push_back(NetEdge{std::move(id), label, closed, {npos, npos}, {-1, -1}});
        return edges_.size() - 1;
    }

    /// Attach a vertex with explicit edge ends in counterclockwise order.
    std::size_t add_vertex(std::string id, const std::array<EdgeEnd, 3>& ends) {
        std::size_t v = vertices_.size();
        for (int s = 0; s < 3; ++s) {
            const EdgeEnd& e = ends[static_cast<std::size_t>(s)];
            if (e.edge >= edges_.size()) throw StructuralError("vertex '" + id + "' references an unknown edge");
            if (e.end != 0 && e.end != 1) throw StructuralError("edge end must be 0 or 1");
            NetEdge& edge = edges_[e.edge];
            if (edge.closed) throw StructuralError("closed edge '" + edge.id + "' cannot meet a vertex");
            if (edge.vertex[static_cast<std::size_t>(e.end)] != npos)
                throw StructuralError("end " + std::to_string(e.end) + " of edge '" + edge.id + "' attached twice");
            edge.vertex[static_cast<std::size_t>(e.end)] = v;
            edge.slot[static_cast<std::size_t>(e.end)] = s;
        }
        vertices_.push_back(NetVertex{std::move(id), ends});
        return v;
    }

    /// Attach a vertex by edge index, assigning end 0 on first use and end 1 on second use.
    std::size_t add_vertex_auto(std::string id, const std::array<std::size_t, 3>& edges) {
        std::array<EdgeEnd, 3> ends;
        std::map<std::size_t, int> used_here;
        for (std::size_t s = 0; s < 3; ++s) {
            std::size_t e = edges[s];
            if (e >= edges_.size()) throw StructuralError("vertex '" + id + "' references an unknown edge");
            int end = edges_[e].vertex[0] == npos ? 0 : 1;
            end += used_here[e]++;
            if (end > 1) throw StructuralError("edge '" + edges_[e].id + "' used more than twice");
            ends[s] = {e, end};
        }
        return add_vertex(std::move(id), ends);
    }

    const std::vector<NetEdge>& edges() const { return edges_; }
    const std::vector<NetVertex>& vertices() const { return vertices_; }
    const NetEdge& edge(std::size_t e) const { return edges_.at(e); }
    const NetVertex& vertex(std::size_t v) const { return vertices_.at(v); }

    std::array<EdgeLabel, 3> vertex_labels(std::size_t v) const {
        const auto& ends = vertices_.at(v).ends;
        return {edges_[ends[0].edge].label, edges_[ends[1].edge].label, edges_[ends[2].edge].label};
    }

    /// Every open edge has both ends attached; closed edges have none.
    void require_well_formed() const {
        for (const auto& e : edges_) {
            if (e.closed) continue;
            if (e.vertex[0] == npos || e.vertex[1] == npos)
                throw StructuralError("edge '" + e.id + "' has a free end (open networks are not evaluable)");
        }
    }

    /// Parity and triangle-inequality violations, one entry per offending vertex.
    std::vector<Violation> validate() const {
        std::vector<Violation> out;
        for (std::size_t v = 0; v < vertices_.size(); ++v) {
            auto l = vertex_labels(v);
            if ((l[0] + l[1] + l[2]) % 2 != 0) {
                out.push_back({Violation::Kind::parity, vertices_[v].id, l,
                               "vertex '" + vertices_[v].id + "': parity violation, labels (" +
                                   std::to_string(l[0]) + "," + std::to_string(l[1]) + "," +
                                   std::to_string(l[2]) + ") have odd sum"});
            } else if (!admissible(l[0], l[1], l[2])) {
                out.push_back({Violation::Kind::inequality, vertices_[v].id, l,
                               "vertex '" + vertices_[v].id + "': inequality violation, labels (" +
                                   std::to_string(l[0]) + "," + std::to_string(l[1]) + "," +
                                   std::to_string(l[2]) + ") exceed half their sum"});
            }
        }
        return out;
    }

    /// Vertex where a dart ends.
    std::size_t head(const Dart& d) const { return edges_[d.edge].vertex[static_cast<std::size_t>(1 - d.from)]; }
    std::size_t tail(const Dart& d) const { return edges_[d.edge].vertex[static_cast<std::size_t>(d.from)]; }

    /// Next dart along the face on the left of `d`.
    Dart next_in_face(const Dart& d) const {
        const NetEdge& e = edges_[d.edge];
        std::size_t v = e.vertex[static_cast<std::size_t>(1 - d.from)];
        int s = e.slot[static_cast<std::size_t>(1 - d.from)];
        const EdgeEnd& out = vertices_[v].ends[static_cast<std::size_t>((s + 2) % 3)];
        return {out.edge, out.end};
    }

    /// Faces as dart cycles (closed edges excluded).
    std::vector<std::vector<Dart>> faces() const {
        require_well_formed();
        std::vector<std::array<bool, 2>> seen(edges_.size(), {false, false});
        std::vector<std::vector<Dart>> out;
        for (std::size_t e = 0; e < edges_.size(); ++e) {
            if (edges_[e].closed) continue;
            for (int from = 0; from < 2; ++from) {
                if (seen[e][static_cast<std::size_t>(from)]) continue;
                std::vector<Dart> face;
                Dart d{e, from};
                while (!seen[d.edge][static_cast<std::size_t>(d.from)]) {
                    seen[d.edge][static_cast<std::size_t>(d.from)] = true;
                    face.push_back(d);
                    d = next_in_face(d);
                }
                out.push_back(std::move(face));
            }
        }
        return out;
    }

    /// Connected components of the vertex graph, as a component id per vertex.
    std::vector<std::size_t> components(std::size_t* count = nullptr) const {
        std::vector<std::size_t> parent(vertices_.size());
        std::iota(parent.begin(), parent.end(), 0);
        auto find = [&](std::size_t x) {
            while (parent[x] != x) x = parent[x] = parent[parent[x]];
            return x;
        };
        for (const auto& e : edges_)
            if (!e.closed && e.vertex[0] != npos && e.vertex[1] != npos) parent[find(e.vertex[0])] = find(e.vertex[1]);
        std::map<std::size_t, std::size_t> ids;
        std::vector<std::size_t> comp(vertices_.size());
        for (std::size_t v = 0; v < vertices_.size(); ++v) {
            auto [it, inserted] = ids.try_emplace(find(v), ids.size());
            comp[v] = it->second;
        }
        if (count) *count = ids.size();
        return comp;
    }

    /// Genus-0 check via Euler's formula, V - E + F = 2 per connected component.
    bool is_planar() const {
        std::size_t comps = 0;
        components(&comps);
        long long v = static_cast<long long>(vertices_.size());
        long long e = 0;
        for (const auto& edge : edges_) e += edge.closed ? 0 : 1;
        long long f = static_cast<long long>(faces().size());
        return v - e + f == 2 * static_cast<long long>(comps);
    }

    /// Mirror image: every rotation reversed.
    SpinNetwork reflected() const {
        SpinNetwork out;
        for (const auto& e : edges_) out.add_edge(e.id, e.label, e.closed);
        for (const auto& v : vertices_) out.add_vertex(v.id, {v.ends[0], v.ends[2], v.ends[1]});
        return out;
    }

    /// Number of states, the product of label factorials.
    BigInt state_count() const {
        BigInt n = 1;
        for (const auto& e : edges_) n *= factorial(e.label);
        return n;
    }

    std::size_t total_strands() const {
        std::size_t n = 0;
        for (const auto& e : edges_) n += static_cast<std::size_t>(e.label);
        return n;
    }
};

/// Throws AdmissibilityError listing every violation, or UnsupportedError for non-planar rotations.
inline void require_evaluable(const SpinNetwork& net) {
    net.require_well_formed();
    auto violations = net.validate();
    if (!violations.empty()) {
        std::string msg;
        for (const auto& v : violations) msg += (msg.empty() ? "" : "; ") + v.message;
        throw AdmissibilityError(msg);
    }
    if (!net.is_planar())
        throw UnsupportedError("rotation system is not planar; vertex routings would force crossings between edges");
}

// Small named networks -------------------------------------------------------

/// A single circle (vertex-free edge) carrying n strands.
inline SpinNetwork make_loop_network(EdgeLabel n) {
    SpinNetwork net;
    net.add_edge("loop", n, true);
    return net;
}

/// Two vertices joined by three edges p, q, r.
inline SpinNetwork make_theta_network(EdgeLabel p, EdgeLabel q, EdgeLabel r) {
    SpinNetwork net;
    auto a = net.add_edge("p", p), b = net.add_edge("q", q), c = net.add_edge("r", r);
    net.add_vertex("u", {EdgeEnd{a, 0}, EdgeEnd{b, 0}, EdgeEnd{c, 0}});
    net.add_vertex("v", {EdgeEnd{a, 1}, EdgeEnd{c, 1}, EdgeEnd{b, 1}});
    return net;
}

/// Planar tetrahedron whose vertices carry (p,q,r), (P,Q,r), (P,q,R), (p,Q,R).
inline SpinNetwork make_tet_network(const TetLabels& t) {
    SpinNetwork net;
    auto p = net.add_edge("p", t.p), q = net.add_edge("q", t.q), r = net.add_edge("r", t.r);
    auto P = net.add_edge("P", t.P), Q = net.add_edge("Q", t.Q), R = net.add_edge("R", t.R);
    // V1 sits in the middle of the triangle V2, V3, V4 (counterclockwise).
    net.add_vertex("V1", {EdgeEnd{r, 0}, EdgeEnd{q, 0}, EdgeEnd{p, 0}});
    net.add_vertex("V2", {EdgeEnd{P, 0}, EdgeEnd{r, 1}, EdgeEnd{Q, 0}});
    net.add_vertex("V3", {EdgeEnd{R, 0}, EdgeEnd{q, 1}, EdgeEnd{P, 1}});
    net.add_vertex("V4", {EdgeEnd{Q, 1}, EdgeEnd{p, 1}, EdgeEnd{R, 1}});
    return net;
}

}  // namespace skeinlab
