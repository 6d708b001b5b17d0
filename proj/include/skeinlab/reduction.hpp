/**
 * @file reduction.hpp
 * @brief Fast exact evaluation of planar spin networks by local recoupling.
 *
 * The reducer keeps a planar trivalent map and applies, in priority order:
 * free circles (Delta), deletion of 0-labeled edges, splitting into connected
 * components, the theta and tetrahedron base cases, bridges (zero), bubble
 * collapse, triangle-to-vertex reduction, and finally a 6j move on an edge
 * of the smallest face to shrink that face. The strategy is greedy and bounded
 * by a move budget; running out raises ReductionFailure.
 */
#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdlib>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "skeinlab/errors.hpp"
#include "skeinlab/network.hpp"
#include "skeinlab/rational.hpp"
#include "skeinlab/recoupling.hpp"

namespace skeinlab {

struct ReductionOptions {
    std::size_t move_budget = 1000;  ///< maximum number of 6j moves, summed over all branches
};

/// Counters describing one reduction run.
struct ReductionStats {
    std::size_t sixj_moves = 0;
    std::size_t bubbles = 0;
    std::size_t triangles = 0;
};

namespace detail {

/**
 * Trivalent map for the reducer. Half-edge h belongs to edge h / 2 (end h % 2)
 * and, read as a dart, leaves its own vertex along that edge.
 */
struct ReductionGraph {
    std::vector<EdgeLabel> label;
    std::vector<char> edge_alive;
    std::vector<std::array<int, 3>> rot;  // counterclockwise halves per vertex
    std::vector<char> vertex_alive;
    std::vector<EdgeLabel> circles;
    std::vector<std::pair<int, int>> where;  // half -> (vertex, slot)

    explicit ReductionGraph(const SpinNetwork& net) {
        for (const auto& e : net.edges()) {
            label.push_back(e.label);
            edge_alive.push_back(!e.closed);
            if (e.closed) circles.push_back(e.label);
        }
        for (const auto& v : net.vertices()) {
            rot.push_back({});
            for (std::size_t s = 0; s < 3; ++s)
                rot.back()[s] = static_cast<int>(2 * v.ends[s].edge) + v.ends[s].end;
            vertex_alive.push_back(1);
        }
        reindex();
    }
    ReductionGraph() = default;

    void reindex() {
        where.assign(2 * label.size(), {-1, -1});
        for (std::size_t v = 0; v < rot.size(); ++v) {
            if (!vertex_alive[v]) continue;
            for (int s = 0; s < 3; ++s) where[static_cast<std::size_t>(rot[v][static_cast<std::size_t>(s)])] = {static_cast<int>(v), s};
        }
    }

    int vertex_of(int h) const { return where[static_cast<std::size_t>(h)].first; }
    int slot_of(int h) const { return where[static_cast<std::size_t>(h)].second; }
    EdgeLabel label_of(int h) const { return label[static_cast<std::size_t>(h / 2)]; }
    int at(int v, int slot) const { return rot[static_cast<std::size_t>(v)][static_cast<std::size_t>(((slot % 3) + 3) % 3)]; }

    int next_in_face(int h) const {
        int t = h ^ 1;
        return at(vertex_of(t), slot_of(t) + 2);
    }

    std::vector<std::vector<int>> faces() const {
        std::vector<char> seen(where.size(), 0);
        std::vector<std::vector<int>> out;
        for (std::size_t h0 = 0; h0 < where.size(); ++h0) {
            if (!edge_alive[h0 / 2] || seen[h0]) continue;
            std::vector<int> face;
            for (int h = static_cast<int>(h0); !seen[static_cast<std::size_t>(h)]; h = next_in_face(h)) {
                seen[static_cast<std::size_t>(h)] = 1;
                face.push_back(h);
            }
            out.push_back(std::move(face));
        }
        return out;
    }

    std::vector<int> alive_vertices() const {
        std::vector<int> out;
        for (std::size_t v = 0; v < rot.size(); ++v)
            if (vertex_alive[v]) out.push_back(static_cast<int>(v));
        return out;
    }

    bool has_zero_edge() const {
        for (std::size_t e = 0; e < label.size(); ++e)
            if (edge_alive[e] && label[e] == 0) return true;
        return false;
    }

    /// Drop dead vertices and edges and renumber.
    ReductionGraph compacted() const {
        ReductionGraph g;
        g.circles = circles;
        std::vector<int> new_edge(label.size(), -1);
        for (std::size_t e = 0; e < label.size(); ++e) {
            if (!edge_alive[e]) continue;
            new_edge[e] = static_cast<int>(g.label.size());
            g.label.push_back(label[e]);
            g.edge_alive.push_back(1);
        }
        for (std::size_t v = 0; v < rot.size(); ++v) {
            if (!vertex_alive[v]) continue;
            std::array<int, 3> r;
            for (std::size_t s = 0; s < 3; ++s) {
                int h = rot[v][s];
                r[s] = 2 * new_edge[static_cast<std::size_t>(h / 2)] + (h % 2);
            }
            g.rot.push_back(r);
            g.vertex_alive.push_back(1);
        }
        g.reindex();
        return g;
    }

    /// Remove 0-labeled edges, fusing the two equal-label edges left at each affected vertex.
    ReductionGraph without_zero_edges() const {
        auto survives = [&](int v) {
            for (int h : rot[static_cast<std::size_t>(v)])
                if (label_of(h) == 0) return false;
            return true;
        };
        ReductionGraph g;
        g.circles = circles;
        std::map<int, int> new_vertex;
        for (int v : alive_vertices())
            if (survives(v)) {
                new_vertex[v] = static_cast<int>(g.rot.size());
                g.rot.push_back({-1, -1, -1});
                g.vertex_alive.push_back(1);
            }
        std::vector<char> used(where.size(), 0);
        // Walk from a half at a surviving vertex through dissolved vertices to the next surviving one.
        for (int v : alive_vertices()) {
            if (!survives(v)) continue;
            for (int h : rot[static_cast<std::size_t>(v)]) {
                if (used[static_cast<std::size_t>(h)]) continue;
                int cur = h;
                int terminal = -1;
                while (true) {
                    used[static_cast<std::size_t>(cur)] = used[static_cast<std::size_t>(cur ^ 1)] = 1;
                    int t = cur ^ 1;
                    int w = vertex_of(t);
                    if (survives(w)) {
                        terminal = t;
                        break;
                    }
                    int next = -1;
                    for (int k : rot[static_cast<std::size_t>(w)])
                        if (k != t && label_of(k) != 0) next = k;
                    cur = next;
                }
                int e = static_cast<int>(g.label.size());
                g.label.push_back(label_of(h));
                g.edge_alive.push_back(1);
                g.rot[static_cast<std::size_t>(new_vertex[v])][static_cast<std::size_t>(slot_of(h))] = 2 * e;
                g.rot[static_cast<std::size_t>(new_vertex[vertex_of(terminal)])][static_cast<std::size_t>(slot_of(terminal))] = 2 * e + 1;
            }
        }
        // Remaining nonzero edges run only through dissolved vertices: they close up into circles.
        for (std::size_t e = 0; e < label.size(); ++e) {
            if (!edge_alive[e] || label[e] == 0 || used[2 * e]) continue;
            int cur = static_cast<int>(2 * e);
            while (!used[static_cast<std::size_t>(cur)]) {
                used[static_cast<std::size_t>(cur)] = used[static_cast<std::size_t>(cur ^ 1)] = 1;
                int t = cur ^ 1, w = vertex_of(t);
                for (int k : rot[static_cast<std::size_t>(w)])
                    if (k != t && label_of(k) != 0) cur = k;
            }
            g.circles.push_back(label[e]);
        }
        g.reindex();
        return g;
    }

    /// Connected components as separate graphs (circles stay with the caller).
    std::vector<ReductionGraph> components() const {
        std::vector<int> comp(rot.size(), -1);
        int count = 0;
        for (int v0 : alive_vertices()) {
            if (comp[static_cast<std::size_t>(v0)] != -1) continue;
            std::vector<int> stack{v0};
            comp[static_cast<std::size_t>(v0)] = count;
            while (!stack.empty()) {
                int v = stack.back();
                stack.pop_back();
                for (int h : rot[static_cast<std::size_t>(v)]) {
                    int w = vertex_of(h ^ 1);
                    if (comp[static_cast<std::size_t>(w)] == -1) {
                        comp[static_cast<std::size_t>(w)] = count;
                        stack.push_back(w);
                    }
                }
            }
            ++count;
        }
        std::vector<ReductionGraph> out;
        for (int c = 0; c < count; ++c) {
            ReductionGraph g = *this;
            g.circles.clear();
            for (std::size_t v = 0; v < rot.size(); ++v) g.vertex_alive[v] = vertex_alive[v] && comp[v] == c;
            for (std::size_t e = 0; e < label.size(); ++e)
                g.edge_alive[e] = edge_alive[e] && comp[static_cast<std::size_t>(vertex_of(static_cast<int>(2 * e)))] == c;
            out.push_back(g.compacted());
        }
        return out;
    }
};

class Reducer {
    ReductionOptions opts_;
    ReductionStats& stats_;

  public:
    Reducer(ReductionOptions opts, ReductionStats& stats) : opts_(opts), stats_(stats) {}

    Rational evaluate(ReductionGraph g) {
        Rational coeff = 1;
        while (true) {
            for (EdgeLabel c : g.circles) coeff *= delta(c);
            g.circles.clear();
            if (g.has_zero_edge()) {
                g = g.without_zero_edges();
                continue;
            }
            auto verts = g.alive_vertices();
            if (verts.empty()) return coeff;
            auto comps = g.components();
            if (comps.size() > 1) {
                for (auto& c : comps) {
                    coeff *= evaluate(std::move(c));
                    if (coeff.is_zero()) break;
                }
                return coeff;
            }
            g = std::move(comps.front());
            verts = g.alive_vertices();

            if (verts.size() == 2) {
                if (auto t = theta_labels(g)) return coeff * theta((*t)[0], (*t)[1], (*t)[2]);
            }
            auto faces = g.faces();
            for (const auto& f : faces) {
                std::vector<int> edges;
                for (int h : f) edges.push_back(h / 2);
                std::sort(edges.begin(), edges.end());
                // An edge seen from both sides of one face is a bridge; its labels are nonzero here.
                if (std::adjacent_find(edges.begin(), edges.end()) != edges.end()) return Rational(0);
            }
            if (verts.size() == 4) {
                if (auto t = tet_labels(g)) return coeff * tet(*t);
            }

            const std::vector<int>* smallest = &faces.front();
            for (const auto& f : faces)
                if (f.size() < smallest->size()) smallest = &f;
            if (smallest->size() == 2) {
                Rational factor = collapse_bubble(g, *smallest);
                if (factor.is_zero()) return factor;
                coeff *= factor;
                continue;
            }
            if (smallest->size() == 3) {
                coeff *= collapse_triangle(g, *smallest);
                continue;
            }
            if (smallest->size() < 2) throw Error("internal consistency: loop edge survived bridge removal");
            return coeff * sixj_move(g, smallest->front());
        }
    }

  private:
    static std::optional<std::array<EdgeLabel, 3>> theta_labels(const ReductionGraph& g) {
        auto verts = g.alive_vertices();
        int u = verts[0];
        std::array<EdgeLabel, 3> l;
        for (std::size_t s = 0; s < 3; ++s) {
            int h = g.rot[static_cast<std::size_t>(u)][s];
            if (g.vertex_of(h ^ 1) == u) return std::nullopt;
            l[s] = g.label_of(h);
        }
        return l;
    }

    static std::optional<TetLabels> tet_labels(const ReductionGraph& g) {
        auto verts = g.alive_vertices();
        std::map<std::pair<int, int>, std::vector<EdgeLabel>> between;
        for (int v : verts)
            for (int h : g.rot[static_cast<std::size_t>(v)]) {
                int w = g.vertex_of(h ^ 1);
                if (v < w) between[{v, w}].push_back(g.label_of(h));
            }
        if (between.size() != 6) return std::nullopt;
        for (const auto& [k, ls] : between)
            if (ls.size() != 1) return std::nullopt;
        auto lab = [&](int a, int b) { return between.at({std::min(a, b), std::max(a, b)}).front(); };
        int A = verts[0], B = verts[1], C = verts[2], D = verts[3];
        return TetLabels{lab(B, C), lab(B, D), lab(C, D), lab(A, D), lab(A, C), lab(A, B)};
    }

    /// Bubble between u and v (two darts of a 2-face); replaced by a single edge.
    Rational collapse_bubble(ReductionGraph& g, const std::vector<int>& face) {
        ++stats_.bubbles;
        int d1 = face[0], d2 = face[1];
        int u = g.vertex_of(d1), v = g.vertex_of(d2);
        auto third = [&](int w, int a, int b) {
            for (int h : g.rot[static_cast<std::size_t>(w)])
                if (h / 2 != a / 2 && h / 2 != b / 2) return h;
            throw Error("internal consistency: bubble vertex without a third edge");
        };
        int hc = third(u, d1, d2), hd = third(v, d1, d2);
        EdgeLabel a = g.label_of(d1), b = g.label_of(d2), c = g.label_of(hc), d = g.label_of(hd);
        if (c != d) return Rational(0);
        Rational factor = theta(a, b, c) / delta(c);
        // Edge c takes over d's far end.
        int far_d = hd ^ 1;
        g.rot[static_cast<std::size_t>(g.vertex_of(far_d))][static_cast<std::size_t>(g.slot_of(far_d))] = hc;
        g.vertex_alive[static_cast<std::size_t>(u)] = g.vertex_alive[static_cast<std::size_t>(v)] = 0;
        g.edge_alive[static_cast<std::size_t>(d1 / 2)] = g.edge_alive[static_cast<std::size_t>(d2 / 2)] = 0;
        g.edge_alive[static_cast<std::size_t>(hd / 2)] = 0;
        g = g.compacted();
        return factor;
    }

    /// Triangle A -> B -> C (face on the left) shrunk to one vertex.
    Rational collapse_triangle(ReductionGraph& g, const std::vector<int>& face) {
        ++stats_.triangles;
        std::array<int, 3> vert, ext;
        for (std::size_t k = 0; k < 3; ++k) {
            int h = face[k];
            vert[k] = g.vertex_of(h);
            // Slot +1 holds the half the previous dart arrives on; the remaining slot points outward.
            ext[k] = g.at(vert[k], g.slot_of(h) + 2);
        }
        EdgeLabel x = g.label_of(face[0]), y = g.label_of(face[1]), z = g.label_of(face[2]);
        EdgeLabel a = g.label_of(ext[0]), b = g.label_of(ext[1]), c = g.label_of(ext[2]);
        Rational factor = tet(TetLabels{y, z, x, a, b, c}) / theta(a, b, c);
        for (std::size_t k = 0; k < 3; ++k) {
            g.vertex_alive[static_cast<std::size_t>(vert[k])] = 0;
            g.edge_alive[static_cast<std::size_t>(face[k] / 2)] = 0;
        }
        g.rot.push_back(ext);
        g.vertex_alive.push_back(1);
        g = g.compacted();
        return factor;
    }

    /// 6j move on the edge of dart h: the face on its left loses that edge.
    Rational sixj_move(const ReductionGraph& g, int h) {
        if (++stats_.sixj_moves > opts_.move_budget)
            throw ReductionFailure("recoupling move budget of " + std::to_string(opts_.move_budget) + " exhausted");
        const int hu = h, hv = h ^ 1;
        const int u = g.vertex_of(hu), v = g.vertex_of(hv);
        const int e1 = g.at(u, g.slot_of(hu) + 1), e2 = g.at(u, g.slot_of(hu) + 2);
        const int f1 = g.at(v, g.slot_of(hv) + 1), f2 = g.at(v, g.slot_of(hv) + 2);
        const EdgeLabel p = g.label_of(e1), q = g.label_of(e2), x = g.label_of(f1), y = g.label_of(f2);
        const EdgeLabel j = g.label_of(h);
        const EdgeLabel lo = std::max(std::abs(p - y), std::abs(q - x)), hi = std::min(p + y, q + x);

        Rational sum;
        for (EdgeLabel i = lo; i <= hi; i += 2) {
            if (!admissible(p, y, i) || !admissible(q, x, i)) continue;
            Rational c = sixj(p, q, i, x, y, j);
            if (c.is_zero()) continue;
            ReductionGraph next = g;
            next.rot[static_cast<std::size_t>(u)] = {hu, f2, e1};
            next.rot[static_cast<std::size_t>(v)] = {hv, e2, f1};
            next.label[static_cast<std::size_t>(h / 2)] = i;
            next.reindex();
            sum += c * evaluate(std::move(next));
        }
        return sum;
    }
};

}  // namespace detail

/// Exact value by recoupling; throws ReductionFailure when the move budget runs out.
inline Rational evaluate_recoupling(const SpinNetwork& net, const ReductionOptions& opts = {},
                                    ReductionStats* stats = nullptr) {
    require_evaluable(net);
    ReductionStats local;
    detail::Reducer r(opts, stats ? *stats : local);
    return r.evaluate(detail::ReductionGraph(net));
}

}  // namespace skeinlab
