/**
 * @file diagram.hpp
 * @brief Closed planar strand diagrams and their two independent evaluations.
 *
 * A StrandDiagram is a set of generator nodes (cup, cap, crossing, through)
 * whose ports are wired in pairs. The page is oriented upward: a cup opens two
 * strand ends going up, a cap closes two strand ends coming from below. Every
 * wire joins an upper (output) port to a lower (input) port.
 *
 * contract() is a genuine tensor contraction with
 *
 *     cap  omega = [[0, 1], [-1, 0]]      cup  Omega = [[0, -1], [1, 0]]
 *
 * and crossings acting as plain index transpositions. loop_value() ignores
 * the matrices entirely and applies the loop-sign rule: every loop passing an
 * even number of distinct crossings contributes -2, every odd one +2.
 */
#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "skeinlab/errors.hpp"
#include "skeinlab/rational.hpp"

namespace skeinlab {

enum class NodeKind { cup, cap, crossing, through };

inline const char* to_string(NodeKind k) {
    switch (k) {
        case NodeKind::cup: return "cup";
        case NodeKind::cap: return "cap";
        case NodeKind::crossing: return "crossing";
        case NodeKind::through: return "through";
    }
    return "?";
}

inline NodeKind parse_node_kind(const std::string& s) {
    if (s == "cup") return NodeKind::cup;
    if (s == "cap") return NodeKind::cap;
    if (s == "crossing") return NodeKind::crossing;
    if (s == "through") return NodeKind::through;
    throw StructuralError("unknown node kind '" + s + "'");
}

/// Number of ports of each node kind.
constexpr int port_count(NodeKind k) {
    switch (k) {
        case NodeKind::cup:
        case NodeKind::cap:
        case NodeKind::through: return 2;
        case NodeKind::crossing: return 4;
    }
    return 0;
}

/**
 * Port layout per kind (slot order):
 *   cup      : out_left, out_right
 *   cap      : in_left, in_right
 *   crossing : in_left, in_right, out_left, out_right
 *   through  : in, out
 */
constexpr bool is_output_slot(NodeKind k, int slot) {
    switch (k) {
        case NodeKind::cup: return true;
        case NodeKind::cap: return false;
        case NodeKind::crossing: return slot >= 2;
        case NodeKind::through: return slot == 1;
    }
    return false;
}

/// The slot a strand leaves through after entering a node at `slot`.
constexpr int partner_slot(NodeKind k, int slot) {
    switch (k) {
        case NodeKind::cup:
        case NodeKind::cap:
        case NodeKind::through: return 1 - slot;
        case NodeKind::crossing:
            // in_left -> out_right, in_right -> out_left
            switch (slot) {
                case 0: return 3;
                case 1: return 2;
                case 2: return 1;
                default: return 0;
            }
    }
    return 0;
}

using PortId = std::size_t;
using NodeId = std::size_t;
inline constexpr std::size_t no_port = static_cast<std::size_t>(-1);

struct Loop {
    /// Ports in traversal order (each entry is the port through which the loop enters a node).
    std::vector<PortId> entry_ports;
    /// Distinct crossing nodes the loop passes (a self-crossing counts once).
    std::size_t crossing_incidence = 0;
};

struct LoopDecomposition {
    std::vector<Loop> loops;
    /// Loop index per port.
    std::vector<std::size_t> loop_of_port;
};

class StrandDiagram {
    std::vector<NodeKind> kinds_;
    std::vector<PortId> first_port_;
    std::vector<NodeId> node_of_port_;
    std::vector<PortId> mate_;

  public:
    NodeId add_node(NodeKind kind) {
        NodeId id = kinds_.size();
        kinds_.push_back(kind);
        first_port_.push_back(node_of_port_.size());
        for (int s = 0; s < port_count(kind); ++s) {
            node_of_port_.push_back(id);
            mate_.push_back(no_port);
        }
        return id;
    }

    PortId port(NodeId node, int slot) const {
        if (node >= kinds_.size() || slot < 0 || slot >= port_count(kinds_[node]))
            throw StructuralError("port slot out of range");
        return first_port_[node] + static_cast<std::size_t>(slot);
    }

    /// Wire an output port to an input port (either argument order).
    void connect(PortId a, PortId b) {
        if (a >= mate_.size() || b >= mate_.size()) throw StructuralError("unknown port");
        if (a == b) throw StructuralError("port wired to itself");
        if (mate_[a] != no_port || mate_[b] != no_port) throw StructuralError("port wired twice");
        if (is_output(a) == is_output(b))
            throw StructuralError(std::string("wire must join an output port to an input port (") +
                                  (is_output(a) ? "output-output" : "input-input") + ")");
        mate_[a] = b;
        mate_[b] = a;
    }

    std::size_t node_count() const { return kinds_.size(); }
    std::size_t port_total() const { return mate_.size(); }
    NodeKind kind(NodeId n) const { return kinds_.at(n); }
    NodeId node_of(PortId p) const { return node_of_port_.at(p); }
    int slot_of(PortId p) const { return static_cast<int>(p - first_port_[node_of_port_[p]]); }
    PortId mate(PortId p) const { return mate_.at(p); }
    bool is_output(PortId p) const { return is_output_slot(kinds_[node_of_port_[p]], slot_of(p)); }
    /// The other port of the same node on the same strand.
    PortId partner(PortId p) const {
        NodeId n = node_of_port_[p];
        return first_port_[n] + static_cast<std::size_t>(partner_slot(kinds_[n], slot_of(p)));
    }

    std::size_t crossing_count() const {
        return static_cast<std::size_t>(std::count(kinds_.begin(), kinds_.end(), NodeKind::crossing));
    }

    bool is_closed() const {
        return std::none_of(mate_.begin(), mate_.end(), [](PortId m) { return m == no_port; });
    }

    void require_closed() const {
        for (PortId p = 0; p < mate_.size(); ++p)
            if (mate_[p] == no_port)
                throw StructuralError("open diagram: port " + std::to_string(p) + " of node " +
                                      std::to_string(node_of_port_[p]) + " (" +
                                      to_string(kinds_[node_of_port_[p]]) + ") is not wired");
    }

    /// Wires as (output port, input port) pairs, ordered by output port.
    std::vector<std::pair<PortId, PortId>> wires() const {
        std::vector<std::pair<PortId, PortId>> out;
        for (PortId p = 0; p < mate_.size(); ++p)
            if (is_output(p) && mate_[p] != no_port) out.emplace_back(p, mate_[p]);
        return out;
    }
};

/// Loops in a deterministic order (by smallest port on the loop).
inline LoopDecomposition decompose_loops(const StrandDiagram& d) {
    d.require_closed();
    LoopDecomposition out;
    out.loop_of_port.assign(d.port_total(), no_port);
    for (PortId start = 0; start < d.port_total(); ++start) {
        if (out.loop_of_port[start] != no_port) continue;
        std::size_t id = out.loops.size();
        Loop loop;
        // Enter the node at `start` coming from its mate, walk until we return.
        PortId p = start;
        do {
            loop.entry_ports.push_back(p);
            PortId q = d.partner(p);
            out.loop_of_port[p] = id;
            out.loop_of_port[q] = id;
            p = d.mate(q);
        } while (p != start);
        out.loops.push_back(std::move(loop));
    }
    // Crossing incidence: distinct crossings per loop.
    std::vector<std::vector<NodeId>> seen(out.loops.size());
    for (NodeId n = 0; n < d.node_count(); ++n) {
        if (d.kind(n) != NodeKind::crossing) continue;
        std::size_t a = out.loop_of_port[d.port(n, 0)];
        std::size_t b = out.loop_of_port[d.port(n, 1)];
        out.loops[a].crossing_incidence += 1;
        if (b != a) out.loops[b].crossing_incidence += 1;
    }
    return out;
}

/// Loop-sign rule: product over loops of (-2 if even crossing incidence, else +2).
inline Rational loop_value(const StrandDiagram& d) {
    auto dec = decompose_loops(d);
    BigInt value = 1;
    for (const auto& loop : dec.loops) value *= (loop.crossing_incidence % 2 == 0) ? -2 : 2;
    return Rational(value);
}

namespace detail {

/// Dense factor over binary variables; bit i of the table index is scope[i].
struct Factor {
    std::vector<std::size_t> scope;
    std::vector<BigInt> table;
};

inline Factor multiply_and_sum_out(const std::vector<const Factor*>& factors, std::size_t var) {
    std::vector<std::size_t> scope;
    for (const Factor* f : factors) scope.insert(scope.end(), f->scope.begin(), f->scope.end());
    std::sort(scope.begin(), scope.end());
    scope.erase(std::unique(scope.begin(), scope.end()), scope.end());
    auto var_it = std::find(scope.begin(), scope.end(), var);
    std::size_t var_bit = static_cast<std::size_t>(var_it - scope.begin());

    // Position of each factor variable inside the joint scope.
    std::vector<std::vector<std::size_t>> positions;
    for (const Factor* f : factors) {
        std::vector<std::size_t> pos;
        for (std::size_t v : f->scope)
            pos.push_back(static_cast<std::size_t>(std::lower_bound(scope.begin(), scope.end(), v) - scope.begin()));
        positions.push_back(std::move(pos));
    }

    Factor out;
    for (std::size_t v : scope)
        if (v != var) out.scope.push_back(v);
    out.table.assign(std::size_t{1} << out.scope.size(), BigInt(0));

    const std::size_t joint = std::size_t{1} << scope.size();
    for (std::size_t assignment = 0; assignment < joint; ++assignment) {
        BigInt term = 1;
        for (std::size_t f = 0; f < factors.size() && term != 0; ++f) {
            std::size_t idx = 0;
            for (std::size_t b = 0; b < positions[f].size(); ++b)
                if (assignment >> positions[f][b] & 1U) idx |= std::size_t{1} << b;
            const BigInt& entry = factors[f]->table[idx];
            if (entry == 0) term = 0;
            else if (entry != 1) term *= entry;
        }
        if (term == 0) continue;
        // Drop the summed bit to index the output table.
        std::size_t low = assignment & ((std::size_t{1} << var_bit) - 1);
        std::size_t high = assignment >> (var_bit + 1);
        out.table[low | (high << var_bit)] += term;
    }
    return out;
}

}  // namespace detail

/**
 * @brief Exact tensor contraction of a closed diagram.
 *
 * Each wire is a binary index; nodes are factors (Omega at cups, omega at
 * caps, deltas at throughs and crossings). Variables are eliminated greedily
 * by smallest joint scope, so cost is exponential only in the diagram width.
 */
inline Rational contract(const StrandDiagram& d) {
    d.require_closed();
    // Wire index per port.
    std::vector<std::size_t> wire_of(d.port_total(), no_port);
    std::size_t wire_count = 0;
    for (PortId p = 0; p < d.port_total(); ++p) {
        if (wire_of[p] != no_port) continue;
        wire_of[p] = wire_count;
        wire_of[d.mate(p)] = wire_count;
        ++wire_count;
    }

    using detail::Factor;
    std::vector<Factor> factors;
    auto make_factor = [&](std::vector<std::size_t> vars, auto&& entry) {
        // Collapse repeated variables (a cup wired straight to a cap, etc.).
        std::vector<std::size_t> scope = vars;
        std::sort(scope.begin(), scope.end());
        scope.erase(std::unique(scope.begin(), scope.end()), scope.end());
        Factor f;
        f.scope = scope;
        f.table.assign(std::size_t{1} << scope.size(), BigInt(0));
        for (std::size_t idx = 0; idx < f.table.size(); ++idx) {
            std::vector<int> values(vars.size());
            for (std::size_t i = 0; i < vars.size(); ++i) {
                auto pos = std::lower_bound(scope.begin(), scope.end(), vars[i]) - scope.begin();
                values[i] = static_cast<int>(idx >> pos & 1U);
            }
            f.table[idx] = entry(values);
        }
        factors.push_back(std::move(f));
    };

    static constexpr int omega[2][2] = {{0, 1}, {-1, 0}};
    static constexpr int Omega[2][2] = {{0, -1}, {1, 0}};
    for (NodeId n = 0; n < d.node_count(); ++n) {
        std::vector<std::size_t> vars;
        for (int s = 0; s < port_count(d.kind(n)); ++s) vars.push_back(wire_of[d.port(n, s)]);
        switch (d.kind(n)) {
            case NodeKind::cup:
                make_factor(vars, [](const std::vector<int>& v) { return BigInt(Omega[v[0]][v[1]]); });
                break;
            case NodeKind::cap:
                make_factor(vars, [](const std::vector<int>& v) { return BigInt(omega[v[0]][v[1]]); });
                break;
            case NodeKind::through:
                make_factor(vars, [](const std::vector<int>& v) { return BigInt(v[0] == v[1] ? 1 : 0); });
                break;
            case NodeKind::crossing:
                make_factor(vars, [](const std::vector<int>& v) {
                    return BigInt(v[0] == v[3] && v[1] == v[2] ? 1 : 0);
                });
                break;
        }
    }

    std::vector<bool> alive(factors.size(), true);
    std::vector<bool> eliminated(wire_count, false);
    for (std::size_t step = 0; step < wire_count; ++step) {
        // Pick the variable whose elimination creates the smallest joint scope.
        std::size_t best_var = no_port, best_size = no_port;
        for (std::size_t v = 0; v < wire_count; ++v) {
            if (eliminated[v]) continue;
            std::vector<std::size_t> joint;
            for (std::size_t f = 0; f < factors.size(); ++f) {
                if (!alive[f]) continue;
                const auto& sc = factors[f].scope;
                if (std::binary_search(sc.begin(), sc.end(), v)) joint.insert(joint.end(), sc.begin(), sc.end());
            }
            std::sort(joint.begin(), joint.end());
            joint.erase(std::unique(joint.begin(), joint.end()), joint.end());
            if (joint.size() < best_size) {
                best_size = joint.size();
                best_var = v;
            }
        }
        std::vector<const Factor*> involved;
        std::vector<std::size_t> involved_idx;
        for (std::size_t f = 0; f < factors.size(); ++f) {
            if (!alive[f]) continue;
            const auto& sc = factors[f].scope;
            if (std::binary_search(sc.begin(), sc.end(), best_var)) {
                involved.push_back(&factors[f]);
                involved_idx.push_back(f);
            }
        }
        Factor merged = detail::multiply_and_sum_out(involved, best_var);
        for (std::size_t f : involved_idx) alive[f] = false;
        eliminated[best_var] = true;
        factors.push_back(std::move(merged));
        alive.push_back(true);
    }

    BigInt result = 1;
    for (std::size_t f = 0; f < factors.size(); ++f)
        if (alive[f]) result *= factors[f].table.at(0);
    return Rational(result);
}

namespace detail {

/// Copy `d`, replacing node `target` by whatever `expand` adds. `expand`
/// receives the new diagram and returns the new port for each old slot of
/// `target`; any extra internal wiring it needs it performs itself.
template <class Expand>
StrandDiagram rebuild_replacing(const StrandDiagram& d, NodeId target, Expand&& expand) {
    StrandDiagram out;
    std::vector<PortId> map(d.port_total(), no_port);
    for (NodeId n = 0; n < d.node_count(); ++n) {
        if (n == target) {
            std::vector<PortId> slots = expand(out);
            for (int s = 0; s < port_count(d.kind(n)); ++s) map[d.port(n, s)] = slots.at(static_cast<std::size_t>(s));
            continue;
        }
        NodeId m = out.add_node(d.kind(n));
        for (int s = 0; s < port_count(d.kind(n)); ++s) map[d.port(n, s)] = out.port(m, s);
    }
    for (auto [a, b] : d.wires()) out.connect(map[a], map[b]);
    return out;
}

}  // namespace detail

enum class Smoothing {
    vertical,    ///< in_left-out_left and in_right-out_right (two through strands)
    horizontal,  ///< cap on the two inputs, cup on the two outputs
};

/// Replace one crossing by one of its smoothings.
inline StrandDiagram smooth_crossing(const StrandDiagram& d, NodeId crossing, Smoothing how) {
    if (d.kind(crossing) != NodeKind::crossing) throw StructuralError("node is not a crossing");
    return detail::rebuild_replacing(d, crossing, [how](StrandDiagram& out) {
        if (how == Smoothing::vertical) {
            NodeId l = out.add_node(NodeKind::through);
            NodeId r = out.add_node(NodeKind::through);
            return std::vector<PortId>{out.port(l, 0), out.port(r, 0), out.port(l, 1), out.port(r, 1)};
        }
        NodeId cap = out.add_node(NodeKind::cap);
        NodeId cup = out.add_node(NodeKind::cup);
        return std::vector<PortId>{out.port(cap, 0), out.port(cap, 1), out.port(cup, 0), out.port(cup, 1)};
    });
}

struct SkeinTerm {
    Rational coefficient;
    StrandDiagram diagram;
};

/**
 * Resolve every crossing into the sum of its two smoothings, both with
 * coefficient +1. The result has no crossings; 2^c terms for c crossings.
 */
inline std::vector<SkeinTerm> skein_resolve(const StrandDiagram& d) {
    std::vector<SkeinTerm> terms{{Rational(1), d}};
    while (true) {
        bool changed = false;
        std::vector<SkeinTerm> next;
        for (auto& term : terms) {
            std::optional<NodeId> x;
            for (NodeId n = 0; n < term.diagram.node_count(); ++n)
                if (term.diagram.kind(n) == NodeKind::crossing) {
                    x = n;
                    break;
                }
            if (!x) {
                next.push_back(std::move(term));
                continue;
            }
            changed = true;
            next.push_back({term.coefficient, smooth_crossing(term.diagram, *x, Smoothing::vertical)});
            next.push_back({term.coefficient, smooth_crossing(term.diagram, *x, Smoothing::horizontal)});
        }
        terms = std::move(next);
        if (!changed) return terms;
    }
}

/// Weighted sum of contract over a formal sum of diagrams.
inline Rational contract_sum(const std::vector<SkeinTerm>& terms) {
    Rational total;
    for (const auto& t : terms) total += t.coefficient * contract(t.diagram);
    return total;
}

/**
 * Insert a kink (cup, crossing, cap) on the first wire of loop `loop_id`
 * (loops numbered as in decompose_loops). The contraction changes sign.
 */
inline StrandDiagram apply_twist(const StrandDiagram& d, std::size_t loop_id) {
    auto dec = decompose_loops(d);
    if (loop_id >= dec.loops.size())
        throw StructuralError("unknown loop id " + std::to_string(loop_id) + " (diagram has " +
                              std::to_string(dec.loops.size()) + " loops)");
    // First wire on the loop, oriented output -> input.
    PortId out_port = no_port;
    for (PortId p : dec.loops[loop_id].entry_ports) {
        PortId from = d.mate(p);
        if (d.is_output(from)) {
            out_port = from;
            break;
        }
        if (d.is_output(p)) {
            out_port = p;
            break;
        }
    }
    PortId in_port = d.mate(out_port);

    StrandDiagram out;
    std::vector<PortId> map(d.port_total(), no_port);
    for (NodeId n = 0; n < d.node_count(); ++n) {
        NodeId m = out.add_node(d.kind(n));
        for (int s = 0; s < port_count(d.kind(n)); ++s) map[d.port(n, s)] = out.port(m, s);
    }
    for (auto [a, b] : d.wires())
        if (a != out_port) out.connect(map[a], map[b]);
    // Strand rises from out_port, crosses a freshly opened cup to its right, and
    // the cup's right end closes over with the original strand.
    NodeId cup = out.add_node(NodeKind::cup);
    NodeId x = out.add_node(NodeKind::crossing);
    NodeId cap = out.add_node(NodeKind::cap);
    out.connect(map[out_port], out.port(x, 0));
    out.connect(out.port(cup, 0), out.port(x, 1));
    out.connect(out.port(x, 2), map[in_port]);
    out.connect(out.port(x, 3), out.port(cap, 0));
    out.connect(out.port(cup, 1), out.port(cap, 1));
    return out;
}

/// A single crossingless circle.
inline StrandDiagram make_circle() {
    StrandDiagram d;
    NodeId cup = d.add_node(NodeKind::cup);
    NodeId cap = d.add_node(NodeKind::cap);
    d.connect(d.port(cup, 0), d.port(cap, 0));
    d.connect(d.port(cup, 1), d.port(cap, 1));
    return d;
}

/// The self-crossed circle: cup, crossing, cap.
inline StrandDiagram make_figure_eight() {
    StrandDiagram d;
    NodeId cup = d.add_node(NodeKind::cup);
    NodeId x = d.add_node(NodeKind::crossing);
    NodeId cap = d.add_node(NodeKind::cap);
    d.connect(d.port(cup, 0), d.port(x, 0));
    d.connect(d.port(cup, 1), d.port(x, 1));
    d.connect(d.port(x, 2), d.port(cap, 0));
    d.connect(d.port(x, 3), d.port(cap, 1));
    return d;
}

}  // namespace skeinlab
