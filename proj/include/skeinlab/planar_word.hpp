/**
 * @file planar_word.hpp
 * @brief Morse-word presentation of planar strand diagrams and the local
 *        moves (Reidemeister R1/R2/R3, indentation) acting on it.
 *
 * A word is read bottom to top. Between steps the diagram is cut by a
 * horizontal line meeting `width` strands, numbered left to right:
 *
 *   cup(i)   opens two new strands at positions i, i+1
 *   cap(i)   closes strands i and i+1
 *   cross(i) swaps strands i and i+1
 *
 * Words are always drawable in the plane, so compiled diagrams satisfy the
 * loop-sign rule; they are the generator for randomized oracle checks.
 */
#pragma once

#include <cstddef>
#include <random>
#include <string>
#include <vector>

#include "skeinlab/diagram.hpp"
#include "skeinlab/errors.hpp"

namespace skeinlab {

enum class MorseOp { cup, cap, cross };

struct MorseStep {
    MorseOp op;
    std::size_t pos;
    friend bool operator==(const MorseStep&, const MorseStep&) = default;
};

class PlanarWord {
    std::vector<MorseStep> steps_;

  public:
    PlanarWord() = default;
    explicit PlanarWord(std::vector<MorseStep> steps) : steps_(std::move(steps)) { validate(); }

    const std::vector<MorseStep>& steps() const { return steps_; }
    std::size_t size() const { return steps_.size(); }

    /// Width of the cut line just below step `index` (index == size() gives the final width).
    std::size_t width_before(std::size_t index) const {
        std::size_t w = 0;
        for (std::size_t i = 0; i < index && i < steps_.size(); ++i) {
            if (steps_[i].op == MorseOp::cup) w += 2;
            else if (steps_[i].op == MorseOp::cap) w -= 2;
        }
        return w;
    }

    std::size_t crossing_count() const {
        std::size_t c = 0;
        for (const auto& s : steps_) c += s.op == MorseOp::cross;
        return c;
    }

    void validate() const {
        std::size_t w = 0;
        for (std::size_t i = 0; i < steps_.size(); ++i) {
            const auto& s = steps_[i];
            bool ok = s.op == MorseOp::cup ? s.pos <= w : s.pos + 1 < w;
            if (!ok)
                throw StructuralError("planar word step " + std::to_string(i) + " out of range at width " +
                                      std::to_string(w));
            if (s.op == MorseOp::cup) w += 2;
            if (s.op == MorseOp::cap) w -= 2;
        }
        if (w != 0) throw StructuralError("planar word is not closed (final width " + std::to_string(w) + ")");
    }

    StrandDiagram compile() const {
        StrandDiagram d;
        std::vector<PortId> open;  // output port currently occupying each position
        for (const auto& s : steps_) {
            auto at = open.begin() + static_cast<std::ptrdiff_t>(s.pos);
            switch (s.op) {
                case MorseOp::cup: {
                    NodeId n = d.add_node(NodeKind::cup);
                    open.insert(at, {d.port(n, 0), d.port(n, 1)});
                    break;
                }
                case MorseOp::cap: {
                    NodeId n = d.add_node(NodeKind::cap);
                    d.connect(*at, d.port(n, 0));
                    d.connect(*(at + 1), d.port(n, 1));
                    open.erase(at, at + 2);
                    break;
                }
                case MorseOp::cross: {
                    NodeId n = d.add_node(NodeKind::crossing);
                    d.connect(*at, d.port(n, 0));
                    d.connect(*(at + 1), d.port(n, 1));
                    *at = d.port(n, 2);
                    *(at + 1) = d.port(n, 3);
                    break;
                }
            }
        }
        return d;
    }

    PlanarWord inserted(std::size_t index, const std::vector<MorseStep>& extra) const {
        auto steps = steps_;
        steps.insert(steps.begin() + static_cast<std::ptrdiff_t>(index), extra.begin(), extra.end());
        return PlanarWord(std::move(steps));
    }

    PlanarWord replaced(std::size_t index, std::size_t count, const std::vector<MorseStep>& with) const {
        auto steps = steps_;
        auto first = steps.begin() + static_cast<std::ptrdiff_t>(index);
        steps.erase(first, first + static_cast<std::ptrdiff_t>(count));
        steps.insert(steps.begin() + static_cast<std::ptrdiff_t>(index), with.begin(), with.end());
        return PlanarWord(std::move(steps));
    }
};

enum class Side { left, right };

/// R1: a kink on strand `pos` just below step `index`.
inline PlanarWord reidemeister1(const PlanarWord& w, std::size_t index, std::size_t pos, Side side) {
    if (pos >= w.width_before(index)) throw StructuralError("R1: no strand at that position");
    if (side == Side::right)
        return w.inserted(index, {{MorseOp::cup, pos + 1}, {MorseOp::cross, pos}, {MorseOp::cap, pos + 1}});
    return w.inserted(index, {{MorseOp::cup, pos}, {MorseOp::cross, pos + 1}, {MorseOp::cap, pos}});
}

/// R2: two consecutive crossings on strands pos, pos+1.
inline PlanarWord reidemeister2(const PlanarWord& w, std::size_t index, std::size_t pos) {
    if (pos + 1 >= w.width_before(index)) throw StructuralError("R2: needs two adjacent strands");
    return w.inserted(index, {{MorseOp::cross, pos}, {MorseOp::cross, pos}});
}

/// R3: rewrite cross(i) cross(i+1) cross(i) <-> cross(i+1) cross(i) cross(i+1) starting at `index`.
inline PlanarWord reidemeister3(const PlanarWord& w, std::size_t index) {
    const auto& s = w.steps();
    if (index + 3 > s.size()) throw StructuralError("R3: pattern runs past the end of the word");
    const auto &a = s[index], &b = s[index + 1], &c = s[index + 2];
    bool crosses = a.op == MorseOp::cross && b.op == MorseOp::cross && c.op == MorseOp::cross;
    if (!crosses || a.pos != c.pos || (b.pos != a.pos + 1 && a.pos != b.pos + 1))
        throw StructuralError("R3: no braid triangle at that index");
    return w.replaced(index, 3, {{MorseOp::cross, b.pos}, {MorseOp::cross, a.pos}, {MorseOp::cross, b.pos}});
}

/// Indices where an R3 rewrite applies.
inline std::vector<std::size_t> reidemeister3_sites(const PlanarWord& w) {
    std::vector<std::size_t> out;
    const auto& s = w.steps();
    for (std::size_t i = 0; i + 3 <= s.size(); ++i) {
        const auto &a = s[i], &b = s[i + 1], &c = s[i + 2];
        if (a.op == MorseOp::cross && b.op == MorseOp::cross && c.op == MorseOp::cross && a.pos == c.pos &&
            (b.pos == a.pos + 1 || a.pos == b.pos + 1))
            out.push_back(i);
    }
    return out;
}

/// A cup-cap zigzag (indentation) on strand `pos`; leaves the value unchanged.
inline PlanarWord indent(const PlanarWord& w, std::size_t index, std::size_t pos, Side side) {
    if (pos >= w.width_before(index)) throw StructuralError("indent: no strand at that position");
    if (side == Side::right) return w.inserted(index, {{MorseOp::cup, pos + 1}, {MorseOp::cap, pos}});
    return w.inserted(index, {{MorseOp::cup, pos}, {MorseOp::cap, pos + 1}});
}

/**
 * Random closed word with exactly `crossings` crossings and width at most
 * `max_width` (rounded up to an even number >= 2).
 */
template <class Rng>
PlanarWord random_planar_word(Rng& rng, std::size_t crossings, std::size_t max_width) {
    if (max_width < 2) max_width = 2;
    std::vector<MorseStep> steps;
    std::size_t w = 0, placed = 0;
    auto pick = [&](std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng); };
    while (placed < crossings || w > 0) {
        std::vector<MorseOp> choices;
        if (w + 2 <= max_width && placed < crossings) choices.push_back(MorseOp::cup);
        if (w >= 2 && placed < crossings) {
            choices.push_back(MorseOp::cross);
            choices.push_back(MorseOp::cross);
        }
        if (w >= 2 && (placed == crossings || w > 2 || pick(4) == 0)) choices.push_back(MorseOp::cap);
        if (choices.empty()) choices.push_back(MorseOp::cup);
        MorseOp op = choices[pick(choices.size())];
        switch (op) {
            case MorseOp::cup:
                steps.push_back({op, pick(w + 1)});
                w += 2;
                break;
            case MorseOp::cap:
                steps.push_back({op, pick(w - 1)});
                w -= 2;
                break;
            case MorseOp::cross:
                steps.push_back({op, pick(w - 1)});
                ++placed;
                break;
        }
    }
    return PlanarWord(std::move(steps));
}

}  // namespace skeinlab
