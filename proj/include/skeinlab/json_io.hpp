/**
 * @file json_io.hpp
 * @brief JSON interchange for strand diagrams, spin networks and circle packings.
 *
 * Diagram:  {"nodes":[{"id":"n0","kind":"cup","ports":["a","b"]}, ...],
 *            "wires":[["a","c"], ...]}
 *   Ports are listed in slot order (see diagram.hpp); each wire joins an
 *   output port to an input port.
 *
 * Network:  {"edges":[{"id":"p","label":2,"closed":false}, ...],
 *            "vertices":[{"id":"u","ends":["p","q","r"]}, ...]}
 *   Ends are listed counterclockwise. A bare edge id takes the edge's first
 *   unused end (end 0 at the first mention); {"edge":"p","end":1} names the
 *   end explicitly.
 *
 * Packing:  {"disks":[{"curvature":"3/2","center":["1/2","0"],"radius":0.66,
 *                      "generation":0}, {"curvature":"0","line":{"normal":[0,-1],"offset":0}}],
 *            "tangencies":[[0,1], ...],
 *            "regions":[{"disks":[0,1,2],"parent":3,"point":[x,y],"outer":false}]}
 *   Centers are exact "p/q" strings when known exactly, plain numbers otherwise.
 */
#pragma once

#include <fstream>
#include <map>
#include <sstream>
#include <string>

#include "json.hpp"  // nlohmann::json, vendored

#include "skeinlab/apollonian.hpp"
#include "skeinlab/diagram.hpp"
#include "skeinlab/errors.hpp"
#include "skeinlab/network.hpp"

namespace skeinlab {

using Json = nlohmann::ordered_json;

inline Json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open '" + path + "'");
    try {
        return Json::parse(in);
    } catch (const Json::parse_error& e) {
        throw StructuralError("'" + path + "' is not valid JSON: " + e.what());
    }
}

inline void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write '" + path + "'");
    out << text;
    if (!out) throw IoError("failed writing '" + path + "'");
}

namespace detail {

template <class F>
auto schema(const std::string& what, F&& f) -> decltype(f()) {
    try {
        return f();
    } catch (const Json::exception& e) {
        throw StructuralError("bad " + what + " JSON: " + e.what());
    }
}

inline const Json& member(const Json& j, const char* key, const std::string& where) {
    if (!j.is_object() || !j.contains(key)) throw StructuralError(where + " is missing \"" + key + "\"");
    return j.at(key);
}

inline Rational rational_from_json(const Json& j) {
    if (j.is_number_integer()) return Rational(j.get<long long>());
    if (j.is_string()) return Rational::parse(j.get<std::string>());
    throw StructuralError("expected an integer or a \"p/q\" string, got " + j.dump());
}

inline double number_from_json(const Json& j) {
    if (j.is_number()) return j.get<double>();
    if (j.is_string()) return Rational::parse(j.get<std::string>()).to_double();
    throw StructuralError("expected a number, got " + j.dump());
}

}  // namespace detail

// Diagrams -------------------------------------------------------------------

inline StrandDiagram diagram_from_json(const Json& j) {
    return detail::schema("diagram", [&] {
        StrandDiagram d;
        std::map<std::string, PortId> ports;
        for (const auto& node : detail::member(j, "nodes", "diagram")) {
            NodeKind kind = parse_node_kind(detail::member(node, "kind", "node").get<std::string>());
            const auto& names = detail::member(node, "ports", "node");
            if (!names.is_array() || names.size() != static_cast<std::size_t>(port_count(kind)))
                throw StructuralError(std::string("a ") + to_string(kind) + " node needs " +
                                      std::to_string(port_count(kind)) + " ports");
            NodeId n = d.add_node(kind);
            for (int s = 0; s < port_count(kind); ++s) {
                std::string name = names.at(static_cast<std::size_t>(s)).get<std::string>();
                if (!ports.emplace(name, d.port(n, s)).second) throw StructuralError("duplicate port id '" + name + "'");
            }
        }
        const Json& wires = j.contains("wires") ? j.at("wires") : detail::member(j, "wiring", "diagram");
        for (const auto& w : wires) {
            if (!w.is_array() || w.size() != 2) throw StructuralError("each wire is a pair of port ids");
            auto find = [&](const Json& name) {
                auto it = ports.find(name.get<std::string>());
                if (it == ports.end()) throw StructuralError("wire references unknown port '" + name.get<std::string>() + "'");
                return it->second;
            };
            d.connect(find(w[0]), find(w[1]));
        }
        return d;
    });
}

inline Json diagram_to_json(const StrandDiagram& d) {
    Json j;
    j["nodes"] = Json::array();
    auto name = [&](PortId p) { return "n" + std::to_string(d.node_of(p)) + "." + std::to_string(d.slot_of(p)); };
    for (NodeId n = 0; n < d.node_count(); ++n) {
        Json ports = Json::array();
        for (int s = 0; s < port_count(d.kind(n)); ++s) ports.push_back(name(d.port(n, s)));
        j["nodes"].push_back({{"id", "n" + std::to_string(n)}, {"kind", to_string(d.kind(n))}, {"ports", ports}});
    }
    j["wires"] = Json::array();
    for (const auto& [a, b] : d.wires()) j["wires"].push_back({name(a), name(b)});
    return j;
}

// Networks -------------------------------------------------------------------

inline SpinNetwork network_from_json(const Json& j) {
    return detail::schema("network", [&] {
        SpinNetwork net;
        std::map<std::string, std::size_t> edge_index;
        for (const auto& e : detail::member(j, "edges", "network")) {
            std::string id = detail::member(e, "id", "edge").get<std::string>();
            const Json& label = detail::member(e, "label", "edge '" + id + "'");
            if (!label.is_number_integer()) throw StructuralError("edge '" + id + "' label must be an integer");
            bool closed = e.contains("closed") && e.at("closed").get<bool>();
            if (edge_index.count(id)) throw StructuralError("duplicate edge id '" + id + "'");
            edge_index[id] = net.add_edge(id, label.get<EdgeLabel>(), closed);
        }
        std::vector<std::array<bool, 2>> used(net.edges().size(), {false, false});
        const Json empty = Json::array();
        for (const auto& v : j.contains("vertices") ? j.at("vertices") : empty) {
            std::string id = detail::member(v, "id", "vertex").get<std::string>();
            const auto& ends = detail::member(v, "ends", "vertex '" + id + "'");
            if (!ends.is_array() || ends.size() != 3)
                throw StructuralError("vertex '" + id + "' must list exactly 3 edge ends");
            std::array<EdgeEnd, 3> out;
            for (std::size_t s = 0; s < 3; ++s) {
                const Json& ref = ends[s];
                std::string eid = ref.is_string() ? ref.get<std::string>() : detail::member(ref, "edge", "edge end").get<std::string>();
                auto it = edge_index.find(eid);
                if (it == edge_index.end()) throw StructuralError("vertex '" + id + "' references unknown edge '" + eid + "'");
                int end;
                if (ref.is_string()) {
                    end = !used[it->second][0] ? 0 : 1;
                } else {
                    end = ref.at("end").get<int>();
                    if (end != 0 && end != 1) throw StructuralError("edge end must be 0 or 1");
                }
                if (used[it->second][static_cast<std::size_t>(end)])
                    throw StructuralError("edge '" + eid + "' is attached more than twice");
                used[it->second][static_cast<std::size_t>(end)] = true;
                out[s] = EdgeEnd{it->second, end};
            }
            net.add_vertex(id, out);
        }
        return net;
    });
}

inline Json network_to_json(const SpinNetwork& net) {
    Json j;
    j["edges"] = Json::array();
    for (const auto& e : net.edges()) {
        Json je{{"id", e.id}, {"label", e.label}};
        if (e.closed) je["closed"] = true;
        j["edges"].push_back(je);
    }
    j["vertices"] = Json::array();
    for (const auto& v : net.vertices()) {
        Json ends = Json::array();
        for (const auto& end : v.ends) ends.push_back({{"edge", net.edge(end.edge).id}, {"end", end.end}});
        j["vertices"].push_back({{"id", v.id}, {"ends", ends}});
    }
    return j;
}

// Packings -------------------------------------------------------------------

inline Json packing_to_json(const CirclePacking& p) {
    Json j;
    j["disks"] = Json::array();
    for (const auto& d : p.disks) {
        Json jd{{"curvature", d.curvature.to_string()}};
        if (d.is_line) {
            jd["line"] = {{"normal", {d.normal.x, d.normal.y}}, {"offset", d.offset}};
        } else {
            if (d.exact_center)
                jd["center"] = {(*d.exact_center)[0].to_string(), (*d.exact_center)[1].to_string()};
            else
                jd["center"] = {d.center.x, d.center.y};
            jd["radius"] = d.radius;
        }
        jd["generation"] = d.generation;
        j["disks"].push_back(jd);
    }
    j["tangencies"] = Json::array();
    for (const auto& t : p.tangencies) j["tangencies"].push_back({t[0], t[1]});
    j["regions"] = Json::array();
    for (const auto& r : p.regions) {
        Json jr{{"disks", {r.disks[0], r.disks[1], r.disks[2]}}};
        if (r.parent >= 0) jr["parent"] = r.parent;
        if (r.point) jr["point"] = {r.point->x, r.point->y};
        if (r.outer) jr["outer"] = true;
        j["regions"].push_back(jr);
    }
    return j;
}

inline CirclePacking packing_from_json(const Json& j) {
    return detail::schema("packing", [&] {
        CirclePacking p;
        for (const auto& jd : detail::member(j, "disks", "packing")) {
            Disk d;
            d.curvature = detail::rational_from_json(detail::member(jd, "curvature", "disk"));
            if (jd.contains("generation")) d.generation = jd.at("generation").get<int>();
            if (jd.contains("line")) {
                if (!d.curvature.is_zero()) throw StructuralError("a line must have curvature 0");
                const Json& l = jd.at("line");
                const Json& n = detail::member(l, "normal", "line");
                d.is_line = true;
                d.normal = {detail::number_from_json(n.at(0)), detail::number_from_json(n.at(1))};
                double len = std::hypot(d.normal.x, d.normal.y);
                if (len == 0) throw StructuralError("line normal must be nonzero");
                d.normal = {d.normal.x / len, d.normal.y / len};
                d.offset = detail::number_from_json(detail::member(l, "offset", "line")) / len;
            } else {
                if (d.curvature.is_zero() && !jd.contains("radius"))
                    throw StructuralError("a curvature-0 disk needs a \"line\" descriptor or an explicit radius");
                const Json& c = detail::member(jd, "center", "disk");
                if (!c.is_array() || c.size() != 2) throw StructuralError("disk center must be [x, y]");
                if (c.at(0).is_string() && c.at(1).is_string())
                    d.exact_center = std::array<Rational, 2>{detail::rational_from_json(c.at(0)), detail::rational_from_json(c.at(1))};
                d.center = {detail::number_from_json(c.at(0)), detail::number_from_json(c.at(1))};
                d.radius = jd.contains("radius") ? detail::number_from_json(jd.at("radius"))
                                                 : std::abs(1 / d.curvature.to_double());
                if (!(d.radius > 0)) throw StructuralError("disk radius must be positive");
            }
            p.disks.push_back(d);
        }
        const int n = static_cast<int>(p.disks.size());
        auto index = [&](const Json& x) {
            int k = x.get<int>();
            if (k < 0 || k >= n) throw StructuralError("disk index " + std::to_string(k) + " out of range");
            return k;
        };
        for (const auto& t : detail::member(j, "tangencies", "packing")) {
            if (!t.is_array() || t.size() != 2) throw StructuralError("a tangency is a pair of disk indices");
            p.tangencies.push_back({index(t[0]), index(t[1])});
        }
        const Json empty = Json::array();
        for (const auto& jr : j.contains("regions") ? j.at("regions") : empty) {
            Region r;
            const Json& ds = detail::member(jr, "disks", "region");
            if (!ds.is_array() || ds.size() != 3) throw StructuralError("a region lists three disks");
            for (std::size_t k = 0; k < 3; ++k) r.disks[k] = index(ds[k]);
            if (jr.contains("parent")) r.parent = index(jr.at("parent"));
            if (jr.contains("point"))
                r.point = Point{detail::number_from_json(jr.at("point").at(0)), detail::number_from_json(jr.at("point").at(1))};
            if (jr.contains("outer")) r.outer = jr.at("outer").get<bool>();
            p.regions.push_back(r);
        }
        return p;
    });
}

}  // namespace skeinlab
