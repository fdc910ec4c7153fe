#pragma once

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

#include "pfaff/cycles.hpp"
#include "pfaff/graph.hpp"
#include "pfaff/matching.hpp"
#include "pfaff/pfaffian.hpp"
#include "pfaff/reduction.hpp"

namespace pfaff {

using Json = nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// Certificate serialization
//
// {kind, graph: graph6, factor: [edge indices], family: [[vertex,...],...],
//  orientation: bit string over edge indices, flags: [bool,...]}

namespace detail {

inline std::string orientation_bits_string(const Orientation& d) {
    std::string s;
    for (std::size_t i = 0; i < d.bits.size(); ++i) s.push_back(d.bits.get(i) ? '1' : '0');
    return s;
}

inline Json certificate_json(const std::string& kind, const Graph& g, const OneFactor& f, const CycleFamily& family,
                             const Orientation& d, const std::vector<bool>& flags) {
    Json j;
    j["kind"] = kind;
    j["graph"] = to_graph6(g);
    j["factor"] = f.edge_indices();
    Json fam = Json::array();
    for (const AlternatingCycle& c : family.members) fam.push_back(c.vertices());
    j["family"] = std::move(fam);
    j["orientation"] = orientation_bits_string(d);
    j["flags"] = flags;
    return j;
}

}  // namespace detail

inline Json certificate_to_json(const Graph& g, const OddFSetCertificate& cert) {
    // The reference orientation and its evenness flags are informational for
    // this kind, but they are still checked on verification.
    Orientation d0 = Orientation::all_forward(g);
    std::vector<bool> flags;
    for (const AlternatingCycle& c : cert.family.members) flags.push_back(omega_cycle(g, d0, c) == 0);
    return detail::certificate_json("odd-f-set", g, cert.factor, cert.family, d0, flags);
}

inline Json certificate_to_json(const Graph& g, const BadCertificate& cert) {
    return detail::certificate_json("bad", g, cert.factor, cert.family, cert.orientation, cert.even_flags);
}

inline Json certificate_to_json(const Graph& g, const SimplyBadCertificate& cert) {
    std::vector<bool> flags(cert.family.members.size(), true);
    return detail::certificate_json("simply-bad", g, cert.factor, cert.family, cert.orientation, flags);
}

// ---------------------------------------------------------------------------
// Standalone verification from serialized form alone

struct VerifyOutcome {
    bool accepted = false;
    std::string failing_invariant;  // empty when accepted
};

// Re-checks every invariant of a serialized certificate using only the graph,
// matching, cycle and parity primitives; nothing is trusted from the
// producing search.
inline VerifyOutcome verify_certificate(const Json& j) {
    auto reject = [](const std::string& why) { return VerifyOutcome{false, why}; };

    if (!j.is_object()) return reject("schema: certificate must be an object");
    for (const char* key : {"kind", "graph", "factor", "family", "orientation", "flags"})
        if (!j.contains(key)) return reject(std::string("schema: missing field '") + key + "'");
    if (!j["kind"].is_string()) return reject("schema: 'kind' must be a string");
    const std::string kind = j["kind"].get<std::string>();
    if (kind != "odd-f-set" && kind != "bad" && kind != "simply-bad") return reject("schema: unknown kind '" + kind + "'");

    Graph g;
    try {
        if (!j["graph"].is_string()) return reject("schema: 'graph' must be a graph6 string");
        g = parse_graph6(j["graph"].get<std::string>());
    } catch (const graph6_error& e) {
        return reject(std::string("graph: ") + e.what());
    }

    if (!j["factor"].is_array()) return reject("schema: 'factor' must be an array of edge indices");
    std::vector<int> factor_indices;
    int prev = -1;
    for (const auto& item : j["factor"]) {
        if (!item.is_number_integer()) return reject("schema: factor entries must be integers");
        int e = item.get<int>();
        if (e <= prev) return reject("factor: edge indices must be strictly increasing");
        if (e < 0 || e >= g.edge_count()) return reject("factor: edge index out of range");
        factor_indices.push_back(e);
        prev = e;
    }
    OneFactor factor;
    try {
        factor = OneFactor::from_edge_indices(g, factor_indices);
    } catch (const std::invalid_argument& e) {
        return reject(std::string("factor: not a perfect matching (") + e.what() + ")");
    }

    if (!j["orientation"].is_string()) return reject("schema: 'orientation' must be a bit string");
    const std::string bits = j["orientation"].get<std::string>();
    if (bits.size() != static_cast<std::size_t>(g.edge_count()))
        return reject("orientation: bit string length != edge count");
    Orientation d(static_cast<std::size_t>(g.edge_count()));
    for (std::size_t i = 0; i < bits.size(); ++i) {
        if (bits[i] != '0' && bits[i] != '1') return reject("orientation: bit string must contain only 0 and 1");
        if (bits[i] == '1') d.bits.set(i);
    }

    if (!j["family"].is_array()) return reject("schema: 'family' must be an array of vertex cycles");
    std::vector<AlternatingCycle> members;
    for (const auto& item : j["family"]) {
        if (!item.is_array()) return reject("schema: family members must be vertex arrays");
        std::vector<int> verts;
        for (const auto& v : item) {
            if (!v.is_number_integer()) return reject("schema: family vertices must be integers");
            verts.push_back(v.get<int>());
        }
        try {
            members.push_back(AlternatingCycle::create(g, factor, verts));
        } catch (const std::invalid_argument& e) {
            return reject(std::string("family: member is not an F-alternating cycle (") + e.what() + ")");
        }
    }

    if (!j["flags"].is_array() || j["flags"].size() != members.size())
        return reject("flags: array length != family size");
    std::size_t even_count = 0;
    for (std::size_t i = 0; i < members.size(); ++i) {
        if (!j["flags"][i].is_boolean()) return reject("schema: flags must be booleans");
        const bool stored = j["flags"][i].get<bool>();
        const bool recomputed = omega_cycle(g, d, members[i]) == 0;
        if (stored != recomputed) return reject("flags: stored evenness flag does not match the orientation");
        even_count += recomputed ? 1 : 0;
    }

    CycleFamily family = make_family(g, factor, members);
    if (!family.zero_sum) return reject("family: not zero-sum (some edge covered an odd number of times)");

    if (kind == "odd-f-set" && members.size() % 2 == 0) return reject("odd-f-set: family size is even");
    if (kind == "bad" && even_count % 2 == 0) return reject("bad: evenly oriented member count is even");
    if (kind == "simply-bad") {
        if (members.size() % 2 == 0) return reject("simply-bad: family size is even");
        if (even_count != members.size()) return reject("simply-bad: some member is not evenly oriented");
    }
    return VerifyOutcome{true, ""};
}

// ---------------------------------------------------------------------------
// Reduction trace serialization

inline Json trace_to_json(const ReductionTrace& trace) {
    Json j;
    Json steps = Json::array();
    for (const ReductionStep& s : trace.steps) {
        Json step;
        step["graph"] = to_graph6(s.graph);
        step["cycle"] = s.contracted_cycle;
        steps.push_back(std::move(step));
    }
    j["steps"] = std::move(steps);
    j["final"] = to_graph6(trace.final_graph);
    j["target"] = to_graph6(trace.matched_target);
    if (trace.subdivision) {
        Json w;
        w["branch_vertices"] = trace.subdivision->branch_vertices;
        w["paths"] = trace.subdivision->paths;
        j["subdivision"] = std::move(w);
    }
    return j;
}

inline ReductionTrace trace_from_json(const Json& j) {
    ReductionTrace trace;
    for (const auto& step : j.at("steps")) {
        ReductionStep s;
        s.graph = parse_graph6(step.at("graph").get<std::string>());
        s.contracted_cycle = step.at("cycle").get<std::vector<int>>();
        trace.steps.push_back(std::move(s));
    }
    trace.final_graph = parse_graph6(j.at("final").get<std::string>());
    trace.matched_target = parse_graph6(j.at("target").get<std::string>());
    if (j.contains("subdivision")) {
        SubdivisionWitness w;
        w.branch_vertices = j["subdivision"].at("branch_vertices").get<std::vector<int>>();
        w.paths = j["subdivision"].at("paths").get<std::vector<std::vector<int>>>();
        trace.subdivision = std::move(w);
    }
    return trace;
}

}  // namespace pfaff
