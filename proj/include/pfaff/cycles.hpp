#pragma once

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "pfaff/caps.hpp"
#include "pfaff/graph.hpp"
#include "pfaff/matching.hpp"

namespace pfaff {

// Simple even cycle whose edges alternate between a 1-factor and its
// complement.  Stored in canonical form: smallest vertex first, then the
// smaller of its two cycle-neighbors.
class AlternatingCycle {
  public:
    AlternatingCycle() = default;

    // Validates that `verts` is a simple cycle of g alternating with respect
    // to f, then canonicalizes the representation.
    static AlternatingCycle create(const Graph& g, const OneFactor& f, std::vector<int> verts) {
        const std::size_t len = verts.size();
        if (len < 4 || len % 2 != 0) throw std::invalid_argument("AlternatingCycle: length must be even and >= 4");
        std::vector<bool> seen(static_cast<std::size_t>(g.vertex_count()), false);
        for (int v : verts) {
            if (v < 0 || v >= g.vertex_count() || seen[static_cast<std::size_t>(v)])
                throw std::invalid_argument("AlternatingCycle: not a simple cycle");
            seen[static_cast<std::size_t>(v)] = true;
        }
        AlternatingCycle c;
        c.edge_set_ = BitVec(static_cast<std::size_t>(g.edge_count()));
        std::size_t in_factor = 0;
        std::optional<bool> prev_in_f;
        for (std::size_t i = 0; i < len; ++i) {
            auto e = g.edge_index(verts[i], verts[(i + 1) % len]);
            if (!e) throw std::invalid_argument("AlternatingCycle: consecutive vertices not adjacent");
            bool in_f = f.contains_edge(*e);
            if (prev_in_f && *prev_in_f == in_f) throw std::invalid_argument("AlternatingCycle: edges do not alternate");
            prev_in_f = in_f;
            in_factor += in_f ? 1 : 0;
            c.edge_set_.set(static_cast<std::size_t>(*e));
        }
        if (2 * in_factor != len) throw std::invalid_argument("AlternatingCycle: |E(C)| != 2|E(C) n F|");

        auto min_it = std::min_element(verts.begin(), verts.end());
        std::rotate(verts.begin(), min_it, verts.end());
        if (verts[1] > verts.back()) std::reverse(verts.begin() + 1, verts.end());
        c.verts_ = std::move(verts);
        return c;
    }

    const std::vector<int>& vertices() const { return verts_; }
    std::size_t length() const { return verts_.size(); }
    const BitVec& edge_set() const { return edge_set_; }
    bool contains_edge(int e) const { return edge_set_.get(static_cast<std::size_t>(e)); }
    bool contains_vertex(int v) const { return std::find(verts_.begin(), verts_.end(), v) != verts_.end(); }

    bool operator==(const AlternatingCycle& other) const { return verts_ == other.verts_; }
    bool operator<(const AlternatingCycle& other) const { return verts_ < other.verts_; }

  private:
    std::vector<int> verts_;
    BitVec edge_set_;
};

namespace detail {

// Depth-first walk from each matched edge.  Every alternating cycle contains,
// for each of its vertices v, the matched edge (v, partner(v)); starting at
// the cycle's minimum vertex along its matched edge visits each cycle exactly
// once, so no deduplication is needed.
template <typename Emit>
void walk_alternating(const Graph& g, const OneFactor& f, int v0, std::vector<int>& path, std::vector<bool>& on_path,
                      bool next_in_factor, Emit&& emit) {
    const int cur = path.back();
    for (auto [w, e] : g.neighbors(cur)) {
        if (f.contains_edge(e) != next_in_factor) continue;
        if (w == v0 && !next_in_factor) {
            emit(path);
            continue;
        }
        if (w < v0 || on_path[static_cast<std::size_t>(w)]) continue;
        on_path[static_cast<std::size_t>(w)] = true;
        path.push_back(w);
        walk_alternating(g, f, v0, path, on_path, !next_in_factor, emit);
        path.pop_back();
        on_path[static_cast<std::size_t>(w)] = false;
    }
}

}  // namespace detail

// All simple F-alternating cycles in canonical form, sorted lexicographically
// by vertex sequence.
inline std::vector<AlternatingCycle> enumerate_alternating_cycles(const Graph& g, const OneFactor& f,
                                                                  const Caps& caps = {}) {
    if (f.vertex_count() != g.vertex_count())
        throw std::invalid_argument("enumerate_alternating_cycles: factor/graph mismatch");
    std::vector<AlternatingCycle> out;
    std::vector<bool> on_path(static_cast<std::size_t>(g.vertex_count()), false);
    for (int v0 = 0; v0 < g.vertex_count(); ++v0) {
        int p = f.partner(v0);
        if (p < v0) continue;  // the cycle minimum owns the walk
        std::vector<int> path{v0, p};
        on_path[static_cast<std::size_t>(v0)] = on_path[static_cast<std::size_t>(p)] = true;
        detail::walk_alternating(g, f, v0, path, on_path, false, [&](const std::vector<int>& cyc) {
            if (out.size() >= caps.max_cycles) throw cap_exceeded("alternating-cycle enumeration", caps.max_cycles);
            out.push_back(AlternatingCycle::create(g, f, cyc));
        });
        on_path[static_cast<std::size_t>(v0)] = on_path[static_cast<std::size_t>(p)] = false;
    }
    std::sort(out.begin(), out.end());
    return out;
}

// ---------------------------------------------------------------------------
// Orientation function: parity of the number of edges traversed forward.

inline int omega_path(const Graph& g, const Orientation& d, const std::vector<int>& path) {
    if (path.size() < 2) return 0;
    int forward = 0;
    for (std::size_t i = 0; i + 1 < path.size(); ++i) {
        auto e = g.edge_index(path[i], path[i + 1]);
        if (!e) throw std::invalid_argument("omega_path: consecutive vertices not adjacent");
        auto [tail, head] = d.directed(g, *e);
        (void)head;
        if (tail == path[i]) ++forward;
    }
    return forward & 1;
}

// Closed-walk variant: the wrap-around edge is included.  For even cycles the
// result is independent of the traversal direction.
inline int omega_cycle(const Graph& g, const Orientation& d, const std::vector<int>& cycle) {
    if (cycle.size() < 3) throw std::invalid_argument("omega_cycle: not a cycle");
    int forward = 0;
    for (std::size_t i = 0; i < cycle.size(); ++i) {
        auto e = g.edge_index(cycle[i], cycle[(i + 1) % cycle.size()]);
        if (!e) throw std::invalid_argument("omega_cycle: consecutive vertices not adjacent");
        auto [tail, head] = d.directed(g, *e);
        (void)head;
        if (tail == cycle[i]) ++forward;
    }
    return forward & 1;
}

inline int omega_cycle(const Graph& g, const Orientation& d, const AlternatingCycle& c) {
    return omega_cycle(g, d, c.vertices());
}

inline bool is_evenly_oriented(const Graph& g, const Orientation& d, const AlternatingCycle& c) {
    return omega_cycle(g, d, c) == 0;
}

// ---------------------------------------------------------------------------
// Skew edge pairs

namespace detail {

// Whether (u1,u2,v1,v2) occurs in this relative order during one revolution of
// the cycle, in either traversal direction from any starting point.
inline bool subsequence_occurs(const std::vector<int>& cyc, int u1, int u2, int v1, int v2) {
    const std::size_t len = cyc.size();
    auto position = [&](const std::vector<int>& seq, int v) {
        return static_cast<std::size_t>(std::find(seq.begin(), seq.end(), v) - seq.begin());
    };
    const std::vector<int> reversed(cyc.rbegin(), cyc.rend());
    for (const std::vector<int>* dir : {&cyc, &reversed}) {
        const std::size_t pu1 = position(*dir, u1);
        auto relative = [&](int v) { return (position(*dir, v) + len - pu1) % len; };
        if (relative(u2) < relative(v1) && relative(v1) < relative(v2)) return true;
    }
    return false;
}

}  // namespace detail

// True iff the endpoint sequence (u1,u2,v1,v2) of the independent edges
// e=(u1,u2), f=(v1,v2) occurs cyclically in exactly one of the two cycles.
inline bool are_skew(const Graph& g, VertexPair e, VertexPair f, const AlternatingCycle& c1, const AlternatingCycle& c2) {
    auto ei = g.edge_index(e.first, e.second);
    auto fi = g.edge_index(f.first, f.second);
    if (!ei || !fi) throw std::invalid_argument("are_skew: not an edge of the graph");
    if (e.first == f.first || e.first == f.second || e.second == f.first || e.second == f.second)
        throw std::invalid_argument("are_skew: edges share an endpoint");
    for (const AlternatingCycle* c : {&c1, &c2})
        if (!c->contains_edge(*ei) || !c->contains_edge(*fi))
            throw std::invalid_argument("are_skew: edge missing from a cycle");
    const bool in1 = detail::subsequence_occurs(c1.vertices(), e.first, e.second, f.first, f.second);
    const bool in2 = detail::subsequence_occurs(c2.vertices(), e.first, e.second, f.first, f.second);
    return in1 != in2;
}

// ---------------------------------------------------------------------------
// Cycle families

// A multiset of F-alternating cycles together with the mod-2 edgewise sum of
// their incidence vectors.  zero_sum holds exactly when every edge of the
// graph lies in an even number of members.
struct CycleFamily {
    OneFactor factor;
    std::vector<AlternatingCycle> members;
    BitVec edge_parity;
    bool zero_sum = false;
};

inline CycleFamily make_family(const Graph& g, const OneFactor& f, std::vector<AlternatingCycle> members) {
    CycleFamily fam;
    fam.factor = f;
    fam.edge_parity = BitVec(static_cast<std::size_t>(g.edge_count()));
    for (const AlternatingCycle& c : members) fam.edge_parity ^= c.edge_set();
    fam.zero_sum = fam.edge_parity.none();
    fam.members = std::move(members);
    return fam;
}

inline bool is_zero_sum(const CycleFamily& family) { return family.zero_sum; }

// Concatenation over j of the cycles of F (symmetric difference) F_j.  When
// the F_j cover every edge an even number of times the family is zero-sum.
inline CycleFamily family_from_factors(const Graph& g, const OneFactor& f, const std::vector<OneFactor>& factors) {
    std::vector<AlternatingCycle> members;
    for (const OneFactor& fj : factors) {
        if (fj.vertex_count() != g.vertex_count()) throw std::invalid_argument("family_from_factors: factor/graph mismatch");
        for (auto& cyc : symmetric_difference_cycles(g, f, fj)) members.push_back(AlternatingCycle::create(g, f, cyc));
    }
    return make_family(g, f, std::move(members));
}

}  // namespace pfaff
