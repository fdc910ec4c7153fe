#pragma once

#include <algorithm>
#include <functional>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "pfaff/caps.hpp"
#include "pfaff/graph.hpp"

namespace pfaff {

// Perfect matching: an edge subset covering every vertex exactly once, held
// both as a bit vector over edge indices and as a vertex -> partner map.
class OneFactor {
  public:
    OneFactor() = default;

    static OneFactor from_edge_indices(const Graph& g, const std::vector<int>& edge_indices) {
        OneFactor f;
        f.edge_set_ = BitVec(static_cast<std::size_t>(g.edge_count()));
        f.partner_.assign(static_cast<std::size_t>(g.vertex_count()), -1);
        for (int e : edge_indices) {
            if (e < 0 || e >= g.edge_count()) throw std::invalid_argument("OneFactor: edge index out of range");
            auto [u, v] = g.edge(e);
            if (f.partner_[static_cast<std::size_t>(u)] != -1 || f.partner_[static_cast<std::size_t>(v)] != -1)
                throw std::invalid_argument("OneFactor: vertex covered twice");
            f.partner_[static_cast<std::size_t>(u)] = v;
            f.partner_[static_cast<std::size_t>(v)] = u;
            f.edge_set_.set(static_cast<std::size_t>(e));
        }
        for (int v = 0; v < g.vertex_count(); ++v)
            if (f.partner_[static_cast<std::size_t>(v)] == -1)
                throw std::invalid_argument("OneFactor: vertex " + std::to_string(v) + " uncovered");
        return f;
    }

    static OneFactor from_pairs(const Graph& g, const std::vector<VertexPair>& pairs) {
        std::vector<int> idx;
        for (auto [u, v] : pairs) {
            auto e = g.edge_index(u, v);
            if (!e)
                throw std::invalid_argument("OneFactor: (" + std::to_string(u) + "," + std::to_string(v) +
                                            ") is not an edge");
            idx.push_back(*e);
        }
        return from_edge_indices(g, idx);
    }

    const BitVec& edge_set() const { return edge_set_; }
    int partner(int v) const { return partner_.at(static_cast<std::size_t>(v)); }
    bool contains_edge(int e) const { return edge_set_.get(static_cast<std::size_t>(e)); }
    std::size_t size() const { return edge_set_.count(); }
    int vertex_count() const { return static_cast<int>(partner_.size()); }

    std::vector<int> edge_indices() const {
        std::vector<int> out;
        for (std::size_t e : edge_set_.set_bits()) out.push_back(static_cast<int>(e));
        return out;
    }

    bool operator==(const OneFactor& other) const { return edge_set_ == other.edge_set_; }

  private:
    BitVec edge_set_;
    std::vector<int> partner_;
};

struct SignedFactor {
    OneFactor factor;
    int sign = 1;  // +1 or -1
};

namespace detail {

// Backtracking over the lowest uncovered vertex; visits factors in
// lexicographic order of their sorted edge-index lists.
template <typename Emit>
bool enumerate_factors_impl(const Graph& g, std::vector<bool>& covered, std::vector<int>& chosen, Emit&& emit) {
    int v = -1;
    for (int u = 0; u < g.vertex_count(); ++u)
        if (!covered[static_cast<std::size_t>(u)]) {
            v = u;
            break;
        }
    if (v == -1) return emit(chosen);  // emit returns false to stop the walk
    for (auto [w, e] : g.neighbors(v)) {
        if (covered[static_cast<std::size_t>(w)]) continue;
        covered[static_cast<std::size_t>(v)] = covered[static_cast<std::size_t>(w)] = true;
        chosen.push_back(e);
        bool keep_going = enumerate_factors_impl(g, covered, chosen, emit);
        chosen.pop_back();
        covered[static_cast<std::size_t>(v)] = covered[static_cast<std::size_t>(w)] = false;
        if (!keep_going) return false;
    }
    return true;
}

template <typename Emit>
void for_each_one_factor(const Graph& g, Emit&& emit) {
    std::vector<bool> covered(static_cast<std::size_t>(g.vertex_count()), false);
    std::vector<int> chosen;
    enumerate_factors_impl(g, covered, chosen, emit);
}

}  // namespace detail

// All perfect matchings, lexicographic by edge-index sequence.  The empty
// graph has exactly one (empty) 1-factor.
inline std::vector<OneFactor> enumerate_one_factors(const Graph& g, const Caps& caps = {}) {
    std::vector<OneFactor> out;
    detail::for_each_one_factor(g, [&](const std::vector<int>& chosen) {
        if (out.size() >= caps.max_factors) throw cap_exceeded("one-factor enumeration", caps.max_factors);
        out.push_back(OneFactor::from_edge_indices(g, chosen));
        return true;
    });
    return out;
}

inline std::optional<OneFactor> first_one_factor(const Graph& g) {
    std::optional<OneFactor> found;
    detail::for_each_one_factor(g, [&](const std::vector<int>& chosen) {
        found = OneFactor::from_edge_indices(g, chosen);
        return false;
    });
    return found;
}

inline bool has_one_factor(const Graph& g) { return first_one_factor(g).has_value(); }

inline std::size_t count_one_factors(const Graph& g, const Caps& caps = {}) {
    std::size_t count = 0;
    detail::for_each_one_factor(g, [&](const std::vector<int>&) {
        if (++count > caps.max_factors) throw cap_exceeded("one-factor enumeration", caps.max_factors);
        return true;
    });
    return count;
}

inline bool edge_in_some_factor(const Graph& g, int e) {
    auto [u, v] = g.edge(e);
    std::vector<bool> covered(static_cast<std::size_t>(g.vertex_count()), false);
    covered[static_cast<std::size_t>(u)] = covered[static_cast<std::size_t>(v)] = true;
    std::vector<int> chosen{e};
    bool found = false;
    detail::enumerate_factors_impl(g, covered, chosen, [&](const std::vector<int>&) {
        found = true;
        return false;
    });
    return found;
}

// True iff g has at least one edge and every edge lies in some 1-factor.
inline bool is_one_extendable(const Graph& g) {
    if (g.edge_count() == 0) return false;
    for (int e = 0; e < g.edge_count(); ++e)
        if (!edge_in_some_factor(g, e)) return false;
    return true;
}

// True iff g - J has a 1-factor (the empty remainder counts as matched).
inline bool is_central(const Graph& g, const std::vector<int>& j_vertices) {
    return has_one_factor(delete_vertices(g, j_vertices).graph);
}

// For a 1-extendable non-bipartite graph, the first edge pair {e1, e2} in
// lexicographic index order whose removal leaves a bipartite 1-extendable
// graph.  Precondition violations throw; "no witness" is std::nullopt.
inline std::optional<std::pair<int, int>> near_bipartite_witness(const Graph& g) {
    if (!is_one_extendable(g)) throw std::invalid_argument("near_bipartite_witness: graph is not 1-extendable");
    if (is_bipartite(g)) throw std::invalid_argument("near_bipartite_witness: graph is bipartite");
    for (int e1 = 0; e1 < g.edge_count(); ++e1)
        for (int e2 = e1 + 1; e2 < g.edge_count(); ++e2) {
            Graph reduced = delete_edges(g, {e1, e2});
            if (is_bipartite(reduced) && is_one_extendable(reduced)) return std::make_pair(e1, e2);
        }
    return std::nullopt;
}

// The vertex-disjoint even cycles of F1 (symmetric difference) F2, each
// alternating with respect to both factors.  Cycles are listed with their
// smallest vertex first, smaller cycle-neighbor second, sorted.
inline std::vector<std::vector<int>> symmetric_difference_cycles(const Graph& g, const OneFactor& f1, const OneFactor& f2) {
    if (f1.vertex_count() != g.vertex_count() || f2.vertex_count() != g.vertex_count())
        throw std::invalid_argument("symmetric_difference_cycles: factor/graph mismatch");
    std::vector<std::vector<int>> cycles;
    std::vector<bool> done(static_cast<std::size_t>(g.vertex_count()), false);
    for (int s = 0; s < g.vertex_count(); ++s) {
        if (done[static_cast<std::size_t>(s)]) continue;
        if (f1.partner(s) == f2.partner(s)) {
            done[static_cast<std::size_t>(s)] = true;
            continue;
        }
        // Walk F1-edge, F2-edge, F1-edge, ... until back at s.
        std::vector<int> cyc;
        int v = s;
        bool use_f1 = true;
        do {
            cyc.push_back(v);
            done[static_cast<std::size_t>(v)] = true;
            v = use_f1 ? f1.partner(v) : f2.partner(v);
            use_f1 = !use_f1;
        } while (v != s);
        if (cyc[1] > cyc.back()) std::reverse(cyc.begin() + 1, cyc.end());
        cycles.push_back(std::move(cyc));
    }
    std::sort(cycles.begin(), cycles.end());
    return cycles;
}

namespace detail {
inline int permutation_sign(const std::vector<int>& p) {
    int sign = 1;
    for (std::size_t i = 0; i < p.size(); ++i)
        for (std::size_t j = i + 1; j < p.size(); ++j)
            if (p[i] > p[j]) sign = -sign;
    return sign;
}
}  // namespace detail

// Sign of the 1-factor under orientation d: the sign of the permutation
// (i1 j1 i2 j2 ...) in canonical vertex order times -1 for every matched edge
// oriented against its listed direction.  Independent of pair order and of
// which endpoint is listed first.
inline int factor_sign(const Graph& g, const Orientation& d, const OneFactor& f) {
    if (f.vertex_count() != g.vertex_count()) throw std::invalid_argument("factor_sign: factor/graph mismatch");
    if (d.bits.size() != static_cast<std::size_t>(g.edge_count()))
        throw std::invalid_argument("factor_sign: orientation/graph mismatch");
    std::vector<int> perm;
    std::vector<bool> used(static_cast<std::size_t>(g.vertex_count()), false);
    int direction = 1;
    for (int v = 0; v < g.vertex_count(); ++v) {
        if (used[static_cast<std::size_t>(v)]) continue;
        int w = f.partner(v);
        used[static_cast<std::size_t>(v)] = used[static_cast<std::size_t>(w)] = true;
        perm.push_back(v);
        perm.push_back(w);
        auto e = g.edge_index(v, w);
        auto [tail, head] = d.directed(g, *e);
        (void)head;
        if (tail != v) direction = -direction;
    }
    return detail::permutation_sign(perm) * direction;
}

inline SignedFactor signed_factor(const Graph& g, const Orientation& d, const OneFactor& f) {
    return SignedFactor{f, factor_sign(g, d, f)};
}

}  // namespace pfaff
