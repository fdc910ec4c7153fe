#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "pfaff/caps.hpp"
#include "pfaff/cycles.hpp"
#include "pfaff/graph.hpp"
#include "pfaff/matching.hpp"
#include "pfaff/pfaffian.hpp"

namespace pfaff {

// ---------------------------------------------------------------------------
// Graph isomorphism (small graphs, degree-refined backtracking)

namespace detail {

inline std::vector<std::vector<int>> neighbor_degree_profiles(const Graph& g) {
    std::vector<std::vector<int>> prof(static_cast<std::size_t>(g.vertex_count()));
    for (int v = 0; v < g.vertex_count(); ++v) {
        for (auto [w, e] : g.neighbors(v)) {
            (void)e;
            prof[static_cast<std::size_t>(v)].push_back(g.degree(w));
        }
        std::sort(prof[static_cast<std::size_t>(v)].begin(), prof[static_cast<std::size_t>(v)].end());
    }
    return prof;
}

// Maps vertices of g onto h in the given order; adjacency and non-adjacency
// must both be preserved against all previously mapped vertices.
inline bool iso_backtrack(const Graph& g, const Graph& h, std::vector<int>& map_gh, std::vector<bool>& used,
                          const std::vector<int>& order, std::size_t pos) {
    if (pos == order.size()) return true;
    const int v = order[pos];
    for (int w = 0; w < h.vertex_count(); ++w) {
        if (used[static_cast<std::size_t>(w)] || g.degree(v) != h.degree(w)) continue;
        bool ok = true;
        for (std::size_t x = 0; x < pos && ok; ++x) {
            const int u = order[x];
            const int mu = map_gh[static_cast<std::size_t>(u)];
            if (g.has_edge(v, u) != h.has_edge(w, mu)) ok = false;
        }
        if (!ok) continue;
        map_gh[static_cast<std::size_t>(v)] = w;
        used[static_cast<std::size_t>(w)] = true;
        if (iso_backtrack(g, h, map_gh, used, order, pos + 1)) return true;
        map_gh[static_cast<std::size_t>(v)] = -1;
        used[static_cast<std::size_t>(w)] = false;
    }
    return false;
}

}  // namespace detail

inline bool is_isomorphic(const Graph& g, const Graph& h) {
    if (g.vertex_count() != h.vertex_count() || g.edge_count() != h.edge_count()) return false;
    if (g.vertex_count() > 16) throw std::invalid_argument("is_isomorphic: more than 16 vertices");
    std::vector<int> dg, dh;
    for (int v = 0; v < g.vertex_count(); ++v) dg.push_back(g.degree(v));
    for (int v = 0; v < h.vertex_count(); ++v) dh.push_back(h.degree(v));
    std::sort(dg.begin(), dg.end());
    std::sort(dh.begin(), dh.end());
    if (dg != dh) return false;
    auto pg = detail::neighbor_degree_profiles(g);
    auto ph = detail::neighbor_degree_profiles(h);
    std::sort(pg.begin(), pg.end());
    std::sort(ph.begin(), ph.end());
    if (pg != ph) return false;

    std::vector<int> order(static_cast<std::size_t>(g.vertex_count()));
    for (int v = 0; v < g.vertex_count(); ++v) order[static_cast<std::size_t>(v)] = v;
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        if (g.degree(a) != g.degree(b)) return g.degree(a) > g.degree(b);
        return a < b;
    });
    std::vector<int> map_gh(static_cast<std::size_t>(g.vertex_count()), -1);
    std::vector<bool> used(static_cast<std::size_t>(h.vertex_count()), false);
    return detail::iso_backtrack(g, h, map_gh, used, order, 0);
}

// ---------------------------------------------------------------------------
// Simple cycle enumeration (used for odd-cycle contraction search)

namespace detail {

template <typename Emit>
void simple_cycle_walk(const Graph& g, int v0, std::vector<int>& path, std::vector<bool>& on_path, Emit&& emit) {
    const int cur = path.back();
    for (auto [w, e] : g.neighbors(cur)) {
        (void)e;
        if (w == v0 && path.size() >= 3 && path[1] < path.back()) emit(path);
        if (w <= v0 || on_path[static_cast<std::size_t>(w)]) continue;
        on_path[static_cast<std::size_t>(w)] = true;
        path.push_back(w);
        simple_cycle_walk(g, v0, path, on_path, emit);
        path.pop_back();
        on_path[static_cast<std::size_t>(w)] = false;
    }
}

}  // namespace detail

// All simple cycles, minimum vertex first and smaller neighbor second, sorted
// by length then lexicographically.  length_parity filters to odd (1) or
// even (0) cycle lengths.
inline std::vector<std::vector<int>> enumerate_simple_cycles(const Graph& g, std::optional<int> length_parity = {},
                                                             const Caps& caps = {}) {
    std::vector<std::vector<int>> out;
    std::vector<bool> on_path(static_cast<std::size_t>(g.vertex_count()), false);
    for (int v0 = 0; v0 < g.vertex_count(); ++v0) {
        std::vector<int> path{v0};
        on_path[static_cast<std::size_t>(v0)] = true;
        detail::simple_cycle_walk(g, v0, path, on_path, [&](const std::vector<int>& cyc) {
            if (length_parity && static_cast<int>(cyc.size() % 2) != *length_parity) return;
            if (out.size() >= caps.max_cycles) throw cap_exceeded("simple-cycle enumeration", caps.max_cycles);
            out.push_back(cyc);
        });
        on_path[static_cast<std::size_t>(v0)] = false;
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        return a < b;
    });
    return out;
}

// ---------------------------------------------------------------------------
// Generalized Wagner graphs

// Membership certificate: an independent edge pair R = {e, f} whose removal
// leaves a bipartite 1-extendable graph, a 1-factor avoiding R, and two
// F-alternating cycles relative to which e and f are skew.
struct WagnerWitness {
    VertexPair e, f;
    OneFactor factor;
    AlternatingCycle c1, c2;
};

inline bool verify_wagner_witness(const Graph& g, const WagnerWitness& w) {
    auto ei = g.edge_index(w.e.first, w.e.second);
    auto fi = g.edge_index(w.f.first, w.f.second);
    if (!ei || !fi) return false;
    if (!is_one_extendable(g)) return false;
    Graph reduced = delete_edges(g, {*ei, *fi});
    if (!is_bipartite(reduced) || !is_one_extendable(reduced)) return false;
    if (w.factor.contains_edge(*ei) || w.factor.contains_edge(*fi)) return false;
    for (const AlternatingCycle* c : {&w.c1, &w.c2}) {
        try {
            AlternatingCycle::create(g, w.factor, c->vertices());
        } catch (const std::invalid_argument&) {
            return false;
        }
    }
    try {
        return are_skew(g, w.e, w.f, w.c1, w.c2);
    } catch (const std::invalid_argument&) {
        return false;
    }
}

namespace detail {

// Deterministic search over edge pairs R, admissible factors, and cycle
// pairs.  When a `preferred` factor is given, a first pass scans every R
// with that factor alone, so a preferred-factor witness wins whenever one
// exists; the second pass tries the remaining factors in enumeration order.
// `budget` counts (R, factor) combinations and is shared with callers.
inline std::optional<WagnerWitness> wagner_search(const Graph& g, const std::optional<OneFactor>& preferred,
                                                  const Caps& caps, std::size_t& budget) {
    if (g.edge_count() == 0 || is_bipartite(g) || !is_one_extendable(g)) return std::nullopt;

    const std::vector<OneFactor> factors = enumerate_one_factors(g, caps);
    std::map<std::vector<int>, std::vector<AlternatingCycle>> cycle_cache;
    auto cycles_of = [&](const OneFactor& f) -> const std::vector<AlternatingCycle>& {
        auto key = f.edge_indices();
        auto it = cycle_cache.find(key);
        if (it == cycle_cache.end()) it = cycle_cache.emplace(std::move(key), enumerate_alternating_cycles(g, f, caps)).first;
        return it->second;
    };

    auto try_factor = [&](int e1, int e2, const OneFactor& f) -> std::optional<WagnerWitness> {
        if (budget == 0) throw budget_exhausted("generalized Wagner witness", caps.search_budget);
        --budget;
        auto [a, b] = g.edge(e1);
        auto [c, d] = g.edge(e2);
        const auto& cycles = cycles_of(f);
        std::vector<const AlternatingCycle*> through;
        for (const AlternatingCycle& cyc : cycles)
            if (cyc.contains_edge(e1) && cyc.contains_edge(e2)) through.push_back(&cyc);
        for (std::size_t i = 0; i < through.size(); ++i)
            for (std::size_t j = i + 1; j < through.size(); ++j)
                if (are_skew(g, {a, b}, {c, d}, *through[i], *through[j]))
                    return WagnerWitness{{a, b}, {c, d}, f, *through[i], *through[j]};
        return std::nullopt;
    };

    // Admissible R pairs together with the factors of g - R (the factors of g
    // avoiding both edges); g - R must be 1-extendable and bipartite.
    std::vector<std::pair<std::pair<int, int>, std::vector<const OneFactor*>>> candidates;
    for (int e1 = 0; e1 < g.edge_count(); ++e1) {
        auto [a, b] = g.edge(e1);
        for (int e2 = e1 + 1; e2 < g.edge_count(); ++e2) {
            auto [c, d] = g.edge(e2);
            if (a == c || a == d || b == c || b == d) continue;  // R must be independent
            std::vector<const OneFactor*> admissible;
            BitVec covered(static_cast<std::size_t>(g.edge_count()));
            for (const OneFactor& f : factors) {
                if (f.contains_edge(e1) || f.contains_edge(e2)) continue;
                admissible.push_back(&f);
                for (std::size_t bit : f.edge_set().set_bits()) covered.set(bit);
            }
            if (admissible.empty()) continue;
            bool one_extendable = true;
            for (int e = 0; e < g.edge_count() && one_extendable; ++e)
                if (e != e1 && e != e2 && !covered.get(static_cast<std::size_t>(e))) one_extendable = false;
            if (!one_extendable) continue;
            if (!is_bipartite(delete_edges(g, {e1, e2}))) continue;
            candidates.push_back({{e1, e2}, std::move(admissible)});
        }
    }

    if (preferred) {
        for (const auto& [r, admissible] : candidates) {
            if (preferred->contains_edge(r.first) || preferred->contains_edge(r.second)) continue;
            bool present = false;
            for (const OneFactor* f : admissible) present = present || *f == *preferred;
            if (!present) continue;
            if (auto w = try_factor(r.first, r.second, *preferred)) return w;
        }
    }
    for (const auto& [r, admissible] : candidates)
        for (const OneFactor* f : admissible) {
            if (preferred && *f == *preferred) continue;  // already tried in the first pass
            if (auto w = try_factor(r.first, r.second, *f)) return w;
        }
    return std::nullopt;
}

}  // namespace detail

inline std::optional<WagnerWitness> generalized_wagner_witness(const Graph& g, const Caps& caps = {}) {
    std::size_t budget = caps.search_budget;
    return detail::wagner_search(g, std::nullopt, caps, budget);
}

// ---------------------------------------------------------------------------
// Central generalized-Wagner subgraph search

struct CentralWagnerResult {
    std::vector<int> vertices;    // original vertex ids of the subgraph
    Graph subgraph;               // the subgraph searched (indices into `vertices`)
    WagnerWitness witness;        // in subgraph indexing
    bool factor_induced = false;  // witness factor equals the restriction of F
};

namespace detail {

template <typename Visit>
bool for_each_subset_of_size(int n, int k, Visit&& visit) {
    if (k > n) return true;
    std::vector<int> subset(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) subset[static_cast<std::size_t>(i)] = i;
    while (true) {
        if (!visit(subset)) return false;
        int i = k - 1;
        while (i >= 0 && subset[static_cast<std::size_t>(i)] == n - k + i) --i;
        if (i < 0) return true;
        ++subset[static_cast<std::size_t>(i)];
        for (int j = i + 1; j < k; ++j) subset[static_cast<std::size_t>(j)] = subset[static_cast<std::size_t>(j - 1)] + 1;
    }
}

// Edges lying in at least one 1-factor.  A factor consists of such edges
// only, so the core is 1-extendable whenever it has an edge at all.
inline Graph one_extendable_core(const Graph& g) {
    std::vector<int> dead;
    for (int e = 0; e < g.edge_count(); ++e)
        if (!edge_in_some_factor(g, e)) dead.push_back(e);
    return dead.empty() ? g : delete_edges(g, dead);
}

}  // namespace detail

// Bounded search for a central subgraph that is a generalized Wagner graph.
// Candidate vertex sets are enumerated by increasing complement size, so the
// whole graph is tried first; per candidate, the induced subgraph is tried
// and then its 1-extendable core.  The restriction of F is preferred as the
// witness factor whenever it survives.  Precondition: (g, F) has no even
// F-orientation.  Budget exhaustion throws and is never reported as "none".
inline std::optional<CentralWagnerResult> central_wagner_subgraph(const Graph& g, const OneFactor& f,
                                                                  const Caps& caps = {}) {
    if (find_even_orientation(g, f, caps))
        throw std::invalid_argument("central_wagner_subgraph: an even F-orientation exists");
    const int n = g.vertex_count();
    std::size_t budget = caps.search_budget;
    std::optional<CentralWagnerResult> found;

    for (int csize = 0; csize <= n && !found; csize += 2) {
        detail::for_each_subset_of_size(n, csize, [&](const std::vector<int>& deleted) {
            if (csize > 0) {
                std::vector<bool> in_s(static_cast<std::size_t>(n), false);
                for (int v : deleted) in_s[static_cast<std::size_t>(v)] = true;
                std::vector<int> others;
                for (int v = 0; v < n; ++v)
                    if (!in_s[static_cast<std::size_t>(v)]) others.push_back(v);
                if (!has_one_factor(delete_vertices(g, others).graph)) return true;  // complement not matchable
            }
            InducedSubgraph cand = delete_vertices(g, deleted);

            // Restriction of F, defined only when F matches the kept vertices
            // among themselves.
            std::optional<OneFactor> induced_factor;
            {
                std::vector<VertexPair> pairs;
                bool conformal = true;
                for (int new_v = 0; new_v < cand.graph.vertex_count() && conformal; ++new_v) {
                    int old_v = cand.kept[static_cast<std::size_t>(new_v)];
                    int old_p = f.partner(old_v);
                    int new_p = cand.old_to_new[static_cast<std::size_t>(old_p)];
                    if (new_p < 0)
                        conformal = false;
                    else if (new_v < new_p)
                        pairs.push_back({new_v, new_p});
                }
                if (conformal) induced_factor = OneFactor::from_pairs(cand.graph, pairs);
            }

            std::vector<Graph> attempts{cand.graph};
            Graph core = detail::one_extendable_core(cand.graph);
            if (!(core == cand.graph)) attempts.push_back(core);
            for (const Graph& host : attempts) {
                auto witness = detail::wagner_search(host, induced_factor, caps, budget);
                if (witness) {
                    found = CentralWagnerResult{cand.kept, host, *witness,
                                                induced_factor && witness->factor == *induced_factor};
                    return false;
                }
            }
            return true;
        });
    }
    return found;
}

// ---------------------------------------------------------------------------
// Even-subdivision recognition and reduction traces

// Realizes the current graph as an even subdivision of a target: one path per
// target edge, each with an even number of internal (degree-2) vertices.
struct SubdivisionWitness {
    std::vector<int> branch_vertices;       // smoothed vertex -> host vertex
    std::vector<std::vector<int>> paths;    // host paths realizing the smoothed edges
};

// Suppresses maximal degree-2 chains and checks that the smoothed graph is
// isomorphic to `target` with every suppressed chain of even internal length.
// Only meaningful for targets of minimum degree >= 3.
inline std::optional<SubdivisionWitness> even_subdivision_witness(const Graph& h, const Graph& target) {
    int target_min_degree = target.vertex_count() == 0 ? 0 : target.degree(0);
    for (int v = 0; v < target.vertex_count(); ++v) target_min_degree = std::min(target_min_degree, target.degree(v));
    if (target_min_degree < 3) return std::nullopt;

    std::vector<int> branch;
    std::vector<int> smoothed_id(static_cast<std::size_t>(h.vertex_count()), -1);
    for (int v = 0; v < h.vertex_count(); ++v) {
        if (h.degree(v) < 2) return std::nullopt;
        if (h.degree(v) != 2) {
            smoothed_id[static_cast<std::size_t>(v)] = static_cast<int>(branch.size());
            branch.push_back(v);
        }
    }
    if (branch.empty()) return std::nullopt;

    std::vector<bool> edge_used(static_cast<std::size_t>(h.edge_count()), false);
    std::vector<VertexPair> smoothed_edges;
    std::vector<std::vector<int>> paths;
    for (int b : branch) {
        for (auto [w0, e0] : h.neighbors(b)) {
            if (edge_used[static_cast<std::size_t>(e0)]) continue;
            std::vector<int> path{b};
            int prev = b, cur = w0, edge = e0;
            edge_used[static_cast<std::size_t>(e0)] = true;
            while (h.degree(cur) == 2) {
                path.push_back(cur);
                auto nbrs = h.neighbors(cur);
                auto [n0, f0] = nbrs[0];
                auto [n1, f1] = nbrs[1];
                if (n0 == prev && f0 != edge) {
                    prev = cur;
                    cur = n0;
                    edge = f0;
                } else if (n0 != prev) {
                    prev = cur;
                    cur = n0;
                    edge = f0;
                } else {
                    prev = cur;
                    cur = n1;
                    edge = f1;
                }
                edge_used[static_cast<std::size_t>(edge)] = true;
            }
            path.push_back(cur);
            if (cur == b) return std::nullopt;  // chain loops back: not a subdivision of a simple graph
            if (path.size() % 2 != 0) return std::nullopt;  // odd internal count
            int sb = smoothed_id[static_cast<std::size_t>(b)];
            int sc = smoothed_id[static_cast<std::size_t>(cur)];
            smoothed_edges.push_back({std::min(sb, sc), std::max(sb, sc)});
            paths.push_back(std::move(path));
        }
    }
    for (bool used : edge_used)
        if (!used) return std::nullopt;  // leftover degree-2 cycle component

    std::vector<VertexPair> dedup = smoothed_edges;
    std::sort(dedup.begin(), dedup.end());
    if (std::adjacent_find(dedup.begin(), dedup.end()) != dedup.end()) return std::nullopt;  // parallel chains

    Graph smoothed(static_cast<int>(branch.size()), smoothed_edges);
    if (!is_isomorphic(smoothed, target)) return std::nullopt;
    return SubdivisionWitness{branch, paths};
}

struct ReductionStep {
    Graph graph;                       // graph before this contraction
    std::vector<int> contracted_cycle;
};

struct ReductionTrace {
    std::vector<ReductionStep> steps;
    Graph final_graph;
    Graph matched_target;
    std::optional<SubdivisionWitness> subdivision;  // set when the final graph matched an even subdivision
};

inline bool validate_reduction_trace(const Graph& g, const ReductionTrace& trace) {
    Graph cur = g;
    for (const ReductionStep& step : trace.steps) {
        if (!(step.graph == cur)) return false;
        try {
            cur = contract_odd_cycle(cur, step.contracted_cycle).graph;
        } catch (const std::invalid_argument&) {
            return false;
        }
    }
    if (!(cur == trace.final_graph)) return false;
    if (trace.subdivision) return even_subdivision_witness(cur, trace.matched_target).has_value();
    if (cur.vertex_count() != trace.matched_target.vertex_count()) return false;
    return is_isomorphic(cur, trace.matched_target);
}

namespace detail {

inline std::optional<ReductionTrace> reduction_search_impl(const Graph& cur, const std::vector<Graph>& targets,
                                                           int depth_left, const Caps& caps, std::size_t& budget) {
    if (budget == 0) throw budget_exhausted("reduction search", caps.search_budget);
    --budget;
    for (const Graph& t : targets) {
        if (cur.vertex_count() == t.vertex_count() && cur.edge_count() == t.edge_count() && is_isomorphic(cur, t))
            return ReductionTrace{{}, cur, t, std::nullopt};
        if (auto w = even_subdivision_witness(cur, t)) return ReductionTrace{{}, cur, t, std::move(w)};
    }
    if (depth_left == 0) return std::nullopt;
    for (const std::vector<int>& cyc : enumerate_simple_cycles(cur, 1, caps)) {
        ContractionResult contracted = contract_odd_cycle(cur, cyc);
        auto rest = reduction_search_impl(contracted.graph, targets, depth_left - 1, caps, budget);
        if (rest) {
            rest->steps.insert(rest->steps.begin(), ReductionStep{cur, cyc});
            return rest;
        }
    }
    return std::nullopt;
}

}  // namespace detail

// Depth-first search over odd-cycle contractions, succeeding when the current
// graph is isomorphic to a target or to an even subdivision of one.
inline std::optional<ReductionTrace> reduction_search(const Graph& g, const std::vector<Graph>& targets, int max_depth,
                                                      const Caps& caps = {}) {
    if (max_depth < 0 || max_depth > 4) throw std::invalid_argument("reduction_search: max_depth must be in [0, 4]");
    std::size_t budget = caps.search_budget;
    return detail::reduction_search_impl(g, targets, max_depth, caps, budget);
}

// Confirms the closure prediction: a graph reducible to a simply bad target
// should itself admit a simply-bad certificate found by direct search.
inline bool verify_simply_bad_closure(const Graph& g, const ReductionTrace& trace, const Caps& caps = {}) {
    if (!validate_reduction_trace(g, trace)) throw std::invalid_argument("verify_simply_bad_closure: trace invalid for g");
    return find_simply_bad_certificate_any(g, caps).has_value();
}

}  // namespace pfaff
