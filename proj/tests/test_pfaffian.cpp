#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "pfaff/catalog.hpp"
#include "pfaff/pfaffian.hpp"

using namespace pfaff;

namespace {

Graph cycle_graph(int n) {
    std::vector<VertexPair> edges;
    for (int i = 0; i < n; ++i) edges.push_back({i, (i + 1) % n});
    return Graph(n, edges);
}

bool all_members_even(const Graph& g, const SimplyBadCertificate& cert) {
    for (const auto& c : cert.family.members)
        if (omega_cycle(g, cert.orientation, c) != 0) return false;
    return true;
}

}  // namespace

TEST_CASE("orientation system shapes") {
    Graph c4 = cycle_graph(4);
    OneFactor f = OneFactor::from_pairs(c4, {{0, 1}, {2, 3}});
    auto sys = build_orientation_system(c4, f, Orientation::all_forward(c4));
    CHECK(sys.cycles.size() == 1);
    CHECK(sys.cycle_edge.cols == 4);

    const CatalogEntry& k = catalog_graph("k33");
    auto ksys = build_orientation_system(k.graph, k.factor("F3"), Orientation::all_forward(k.graph));
    CHECK(ksys.cycles.size() == 5);
    CHECK(ksys.cycle_edge.cols == 9);
}

TEST_CASE("even and odd orientation existence on the catalog") {
    const CatalogEntry& w = catalog_graph("wagner");
    CHECK(find_even_orientation(w.graph, w.factor("F1")).has_value());
    CHECK(find_odd_orientation(w.graph, w.factor("F1")).has_value());
    CHECK_FALSE(find_even_orientation(w.graph, w.factor("F2")).has_value());
    CHECK(find_odd_orientation(w.graph, w.factor("F2")).has_value());

    const CatalogEntry& k = catalog_graph("k33");
    CHECK(find_even_orientation(k.graph, k.factor("F3")).has_value());
    CHECK_FALSE(find_odd_orientation(k.graph, k.factor("F3")).has_value());

    Graph c4 = cycle_graph(4);
    OneFactor f = OneFactor::from_pairs(c4, {{0, 1}, {2, 3}});
    CHECK(find_even_orientation(c4, f).has_value());
    CHECK(find_odd_orientation(c4, f).has_value());
}

TEST_CASE("returned orientations satisfy the requested parity on every cycle") {
    const CatalogEntry& w = catalog_graph("wagner");
    auto cycles = enumerate_alternating_cycles(w.graph, w.factor("F1"));
    auto even = find_even_orientation(w.graph, w.factor("F1"));
    auto odd = find_odd_orientation(w.graph, w.factor("F1"));
    REQUIRE(even);
    REQUIRE(odd);
    for (const auto& c : cycles) {
        CHECK(omega_cycle(w.graph, *even, c) == 0);
        CHECK(omega_cycle(w.graph, *odd, c) == 1);
    }
}

TEST_CASE("pfaffian decision on the catalog") {
    CHECK(is_pfaffian(catalog_graph("wagner").graph).pfaffian);
    CHECK_FALSE(is_pfaffian(catalog_graph("k33").graph).pfaffian);
    CHECK_FALSE(is_pfaffian(catalog_graph("petersen").graph).pfaffian);
    CHECK_FALSE(is_pfaffian(catalog_graph("cubeplex").graph).pfaffian);
    CHECK_FALSE(is_pfaffian(catalog_graph("twinplex").graph).pfaffian);
}

TEST_CASE("pfaffian decision on degenerate inputs") {
    // Trees with a 1-factor have no alternating cycles at all.
    Graph p4(4, {{0, 1}, {1, 2}, {2, 3}});
    auto r = is_pfaffian(p4);
    CHECK(r.pfaffian);
    CHECK_FALSE(r.vacuous);
    REQUIRE(r.witness.has_value());

    auto vac = is_pfaffian(Graph(3, {{0, 1}, {1, 2}}));
    CHECK(vac.pfaffian);
    CHECK(vac.vacuous);
    CHECK_FALSE(vac.witness.has_value());
}

TEST_CASE("odd F-sets") {
    const CatalogEntry& k = catalog_graph("k33");
    auto cert = find_odd_f_set(k.graph, k.factor("F3"));
    REQUIRE(cert.has_value());
    CHECK(cert->family.members.size() == 5);
    CHECK(is_zero_sum(cert->family));

    // The paper family itself is zero-sum with odd size.
    std::vector<AlternatingCycle> paper;
    for (const auto& cyc : k.cycle_family("A")) paper.push_back(AlternatingCycle::create(k.graph, k.factor("F3"), cyc));
    CycleFamily fam = make_family(k.graph, k.factor("F3"), paper);
    CHECK(is_zero_sum(fam));
    CHECK(fam.members.size() % 2 == 1);

    Graph c4 = cycle_graph(4);
    CHECK_FALSE(find_odd_f_set(c4, OneFactor::from_pairs(c4, {{0, 1}, {2, 3}})).has_value());

    const CatalogEntry& cub = catalog_graph("cubeplex");
    auto cub_cert = find_odd_f_set(cub.graph, cub.factor("F1"));
    REQUIRE(cub_cert.has_value());
    CHECK(cub_cert->family.members.size() % 2 == 1);
    std::vector<AlternatingCycle> cub_paper;
    for (const auto& cyc : cub.cycle_family("A"))
        cub_paper.push_back(AlternatingCycle::create(cub.graph, cub.factor("F1"), cyc));
    CHECK(is_zero_sum(make_family(cub.graph, cub.factor("F1"), cub_paper)));
}

TEST_CASE("wagner F1 admits no odd F-set") {
    // Both an even and an odd F1-orientation exist, which a zero-sum family of
    // odd size would forbid.
    const CatalogEntry& w = catalog_graph("wagner");
    CHECK_FALSE(find_odd_f_set(w.graph, w.factor("F1")).has_value());
}

TEST_CASE("bad certificates") {
    const CatalogEntry& k = catalog_graph("k33");
    auto cert = find_bad_certificate(k.graph, k.factor("F3"));
    REQUIRE(cert.has_value());
    CHECK(cert->family.members.size() == 5);
    int evens = 0;
    for (std::size_t i = 0; i < cert->family.members.size(); ++i) {
        CHECK(cert->even_flags[i] == (omega_cycle(k.graph, cert->orientation, cert->family.members[i]) == 0));
        evens += cert->even_flags[i] ? 1 : 0;
    }
    CHECK(evens == 3);  // the two 6-cycles are odd under the all-forward reference
    CHECK(evens % 2 == 1);

    const CatalogEntry& w = catalog_graph("wagner");
    CHECK_FALSE(find_bad_certificate(w.graph, w.factor("F1")).has_value());
    CHECK_FALSE(find_bad_certificate(w.graph, w.factor("F2")).has_value());

    const CatalogEntry& pet = catalog_graph("petersen");
    auto pcert = find_bad_certificate(pet.graph, pet.factor("F1"));
    REQUIRE(pcert.has_value());
    CHECK(is_zero_sum(pcert->family));
    int pevens = 0;
    for (bool b : pcert->even_flags) pevens += b ? 1 : 0;
    CHECK(pevens % 2 == 1);
}

TEST_CASE("bad certificate evenly-oriented parity is orientation independent") {
    const CatalogEntry& k = catalog_graph("k33");
    auto cert = find_bad_certificate(k.graph, k.factor("F3"));
    REQUIRE(cert.has_value());
    std::mt19937_64 rng(51);
    for (int trial = 0; trial < 100; ++trial) {
        Orientation d(static_cast<std::size_t>(k.graph.edge_count()));
        for (int e = 0; e < k.graph.edge_count(); ++e)
            if (rng() & 1u) d.bits.set(static_cast<std::size_t>(e));
        int evens = 0;
        for (const auto& c : cert->family.members) evens += omega_cycle(k.graph, d, c) == 0 ? 1 : 0;
        CHECK(evens % 2 == 1);
    }
}

TEST_CASE("simply bad certificates on the catalog") {
    const CatalogEntry& twin = catalog_graph("twinplex");
    auto cert = find_simply_bad_certificate(twin.graph, twin.factor("F2"));
    REQUIRE(cert.has_value());
    CHECK(cert->family.members.size() == 5);
    CHECK(is_zero_sum(cert->family));
    CHECK(all_members_even(twin.graph, *cert));

    // The paper's twinplex family admits an all-even orientation: solve the
    // parity subsystem for exactly those five cycles.
    {
        std::vector<AlternatingCycle> paper;
        for (const auto& cyc : twin.cycle_family("A"))
            paper.push_back(AlternatingCycle::create(twin.graph, twin.factor("F2"), cyc));
        BitMatrix rows(0, static_cast<std::size_t>(twin.graph.edge_count()));
        BitVec rhs(paper.size());
        Orientation d0 = Orientation::all_forward(twin.graph);
        for (std::size_t i = 0; i < paper.size(); ++i) {
            rows.append_row(paper[i].edge_set());
            if (omega_cycle(twin.graph, d0, paper[i])) rhs.set(i);
        }
        auto sol = solve(rows, rhs);
        REQUIRE(sol.has_value());
        Orientation all_even = d0.flipped(sol->particular);
        for (const auto& c : paper) CHECK(omega_cycle(twin.graph, all_even, c) == 0);
    }

    const CatalogEntry& k = catalog_graph("k33");
    auto kcert = find_simply_bad_certificate(k.graph, k.factor("F3"));
    REQUIRE(kcert.has_value());
    CHECK(kcert->family.members.size() == 5);
    CHECK(all_members_even(k.graph, *kcert));

    const CatalogEntry& w = catalog_graph("wagner");
    CHECK_FALSE(find_simply_bad_certificate(w.graph, w.factor("F1")).has_value());
    CHECK_FALSE(find_simply_bad_certificate(w.graph, w.factor("F2")).has_value());

    const CatalogEntry& pet = catalog_graph("petersen");
    auto pcert = find_simply_bad_certificate(pet.graph, pet.factor("F1"));
    REQUIRE(pcert.has_value());
    CHECK(all_members_even(pet.graph, *pcert));
}

TEST_CASE("cubeplex reference orientation makes the whole paper family even") {
    const CatalogEntry& cub = catalog_graph("cubeplex");
    const Orientation& d = *cub.reference_orientation;
    for (const auto& cyc : cub.cycle_family("A")) {
        AlternatingCycle c = AlternatingCycle::create(cub.graph, cub.factor("F1"), cyc);
        CHECK(omega_cycle(cub.graph, d, c) == 0);
    }
}

TEST_CASE("simply-bad search budget exhaustion is a distinct outcome") {
    const CatalogEntry& k = catalog_graph("k33");
    Caps starved;
    starved.search_budget = 0;
    CHECK_THROWS_AS((void)find_simply_bad_certificate(k.graph, k.factor("F3"), starved), budget_exhausted);
}

TEST_CASE("is_bad") {
    CHECK(is_bad(catalog_graph("k33").graph));
    CHECK_FALSE(is_bad(catalog_graph("wagner").graph));
    CHECK(is_bad(catalog_graph("cubeplex").graph));
    CHECK(is_bad(catalog_graph("petersen").graph));
    CHECK_THROWS_AS((void)is_bad(Graph(3, {{0, 1}})), std::invalid_argument);  // no 1-factor
}

TEST_CASE("brute force pfaffian oracle") {
    CHECK(brute_force_pfaffian(cycle_graph(4)));
    CHECK_FALSE(brute_force_pfaffian(catalog_graph("k33").graph));
    CHECK(brute_force_pfaffian(catalog_graph("wagner").graph));
    std::vector<VertexPair> big;
    for (int i = 0; i < 25; ++i) big.push_back({0, i + 1});
    CHECK_THROWS_AS((void)brute_force_pfaffian(Graph(26, big)), std::invalid_argument);
}

TEST_CASE("solver and brute force agree on random small graphs") {
    std::mt19937_64 rng(52);
    int compared = 0;
    for (int trial = 0; trial < 120; ++trial) {
        Graph g = oracle::random_graph(2 * (1 + static_cast<int>(rng() % 3)), 0.5, rng);
        if (g.edge_count() > 14) continue;
        auto f = first_one_factor(g);
        if (!f) continue;
        CHECK(find_odd_orientation(g, *f).has_value() == brute_force_pfaffian(g));
        CHECK(find_even_orientation(g, *f).has_value() == brute_force_even_orientation(g, *f));
        ++compared;
    }
    CHECK(compared > 40);
}

TEST_CASE("determinant oracle basics") {
    Graph edge(2, {{0, 1}});
    auto r = determinant_sign_oracle(edge, Orientation::all_forward(edge));
    CHECK(r.pfaffian_magnitude == 1);
    CHECK(r.is_pfaffian_orientation);

    CHECK_THROWS_AS((void)determinant_sign_oracle(Graph(3, {{0, 1}}), Orientation(1)), std::invalid_argument);
    CHECK_THROWS_AS((void)determinant_sign_oracle(Graph(18, {}), Orientation(0)), std::invalid_argument);
}

TEST_CASE("no orientation of k33 reaches the factor count") {
    const CatalogEntry& k = catalog_graph("k33");
    long long max_pf = 0;
    for (unsigned bits = 0; bits < 512; ++bits) {
        Orientation d(9);
        for (int e = 0; e < 9; ++e)
            if ((bits >> e) & 1u) d.bits.set(static_cast<std::size_t>(e));
        auto r = determinant_sign_oracle(k.graph, d);
        CHECK(r.pfaffian_magnitude < 6);
        CHECK_FALSE(r.is_pfaffian_orientation);
        max_pf = std::max(max_pf, r.pfaffian_magnitude);
    }
    CHECK(max_pf == 4);
}

TEST_CASE("determinant oracle confirms the wagner witness") {
    const CatalogEntry& w = catalog_graph("wagner");
    auto witness = find_odd_orientation(w.graph, w.factor("F1"));
    REQUIRE(witness.has_value());
    auto r = determinant_sign_oracle(w.graph, *witness);
    CHECK(r.is_pfaffian_orientation);
    CHECK(static_cast<std::size_t>(r.pfaffian_magnitude) == count_one_factors(w.graph));
    CHECK(count_one_factors(w.graph) == 7);
}

TEST_CASE("pfaffian magnitude equals the absolute factor sign sum") {
    std::mt19937_64 rng(53);
    for (int trial = 0; trial < 80; ++trial) {
        Graph g = oracle::random_graph(2 * (1 + static_cast<int>(rng() % 3)), 0.55, rng);
        Orientation d(static_cast<std::size_t>(g.edge_count()));
        for (int e = 0; e < g.edge_count(); ++e)
            if (rng() & 1u) d.bits.set(static_cast<std::size_t>(e));
        auto r = determinant_sign_oracle(g, d);  // also asserts the determinant is a perfect square
        long long sum = 0;
        auto factors = enumerate_one_factors(g);
        for (const auto& f : factors) sum += factor_sign(g, d, f);
        CHECK(r.pfaffian_magnitude == std::abs(sum));
        bool all_equal = true;
        for (const auto& f : factors) all_equal = all_equal && factor_sign(g, d, f) == factor_sign(g, d, factors[0]);
        if (!factors.empty()) CHECK(r.is_pfaffian_orientation == all_equal);
    }
}

TEST_CASE("simply-bad certificates are per-factor, badness is not") {
    // A 6-vertex non-Pfaffian graph whose first factor has no odd F-set at
    // all: simply-bad certification must quantify over factors, while bad
    // certificates exist for every factor.
    Graph g = parse_graph6("Ef~_");
    auto factors = enumerate_one_factors(g);
    REQUIRE(factors.size() == 7);
    CHECK_FALSE(is_pfaffian(g).pfaffian);
    CHECK_FALSE(brute_force_pfaffian(g));

    CHECK_FALSE(find_odd_f_set(g, factors[0]).has_value());
    CHECK_FALSE(find_simply_bad_certificate(g, factors[0]).has_value());
    for (const auto& f : factors) CHECK(find_bad_certificate(g, f).has_value());
    for (std::size_t i = 1; i < factors.size(); ++i) CHECK(find_simply_bad_certificate(g, factors[i]).has_value());

    auto any = find_simply_bad_certificate_any(g);
    REQUIRE(any.has_value());
    CHECK(is_zero_sum(any->family));
    CHECK(any->family.members.size() % 2 == 1);
}

TEST_CASE("parity obstruction: odd F-set forbids having both orientations") {
    for (const std::string& name : catalog_names()) {
        const CatalogEntry& e = catalog_graph(name);
        for (const auto& [fname, f] : e.factors) {
            (void)fname;
            if (find_odd_f_set(e.graph, f)) {
                bool both = find_even_orientation(e.graph, f).has_value() && find_odd_orientation(e.graph, f).has_value();
                CHECK_FALSE(both);
            }
        }
    }
}

TEST_CASE("factor families with even coverage and odd sign sum give odd-size families") {
    // For a non-Pfaffian graph carrying an even F-orientation, a set of
    // factors covering every edge an even number of times whose signs against
    // F multiply to -1 yields an alternating-cycle family of odd size.
    const CatalogEntry& k = catalog_graph("k33");
    const OneFactor& f = k.factor("F3");
    auto even_orientation = find_even_orientation(k.graph, f);
    REQUIRE(even_orientation.has_value());

    auto factors = enumerate_one_factors(k.graph);
    BitMatrix edges_by_factors(0, factors.size());
    {
        BitMatrix factors_by_edges(0, static_cast<std::size_t>(k.graph.edge_count()));
        for (const auto& fj : factors) factors_by_edges.append_row(fj.edge_set());
        edges_by_factors = factors_by_edges.transposed();
    }
    BitVec sign_functional(factors.size());
    for (std::size_t j = 0; j < factors.size(); ++j)
        if (factor_sign(k.graph, *even_orientation, f) * factor_sign(k.graph, *even_orientation, factors[j]) < 0)
            sign_functional.set(j);
    auto subset = kernel_functional_witness(edges_by_factors, sign_functional);
    REQUIRE(subset.has_value());  // exists because the graph is not Pfaffian
    std::vector<OneFactor> chosen;
    for (std::size_t j : subset->set_bits()) chosen.push_back(factors[j]);
    CycleFamily fam = family_from_factors(k.graph, f, chosen);
    CHECK(is_zero_sum(fam));
    CHECK(fam.members.size() % 2 == 1);
}
