#include <doctest.h>

#include <cmath>

#include "demograph/error.hpp"
#include "demograph/laplacian.hpp"
#include "demograph/metrics.hpp"
#include "demograph/propagation.hpp"
#include "oracles.hpp"

using namespace demograph;

namespace {

const CategoryScheme kScheme = CategoryScheme::default_scheme();

PropagationConfig config(double lambda, int t_end, bool masked, bool use_weights = false) {
    return PropagationConfig{lambda, t_end, masked, use_weights};
}

/// Random partition with roughly seed_share seeds and the rest validation
/// on a fixed label pattern.
NodePartition random_seeds(const Graph &g, double seed_share, std::uint64_t seed) {
    NodePartition p(g.node_count());
    Rng rng(seed);
    for (NodeIndex u = 0; u < g.node_count(); ++u) {
        const int label = static_cast<int>(u % 4);
        if (rng.next_bernoulli(seed_share))
            p.set_seed(u, label);
        else
            p.set_validation(u, label);
    }
    return p;
}

double max_abs_diff(const StateTable &a, const StateTable &b) {
    return (a - b).cwiseAbs().maxCoeff();
}

} // namespace

TEST_CASE("initial state: one-hot seeds, uniform others, informed = seeds") {
    Graph g = oracles::make_graph(3, {{0, 1}, {1, 2}});
    NodePartition p(3);
    p.set_seed(0, 2);
    auto s = init_state(g, p, kScheme);
    CHECK(s.current(0, 2) == 1.0);
    CHECK(s.current(0, 0) == 0.0);
    for (int c = 0; c < 4; ++c)
        CHECK(s.current(1, c) == 0.25);
    CHECK(s.informed[0] == 1);
    CHECK(s.informed[1] == 0);
    CHECK(s.t == 0);
}

TEST_CASE("degenerate single category gives the constant vector 1") {
    Graph g = oracles::make_graph(2, {{0, 1}});
    NodePartition p(2);
    p.set_seed(0, 0);
    const CategoryScheme single(std::vector<double>{}); // C = 1
    auto s = run(g, p, single, config(0.5, 5, true));
    CHECK(s.current.cols() == 1);
    CHECK(s.current(0, 0) == 1.0);
    CHECK(s.current(1, 0) == 1.0);
}

TEST_CASE("seed label outside the scheme is rejected") {
    Graph g = oracles::make_graph(2, {{0, 1}});
    NodePartition p(2);
    p.set_seed(0, 7);
    CHECK_THROWS_AS(init_state(g, p, kScheme), DataError);
}

TEST_CASE("single-edge update matches the hand substitution") {
    // s(seed, cat 0) -- b, lambda = 0.5: g_b = (0.625, 0.125, 0.125, 0.125)
    Graph g = oracles::make_graph(2, {{0, 1}});
    NodePartition p(2);
    p.set_seed(0, 0);
    auto s = init_state(g, p, kScheme);
    step(s, g, config(0.5, 1, true));
    CHECK(s.current(1, 0) == doctest::Approx(0.625).epsilon(1e-12));
    CHECK(s.current(1, 1) == doctest::Approx(0.125).epsilon(1e-12));
    CHECK(s.current(1, 2) == doctest::Approx(0.125).epsilon(1e-12));
    CHECK(s.current(1, 3) == doctest::Approx(0.125).epsilon(1e-12));
    CHECK(s.informed[1] == 1);
}

TEST_CASE("lambda 0 is an exact memory fixed point") {
    Graph g = oracles::gnm_random(40, 90, 5);
    auto p = random_seeds(g, 0.2, 17);
    auto s = run(g, p, kScheme, config(0.0, 25, true));
    auto s0 = init_state(g, p, kScheme);
    CHECK((s.current.array() == s0.initial.array()).all());
    auto u = run(g, p, kScheme, config(0.0, 25, false));
    CHECK((u.current.array() == s0.initial.array()).all());
}

TEST_CASE("masked wavefront: two-hop node stays at priors for one step") {
    Graph g = oracles::make_graph(3, {{0, 1}, {1, 2}}); // s - u - v, seed at 0
    NodePartition p(3);
    p.set_seed(0, 1);
    auto s = init_state(g, p, kScheme);
    step(s, g, config(0.5, 1, true));
    CHECK(s.informed[2] == 0);
    for (int c = 0; c < 4; ++c)
        CHECK(s.current(2, c) == 0.25);
    step(s, g, config(0.5, 1, true));
    CHECK(s.informed[2] == 1);
    CHECK(s.current(2, 1) > 0.25);
}

TEST_CASE("unmasked isolated node keeps its priors without error") {
    Graph g = oracles::make_graph(3, {{0, 1}}); // node 2 isolated
    NodePartition p(3);
    p.set_seed(0, 0);
    auto s = run(g, p, kScheme, config(0.7, 4, false));
    for (int c = 0; c < 4; ++c)
        CHECK(s.current(2, c) == 0.25);
    CHECK(s.informed[2] == 0);
}

TEST_CASE("zero iterations returns the initial state") {
    Graph g = oracles::make_graph(2, {{0, 1}});
    NodePartition p(2);
    p.set_seed(0, 3);
    auto s = run(g, p, kScheme, config(0.5, 0, true));
    CHECK((s.current.array() == init_state(g, p, kScheme).initial.array()).all());
}

TEST_CASE("an all-seed graph of one category is a fixed point") {
    Graph g = oracles::gnm_random(20, 40, 9);
    NodePartition p(20);
    for (NodeIndex u = 0; u < 20; ++u)
        p.set_seed(u, 2);
    for (double lambda : {0.3, 0.5, 1.0}) {
        auto s = run(g, p, kScheme, config(lambda, 12, true));
        for (NodeIndex u = 0; u < 20; ++u)
            CHECK(s.current(u, 2) == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("triangle with two seeds matches the direct-iteration oracle") {
    Graph g = oracles::make_graph(3, {{0, 1}, {0, 2}, {1, 2}});
    NodePartition p(3);
    p.set_seed(0, 0);
    p.set_seed(1, 1);
    auto s = run(g, p, kScheme, config(0.5, 30, true));
    auto expected = oracles::naive_propagate(g, {0, 1, -1}, 4, 0.5, 30, true, false);
    for (int c = 0; c < 4; ++c)
        CHECK(s.current(2, c) == doctest::Approx(expected[2][c]).epsilon(1e-12));
    int best = 0;
    for (int c = 1; c < 4; ++c)
        if (s.current(2, c) > s.current(2, best))
            best = c;
    CHECK((best == 0 || best == 1));
}

TEST_CASE("production step equals the naive transliteration, masked and unmasked") {
    for (bool masked : {true, false}) {
        for (double lambda : {0.3, 0.9}) {
            Graph g = oracles::gnm_random(50, 130, 33);
            std::vector<int> seed_label(50, -1);
            NodePartition p(50);
            for (int u = 0; u < 50; u += 7) {
                seed_label[u] = u % 4;
                p.set_seed(static_cast<NodeIndex>(u), u % 4);
            }
            auto s = run(g, p, kScheme, config(lambda, 9, masked));
            auto expected = oracles::naive_propagate(g, seed_label, 4, lambda, 9, masked, false);
            for (NodeIndex u = 0; u < 50; ++u)
                for (int c = 0; c < 4; ++c)
                    CHECK(s.current(u, c) == doctest::Approx(expected[u][c]).epsilon(1e-12));
        }
    }
}

TEST_CASE("unmasked run equals the laplacian matrix-form oracle") {
    for (std::uint64_t seed : {41ull, 42ull}) {
        Graph g = oracles::connected_random(50, 100, seed); // oracle needs degree > 0
        auto p = random_seeds(g, 0.15, seed);
        auto cfg = config(0.7, 5, false);
        auto s = run(g, p, kScheme, cfg);
        auto oracle = laplacian_oracle_run(g, p, kScheme, cfg);
        CHECK(max_abs_diff(s.current, oracle) <= 1e-10);
    }
}

TEST_CASE("weighted unmasked run equals the weighted matrix oracle") {
    Graph g = oracles::make_weighted_graph(
        5, {{0, 1, 2.0}, {1, 2, 0.5}, {2, 3, 3.0}, {3, 4, 1.5}, {4, 0, 1.0}, {1, 3, 2.5}});
    NodePartition p(5);
    p.set_seed(0, 0);
    p.set_seed(2, 3);
    auto cfg = config(0.6, 8, false, true);
    auto s = run(g, p, kScheme, cfg);
    auto oracle = laplacian_oracle_run(g, p, kScheme, cfg);
    CHECK(max_abs_diff(s.current, oracle) <= 1e-10);
}

TEST_CASE("laplacian oracle handles the trivial cases like the local rule") {
    Graph g = oracles::make_graph(2, {{0, 1}});
    NodePartition p(2);
    p.set_seed(0, 0);
    auto zero = laplacian_oracle_run(g, p, kScheme, config(0.0, 10, false));
    CHECK(max_abs_diff(zero, init_state(g, p, kScheme).initial) <= 1e-12);
    auto one_step = laplacian_oracle_run(g, p, kScheme, config(0.5, 1, false));
    CHECK(one_step(1, 0) == doctest::Approx(0.625).epsilon(1e-12));
}

TEST_CASE("laplacian oracle rejects masked mode and isolated nodes") {
    Graph g = oracles::make_graph(3, {{0, 1}}); // node 2 isolated
    NodePartition p(3);
    p.set_seed(0, 0);
    CHECK_THROWS_AS(laplacian_oracle_run(g, p, kScheme, config(0.5, 3, true)), ConfigError);
    CHECK_THROWS_AS(laplacian_oracle_run(g, p, kScheme, config(0.5, 3, false)), DataError);
}

TEST_CASE("normalization and seed retention hold after every step") {
    Graph g = oracles::gnm_random(80, 240, 55);
    auto p = random_seeds(g, 0.2, 3);
    for (double lambda : {0.3, 0.5, 1.0}) {
        auto s = init_state(g, p, kScheme);
        auto cfg = config(lambda, 1, true);
        for (int t = 0; t < 12; ++t) {
            step(s, g, cfg);
            for (NodeIndex u = 0; u < g.node_count(); ++u) {
                double sum = 0.0;
                for (int c = 0; c < 4; ++c) {
                    const double v = s.current(u, c);
                    CHECK(v >= 0.0);
                    CHECK(v <= 1.0);
                    sum += v;
                }
                CHECK(std::abs(sum - 1.0) <= 1e-9);
                if (p.is_seed(u))
                    CHECK(s.current(u, p.label(u)) >= 1.0 - lambda);
            }
        }
    }
}

TEST_CASE("informed set is monotone and equals the DTS wavefront") {
    for (bool masked : {true, false}) {
        Graph g = oracles::gnm_random(100, 220, 77);
        auto p = random_seeds(g, 0.05, 5);
        auto dts = compute_dts(g, p);
        auto s = init_state(g, p, kScheme);
        auto cfg = config(0.5, 1, masked);
        std::vector<std::uint8_t> prev = s.informed;
        for (std::uint32_t t = 0; t <= 12; ++t) {
            for (NodeIndex u = 0; u < g.node_count(); ++u) {
                CHECK(s.informed[u] == (dts[u] <= t ? 1 : 0));
                if (t > 0)
                    CHECK(s.informed[u] >= prev[u]); // monotone growth
            }
            prev = s.informed;
            step(s, g, cfg);
        }
    }
}

TEST_CASE("permutation equivariance: relabeling nodes permutes the output") {
    Graph g = oracles::gnm_random(30, 70, 91);
    auto p = random_seeds(g, 0.25, 13);
    auto s = run(g, p, kScheme, config(0.5, 10, true));

    // rebuild with reversed node ids
    const int n = static_cast<int>(g.node_count());
    std::vector<std::pair<int, int>> edges;
    for (auto [u, v] : oracles::edge_pairs(g))
        edges.push_back({n - 1 - u, n - 1 - v});
    Graph h = oracles::make_graph(n, edges);
    NodePartition q(n);
    for (int u = 0; u < n; ++u) {
        NodeIndex hu = *h.find_external(std::to_string(n - 1 - u));
        if (p.is_seed(static_cast<NodeIndex>(u)))
            q.set_seed(hu, p.label(static_cast<NodeIndex>(u)));
        else
            q.set_validation(hu, p.label(static_cast<NodeIndex>(u)));
    }
    auto t = run(h, q, kScheme, config(0.5, 10, true));
    for (int u = 0; u < n; ++u) {
        NodeIndex hu = *h.find_external(std::to_string(n - 1 - u));
        for (int c = 0; c < 4; ++c)
            // reversed ids reverse each neighbor accumulation, so the sums
            // may differ by a few ulps; equivariance holds to 1e-12
            CHECK(s.current(static_cast<NodeIndex>(u), c) ==
                  doctest::Approx(t.current(hu, c)).epsilon(1e-12));
    }
}

TEST_CASE("convergence trace is flat for lambda 0 and rejects empty validation") {
    Graph g = oracles::gnm_random(40, 80, 101);
    auto p = random_seeds(g, 0.3, 7);
    auto trace = convergence_trace(g, p, kScheme, config(0.0, 8, true));
    REQUIRE(trace.size() == 9);
    for (std::size_t i = 1; i < trace.size(); ++i)
        CHECK(trace[i] == trace[0]);

    NodePartition no_validation(g.node_count());
    for (NodeIndex u = 0; u < g.node_count(); ++u)
        no_validation.set_seed(u, 0);
    CHECK_THROWS_AS(convergence_trace(g, no_validation, kScheme, config(0.5, 3, true)),
                    DataError);
}

TEST_CASE("config validation") {
    CHECK_THROWS_AS(config(-0.1, 1, true).validate(), ConfigError);
    CHECK_THROWS_AS(config(1.1, 1, true).validate(), ConfigError);
    CHECK_THROWS_AS(config(0.5, -1, true).validate(), ConfigError);
    CHECK_NOTHROW(config(0.0, 0, false).validate());
}
