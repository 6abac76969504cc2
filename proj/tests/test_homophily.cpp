#include <doctest.h>

#include <cmath>

#include "demograph/error.hpp"
#include "demograph/homophily.hpp"
#include "demograph/rng.hpp"
#include "oracles.hpp"

using namespace demograph;

namespace {
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
}

TEST_CASE("communication matrix counts ordered pairs") {
    SUBCASE("same-age edge lands twice on the diagonal") {
        Graph g = oracles::make_graph(2, {{0, 1}});
        std::vector<double> ages{30.0, 30.0};
        auto m = communication_matrix(g, ages);
        CHECK(m.at(30, 30) == 2.0);
        CHECK(m.total_mass() == 2.0);
    }
    SUBCASE("cross-age edge lands once per orientation") {
        Graph g = oracles::make_graph(2, {{0, 1}});
        std::vector<double> ages{30.0, 55.0};
        auto m = communication_matrix(g, ages);
        CHECK(m.at(30, 55) == 1.0);
        CHECK(m.at(55, 30) == 1.0);
        CHECK(m.at(30, 30) == 0.0);
    }
    SUBCASE("clique of four same-age nodes gives 12") {
        Graph g = oracles::make_graph(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}});
        std::vector<double> ages{40.0, 40.0, 40.0, 40.0};
        auto m = communication_matrix(g, ages);
        CHECK(m.at(40, 40) == 12.0); // 6 edges, both orientations
    }
    SUBCASE("edges with an unlabeled endpoint are excluded") {
        Graph g = oracles::make_graph(3, {{0, 1}, {1, 2}});
        std::vector<double> ages{30.0, 30.0, kNaN};
        auto m = communication_matrix(g, ages);
        CHECK(m.total_mass() == 2.0);
    }
}

TEST_CASE("null matrix follows the independence formula") {
    SUBCASE("worked example: 2.4") {
        // |N(i)| = 2 at age 20, |N(j)| = 3 at age 60, |N| = 5, mass 10
        std::vector<double> ages{20, 20, 60, 60, 60};
        auto r = null_matrix(ages, 10.0);
        CHECK(r.at(20, 60) == doctest::Approx(2.4).epsilon(1e-12));
        CHECK(r.at(60, 20) == doctest::Approx(2.4).epsilon(1e-12));
        CHECK(r.at(20, 20) == doctest::Approx(10.0 * 0.4 * 0.4).epsilon(1e-12));
    }
    SUBCASE("uniform ages give a constant matrix") {
        std::vector<double> ages{20, 21, 22, 23};
        auto r = null_matrix(ages, 16.0);
        for (int i = 20; i <= 23; ++i)
            for (int j = 20; j <= 23; ++j)
                CHECK(r.at(i, j) == doctest::Approx(1.0).epsilon(1e-12));
    }
    SUBCASE("a single age concentrates the whole mass") {
        std::vector<double> ages{33, 33, 33};
        auto r = null_matrix(ages, 42.0);
        CHECK(r.at(33, 33) == doctest::Approx(42.0).epsilon(1e-12));
    }
}

TEST_CASE("total masses of C and R agree") {
    Graph g = oracles::gnm_random(60, 150, 8);
    std::vector<double> ages(60);
    Rng rng(4);
    for (auto &a : ages)
        a = 20.0 + static_cast<double>(rng.next_below(40));
    auto c = communication_matrix(g, ages);
    auto r = null_matrix(ages, c.total_mass());
    CHECK(std::abs(c.total_mass() - r.total_mass()) <= 1e-6);
    // both symmetric
    CHECK((c.values - c.values.transpose()).cwiseAbs().maxCoeff() == 0.0);
    CHECK((r.values - r.values.transpose()).cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("log difference of identical matrices is zero") {
    std::vector<double> ages{20, 20, 60, 60, 60};
    auto r = null_matrix(ages, 10.0);
    auto diff = log_difference(r, r, 0.5);
    CHECK(diff.cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("log difference is invariant under duplicating every edge") {
    Graph g = oracles::gnm_random(40, 90, 12);
    std::vector<double> ages(40);
    Rng rng(5);
    for (auto &a : ages)
        a = 25.0 + static_cast<double>(rng.next_below(20));
    auto c1 = communication_matrix(g, ages);
    auto r1 = null_matrix(ages, c1.total_mass());
    // doubling every edge doubles C's mass and R's mass alike; with eps=0
    // the log difference cancels exactly
    AgeMatrix c2 = c1;
    c2.values *= 2.0;
    auto r2 = null_matrix(ages, c2.total_mass());
    auto d1 = log_difference(c1, r1, 0.0);
    auto d2 = log_difference(c2, r2, 0.0);
    for (int i = 0; i < d1.rows(); ++i)
        for (int j = 0; j < d1.cols(); ++j)
            if (std::isfinite(d1(i, j)) && std::isfinite(d2(i, j)))
                CHECK(d1(i, j) == doctest::Approx(d2(i, j)).epsilon(1e-9));
}

TEST_CASE("gap profile counts undirected edges once") {
    SUBCASE("single cross-age edge") {
        Graph g = oracles::make_graph(2, {{0, 1}});
        std::vector<double> ages{30.0, 55.0};
        auto p = gap_profile(g, ages);
        REQUIRE(p.counts.size() == 26);
        CHECK(p.counts[25] == 1);
        CHECK(p.total == 1);
    }
    SUBCASE("same-age clique has all mass at zero") {
        Graph g = oracles::make_graph(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}});
        std::vector<double> ages{40, 40, 40, 40};
        auto p = gap_profile(g, ages);
        CHECK(p.counts[0] == 6);
        CHECK(p.total == 6);
    }
    SUBCASE("total equals the labeled edge count") {
        Graph g = oracles::gnm_random(50, 120, 3);
        std::vector<double> ages(50, kNaN);
        Rng rng(9);
        for (int i = 0; i < 50; i += 2)
            ages[i] = 20.0 + static_cast<double>(rng.next_below(30));
        std::uint64_t labeled_edges = 0;
        for (auto [u, v] : oracles::edge_pairs(g))
            labeled_edges += (!std::isnan(ages[u]) && !std::isnan(ages[v])) ? 1 : 0;
        CHECK(gap_profile(g, ages).total == labeled_edges);
    }
}

TEST_CASE("regression on perfectly assortative pairs is the identity") {
    Graph g = oracles::make_graph(4, {{0, 1}, {2, 3}});
    std::vector<double> ages{30, 30, 50, 50};
    auto s = linked_age_regression(g, ages);
    CHECK(s.r == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(s.slope == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(s.intercept == doctest::Approx(0.0).epsilon(1e-9));
    CHECK(s.pairs == 4);
}

TEST_CASE("regression on shuffled ages over 10k edges is near zero") {
    Graph g = oracles::gnm_random(2000, 10000, 77);
    std::vector<double> ages(2000);
    Rng rng(31);
    for (auto &a : ages)
        a = 18.0 + static_cast<double>(rng.next_below(60)); // independent of topology
    auto s = linked_age_regression(g, ages);
    CHECK(std::abs(s.r) < 0.1);
}

TEST_CASE("regression rejects degenerate inputs") {
    Graph one_edge = oracles::make_graph(2, {{0, 1}});
    std::vector<double> ages{30.0, 40.0};
    CHECK_THROWS_AS(linked_age_regression(one_edge, ages), DataError);

    Graph g = oracles::make_graph(3, {{0, 1}, {1, 2}});
    std::vector<double> same{30.0, 30.0, 30.0};
    CHECK_THROWS_AS(linked_age_regression(g, same), DataError);
}
