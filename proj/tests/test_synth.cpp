#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "demograph/error.hpp"
#include "demograph/homophily.hpp"
#include "demograph/synth.hpp"

using namespace demograph;

namespace {
SynthConfig base_config() {
    SynthConfig cfg;
    cfg.n = 10000;
    cfg.mean_degree = 6.0;
    cfg.kernel.scale = 5.0;
    cfg.rng_seed = 42;
    return cfg;
}

std::vector<double> ages_as_double(const std::vector<int> &ages) {
    return {ages.begin(), ages.end()};
}
} // namespace

TEST_CASE("uniform pyramid over a two-year band stays inside it") {
    SynthConfig cfg = base_config();
    cfg.n = 500;
    cfg.pyramid.kind = PyramidSpec::Kind::Uniform;
    cfg.pyramid.lo = 20;
    cfg.pyramid.hi = 21;
    auto ages = sample_ages(cfg);
    for (int a : ages)
        CHECK((a == 20 || a == 21));
}

TEST_CASE("age sampling is reproducible under the seed") {
    SynthConfig cfg = base_config();
    cfg.n = 2000;
    CHECK(sample_ages(cfg) == sample_ages(cfg));
    SynthConfig other = cfg;
    other.rng_seed = 43;
    CHECK(sample_ages(cfg) != sample_ages(other));
}

TEST_CASE("bimodal pyramid peaks near the configured modes") {
    SynthConfig cfg = base_config();
    cfg.n = 100000;
    cfg.pyramid.sigma = 6.0;
    auto ages = sample_ages(cfg);
    std::vector<int> hist(120, 0);
    for (int a : ages)
        ++hist[a];
    // smooth lightly, then find local maxima in the two half-ranges
    auto smoothed = [&](int a) { return hist[a - 1] + hist[a] + hist[a + 1]; };
    int mode_lo = 25, mode_hi = 55;
    for (int a = 20; a <= 37; ++a)
        if (smoothed(a) > smoothed(mode_lo))
            mode_lo = a;
    for (int a = 38; a <= 60; ++a)
        if (smoothed(a) > smoothed(mode_hi))
            mode_hi = a;
    CHECK(std::abs(mode_lo - 30) <= 2);
    CHECK(std::abs(mode_hi - 45) <= 2);
}

TEST_CASE("realized mean degree lands within 5% of the target") {
    SynthConfig cfg = base_config();
    auto out = generate(cfg);
    const double realized =
        2.0 * static_cast<double>(out.graph.edge_count()) / static_cast<double>(cfg.n);
    CHECK(realized == doctest::Approx(cfg.mean_degree).epsilon(0.05));
    out.graph.validate();
}

TEST_CASE("generation is deterministic under the seed") {
    SynthConfig cfg = base_config();
    cfg.n = 3000;
    auto a = generate(cfg);
    auto b = generate(cfg);
    CHECK(a.graph.edge_count() == b.graph.edge_count());
    for (NodeIndex u = 0; u < a.graph.node_count(); ++u) {
        auto na = a.graph.neighbors(u);
        auto nb = b.graph.neighbors(u);
        REQUIRE(na.size() == nb.size());
        CHECK(std::equal(na.begin(), na.end(), nb.begin()));
    }
}

TEST_CASE("every edge touches a client when client_fraction < 1") {
    SynthConfig cfg = base_config();
    cfg.n = 4000;
    cfg.client_fraction = 0.3;
    auto out = generate(cfg);
    for (NodeIndex u = 0; u < out.graph.node_count(); ++u)
        for (NodeIndex v : out.graph.neighbors(u))
            CHECK((out.client[u] || out.client[v]));
}

TEST_CASE("labeled fraction selects the requested share") {
    SynthConfig cfg = base_config();
    cfg.n = 5000;
    cfg.labeled_fraction = 0.2;
    auto out = generate(cfg);
    CHECK(out.labeled_nodes.size() == 1000);
    CHECK(std::is_sorted(out.labeled_nodes.begin(), out.labeled_nodes.end()));
}

TEST_CASE("constant kernel matches the analytic random-pair gap distribution") {
    SynthConfig cfg = base_config();
    cfg.n = 20000;
    cfg.mean_degree = 8.0;
    cfg.kernel.scale = 1e9; // exp(-d/scale) ~ 1: Erdos-Renyi-like
    auto out = generate(cfg);

    // expected gap counts from the age histogram: E[count(d)] = p * Npairs(d)
    std::vector<double> count(120, 0.0);
    for (int a : out.ages)
        count[a] += 1.0;
    std::vector<double> pairs(120, 0.0);
    for (int a = 0; a < 120; ++a) {
        if (count[a] == 0.0)
            continue;
        pairs[0] += count[a] * (count[a] - 1.0) / 2.0;
        for (int b = a + 1; b < 120; ++b)
            if (count[b] > 0.0)
                pairs[b - a] += count[a] * count[b];
    }
    double total_pairs = 0.0;
    for (double p : pairs)
        total_pairs += p;
    auto profile = gap_profile(out.graph, ages_as_double(out.ages));
    const double total_edges = static_cast<double>(profile.total);
    // compare gap shares where expectation is large enough for tight stats
    for (std::size_t d = 0; d < profile.counts.size(); ++d) {
        const double expected = total_edges * pairs[d] / total_pairs;
        if (expected < 200.0)
            continue;
        const double observed = static_cast<double>(profile.counts[d]);
        const double sigma = std::sqrt(expected);
        CHECK(std::abs(observed - expected) <= 6.0 * sigma);
    }
}

TEST_CASE("default decay kernel produces strong linked-age correlation") {
    SynthConfig cfg = base_config();
    auto out = generate(cfg);
    auto stats = linked_age_regression(out.graph, ages_as_double(out.ages));
    CHECK(stats.r > 0.8);
}

TEST_CASE("slower kernel decay weakens the measured homophily monotonically") {
    auto median_r = [](double scale) {
        double rs[3];
        for (int i = 0; i < 3; ++i) {
            SynthConfig cfg = base_config();
            cfg.n = 6000;
            cfg.kernel.scale = scale;
            cfg.rng_seed = 100 + static_cast<std::uint64_t>(i);
            auto out = generate(cfg);
            rs[i] = linked_age_regression(out.graph, ages_as_double(out.ages)).r;
        }
        std::sort(rs, rs + 3);
        return rs[1];
    };
    const double tight = median_r(2.0);
    const double mid = median_r(8.0);
    const double loose = median_r(40.0);
    CHECK(tight > mid);
    CHECK(mid > loose);
}

TEST_CASE("generational bump shows up as a local maximum in the gap profile") {
    SynthConfig cfg = base_config();
    cfg.n = 30000;
    cfg.mean_degree = 8.0;
    cfg.kernel.scale = 4.0;
    cfg.kernel.bump_weight = 0.6;
    cfg.kernel.bump_center = 25.0;
    auto out = generate(cfg);
    auto profile = gap_profile(out.graph, ages_as_double(out.ages));
    REQUIRE(profile.counts.size() > 30);
    auto window = [&](int center) {
        std::uint64_t s = 0;
        for (int d = center - 2; d <= center + 2; ++d)
            s += profile.counts[d];
        return s;
    };
    // the 25-year band rises above the pure-decay background around it
    CHECK(window(25) > window(18));
    CHECK(window(25) > window(32));
}

TEST_CASE("infeasible configs are rejected") {
    SynthConfig cfg = base_config();
    cfg.n = 10;
    cfg.mean_degree = 20.0;
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
    SynthConfig bad = base_config();
    bad.kernel.scale = 0.0;
    CHECK_THROWS_AS(bad.validate(), ConfigError);
    SynthConfig tiny = base_config();
    tiny.n = 1;
    CHECK_THROWS_AS(tiny.validate(), ConfigError);
}
