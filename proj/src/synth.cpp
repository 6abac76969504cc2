#include "demograph/synth.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "demograph/error.hpp"
#include "demograph/rng.hpp"

namespace demograph {

double AgeGapKernel::value(double gap) const {
    double v = std::exp(-gap / scale);
    if (bump_weight > 0.0) {
        const double z = (gap - bump_center) / bump_sigma;
        v += bump_weight * std::exp(-0.5 * z * z);
    }
    return v;
}

void SynthConfig::validate() const {
    if (n < 2)
        throw ConfigError("synth: n must be >= 2");
    if (!(mean_degree > 0.0))
        throw ConfigError("synth: mean_degree must be > 0");
    if (mean_degree > static_cast<double>(n - 1))
        throw ConfigError("synth: mean_degree exceeds n-1");
    if (pyramid.lo >= pyramid.hi || pyramid.lo < 0)
        throw ConfigError("synth: bad age range");
    if (pyramid.kind == PyramidSpec::Kind::Bimodal && !(pyramid.sigma > 0.0))
        throw ConfigError("synth: pyramid sigma must be > 0");
    if (!(pyramid.weight1 >= 0.0 && pyramid.weight1 <= 1.0))
        throw ConfigError("synth: mixture weight must be in [0, 1]");
    if (!(kernel.scale > 0.0) || kernel.bump_weight < 0.0 || !(kernel.bump_sigma > 0.0))
        throw ConfigError("synth: kernel must be non-negative");
    if (!(client_fraction > 0.0 && client_fraction <= 1.0))
        throw ConfigError("synth: client_fraction must be in (0, 1]");
    if (!(labeled_fraction > 0.0 && labeled_fraction <= 1.0))
        throw ConfigError("synth: labeled_fraction must be in (0, 1]");
}

std::vector<int> sample_ages(const SynthConfig &cfg) {
    cfg.validate();
    Rng rng(derive_stream(cfg.rng_seed, "synth-ages"));
    std::vector<int> ages(cfg.n);
    const PyramidSpec &py = cfg.pyramid;
    if (py.kind == PyramidSpec::Kind::Uniform) {
        const auto span = static_cast<std::uint64_t>(py.hi - py.lo + 1);
        for (auto &a : ages)
            a = py.lo + static_cast<int>(rng.next_below(span));
        return ages;
    }
    for (auto &a : ages) {
        for (int tries = 0;; ++tries) {
            const double mode = rng.next_bernoulli(py.weight1) ? py.mode1 : py.mode2;
            const int cand = static_cast<int>(std::llround(mode + py.sigma * rng.next_normal()));
            if (cand >= py.lo && cand <= py.hi) {
                a = cand;
                break;
            }
            if (tries > 1000)
                throw ConfigError("synth: pyramid mass almost entirely outside age range");
        }
    }
    return ages;
}

namespace {

/// Pair index -> (i, j), i < j, for the upper triangle of a c x c block,
/// ordered (0,1),(0,2),...,(1,2),... Uses a float guess plus integer fixup.
std::pair<std::uint64_t, std::uint64_t> unrank_triangular(std::uint64_t t, std::uint64_t c) {
    auto offset = [c](std::uint64_t i) { return i * (2 * c - i - 1) / 2; };
    const double cd = static_cast<double>(c);
    double guess = ((2.0 * cd - 1.0) -
                    std::sqrt((2.0 * cd - 1.0) * (2.0 * cd - 1.0) - 8.0 * static_cast<double>(t))) /
                   2.0;
    auto i = static_cast<std::uint64_t>(std::max(0.0, guess));
    if (i >= c - 1)
        i = c - 2;
    while (i + 1 < c - 1 && offset(i + 1) <= t)
        ++i;
    while (i > 0 && offset(i) > t)
        --i;
    const std::uint64_t j = t - offset(i) + i + 1;
    return {i, j};
}

/// Indices of the successes of N independent Bernoulli(p) trials, in
/// increasing order, via geometric jumps. O(successes).
template <typename Emit>
void sample_bernoulli_indices(std::uint64_t n_trials, double p, Rng &rng, Emit &&emit) {
    if (n_trials == 0 || p <= 0.0)
        return;
    if (p >= 1.0) {
        for (std::uint64_t t = 0; t < n_trials; ++t)
            emit(t);
        return;
    }
    const double denom = std::log1p(-p);
    double pos = -1.0;
    const auto limit = static_cast<double>(n_trials);
    for (;;) {
        const double jump = std::floor(std::log(rng.next_unit()) / denom) + 1.0;
        pos += jump;
        if (!(pos < limit))
            return;
        emit(static_cast<std::uint64_t>(pos));
    }
}

std::vector<NodeIndex> pick_random_subset(std::uint64_t n, double fraction, Rng &&rng) {
    std::vector<NodeIndex> ids(n);
    std::iota(ids.begin(), ids.end(), NodeIndex{0});
    rng.shuffle(ids.begin(), ids.end());
    const auto k = static_cast<std::size_t>(std::llround(fraction * static_cast<double>(n)));
    ids.resize(std::min<std::size_t>(k, n));
    std::sort(ids.begin(), ids.end());
    return ids;
}

} // namespace

SynthOutput generate_graph(const SynthConfig &cfg, std::vector<int> ages) {
    cfg.validate();
    internal_check(ages.size() == cfg.n, "ages size mismatch");

    // nodes grouped by age value
    const int lo = *std::min_element(ages.begin(), ages.end());
    const int hi = *std::max_element(ages.begin(), ages.end());
    const int span = hi - lo + 1;
    std::vector<std::vector<NodeIndex>> by_age(span);
    for (NodeIndex u = 0; u < cfg.n; ++u)
        by_age[ages[u] - lo].push_back(u);

    // exact expected-degree calibration over the sampled age multiset:
    // sum over ordered pairs u != v of kernel(|age_u - age_v|)
    double mass = 0.0;
    for (int a = 0; a < span; ++a) {
        const double ca = static_cast<double>(by_age[a].size());
        if (ca == 0.0)
            continue;
        mass += ca * (ca - 1.0) * cfg.kernel.value(0.0);
        for (int b = a + 1; b < span; ++b) {
            const double cb = static_cast<double>(by_age[b].size());
            if (cb > 0.0)
                mass += 2.0 * ca * cb * cfg.kernel.value(static_cast<double>(b - a));
        }
    }
    if (!(mass > 0.0))
        throw ConfigError("synth: kernel mass is zero over the sampled ages");
    const double scale = cfg.mean_degree * static_cast<double>(cfg.n) / mass;

    SynthOutput out;
    out.ages = std::move(ages);
    out.client.assign(cfg.n, true);
    if (cfg.client_fraction < 1.0) {
        std::fill(out.client.begin(), out.client.end(), false);
        for (NodeIndex u :
             pick_random_subset(cfg.n, cfg.client_fraction,
                                Rng(derive_stream(cfg.rng_seed, "synth-clients"))))
            out.client[u] = true;
    }
    out.labeled_nodes = pick_random_subset(cfg.n, cfg.labeled_fraction,
                                           Rng(derive_stream(cfg.rng_seed, "synth-labels")));

    GraphBuilder builder;
    std::vector<std::string> names(cfg.n);
    for (NodeIndex u = 0; u < cfg.n; ++u) {
        names[u] = std::to_string(u);
        builder.add_node(names[u]);
    }
    const std::uint64_t edge_base = derive_stream(cfg.rng_seed, "synth-edges");
    auto add_pair = [&](NodeIndex u, NodeIndex v) {
        if (!out.client[u] && !out.client[v])
            return; // unobserved: communication among non-clients
        builder.add_edge(names[u], names[v]);
    };
    for (int a = 0; a < span; ++a) {
        const auto &ga = by_age[a];
        if (ga.empty())
            continue;
        for (int b = a; b < span; ++b) {
            const auto &gb = by_age[b];
            if (gb.empty())
                continue;
            const double p = std::min(1.0, scale * cfg.kernel.value(static_cast<double>(b - a)));
            if (p <= 0.0)
                continue;
            std::uint64_t block_seed = edge_base ^ (static_cast<std::uint64_t>(a) << 32 |
                                                    static_cast<std::uint64_t>(b));
            Rng rng(splitmix64(block_seed));
            if (a == b) {
                const std::uint64_t c = ga.size();
                if (c < 2)
                    continue;
                sample_bernoulli_indices(c * (c - 1) / 2, p, rng, [&](std::uint64_t t) {
                    auto [i, j] = unrank_triangular(t, c);
                    add_pair(ga[i], ga[j]);
                });
            } else {
                sample_bernoulli_indices(
                    static_cast<std::uint64_t>(ga.size()) * gb.size(), p, rng,
                    [&](std::uint64_t t) {
                        add_pair(ga[t / gb.size()], gb[t % gb.size()]);
                    });
            }
        }
    }
    out.graph = builder.build();
    return out;
}

SynthOutput generate(const SynthConfig &cfg) {
    return generate_graph(cfg, sample_ages(cfg));
}

} // namespace demograph
