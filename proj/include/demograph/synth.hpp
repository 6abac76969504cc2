#pragma once

#include <cstdint>
#include <vector>

#include "demograph/graph.hpp"
#include "demograph/types.hpp"

namespace demograph {

/// Age distribution of the generated population: either uniform over
/// [lo, hi] or a two-normal mixture (rejection-sampled into [lo, hi]).
struct PyramidSpec {
    enum class Kind { Uniform, Bimodal };
    Kind kind = Kind::Bimodal;
    int lo = 18, hi = 80;
    double mode1 = 30.0, mode2 = 45.0;
    double sigma = 14.0;
    double weight1 = 0.5; ///< mixture weight of the first mode
};

/// Edge affinity as a function of the age gap: exponential decay plus an
/// optional Gaussian bump around a generational offset.
struct AgeGapKernel {
    double scale = 5.0;
    double bump_weight = 0.0;
    double bump_center = 25.0;
    double bump_sigma = 3.0;

    double value(double gap) const;
};

struct SynthConfig {
    std::uint64_t n = 10000;
    double mean_degree = 6.0;
    PyramidSpec pyramid;
    AgeGapKernel kernel;
    double client_fraction = 1.0;  ///< edges between two non-clients are dropped
    double labeled_fraction = 1.0; ///< share of nodes whose age goes to the label file
    std::uint64_t rng_seed = 1;

    void validate() const;
};

/// I.i.d. integer ages, reproducible under rng_seed.
std::vector<int> sample_ages(const SynthConfig &cfg);

struct SynthOutput {
    Graph graph;                         ///< external ids "0".."n-1"
    std::vector<int> ages;               ///< per node
    std::vector<bool> client;            ///< per node
    std::vector<NodeIndex> labeled_nodes; ///< ground-truth subset, ascending
};

/// Independent edge sampling with P(u~v) = min(1, s * kernel(|age_u - age_v|)),
/// where s is calibrated from the exact expected-degree sum over the sampled
/// age multiset so the realized mean degree hits cfg.mean_degree. Edges
/// between two non-client nodes are removed when client_fraction < 1.
SynthOutput generate_graph(const SynthConfig &cfg, std::vector<int> ages);

/// sample_ages + generate_graph under one config.
SynthOutput generate(const SynthConfig &cfg);

} // namespace demograph
