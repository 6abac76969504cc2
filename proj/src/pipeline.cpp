#include "demograph/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <json.hpp>

#include "demograph/error.hpp"
#include "demograph/homophily.hpp"
#include "demograph/io.hpp"
#include "demograph/laplacian.hpp"
#include "demograph/prune.hpp"
#include "demograph/rng.hpp"

namespace fs = std::filesystem;

namespace demograph {

namespace {

constexpr const char *kVersion = "0.1.0";

std::ofstream open_out(const fs::path &path) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw DataError("cannot write " + path.string());
    return out;
}

std::ifstream open_in(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw ConfigError("cannot open " + path);
    return in;
}

const char *format_ext(TableFormat f) { return f == TableFormat::Tsv ? ".tsv" : ".txt"; }

std::vector<double> remap_ages(const std::vector<double> &ages,
                               const std::vector<NodeIndex> &old_to_new, NodeIndex new_n) {
    if (ages.empty())
        return {};
    std::vector<double> out(new_n, std::numeric_limits<double>::quiet_NaN());
    for (NodeIndex u = 0; u < ages.size(); ++u)
        if (old_to_new[u] != kInvalidNode)
            out[old_to_new[u]] = ages[u];
    return out;
}

double assigned_accuracy(const Assignment &a, const NodePartition &p,
                         std::uint64_t *assigned_out) {
    std::uint64_t assigned = 0, hits = 0;
    for (NodeIndex u = 0; u < p.node_count(); ++u) {
        if (!p.is_validation(u) || a.category[u] < 0)
            continue;
        ++assigned;
        hits += a.category[u] == p.label(u) ? 1 : 0;
    }
    if (assigned_out)
        *assigned_out = assigned;
    return assigned ? static_cast<double>(hits) / static_cast<double>(assigned) : 0.0;
}

std::vector<MetricBin> degree_bins_for(const Graph &g) {
    std::vector<MetricBin> bins = default_degree_bins();
    std::uint32_t max_deg = 0;
    for (NodeIndex u = 0; u < g.node_count(); ++u)
        max_deg = std::max(max_deg, g.degree(u));
    if (max_deg > 100)
        bins.push_back({101, 0, true});
    bool any_isolated = false;
    for (NodeIndex u = 0; u < g.node_count() && !any_isolated; ++u)
        any_isolated = g.degree(u) == 0;
    if (any_isolated)
        bins.insert(bins.begin(), {0, 0, false});
    return bins;
}

std::vector<MetricBin> sin_bins_for(const NodeMetrics &m, const NodePartition &p) {
    // exact values with a trailing tail bucket at the 9+ mark
    std::uint32_t max_sin = 0;
    for (NodeIndex u = 0; u < p.node_count(); ++u)
        if (p.is_validation(u))
            max_sin = std::max(max_sin, m.sin[u]);
    return exact_bins_with_tail(std::min<std::int64_t>(max_sin, 8));
}

std::vector<MetricBin> dts_bins_for(const NodeMetrics &m, const NodePartition &p) {
    std::uint32_t max_dts = 0;
    for (NodeIndex u = 0; u < p.node_count(); ++u)
        if (p.is_validation(u) && m.dts[u] != kUnreachable)
            max_dts = std::max(max_dts, m.dts[u]);
    return exact_bins_with_tail(std::min<std::int64_t>(max_dts, 12));
}

nlohmann::ordered_json config_json(const RunConfig &cfg) {
    nlohmann::ordered_json j;
    j["edges"] = cfg.edges_path;
    j["labels"] = cfg.labels_path;
    j["label_mode"] = cfg.label_mode == LabelMode::Age ? "age" : "category";
    j["scheme"] = cfg.scheme_edges;
    j["seed_fraction"] = cfg.seed_fraction;
    j["rng_seed"] = cfg.rng_seed;
    j["prune_cap"] = cfg.prune_cap;
    j["lambda"] = cfg.lambda;
    j["iterations"] = cfg.iterations;
    j["masked"] = cfg.masked;
    j["use_weights"] = cfg.use_weights;
    j["pps"] = cfg.pps;
    j["pps_scope"] = cfg.pps_scope == PpsScope::All ? "all" : "nonseed";
    j["tau"] = cfg.tau;
    j["format"] = cfg.format == TableFormat::Tsv ? "tsv" : "text";
    j["population_floor"] = cfg.population_floor;
    return j;
}

} // namespace

namespace {

bool parse_bool(const std::string &value, const std::string &key) {
    if (value == "true" || value == "1" || value == "yes" || value == "on")
        return true;
    if (value == "false" || value == "0" || value == "no" || value == "off")
        return false;
    throw ConfigError("config key '" + key + "': bad boolean '" + value + "'");
}

double parse_number(const std::string &value, const std::string &key) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(value, &pos);
        if (pos == value.size())
            return v;
    } catch (const std::exception &) {
    }
    throw ConfigError("config key '" + key + "': bad number '" + value + "'");
}

} // namespace

void apply_config_entry(RunConfig &cfg, const std::string &key, const std::string &value) {
    if (key == "edges")
        cfg.edges_path = value;
    else if (key == "labels")
        cfg.labels_path = value;
    else if (key == "label_mode") {
        if (value == "age")
            cfg.label_mode = LabelMode::Age;
        else if (value == "category")
            cfg.label_mode = LabelMode::Category;
        else
            throw ConfigError("config: label_mode must be age or category");
    } else if (key == "out")
        cfg.out_dir = value;
    else if (key == "scheme")
        cfg.scheme_edges = parse_scheme(value).edges();
    else if (key == "delimiter") {
        if (value.size() != 1)
            throw ConfigError("config: delimiter must be a single character");
        cfg.delimiter = value[0];
    } else if (key == "seed_fraction")
        cfg.seed_fraction = parse_number(value, key);
    else if (key == "rng_seed")
        cfg.rng_seed = static_cast<std::uint64_t>(parse_number(value, key));
    else if (key == "prune_cap")
        cfg.prune_cap = static_cast<std::uint32_t>(parse_number(value, key));
    else if (key == "lambda")
        cfg.lambda = parse_number(value, key);
    else if (key == "iterations")
        cfg.iterations = static_cast<int>(parse_number(value, key));
    else if (key == "masked")
        cfg.masked = parse_bool(value, key);
    else if (key == "use_weights")
        cfg.use_weights = parse_bool(value, key);
    else if (key == "pps")
        cfg.pps = parse_bool(value, key);
    else if (key == "pps_scope") {
        if (value == "all")
            cfg.pps_scope = PpsScope::All;
        else if (value == "nonseed")
            cfg.pps_scope = PpsScope::NonSeed;
        else
            throw ConfigError("config: pps_scope must be all or nonseed");
    } else if (key == "tau")
        cfg.tau = parse_number(value, key);
    else if (key == "format") {
        if (value == "tsv")
            cfg.format = TableFormat::Tsv;
        else if (value == "text")
            cfg.format = TableFormat::Text;
        else
            throw ConfigError("config: format must be tsv or text");
    } else if (key == "floor")
        cfg.population_floor = static_cast<std::uint64_t>(parse_number(value, key));
    else
        throw ConfigError("unknown config key '" + key + "'");
}

RunConfig load_config_file(const std::string &path) {
    std::ifstream in(path);
    if (!in)
        throw ConfigError("cannot open config file " + path);
    RunConfig cfg;
    std::string line;
    std::uint64_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        std::size_t start = line.find_first_not_of(" \t");
        if (start == std::string::npos || line[start] == '#')
            continue;
        const std::size_t eq = line.find('=', start);
        if (eq == std::string::npos)
            throw ConfigError("config file line " + std::to_string(line_no) +
                              ": expected key=value");
        auto trim = [](std::string s) {
            const auto a = s.find_first_not_of(" \t");
            const auto b = s.find_last_not_of(" \t");
            return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
        };
        apply_config_entry(cfg, trim(line.substr(start, eq - start)),
                           trim(line.substr(eq + 1)));
    }
    return cfg;
}

void RunConfig::validate() const {
    if (edges_path.empty())
        throw ConfigError("missing edges path");
    if (labels_path.empty())
        throw ConfigError("missing labels path");
    if (!(seed_fraction > 0.0 && seed_fraction < 1.0))
        throw ConfigError("seed_fraction must be in (0, 1)");
    if (!(lambda >= 0.0 && lambda <= 1.0))
        throw ConfigError("lambda must be in [0, 1]");
    if (iterations < 0)
        throw ConfigError("iterations must be >= 0");
    if (!(tau >= 0.0 && tau <= 1.0))
        throw ConfigError("tau must be in [0, 1]");
    CategoryScheme check(scheme_edges); // throws ConfigError on bad cut points
}

PipelineInputs prepare_inputs(const RunConfig &cfg) {
    cfg.validate();
    PipelineInputs in;
    in.scheme = CategoryScheme(cfg.scheme_edges);

    auto edges_stream = open_in(cfg.edges_path);
    EdgeListSchema schema{cfg.delimiter};
    Graph g = ingest_edge_list(edges_stream, schema);
    in.nodes_before_prune = g.node_count();
    in.edges_before_prune = g.edge_count();

    auto labels_stream = open_in(cfg.labels_path);
    const auto records = read_label_file(labels_stream);
    GroundTruth gt = resolve_labels(g, records, in.scheme, cfg.label_mode);
    in.dropped_labels = gt.dropped;
    if (gt.dropped > 0)
        std::cerr << "warning: " << gt.dropped
                  << " label record(s) reference nodes absent from the edge list\n";

    if (cfg.prune_cap >= 1) {
        PruneResult pruned = prune_high_degree(g, cfg.prune_cap);
        std::vector<std::pair<NodeIndex, int>> survivors;
        for (auto [node, cat] : gt.labeled)
            if (pruned.old_to_new[node] != kInvalidNode)
                survivors.emplace_back(pruned.old_to_new[node], cat);
        gt.labeled = std::move(survivors);
        gt.ages = remap_ages(gt.ages, pruned.old_to_new, pruned.graph.node_count());
        g = std::move(pruned.graph);
    }

    NodePartition p =
        split_ground_truth(g.node_count(), gt.labeled, cfg.seed_fraction, cfg.rng_seed);

    PruneResult reachable = prune_seedless_components(g, p);
    in.partition = remap_partition(p, reachable.old_to_new, reachable.graph.node_count());
    in.ages = remap_ages(gt.ages, reachable.old_to_new, reachable.graph.node_count());
    in.graph = std::move(reachable.graph);
    return in;
}

RunSummary cmd_run(const RunConfig &cfg) {
    cfg.validate();
    if (cfg.out_dir.empty())
        throw ConfigError("missing output directory");
    fs::create_directories(cfg.out_dir);
    const fs::path dir(cfg.out_dir);

    PipelineInputs in = prepare_inputs(cfg);
    const Graph &g = in.graph;
    const NodePartition &p = in.partition;

    PropagationConfig pcfg{cfg.lambda, cfg.iterations, cfg.masked, cfg.use_weights};
    PropagationState state = run(g, p, in.scheme, pcfg);

    {
        auto out = open_out(dir / "graph.tsv");
        write_edge_list(g, out);
    }
    {
        auto out = open_out(dir / "partition.tsv");
        write_partition(g, p, out);
    }
    {
        auto out = open_out(dir / "probabilities.tsv");
        write_probability_table(g, state, out);
    }

    Assignment assignment = cfg.pps
                                ? pps_assign_scoped(state.current, p, in.scheme, cfg.pps_scope)
                                : collapse_argmax(state.current);
    if (cfg.tau > 0.0)
        assignment = filter_by_threshold(std::move(assignment), cfg.tau);
    {
        auto out = open_out(dir / "assignments.tsv");
        write_assignments(g, assignment, in.scheme, out);
    }

    const NodeMetrics metrics = compute_node_metrics(g, p);
    // the component prune guarantees every node reaches a seed
    for (NodeIndex u = 0; u < g.node_count(); ++u)
        internal_check(metrics.dts[u] != kUnreachable, "unreachable node survived pruning");
    {
        auto out = open_out(dir / "metrics.tsv");
        write_node_metrics(g, metrics, out);
    }

    const auto degree_bins = degree_bins_for(g);
    const auto sin_bins = sin_bins_for(metrics, p);
    const auto dts_bins = dts_bins_for(metrics, p);
    const char *ext = format_ext(cfg.format);
    auto emit = [&](const std::string &stem, const HitsTable &t) {
        auto out = open_out(dir / (stem + ext));
        write_hits_table(t, out, cfg.format);
    };
    emit("hits_by_group", hits_by_group(assignment, p, in.scheme));
    emit("hits_by_sin", hits_by_metric(assignment, metrics, p, MetricKind::Sin, sin_bins));
    emit("hits_by_dts", hits_by_metric(assignment, metrics, p, MetricKind::Dts, dts_bins));
    emit("hits_by_degree",
         hits_by_metric(assignment, metrics, p, MetricKind::Degree, degree_bins));
    const JointTable joint = joint_table(assignment, metrics, p, degree_bins, cfg.joint_dts,
                                         cfg.population_floor);
    emit("hits_joint", joint.cells);

    RunSummary s;
    s.nodes = g.node_count();
    s.edges = g.edge_count();
    s.seeds = p.seed_count();
    s.validation = p.validation_count();
    s.argmax_accuracy = validation_accuracy(state.current, p);
    s.emitted_accuracy = assigned_accuracy(assignment, p, &s.assigned_validation);

    {
        nlohmann::ordered_json manifest;
        manifest["tool"] = "demograph";
        manifest["version"] = kVersion;
        manifest["config"] = config_json(cfg);
        manifest["config_hash"] = hash_bytes(config_json(cfg).dump());
        manifest["input_hashes"]["edges"] = hash_file(cfg.edges_path);
        manifest["input_hashes"]["labels"] = hash_file(cfg.labels_path);
        manifest["counts"]["nodes_ingested"] = in.nodes_before_prune;
        manifest["counts"]["edges_ingested"] = in.edges_before_prune;
        manifest["counts"]["nodes"] = s.nodes;
        manifest["counts"]["edges"] = s.edges;
        manifest["counts"]["seeds"] = s.seeds;
        manifest["counts"]["validation"] = s.validation;
        manifest["counts"]["dropped_labels"] = in.dropped_labels;
        manifest["results"]["argmax_accuracy"] = s.argmax_accuracy;
        manifest["results"]["emitted_accuracy"] = s.emitted_accuracy;
        manifest["results"]["assigned_validation"] = s.assigned_validation;
        manifest["results"]["best_joint_cell"] =
            joint.best_row ? joint.cells.rows[*joint.best_row].stratum : "";
        auto out = open_out(dir / "manifest.json");
        out << manifest.dump(2) << '\n';
    }
    return s;
}

std::vector<SweepPoint> cmd_sweep(const RunConfig &cfg, const std::string &parameter,
                                  const std::vector<double> &values) {
    if (values.size() < 2)
        throw ConfigError("sweep needs at least 2 values");
    if (parameter != "lambda" && parameter != "t_end" && parameter != "tau")
        throw ConfigError("sweep parameter must be lambda, t_end or tau");
    PipelineInputs in = prepare_inputs(cfg); // one graph and split for every point

    std::vector<SweepPoint> points;
    std::optional<PropagationState> shared_state; // tau sweep reuses one propagation
    for (double value : values) {
        RunConfig run_cfg = cfg;
        if (parameter == "lambda")
            run_cfg.lambda = value;
        else if (parameter == "t_end") {
            if (value < 0.0 || value != std::floor(value))
                throw ConfigError("t_end sweep values must be non-negative integers");
            run_cfg.iterations = static_cast<int>(value);
        } else
            run_cfg.tau = value;

        PropagationConfig pcfg{run_cfg.lambda, run_cfg.iterations, run_cfg.masked,
                               run_cfg.use_weights};
        const StateTable *table;
        if (parameter == "tau") {
            if (!shared_state)
                shared_state = run(in.graph, in.partition, in.scheme, pcfg);
            table = &shared_state->current;
        } else {
            shared_state = run(in.graph, in.partition, in.scheme, pcfg);
            table = &shared_state->current;
        }
        Assignment a = run_cfg.pps
                           ? pps_assign_scoped(*table, in.partition, in.scheme, run_cfg.pps_scope)
                           : collapse_argmax(*table);
        if (run_cfg.tau > 0.0)
            a = filter_by_threshold(std::move(a), run_cfg.tau);
        SweepPoint pt;
        pt.value = value;
        pt.accuracy = assigned_accuracy(a, in.partition, &pt.assigned);
        points.push_back(pt);
    }

    if (!cfg.out_dir.empty()) {
        fs::create_directories(cfg.out_dir);
        auto out = open_out(fs::path(cfg.out_dir) / ("sweep_" + parameter + ".tsv"));
        char buf[80];
        out << parameter << "\taccuracy\tassigned\n";
        for (const SweepPoint &pt : points) {
            std::snprintf(buf, sizeof(buf), "%g\t%.6f\t%llu\n", pt.value, pt.accuracy,
                          static_cast<unsigned long long>(pt.assigned));
            out << buf;
        }
    }
    return points;
}

HomophilySummary cmd_homophily(const RunConfig &cfg, bool shuffle_labels) {
    cfg.validate();
    if (cfg.label_mode != LabelMode::Age)
        throw ConfigError("homophily needs ages, not category labels");
    auto edges_stream = open_in(cfg.edges_path);
    Graph g = ingest_edge_list(edges_stream, EdgeListSchema{cfg.delimiter});
    auto labels_stream = open_in(cfg.labels_path);
    const CategoryScheme scheme(cfg.scheme_edges);
    GroundTruth gt = resolve_labels(g, read_label_file(labels_stream), scheme, LabelMode::Age);

    std::vector<double> ages = std::move(gt.ages);
    if (shuffle_labels) {
        std::vector<NodeIndex> labeled;
        for (NodeIndex u = 0; u < g.node_count(); ++u)
            if (!std::isnan(ages[u]))
                labeled.push_back(u);
        std::vector<double> values;
        values.reserve(labeled.size());
        for (NodeIndex u : labeled)
            values.push_back(ages[u]);
        Rng rng(derive_stream(cfg.rng_seed, "homophily-shuffle"));
        rng.shuffle(values.begin(), values.end());
        for (std::size_t i = 0; i < labeled.size(); ++i)
            ages[labeled[i]] = values[i];
    }

    const AgeMatrix comm = communication_matrix(g, ages);
    const AgeMatrix null = null_matrix(ages, comm.total_mass());
    const Matrix diff = log_difference(comm, null);
    const GapProfile profile = gap_profile(g, ages);
    const RegressionStats reg = linked_age_regression(g, ages);

    if (!cfg.out_dir.empty()) {
        fs::create_directories(cfg.out_dir);
        const fs::path dir(cfg.out_dir);
        {
            auto out = open_out(dir / "comm_matrix.tsv");
            write_age_matrix(comm, out);
        }
        {
            auto out = open_out(dir / "null_matrix.tsv");
            write_age_matrix(null, out);
        }
        {
            auto out = open_out(dir / "log_difference.tsv");
            write_log_difference(diff, comm.min_age, out);
        }
        {
            auto out = open_out(dir / "gap_profile.tsv");
            write_gap_profile(profile, out);
        }
        {
            auto out = open_out(dir / "regression.tsv");
            write_regression(reg, out);
        }
    }
    HomophilySummary s;
    s.regression_r = reg.r;
    s.regression_slope = reg.slope;
    s.mean_abs_log_difference = diff.array().abs().mean();
    return s;
}

void cmd_metrics(const RunConfig &cfg) {
    if (cfg.out_dir.empty())
        throw ConfigError("missing output directory");
    PipelineInputs in = prepare_inputs(cfg);
    const NodeMetrics m = compute_node_metrics(in.graph, in.partition);
    fs::create_directories(cfg.out_dir);
    auto out = open_out(fs::path(cfg.out_dir) / "metrics.tsv");
    write_node_metrics(in.graph, m, out);
}

void cmd_synth(const SynthConfig &cfg, const std::string &out_dir) {
    cfg.validate();
    if (out_dir.empty())
        throw ConfigError("missing output directory");
    fs::create_directories(out_dir);
    const fs::path dir(out_dir);

    SynthOutput synth = generate(cfg);
    {
        auto out = open_out(dir / "edges.tsv");
        write_edge_list(synth.graph, out);
    }
    {
        auto out = open_out(dir / "labels.tsv");
        for (NodeIndex u : synth.labeled_nodes)
            out << u << '\t' << synth.ages[u] << '\n';
    }
    if (cfg.client_fraction < 1.0) {
        {
            auto out = open_out(dir / "clients.tsv");
            for (NodeIndex u = 0; u < synth.client.size(); ++u)
                if (synth.client[u])
                    out << u << '\n';
        }
        std::vector<bool> keep(synth.client.begin(), synth.client.end());
        // node ids survive the cut, so labels.tsv applies to both graphs
        Graph clients_graph = induced_subgraph(synth.graph, keep);
        auto out = open_out(dir / "edges_clients.tsv");
        write_edge_list(clients_graph, out);
    }
}

} // namespace demograph
