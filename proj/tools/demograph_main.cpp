#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "demograph/error.hpp"
#include "demograph/pipeline.hpp"

namespace {

using namespace demograph;

// Shared run/sweep/metrics/homophily options. Every option doubles as a
// key=value entry in the file passed with --config; command-line flags win
// (the file is loaded before CLI11 applies the flags).
void add_common_options(CLI::App *cmd, RunConfig &cfg, std::string &scheme_csv,
                        std::string &delimiter, std::string &config_path) {
    cmd->add_option("--config", config_path, "key=value config file (flags override it)");
    cmd->add_option("--edges", cfg.edges_path, "edge list file");
    cmd->add_option("--labels", cfg.labels_path, "label file (node_id<TAB>value)");
    cmd->add_option("--label-mode", [&cfg](const std::vector<std::string> &v) {
        if (v[0] == "age")
            cfg.label_mode = LabelMode::Age;
        else if (v[0] == "category")
            cfg.label_mode = LabelMode::Category;
        else
            return false;
        return true;
    }, "label value semantics: age | category");
    cmd->add_option("--out", cfg.out_dir, "output directory");
    cmd->add_option("--scheme", scheme_csv, "age cut points, e.g. 25,35,50");
    cmd->add_option("--delimiter", delimiter, "edge list field separator (default: whitespace)");
    cmd->add_option("--seed-fraction", cfg.seed_fraction, "seed share of the labeled set");
    cmd->add_option("--rng-seed", cfg.rng_seed, "global random seed");
    cmd->add_option("--prune-cap", cfg.prune_cap, "max degree kept (0 disables the prune)");
    cmd->add_option("--lambda", cfg.lambda, "diffusion weight in [0,1]");
    cmd->add_option("--iterations", cfg.iterations, "propagation iterations");
    cmd->add_flag("--masked,!--unmasked", cfg.masked,
                  "restrict the mean field to informed neighbors");
    cmd->add_flag("--use-weights", cfg.use_weights, "use edge weights in the mean field");
    cmd->add_flag("--pps", cfg.pps, "collapse with Population Pyramid Scaling");
    cmd->add_option("--pps-scope", [&cfg](const std::vector<std::string> &v) {
        if (v[0] == "all")
            cfg.pps_scope = PpsScope::All;
        else if (v[0] == "nonseed")
            cfg.pps_scope = PpsScope::NonSeed;
        else
            return false;
        return true;
    }, "pps over: all | nonseed");
    cmd->add_option("--tau", cfg.tau, "confidence threshold; below it nodes stay unassigned");
    cmd->add_option("--format", [&cfg](const std::vector<std::string> &v) {
        if (v[0] == "tsv")
            cfg.format = TableFormat::Tsv;
        else if (v[0] == "text")
            cfg.format = TableFormat::Text;
        else
            return false;
        return true;
    }, "table output format: tsv | text");
    cmd->add_option("--floor", cfg.population_floor, "population floor for best-cell reports");
}

void finish_common(RunConfig &cfg, const std::string &scheme_csv,
                   const std::string &delimiter) {
    if (!scheme_csv.empty())
        cfg.scheme_edges = parse_scheme(scheme_csv).edges();
    if (!delimiter.empty()) {
        if (delimiter.size() != 1)
            throw ConfigError("--delimiter must be a single character");
        cfg.delimiter = delimiter[0];
    }
}

std::vector<double> parse_values(const std::string &csv) {
    std::vector<double> values;
    std::size_t start = 0;
    while (start <= csv.size()) {
        std::size_t end = csv.find(',', start);
        if (end == std::string::npos)
            end = csv.size();
        const std::string tok = csv.substr(start, end - start);
        if (!tok.empty()) {
            try {
                values.push_back(std::stod(tok));
            } catch (const std::exception &) {
                throw ConfigError("bad sweep value '" + tok + "'");
            }
        }
        if (end == csv.size())
            break;
        start = end + 1;
    }
    return values;
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"demograph: demographic attribute inference on communication graphs"};
    app.require_subcommand(1);

    RunConfig cfg;
    std::string scheme_csv, delimiter, config_path;

    // file values are defaults; flags parsed afterwards override them
    for (int i = 1; i + 1 < argc; ++i) {
        if (std::string(argv[i]) == "--config") {
            try {
                cfg = load_config_file(argv[i + 1]);
            } catch (const ConfigError &e) {
                std::cerr << "config error: " << e.what() << '\n';
                return 2;
            }
            break;
        }
    }

    SynthConfig synth_cfg;
    std::string synth_out, pyramid_kind = "bimodal";
    CLI::App *synth = app.add_subcommand("synth", "generate a synthetic age-labeled graph");
    synth->add_option("--out", synth_out, "output directory")->required();
    synth->add_option("--n", synth_cfg.n, "node count");
    synth->add_option("--mean-degree", synth_cfg.mean_degree, "target average degree");
    synth->add_option("--pyramid", pyramid_kind, "age distribution: bimodal | uniform");
    synth->add_option("--age-min", synth_cfg.pyramid.lo, "youngest age");
    synth->add_option("--age-max", synth_cfg.pyramid.hi, "oldest age");
    synth->add_option("--mode1", synth_cfg.pyramid.mode1, "first pyramid mode");
    synth->add_option("--mode2", synth_cfg.pyramid.mode2, "second pyramid mode");
    synth->add_option("--sigma", synth_cfg.pyramid.sigma, "pyramid mode width");
    synth->add_option("--weight1", synth_cfg.pyramid.weight1, "first mode mixture weight");
    synth->add_option("--kernel-scale", synth_cfg.kernel.scale, "age-gap decay scale");
    synth->add_option("--bump-weight", synth_cfg.kernel.bump_weight,
                      "generational bump weight (0 = off)");
    synth->add_option("--bump-center", synth_cfg.kernel.bump_center, "generational gap");
    synth->add_option("--bump-sigma", synth_cfg.kernel.bump_sigma, "generational bump width");
    synth->add_option("--client-fraction", synth_cfg.client_fraction,
                      "observable-node share; non-client pairs lose their edges");
    synth->add_option("--labeled-fraction", synth_cfg.labeled_fraction,
                      "share of nodes written to the label file");
    synth->add_option("--rng-seed", synth_cfg.rng_seed, "global random seed");

    CLI::App *run = app.add_subcommand("run", "full pipeline: ingest, prune, split, "
                                              "propagate, label, evaluate");
    add_common_options(run, cfg, scheme_csv, delimiter, config_path);

    std::string sweep_parameter = "lambda", sweep_values = "0,0.5,1";
    CLI::App *sweep = app.add_subcommand("sweep", "one pipeline run per parameter value "
                                                  "over a shared graph and split");
    add_common_options(sweep, cfg, scheme_csv, delimiter, config_path);
    sweep->add_option("--parameter", sweep_parameter, "lambda | t_end | tau");
    sweep->add_option("--values", sweep_values, "comma-separated values");

    bool shuffled_labels = false;
    CLI::App *homophily = app.add_subcommand("homophily", "age assortativity suite "
                                                          "(C, R, log difference, gap "
                                                          "profile, regression)");
    add_common_options(homophily, cfg, scheme_csv, delimiter, config_path);
    homophily->add_flag("--shuffled-labels", shuffled_labels,
                        "permute ages among labeled nodes first (null model)");

    CLI::App *metrics = app.add_subcommand("metrics", "per-node degree / SIN / DTS table");
    add_common_options(metrics, cfg, scheme_csv, delimiter, config_path);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return 2;
    }

    try {
        finish_common(cfg, scheme_csv, delimiter);
        if (synth->parsed()) {
            if (pyramid_kind == "uniform")
                synth_cfg.pyramid.kind = PyramidSpec::Kind::Uniform;
            else if (pyramid_kind == "bimodal")
                synth_cfg.pyramid.kind = PyramidSpec::Kind::Bimodal;
            else
                throw ConfigError("--pyramid must be bimodal or uniform");
            cmd_synth(synth_cfg, synth_out);
        } else if (run->parsed()) {
            const RunSummary s = cmd_run(cfg);
            std::printf("nodes\t%u\nedges\t%llu\nseeds\t%u\nvalidation\t%u\n"
                        "argmax_accuracy\t%.6f\nemitted_accuracy\t%.6f\nassigned\t%llu\n",
                        s.nodes, static_cast<unsigned long long>(s.edges), s.seeds,
                        s.validation, s.argmax_accuracy, s.emitted_accuracy,
                        static_cast<unsigned long long>(s.assigned_validation));
        } else if (sweep->parsed()) {
            const auto points = cmd_sweep(cfg, sweep_parameter, parse_values(sweep_values));
            std::printf("%s\taccuracy\tassigned\n", sweep_parameter.c_str());
            for (const SweepPoint &pt : points)
                std::printf("%g\t%.6f\t%llu\n", pt.value, pt.accuracy,
                            static_cast<unsigned long long>(pt.assigned));
        } else if (homophily->parsed()) {
            const HomophilySummary s = cmd_homophily(cfg, shuffled_labels);
            std::printf("r\t%.6f\nslope\t%.6f\nmean_abs_log_difference\t%.6f\n",
                        s.regression_r, s.regression_slope, s.mean_abs_log_difference);
        } else if (metrics->parsed()) {
            cmd_metrics(cfg);
        }
    } catch (const ConfigError &e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const DataError &e) {
        std::cerr << "data error: " << e.what() << '\n';
        return 3;
    } catch (const InternalError &e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return 4;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << '\n';
        return 4;
    }
    return 0;
}
