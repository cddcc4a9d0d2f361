#include <cstdio>
#include <exception>
#include <string>

#include <CLI11.hpp>

#include "lulc/config.hpp"
#include "lulc/pipeline.hpp"

int main(int argc, char** argv) {
    CLI::App app{"texture-based land-cover classification toolkit"};
    app.require_subcommand(1);

    std::string config_path, out_dir, optimizer;
    std::uint64_t seed = 0;
    bool skip_select = false;

    const char* names[] = {"synth", "extract", "select", "train", "eval", "pipeline"};
    const char* descriptions[] = {
        "generate the synthetic texture corpus into dataset.path",
        "ingest, preprocess, and extract the feature matrix",
        "run swarm feature selection over extracted features",
        "train the classifier on the train split",
        "evaluate the saved model and write report CSVs",
        "run extract, select, train, and eval in sequence"};
    for (int i = 0; i < 6; ++i) {
        CLI::App* sub = app.add_subcommand(names[i], descriptions[i]);
        sub->add_option("--config", config_path, "configuration file (key = value lines)");
        sub->add_option("--seed", seed, "override the global seed");
        sub->add_option("--out", out_dir, "override the output directory");
        sub->add_flag("--skip-select", skip_select, "train/eval on the full feature set");
        sub->add_option("--optimizer", optimizer,
                        "swarm update mode: full, plain_pso, or hgo_off");
    }

    CLI11_PARSE(app, argc, argv);

    try {
        lulc::ParsedConfig parsed;
        if (!config_path.empty()) parsed = lulc::load_config(config_path);
        CLI::App* sub = app.get_subcommands().front();
        if (sub->count("--seed") > 0) parsed.override_seed(seed);
        if (sub->count("--out") > 0) parsed.config.out_dir = out_dir;
        if (sub->count("--optimizer") > 0)
            parsed.config.swarm.update_mode = lulc::update_mode_from_string(optimizer);

        const std::string name = sub->get_name();
        if (name == "synth")
            lulc::cmd_synth(parsed.config);
        else if (name == "extract")
            lulc::cmd_extract(parsed.config);
        else if (name == "select")
            lulc::cmd_select(parsed.config);
        else if (name == "train")
            lulc::cmd_train(parsed.config, skip_select);
        else if (name == "eval")
            lulc::cmd_eval(parsed.config, skip_select);
        else
            lulc::cmd_pipeline(parsed.config, skip_select);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
