#include <cstdio>
#include <deque>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "chainsent.h"

namespace {

struct FlagBinding {
    std::string key;   // pipeline setting the flag maps onto
    std::string value; // storage for CLI11
    CLI::Option *option = nullptr;
    bool is_flag = false; // boolean switch → "true"
};

struct StageCommand {
    CLI::App *app = nullptr;
    std::string name;
    std::string config_path;
    std::string seed;
    CLI::Option *seed_option = nullptr;
    // deque: CLI11 holds references into the elements, so addresses must
    // survive further push_backs
    std::deque<FlagBinding> bindings;
};

void add_option(StageCommand &cmd, const std::string &flag,
                const std::string &key, const std::string &help) {
    cmd.bindings.push_back({key, "", nullptr, false});
    cmd.bindings.back().option =
        cmd.app->add_option(flag, cmd.bindings.back().value, help);
}

void add_switch(StageCommand &cmd, const std::string &flag,
                const std::string &key, const std::string &help) {
    cmd.bindings.push_back({key, "", nullptr, true});
    cmd.bindings.back().option = cmd.app->add_flag(flag, help);
}

int fail_with(chainsent_pipeline *p, chainsent_status status) {
    std::fprintf(stderr, "error: %s\n", chainsent_pipeline_last_error(p));
    return static_cast<int>(status);
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"blockchain embedded-text sentiment pipeline"};
    app.set_version_flag("--version", chainsent_version());
    app.require_subcommand(1);

    std::vector<std::unique_ptr<StageCommand>> commands;
    auto stage = [&](const std::string &name,
                     const std::string &help) -> StageCommand & {
        auto cmd = std::make_unique<StageCommand>();
        cmd->name = name;
        cmd->app = app.add_subcommand(name, help);
        cmd->app->add_option("--config", cmd->config_path, "key=value settings file")
            ->required();
        cmd->seed_option = cmd->app->add_option("--seed", cmd->seed, "random seed");
        commands.push_back(std::move(cmd));
        return *commands.back();
    };

    {
        StageCommand &c = stage("decode", "extract embedded text from raw transactions");
        add_option(c, "--in", "in", "raw transaction NDJSON");
        add_option(c, "--out", "out", "decoded text NDJSON");
        add_option(c, "--chain", "chain", "btc, eth or both");
        add_option(c, "--threads", "threads", "worker thread count");
    }
    {
        StageCommand &c = stage("clean", "build the cleaned corpus");
        add_option(c, "--in", "in", "decoded text NDJSON");
        add_option(c, "--out", "out", "corpus NDJSON");
        add_option(c, "--lexicon", "financial_lexicon", "finance term list");
        add_option(c, "--vocab", "vocab", "known-word list");
        add_option(c, "--abbreviations", "abbreviations", "slang expansion TSV");
        add_switch(c, "--minimal", "minimal",
                   "light cleanup only (keeps case, no expansion)");
        add_switch(c, "--financial", "financial",
                   "write only the finance-matched subset");
    }
    {
        StageCommand &c = stage("sentiment", "score daily documents");
        add_option(c, "--in", "in", "corpus NDJSON");
        add_option(c, "--out", "out", "per-day feature CSV");
        add_option(c, "--external", "external", "extra per-day feature CSV");
    }
    {
        StageCommand &c = stage("topics", "fit topics and the distance map");
        add_option(c, "--in", "in", "corpus NDJSON");
        add_option(c, "--out", "out", "output directory");
        add_option(c, "--k", "k", "topic count");
        add_option(c, "--iters", "iters", "sampling iterations");
    }
    {
        StageCommand &c = stage("dataset", "assemble the supervised table");
        add_option(c, "--prices-btc", "prices_btc", "BTC price CSV");
        add_option(c, "--prices-eth", "prices_eth", "ETH price CSV");
        add_option(c, "--corpus", "corpus", "financial corpus NDJSON");
        add_option(c, "--raw-corpus", "raw_corpus",
                   "minimally cleaned financial corpus NDJSON");
        add_option(c, "--external", "external", "extra per-day feature CSV");
        add_option(c, "--out", "out", "dataset CSV");
        add_option(c, "--target", "target", "btc or eth");
    }
    {
        StageCommand &c = stage("train", "grid-search the classifier suite");
        add_option(c, "--dataset", "dataset", "dataset CSV");
        add_option(c, "--target", "target", "btc or eth");
        add_option(c, "--out", "out", "report output directory");
    }
    {
        StageCommand &c = stage("report", "render a report as a text table");
        add_option(c, "--in", "in", "report CSV");
        add_option(c, "--out", "out", "table text file");
    }

    CLI11_PARSE(app, argc, argv);

    for (const auto &cmd : commands) {
        if (!cmd->app->parsed())
            continue;
        std::unique_ptr<chainsent_pipeline, void (*)(chainsent_pipeline *)>
            pipeline(chainsent_pipeline_new(), chainsent_pipeline_free);
        if (!pipeline) {
            std::fprintf(stderr, "error: out of memory\n");
            return CHAINSENT_ERR_INTERNAL;
        }
        chainsent_status status =
            chainsent_pipeline_load_config(pipeline.get(), cmd->config_path.c_str());
        if (status != CHAINSENT_OK)
            return fail_with(pipeline.get(), status);
        if (cmd->seed_option->count()) {
            status = chainsent_pipeline_set(pipeline.get(), "seed",
                                            cmd->seed.c_str());
            if (status != CHAINSENT_OK)
                return fail_with(pipeline.get(), status);
        }
        for (const auto &binding : cmd->bindings) {
            if (!binding.option->count())
                continue;
            const char *value = binding.is_flag ? "true" : binding.value.c_str();
            status = chainsent_pipeline_set(pipeline.get(), binding.key.c_str(),
                                            value);
            if (status != CHAINSENT_OK)
                return fail_with(pipeline.get(), status);
        }
        status = chainsent_pipeline_run_stage(pipeline.get(), cmd->name.c_str());
        if (status != CHAINSENT_OK)
            return fail_with(pipeline.get(), status);
        return 0;
    }
    return 0;
}
