#pragma once

#include <string>

#include "util/kvconfig.hpp"

namespace chainsent {

// Stage drivers behind the CLI subcommands. Each reads its inputs from the
// config, writes its artifact to "<out>.partial", and renames on success so
// interrupted runs never leave a plausible-looking artifact behind.
void stage_decode(const KvConfig &cfg);
void stage_clean(const KvConfig &cfg);
void stage_sentiment(const KvConfig &cfg);
void stage_topics(const KvConfig &cfg);
void stage_dataset(const KvConfig &cfg);
void stage_train(const KvConfig &cfg);
void stage_report(const KvConfig &cfg);

void run_stage(const std::string &stage, const KvConfig &cfg);

} // namespace chainsent
