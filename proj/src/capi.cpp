#include "chainsent.h"

#include <exception>
#include <new>
#include <string>

#include "pipeline/stages.hpp"
#include "util/kvconfig.hpp"
#include "util/status.hpp"

using namespace chainsent;

struct chainsent_pipeline {
    KvConfig config;
    std::string last_error;
    std::string get_slot; // keeps chainsent_pipeline_get results alive
};

namespace {

chainsent_status status_of(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::Config: return CHAINSENT_ERR_CONFIG;
    case ErrorKind::Io: return CHAINSENT_ERR_IO;
    case ErrorKind::Input: return CHAINSENT_ERR_INPUT;
    case ErrorKind::Internal: return CHAINSENT_ERR_INTERNAL;
    }
    return CHAINSENT_ERR_INTERNAL;
}

template <typename Fn>
chainsent_status guarded(chainsent_pipeline *p, Fn &&fn) {
    if (!p)
        return CHAINSENT_ERR_CONFIG;
    try {
        fn();
        p->last_error.clear();
        return CHAINSENT_OK;
    } catch (const Error &e) {
        p->last_error = e.what();
        return status_of(e.kind());
    } catch (const std::exception &e) {
        p->last_error = e.what();
        return CHAINSENT_ERR_INTERNAL;
    } catch (...) {
        p->last_error = "unknown failure";
        return CHAINSENT_ERR_INTERNAL;
    }
}

} // namespace

extern "C" {

const char *chainsent_version(void) { return "1.0.0"; }

chainsent_pipeline *chainsent_pipeline_new(void) {
    return new (std::nothrow) chainsent_pipeline();
}

void chainsent_pipeline_free(chainsent_pipeline *p) { delete p; }

chainsent_status chainsent_pipeline_load_config(chainsent_pipeline *p,
                                                const char *path) {
    return guarded(p, [&] {
        if (!path)
            fail_config("config path is null");
        p->config.load_file(path);
    });
}

chainsent_status chainsent_pipeline_set(chainsent_pipeline *p, const char *key,
                                        const char *value) {
    return guarded(p, [&] {
        if (!key || !value)
            fail_config("setting key/value is null");
        p->config.set(key, value);
    });
}

const char *chainsent_pipeline_get(chainsent_pipeline *p, const char *key) {
    if (!p || !key)
        return nullptr;
    auto value = p->config.get(key);
    if (!value)
        return nullptr;
    p->get_slot = *value;
    return p->get_slot.c_str();
}

chainsent_status chainsent_pipeline_run_stage(chainsent_pipeline *p,
                                              const char *stage) {
    return guarded(p, [&] {
        if (!stage)
            fail_config("stage name is null");
        run_stage(stage, p->config);
    });
}

const char *chainsent_pipeline_last_error(const chainsent_pipeline *p) {
    return p ? p->last_error.c_str() : "";
}

} // extern "C"
