// SPDX-License-Identifier: Apache-2.0
#include "zollfrei/zollfrei.h"

#include <cmath>
#include <cstdlib>
#include <cstring>
#include <string>

#include "pipeline.hpp"
#include "zollfrei/transforms.hpp"

struct zf_context {
    zf::RunConfig cfg;
    zf::Monopole mono;
};

namespace {

thread_local std::string g_last_error;

zf_status set_error(zf_status s, const std::string& what) {
    g_last_error = what;
    return s;
}

char* dup(const std::string& s) {
    char* p = static_cast<char*>(std::malloc(s.size() + 1));
    if (p) std::memcpy(p, s.c_str(), s.size() + 1);
    return p;
}

template <class F>
zf_status guarded(F&& f) {
    try {
        return f();
    } catch (const zf::Error& e) {
        return set_error(static_cast<zf_status>(e.status()), e.what());
    } catch (const std::bad_alloc&) {
        return set_error(ZF_INTERNAL, "out of memory");
    } catch (const std::exception& e) {
        return set_error(ZF_INTERNAL, e.what());
    }
}

zf::Vec3 to_vec(const double y[3]) { return zf::unit({y[0], y[1], y[2]}); }

}  // namespace

extern "C" {

const char* zf_version(void) { return zf::kVersion; }

const char* zf_last_error(void) { return g_last_error.c_str(); }

zf_status zf_context_create(const char* config_json, zf_context** out) {
    if (!out) return set_error(ZF_PRECONDITION, "out is NULL");
    *out = nullptr;
    return guarded([&] {
        auto* c = new zf_context{zf::RunConfig::parse(config_json ? config_json : ""), {}};
        c->mono = zf::Monopole::from_generator(c->cfg.h);
        *out = c;
        return ZF_OK;
    });
}

void zf_context_destroy(zf_context* ctx) { delete ctx; }

void zf_free_string(char* s) { std::free(s); }

zf_status zf_resolved_config(const zf_context* ctx, char** json_out) {
    if (!ctx || !json_out) return set_error(ZF_PRECONDITION, "NULL argument");
    return guarded([&] {
        *json_out = dup(ctx->cfg.resolved.dump(2));
        return *json_out ? ZF_OK : set_error(ZF_INTERNAL, "out of memory");
    });
}

zf_status zf_run(zf_context* ctx, const char* command, const char* out_dir, char** report_json) {
    if (report_json) *report_json = nullptr;
    if (!ctx || !command) return set_error(ZF_PRECONDITION, "NULL argument");
    return guarded([&] {
        const zf::RunResult r = zf::run_command(ctx->cfg, command, out_dir ? out_dir : "");
        if (report_json) *report_json = dup(r.report.dump(2));
        if (r.status != zf::Status::ok) set_error(static_cast<zf_status>(r.status), "one or more checks failed");
        return static_cast<zf_status>(r.status);
    });
}

zf_status zf_q_eigenvalue(int degree, double* out) {
    if (!out) return set_error(ZF_PRECONDITION, "NULL argument");
    if (degree < 0) return set_error(ZF_PRECONDITION, "degree must be >= 0");
    return guarded([&] {
        *out = zf::q_eigenvalue(degree);
        return ZF_OK;
    });
}

zf_status zf_transform_R(const zf_context* ctx, double t, const double y[3], double* out) {
    if (!ctx || !y || !out) return set_error(ZF_PRECONDITION, "NULL argument");
    return guarded([&] {
        *out = zf::transform_R(ctx->cfg.h, {t, to_vec(y)});
        return ZF_OK;
    });
}

zf_status zf_transform_Q(const zf_context* ctx, double t, const double y[3], double* out) {
    if (!ctx || !y || !out) return set_error(ZF_PRECONDITION, "NULL argument");
    return guarded([&] {
        *out = zf::transform_Q(ctx->cfg.h, {t, to_vec(y)});
        return ZF_OK;
    });
}

zf_status zf_monopole_V(const zf_context* ctx, double t, const double y[3], double* out) {
    if (!ctx || !y || !out) return set_error(ZF_PRECONDITION, "NULL argument");
    return guarded([&] {
        *out = zf::monopole_V(ctx->mono, t, to_vec(y));
        return ZF_OK;
    });
}

zf_status zf_disk_point(const zf_context* ctx, double s, double t, double lam_re, double lam_im, double w_re,
                        double w_im, double z_out[8]) {
    if (!ctx || !z_out) return set_error(ZF_PRECONDITION, "NULL argument");
    if (std::hypot(w_re, w_im) > 1.0 + 1e-12) return set_error(ZF_PRECONDITION, "omega must lie in the closed unit disk");
    return guarded([&] {
        const auto b = zf::fourier_split(ctx->cfg.h, s, t, {lam_re, lam_im}, ctx->cfg.split);
        const auto p = zf::disk_map(b, {w_re, w_im});
        for (int k = 0; k < 4; ++k) {
            z_out[2 * k] = p.z[k].real();
            z_out[2 * k + 1] = p.z[k].imag();
        }
        return ZF_OK;
    });
}

}  // extern "C"
