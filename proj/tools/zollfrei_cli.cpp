// SPDX-License-Identifier: Apache-2.0
// Command-line front end; talks to the library only through zollfrei.h.
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "zollfrei/zollfrei.h"

namespace {

struct Owned {
    char* p = nullptr;
    ~Owned() { zf_free_string(p); }
};

int summarize(const std::string& report) {
    // human summary on stderr; the JSON report goes to stdout
    auto j = nlohmann::json::parse(report, nullptr, false);
    if (j.is_discarded()) return 0;
    for (const auto& c : j.value("checks", nlohmann::json::array())) {
        std::fprintf(stderr, "%-4s %s", c.value("pass", false) ? "ok" : "FAIL", c.value("name", "?").c_str());
        if (c.contains("value") && c["value"].is_number())
            std::fprintf(stderr, "  %.3e (tol %.1e)", c["value"].get<double>(), c.value("tolerance", 0.0));
        std::fputc('\n', stderr);
    }
    for (const auto& s : j.value("skipped", nlohmann::json::array()))
        std::fprintf(stderr, "skip %s: %s\n", s.value("stage", "?").c_str(), s.value("reason", "").c_str());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"zollfrei: twistor, monopole and curvature checks for Zoll-type data"};
    app.set_version_flag("--version", std::string(zf_version()));
    std::string config_path, out_dir, command;
    std::int64_t seed = -1;
    int band_limit = -1;
    double tol_scale = -1.0;
    app.add_option("command", command, "eigen | verify | disks | admissible | monopole-dump | asd-check")
        ->required()
        ->check(CLI::IsMember({"eigen", "verify", "disks", "admissible", "monopole-dump", "asd-check"}));
    app.add_option("--config", config_path, "JSON run configuration");
    app.add_option("--out", out_dir, "directory for reports and CSV dumps");
    app.add_option("--seed", seed, "sampling seed")->check(CLI::NonNegativeNumber);
    app.add_option("--band-limit", band_limit, "maximum spherical-harmonic degree")->check(CLI::PositiveNumber);
    app.add_option("--tolerance-scale", tol_scale, "multiplier on every tolerance")->check(CLI::PositiveNumber);
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 3;
    }

    nlohmann::json cfg = nlohmann::json::object();
    if (!config_path.empty()) {
        std::ifstream is(config_path);
        if (!is) {
            std::fprintf(stderr, "error: cannot read %s\n", config_path.c_str());
            return 4;
        }
        std::stringstream ss;
        ss << is.rdbuf();
        cfg = nlohmann::json::parse(ss.str(), nullptr, false);
        if (cfg.is_discarded() || !cfg.is_object()) {
            std::fprintf(stderr, "error: %s is not a JSON object\n", config_path.c_str());
            return 3;
        }
    }
    if (seed >= 0) cfg["seed"] = seed;
    if (band_limit > 0) cfg["band_limit"] = band_limit;
    if (tol_scale > 0) cfg["tolerance_scale"] = tol_scale;

    zf_context* ctx = nullptr;
    zf_status st = zf_context_create(cfg.dump().c_str(), &ctx);
    if (st != ZF_OK) {
        std::fprintf(stderr, "error: %s\n", zf_last_error());
        return static_cast<int>(st);
    }
    Owned report;
    st = zf_run(ctx, command.c_str(), out_dir.empty() ? nullptr : out_dir.c_str(), &report.p);
    if (report.p) {
        std::cout << report.p << '\n';
        summarize(report.p);
    }
    if (st != ZF_OK) std::fprintf(stderr, "%s: %s\n", st == ZF_TOLERANCE ? "fail" : "error", zf_last_error());
    zf_context_destroy(ctx);
    return static_cast<int>(st);
}
