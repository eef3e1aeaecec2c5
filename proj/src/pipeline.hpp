// SPDX-License-Identifier: Apache-2.0
// Orchestration behind the C API; not installed.
#pragma once

#include <map>
#include <string>
#include <vector>

#include "json.hpp"
#include "zollfrei/error.hpp"
#include "zollfrei/monopole.hpp"
#include "zollfrei/transforms.hpp"
#include "zollfrei/twistor.hpp"

namespace zf {

inline constexpr const char* kConfigSchema = "zollfrei.run/1";
inline constexpr const char* kReportSchema = "zollfrei.report/1";
inline constexpr const char* kVersion = "0.3.0";

struct DiskParams {
    double s = 0.0, t = 0.0;
    cplx lam;
};

struct RunConfig {
    int band_limit = 8;
    std::uint64_t seed = 1;
    double tolerance_scale = 1.0;
    HarmonicCoeffs h;
    double t_max = 4.0;
    double wave_dt = 1e-3;
    double fd_step = 1e-3;
    double dump_t_max = 6.0;
    SplitConfig split;
    TransformConfig quad;
    AdmissibilityConfig adm;
    int eigen_max_degree = 25;
    std::map<std::string, int> samples;
    std::map<std::string, double> tolerances;
    std::vector<DiskParams> disks;
    nlohmann::json resolved;  // echo

    static RunConfig parse(const std::string& text);
    double tol(const std::string& name) const;
    int count(const std::string& name) const;
};

struct RunResult {
    Status status = Status::ok;
    nlohmann::json report;
};

RunResult run_command(const RunConfig& cfg, const std::string& command, const std::string& out_dir);
const std::vector<std::string>& command_names();

}  // namespace zf
