// SPDX-License-Identifier: Apache-2.0
// Links only the shared library and its C header.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <complex>
#include <cstring>
#include <string>

#include "doctest.h"
#include "json.hpp"
#include "zollfrei/zollfrei.h"

namespace {

struct Ctx {
    zf_context* p = nullptr;
    explicit Ctx(const char* cfg) { REQUIRE(zf_context_create(cfg, &p) == ZF_OK); }
    ~Ctx() { zf_context_destroy(p); }
};

nlohmann::json run(zf_context* c, const char* cmd, zf_status want) {
    char* rep = nullptr;
    CHECK(zf_run(c, cmd, nullptr, &rep) == want);
    REQUIRE(rep != nullptr);
    auto j = nlohmann::json::parse(rep);
    zf_free_string(rep);
    return j;
}

}  // namespace

TEST_CASE("version and errors") {
    CHECK(std::strlen(zf_version()) > 0);
    zf_context* c = reinterpret_cast<zf_context*>(0x1);
    CHECK(zf_context_create("{not json", &c) == ZF_PRECONDITION);
    CHECK(c == nullptr);
    CHECK(std::string(zf_last_error()).find("JSON") != std::string::npos);
    CHECK(zf_context_create(R"({"schema": "other/9"})", &c) == ZF_PRECONDITION);
    CHECK(zf_context_create(R"({"band_limit": 4, "generator": {"terms": [{"l": 6, "m": 0, "c": 1}]}})", &c) ==
          ZF_PRECONDITION);
    CHECK(zf_context_create(R"({"generator": {"terms": [{"l": 0, "m": 0, "c": 1}]}})", &c) == ZF_PRECONDITION);
    CHECK(zf_context_create(R"({"fourier": {"K": 3}})", &c) == ZF_PRECONDITION);
    CHECK(zf_context_create(R"({"tolerances": {"nonsense": 1}})", &c) == ZF_PRECONDITION);
    CHECK(zf_run(nullptr, "eigen", nullptr, nullptr) == ZF_PRECONDITION);
}

TEST_CASE("resolved config is echoed with defaults") {
    Ctx c(nullptr);
    char* s = nullptr;
    REQUIRE(zf_resolved_config(c.p, &s) == ZF_OK);
    const auto j = nlohmann::json::parse(s);
    zf_free_string(s);
    CHECK(j["schema"] == "zollfrei.run/1");
    CHECK(j["fourier"]["K"] == 4 * 1 + 8);
    CHECK(j["fourier"]["N"] == 4 * 12);
    CHECK(j["tolerances"]["disk_boundary"] == 1e-8);
}

TEST_CASE("tolerance scale applies") {
    Ctx c(R"({"tolerance_scale": 10})");
    char* s = nullptr;
    REQUIRE(zf_resolved_config(c.p, &s) == ZF_OK);
    CHECK(nlohmann::json::parse(s)["tolerances"]["disk_boundary"] == doctest::Approx(1e-7));
    zf_free_string(s);
}

TEST_CASE("point evaluations") {
    double v = 0;
    REQUIRE(zf_q_eigenvalue(1, &v) == ZF_OK);
    CHECK(std::abs(v - 0.5) < 1e-9);
    CHECK(zf_q_eigenvalue(-1, &v) == ZF_PRECONDITION);

    Ctx c(R"({"generator": {"linear": [0, 0, 0.3]}})");
    const double y[3] = {0, 0, 1};
    REQUIRE(zf_monopole_V(c.p, 0.5, y, &v) == ZF_OK);
    CHECK(std::abs(v - (1 + 0.3 / std::pow(std::cosh(0.5), 2))) < 1e-13);
    REQUIRE(zf_transform_R(c.p, 0.5, y, &v) == ZF_OK);
    CHECK(std::abs(v - 0.3 * std::tanh(0.5)) < 1e-10);
    REQUIRE(zf_transform_Q(c.p, 0.0, y, &v) == ZF_OK);
    CHECK(std::abs(v - 0.3 * 0.5) < 1e-10);

    Ctx flat(nullptr);
    double z[8];
    REQUIRE(zf_disk_point(flat.p, 0, 0, 0, 0, 0.6, 0.8, z) == ZF_OK);
    // [-i : iω : -1 : ω] up to a unit factor
    using C = std::complex<double>;
    const C w(0.6, 0.8), want[4] = {C(0, -1), C(0, 1) * w, -1.0, w};
    C inner = 0;
    for (int k = 0; k < 4; ++k) inner += std::conj(want[k]) * C(z[2 * k], z[2 * k + 1]);
    CHECK(std::abs(std::abs(inner) / 2.0 - 1.0) < 1e-12);
    CHECK(zf_disk_point(flat.p, 0, 0, 0, 0, 2.0, 0.0, z) == ZF_PRECONDITION);
}

TEST_CASE("commands through the C API") {
    Ctx c(R"({"generator": {"linear": [0, 0, 0.3]}, "samples": {"disks": 5, "identity_points": 5,
              "monopole_points": 3, "h0_points": 10, "wanted2": 5, "frobenius": 3, "asd": 2, "curvature_points": 2}})");
    const auto e = run(c.p, "eigen", ZF_OK);
    CHECK(e["table"][0]["c_Q"] == doctest::Approx(1.0));
    const auto v = run(c.p, "verify", ZF_OK);
    CHECK(v["pass"] == true);
    CHECK(v["config"]["generator"]["terms"].size() == 1);
    CHECK(v["skipped"].empty());
    // identical input, identical report
    CHECK(run(c.p, "verify", ZF_OK).dump() == v.dump());
    CHECK(run(c.p, "asd-check", ZF_OK)["pass"] == true);
    CHECK(zf_run(c.p, "nope", nullptr, nullptr) == ZF_PRECONDITION);

    Ctx bad(R"({"generator": {"linear": [0, 0, 2.0]}, "samples": {"disks": 3, "identity_points": 3,
                "monopole_points": 3, "h0_points": 5}})");
    const auto n = run(bad.p, "verify", ZF_OK);
    CHECK(n.contains("non_admissibility_witness"));
    CHECK(n["skipped"].size() == 6);
    CHECK(run(bad.p, "admissible", ZF_OK)["admissibility"]["admissible"] == false);

    Ctx strict(R"({"tolerances": {"eigen_c1": 1e-20}})");
    CHECK(run(strict.p, "eigen", ZF_TOLERANCE)["pass"] == false);
}
