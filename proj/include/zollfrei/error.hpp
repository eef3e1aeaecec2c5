// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace zf {

// numeric values double as CLI exit codes
enum class Status : int {
    ok = 0,
    tolerance = 2,
    precondition = 3,
    io = 4,
    internal = 5,
};

class Error : public std::runtime_error {
public:
    Error(Status s, const std::string& what) : std::runtime_error(what), status_(s) {}
    Status status() const noexcept { return status_; }

private:
    Status status_;
};

[[noreturn]] inline void fail(Status s, const std::string& what) { throw Error(s, what); }

inline void require(bool ok, const std::string& what) {
    if (!ok) fail(Status::precondition, what);
}

}  // namespace zf
