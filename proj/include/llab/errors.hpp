#pragma once

#include <stdexcept>
#include <string>

#include <json.hpp>

namespace llab {

// Exit-code mapping for the CLI lives in cli.cpp: parse/usage -> 1,
// contract faults -> 2, resource guards -> 3.

struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A Point lies outside the domain prefix of the class it is used with.
struct domain_error : error {
    using error::error;
};

// Shape mismatch: wrong address length, index out of range, malformed tree.
struct structural_error : error {
    using error::error;
};

// Malformed input file or unusable construction parameters.
struct parse_error : error {
    using error::error;
};
struct config_error : error {
    using error::error;
};

// Enumeration or materialization would exceed the configured cap.
struct resource_guard : error {
    using error::error;
};

// An oracle broke its contract. Carries the offending call as data so the
// caller (and the test suite) can inspect the witness.
struct oracle_fault : error {
    nlohmann::json witness;

    oracle_fault(const std::string& msg, nlohmann::json w)
        : error(msg), witness(std::move(w)) {}
};

// A stated bound was too small to complete a construction.
struct bound_fault : error {
    nlohmann::json witness;

    bound_fault(const std::string& msg, nlohmann::json w)
        : error(msg), witness(std::move(w)) {}
};

}  // namespace llab
