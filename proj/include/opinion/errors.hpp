#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace opinion {

// Invalid model input: bad weights, out-of-range ids, dimension mismatches.
class ValidationError : public std::invalid_argument {
public:
    explicit ValidationError(const std::string& msg) : std::invalid_argument(msg) {}
};

// Non-finite value produced during simulation. Indicates a broken bias
// function rather than a legal model state, so the run is aborted.
class NumericError : public std::runtime_error {
public:
    explicit NumericError(const std::string& msg) : std::runtime_error(msg) {}
};

// Scenario document rejected. Carries every issue found, with field paths.
class ScenarioError : public std::runtime_error {
public:
    ScenarioError(std::string summary, std::vector<std::string> issues_in)
        : std::runtime_error(std::move(summary)), issues(std::move(issues_in)) {}
    std::vector<std::string> issues;
};

} // namespace opinion
