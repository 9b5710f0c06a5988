#pragma once

#include <stdexcept>
#include <string>

namespace geoprior {

// Exit-code contract: 2 config, 3 input parse, 4 analysis.
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

struct ParseError : std::runtime_error {
    explicit ParseError(const std::string& msg) : std::runtime_error(msg) {}
};

struct AnalysisError : std::runtime_error {
    explicit AnalysisError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace geoprior
