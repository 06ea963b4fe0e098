#pragma once

#include <stdexcept>
#include <string>

namespace blochsep {

struct NonHermitianInput : std::runtime_error {
    explicit NonHermitianInput(const std::string& what) : std::runtime_error(what) {}
};

struct OutOfRange : std::runtime_error {
    explicit OutOfRange(const std::string& what) : std::runtime_error(what) {}
};

struct InsufficientData : std::runtime_error {
    explicit InsufficientData(const std::string& what) : std::runtime_error(what) {}
};

struct InsufficientBins : std::runtime_error {
    explicit InsufficientBins(const std::string& what) : std::runtime_error(what) {}
};

struct UnsupportedMeasure : std::runtime_error {
    explicit UnsupportedMeasure(const std::string& what) : std::runtime_error(what) {}
};

struct DomainError : std::runtime_error {
    explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

struct NoConvergence : std::runtime_error {
    explicit NoConvergence(const std::string& what) : std::runtime_error(what) {}
};

struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

struct IoError : std::runtime_error {
    explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace blochsep
