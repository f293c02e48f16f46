#pragma once

#include <stdexcept>
#include <string>

namespace vqclass {

// Invalid configuration values (qubit counts, optimizer settings, experiment files).
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// Data ingestion failures (missing file, missing label column, no usable rows).
class LoadError : public std::runtime_error {
public:
    explicit LoadError(const std::string& what) : std::runtime_error(what) {}
};

// Model training failed to converge or aborted.
class TrainError : public std::runtime_error {
public:
    explicit TrainError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace vqclass
