#pragma once

#include <stdexcept>
#include <string>

namespace anderson {

/// Invalid lattice spec, run config, or operation argument. CLI exit code 2.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// A requested computation would exceed resource limits. CLI exit code 3.
class ResourceError : public std::runtime_error {
public:
    explicit ResourceError(const std::string& what) : std::runtime_error(what) {}
};

/// A verification (oracle equivalence, bundle validation) failed. CLI exit code 1.
class CheckError : public std::runtime_error {
public:
    explicit CheckError(const std::string& what) : std::runtime_error(what) {}
};

/// The localization fit could not be performed on the given density.
class FitError : public std::runtime_error {
public:
    explicit FitError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace anderson
