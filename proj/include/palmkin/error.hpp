#pragma once

#include <stdexcept>
#include <string>

namespace palmkin {

// Error taxonomy shared by every module. All derive from std::runtime_error so
// callers that only care about "something went wrong" can catch one type.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A joint index that does not address the supplied joint vector.
class IndexError : public Error {
public:
    using Error::Error;
};

/// A joint vector whose length does not match the chain's DoF.
class DimensionError : public Error {
public:
    using Error::Error;
};

/// Invalid case id, mismatched voxel sizes, unknown reference keys, bad config.
class ConfigurationError : public Error {
public:
    using Error::Error;
};

/// Numerical parameter outside its domain (non-positive step, negative length).
class ParameterError : public Error {
public:
    using Error::Error;
};

/// Non-finite coordinates fed to the voxelizer.
class InputError : public Error {
public:
    using Error::Error;
};

/// Division by a zero reachable volume.
class DivisionError : public Error {
public:
    using Error::Error;
};

class IoError : public Error {
public:
    IoError(const std::string& path, const std::string& what)
        : Error(path + ": " + what), path_(path) {}

    const std::string& path() const noexcept { return path_; }

private:
    std::string path_;
};

}  // namespace palmkin
