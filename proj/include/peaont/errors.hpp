#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace peaont {

/// Base class for all toolkit errors.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Invalid (k, e, block_size, cipher) combination or a violated operation
/// precondition.
class ParamsError : public Error {
public:
    using Error::Error;
};

/// Key material problem: wrong length, unreadable key file.
class KeyError : public Error {
public:
    using Error::Error;
};

/// Recovered plaintext failed the manifest digest check. Almost always a
/// wrong key; can also be silent fragment corruption that slipped past the
/// fragment digests.
class WrongKeyError : public KeyError {
public:
    using KeyError::KeyError;
};

/// Filesystem and serialized-format failures (bad magic, truncation,
/// unreachable site).
class IoError : public Error {
public:
    using Error::Error;
};

/// Missing fragment, fragment digest mismatch, or cross-scheme mixup.
class IntegrityError : public Error {
public:
    using Error::Error;
};

/// The site list cannot satisfy the dispersal constraint for the requested
/// parameters. Carries the minimum number of sites that would.
class PlacementError : public Error {
public:
    PlacementError(const std::string& what, std::size_t min_sites)
        : Error(what), min_sites_required(min_sites) {}

    std::size_t min_sites_required;
};

} // namespace peaont
