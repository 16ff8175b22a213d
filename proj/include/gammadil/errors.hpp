#pragma once

#include <stdexcept>
#include <string>

namespace gammadil {

/// Base class for every error this library throws on purpose.
struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

struct InvalidMatrix : Error {
    using Error::Error;
};

struct NotHermitian : Error {
    using Error::Error;
};

struct NoConvergence : Error {
    using Error::Error;
};

struct NotPSD : Error {
    using Error::Error;
};

struct NotCommuting : Error {
    using Error::Error;
};

struct NotContractions : Error {
    using Error::Error;
};

struct ResidualTooLarge : Error {
    using Error::Error;
};

struct DepthTooSmall : Error {
    using Error::Error;
};

struct PowersExceedDepth : Error {
    using Error::Error;
};

struct WindowTooDeep : Error {
    using Error::Error;
};

struct SymmetryViolated : Error {
    using Error::Error;
};

struct NotNormal : Error {
    using Error::Error;
};

} // namespace gammadil
