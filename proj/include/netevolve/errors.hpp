#ifndef NETEVOLVE_ERRORS_HPP
#define NETEVOLVE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace netevolve {

// Base for everything thrown by this library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Rejection sampling ran out of attempts while placing a node.
struct PlacementInfeasible : Error {
    using Error::Error;
};

// Snapshot text could not be parsed.
struct ParseError : Error {
    using Error::Error;
};

// A parsed or constructed network violates a model invariant.
struct InvariantViolation : Error {
    using Error::Error;
};

struct NoServers : Error {
    using Error::Error;
};

struct NoClients : Error {
    using Error::Error;
};

// No legal node pair is left to link.
struct Saturated : Error {
    using Error::Error;
};

struct NoLinks : Error {
    using Error::Error;
};

struct TooFewNodes : Error {
    using Error::Error;
};

// Network exceeds the exact-reliability enumeration bound.
struct TooLarge : Error {
    using Error::Error;
};

struct PopulationTooSmall : Error {
    using Error::Error;
};

struct WindowOutOfRange : Error {
    using Error::Error;
};

struct IoError : Error {
    using Error::Error;
};

struct ConfigError : Error {
    ConfigError(const std::string& key, const std::string& reason)
        : Error("config key '" + key + "': " + reason), key(key) {}
    explicit ConfigError(const std::string& reason) : Error(reason) {}
    std::string key;
};

}  // namespace netevolve

#endif  // NETEVOLVE_ERRORS_HPP
