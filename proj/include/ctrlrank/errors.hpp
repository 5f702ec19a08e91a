#ifndef CTRLRANK_ERRORS_HPP
#define CTRLRANK_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace ctrlrank {

/// Base class for all toolkit errors.
struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Malformed or inconsistent input data (CSV, edge list, config).
struct ParseError : Error {
    explicit ParseError(const std::string& what) : Error(what) {}
};

/// Integration produced a non-finite state.
struct DivergenceError : Error {
    explicit DivergenceError(const std::string& what) : Error(what) {}
};

/// All recovery points coincide (or none exist); no ranking can be formed.
struct DegenerateRankingError : Error {
    explicit DegenerateRankingError(const std::string& what) : Error(what) {}
};

/// Controller-set sampling could not produce a verifiable minimum set.
struct SamplingError : Error {
    explicit SamplingError(const std::string& what) : Error(what) {}
};

/// Two rankings do not share a common node scope.
struct ScopeError : Error {
    explicit ScopeError(const std::string& what) : Error(what) {}
};

/// Integer counter would overflow.
struct OverflowError : Error {
    explicit OverflowError(const std::string& what) : Error(what) {}
};

} // namespace ctrlrank

#endif
