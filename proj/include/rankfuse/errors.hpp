#ifndef RANKFUSE_ERRORS_HPP
#define RANKFUSE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace rankfuse {

// Input file could not be parsed (bad header, non-numeric field, ...).
struct ParseError : std::runtime_error {
    explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

// Input parsed but violates a data contract (ties, duplicate entities,
// mismatched ids, bad configuration values).
struct ValidationError : std::runtime_error {
    explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

// Model cannot be fit on this data (disconnected comparison graph,
// uncovered entity in a Markov-chain method).
struct DegeneracyError : std::runtime_error {
    explicit DegeneracyError(const std::string& what) : std::runtime_error(what) {}
};

// Internal numerical failure; signals a bug rather than bad input.
struct NumericalError : std::runtime_error {
    explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace rankfuse

#endif
