#ifndef CDW_ERRORS_HPP
#define CDW_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace cdw {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct InvalidParameterError : Error {
    using Error::Error;
};

struct InfeasiblePackingError : Error {
    using Error::Error;
};

struct DegenerateGapError : Error {
    using Error::Error;
};

// Integrator state exceeded the overflow guard; carries the offending step.
struct DivergenceError : Error {
    DivergenceError(const std::string& msg, std::size_t step_index)
        : Error(msg + " (step " + std::to_string(step_index) + ")"), step(step_index) {}
    std::size_t step;
};

struct BlowUpError : Error {
    BlowUpError(const std::string& msg, std::size_t step_index)
        : Error(msg + " (step " + std::to_string(step_index) + ")"), step(step_index) {}
    std::size_t step;
};

struct SolverSingularError : Error {
    using Error::Error;
};

struct UnknownFrequencyError : Error {
    using Error::Error;
};

struct ZeroFrequencyError : Error {
    using Error::Error;
};

struct UnresolvedThresholdError : Error {
    using Error::Error;
};

struct InvalidBetaError : Error {
    using Error::Error;
};

struct GridTooSmallError : Error {
    using Error::Error;
};

struct InvalidStateError : Error {
    using Error::Error;
};

struct QuadratureUnderresolvedError : Error {
    using Error::Error;
};

struct ParseError : Error {
    ParseError(const std::string& msg, std::size_t line_number)
        : Error(msg + " (line " + std::to_string(line_number) + ")"), line(line_number) {}
    std::size_t line;
};

struct ValidationError : Error {
    ValidationError(const std::string& msg, std::string offending_key)
        : Error(msg), key(std::move(offending_key)) {}
    std::string key;
};

} // namespace cdw

#endif
