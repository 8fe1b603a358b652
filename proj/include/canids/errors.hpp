#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace canids {

// Every failure the library reports deliberately. Code identity matters more
// than message text: tests and callers dispatch on `Errc`, messages are for
// humans.
enum class Errc {
    // log parsing / IO
    MalformedLine,
    OddHexLength,
    PayloadTooLong,
    BadTimestamp,
    IoFailure,
    WindowTooSmall,
    // similarity
    ZeroVector,
    LengthMismatch,
    ConstantVector,
    TooFewGraphs,
    // detection
    SingleClass,
    SeriesTooShort,
    ZeroVariance,
    ZeroMeanAverage,
    // sequence model
    MetricMismatch,
    TooShort,
    NonFiniteInput,
    DivergedNonFinite,
    BadCheckpoint,
    // synthetic traffic
    BadTransitionMatrix,
    IntervalOutOfRange,
    BadSpec,
    // evaluation
    TooFewSamples,
    // structured text inputs (CSV, label sidecars)
    BadCsv,
};

const char* errc_name(Errc code);

class Error : public std::runtime_error {
  public:
    Error(Errc code, const std::string& message, std::size_t index = 0)
        : std::runtime_error(std::string(errc_name(code)) + ": " + message),
          code_(code), index_(index) {}

    Errc code() const { return code_; }

    // 1-based line number for parse errors, epoch index for training
    // failures, 0 when not applicable.
    std::size_t index() const { return index_; }

  private:
    Errc code_;
    std::size_t index_;
};

} // namespace canids
