#include "canids/errors.hpp"

namespace canids {

const char* errc_name(Errc code) {
    switch (code) {
    case Errc::MalformedLine:       return "MalformedLine";
    case Errc::OddHexLength:        return "OddHexLength";
    case Errc::PayloadTooLong:      return "PayloadTooLong";
    case Errc::BadTimestamp:        return "BadTimestamp";
    case Errc::IoFailure:           return "IoFailure";
    case Errc::WindowTooSmall:      return "WindowTooSmall";
    case Errc::ZeroVector:          return "ZeroVector";
    case Errc::LengthMismatch:      return "LengthMismatch";
    case Errc::ConstantVector:      return "ConstantVector";
    case Errc::TooFewGraphs:        return "TooFewGraphs";
    case Errc::SingleClass:         return "SingleClass";
    case Errc::SeriesTooShort:      return "SeriesTooShort";
    case Errc::ZeroVariance:        return "ZeroVariance";
    case Errc::ZeroMeanAverage:     return "ZeroMeanAverage";
    case Errc::MetricMismatch:      return "MetricMismatch";
    case Errc::TooShort:            return "TooShort";
    case Errc::NonFiniteInput:      return "NonFiniteInput";
    case Errc::DivergedNonFinite:   return "DivergedNonFinite";
    case Errc::BadCheckpoint:       return "BadCheckpoint";
    case Errc::BadTransitionMatrix: return "BadTransitionMatrix";
    case Errc::IntervalOutOfRange:  return "IntervalOutOfRange";
    case Errc::BadSpec:             return "BadSpec";
    case Errc::TooFewSamples:       return "TooFewSamples";
    case Errc::BadCsv:              return "BadCsv";
    }
    return "UnknownError";
}

} // namespace canids
