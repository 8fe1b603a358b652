#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "canids/frame.hpp"

namespace canids {

// First-order Markov model of benign bus traffic: a PID alphabet, a
// row-stochastic next-PID matrix and exponential inter-arrival times.
struct SyntheticTrafficSpec {
    std::vector<std::string> pid_alphabet;
    std::vector<std::vector<double>> transition; // [i][j] = P(next = j | current = i)
    std::size_t frame_count = 0;
    double mean_interarrival = 0.01; // seconds
    double start_time = 0.0;
    std::size_t payload_bytes = 8;   // random payload length per frame
    std::string channel = "can0";
    std::uint64_t seed = 1;
};

// Deterministic for a given seed; timestamps strictly increase. Throws
// BadTransitionMatrix when the matrix is not square over the alphabet, has
// negative entries, or a row sum differs from 1 by more than 1e-12; BadSpec
// for an empty alphabet / zero frames / non-positive inter-arrival.
std::vector<CanFrame> generate_benign(const SyntheticTrafficSpec& spec);

// Fabricated-frame injection: within the legitimate-frame ordinal interval
// [start_frame, end_frame), one fabricated frame (target_pid, payload) is
// inserted after every `rate`-th legitimate frame. Timestamps of fabricated
// frames fall strictly between their neighbors (jittered by `seed`);
// positions never depend on the seed.
struct InjectionSpec {
    std::string target_pid;            // existing or alien PID, 1..8 hex digits
    std::vector<std::uint8_t> payload; // 0..8 bytes
    std::size_t rate = 1;              // k >= 1
    std::size_t start_frame = 0;
    std::size_t end_frame = 0;
    std::uint64_t seed = 1;
    std::string channel;               // empty: copy the channel of the log
};

struct InjectResult {
    std::vector<CanFrame> frames;
    std::vector<Label> labels; // aligned with frames; removing injected ones
                               // recovers the input exactly
};

// Throws IntervalOutOfRange when [start_frame, end_frame) does not fit the
// log, BadSpec for rate == 0 or an invalid target PID/payload.
InjectResult inject_frames(const std::vector<CanFrame>& frames, const InjectionSpec& spec);

} // namespace canids
