#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace canids {

// Ground-truth tag carried by frames, windows and similarity pairs.
enum class Label : std::uint8_t { benign = 0, injected = 1 };

// One CAN frame as it appears on a candump-style log line:
//   (1600000000.123456) can0 264#11223344
struct CanFrame {
    double timestamp = 0.0;            // seconds since epoch, microsecond precision
    std::string channel;               // bus name, e.g. "can0"
    std::string pid;                   // arbitration id, uppercase hex, width as written
    std::vector<std::uint8_t> payload; // 0..8 data bytes
};

// A run of consecutive frames cut out of a log.
struct FrameWindow {
    std::vector<CanFrame> frames;
    std::size_t index = 0;      // position of this window within its log
    std::optional<Label> label; // set when ground truth is known
};

} // namespace canids
