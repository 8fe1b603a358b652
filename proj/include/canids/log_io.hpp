#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "canids/frame.hpp"

namespace canids {

// -------------------------------------------------------------------------
// candump-style log parsing
//
// Grammar of a data line:   (TIMESTAMP) CHANNEL PID#HEXDATA
//   TIMESTAMP  digits '.' digits   (seconds, fractional part required)
//   CHANNEL    non-space token, e.g. can0
//   PID        1..8 hex digits
//   HEXDATA    0..16 hex digits, even count (0..8 payload bytes)
// Lines starting with '#' and blank lines are comments.
// -------------------------------------------------------------------------

// Parse a single data line. line_no is only used to tag errors (1-based).
// Throws Error with MalformedLine / OddHexLength / PayloadTooLong /
// BadTimestamp; never crashes on any input.
CanFrame parse_line(std::string_view line, std::size_t line_no = 0);

// Inverse of parse_line. Timestamps are printed with 6 fractional digits, so
// serialize(parse(line)) == line for canonical input.
std::string serialize_frame(const CanFrame& frame);

struct ParseWarning {
    std::size_t line = 0; // 1-based
    std::string message;
};

struct ReadOptions {
    // strict: first malformed line (or backwards timestamp) aborts the read.
    // lenient (default): offending lines are skipped and reported as warnings.
    bool strict = false;
};

struct ReadResult {
    std::vector<CanFrame> frames;
    std::vector<ParseWarning> warnings;
    std::size_t lines_total = 0; // data + comment + skipped lines
};

ReadResult read_log(std::istream& in, const ReadOptions& opts = {});
ReadResult read_log_file(const std::string& path, const ReadOptions& opts = {});

void write_log(std::ostream& out, const std::vector<CanFrame>& frames,
               const std::vector<std::string>& header_comments = {});
void write_log_file(const std::string& path, const std::vector<CanFrame>& frames,
                    const std::vector<std::string>& header_comments = {});

// Sidecar ground-truth file: one '0' (benign) or '1' (injected) per line,
// aligned with the frames of the log it accompanies.
std::vector<Label> read_label_file(const std::string& path);
void write_label_file(const std::string& path, const std::vector<Label>& labels);

// Keep only frames recorded on `channel`.
std::vector<CanFrame> filter_channel(const std::vector<CanFrame>& frames,
                                     const std::string& channel);

// -------------------------------------------------------------------------
// windowing
// -------------------------------------------------------------------------

struct WindowizeResult {
    std::vector<FrameWindow> windows;
    std::size_t dropped_frames = 0; // trailing frames not covered by a window
};

// Cut `frames` into windows of exactly `window_size` frames. stride == 0
// means stride = window_size (back-to-back windows, the default); smaller
// strides give overlapping windows. A trailing partial window is dropped and
// counted. When per-frame labels are given, a window is tagged injected iff
// any frame in it is injected. window_size must be >= 2 (WindowTooSmall).
WindowizeResult windowize(const std::vector<CanFrame>& frames,
                          std::size_t window_size, std::size_t stride = 0,
                          const std::vector<Label>& frame_labels = {});

} // namespace canids
