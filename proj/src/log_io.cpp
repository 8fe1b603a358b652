#include "canids/log_io.hpp"

#include <cctype>
#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "canids/errors.hpp"

namespace canids {

namespace {

bool is_hex_digit(char c) {
    return (c >= '0' && c <= '9') || (c >= 'a' && c <= 'f') || (c >= 'A' && c <= 'F');
}

int hex_value(char c) {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    return c - 'A' + 10;
}

std::string_view strip_trailing_ws(std::string_view s) {
    while (!s.empty() && (s.back() == '\r' || s.back() == '\n' || s.back() == ' ' || s.back() == '\t'))
        s.remove_suffix(1);
    return s;
}

std::size_t skip_spaces(std::string_view s, std::size_t pos) {
    while (pos < s.size() && (s[pos] == ' ' || s[pos] == '\t'))
        ++pos;
    return pos;
}

} // namespace

CanFrame parse_line(std::string_view line, std::size_t line_no) {
    line = strip_trailing_ws(line);
    std::size_t pos = skip_spaces(line, 0);

    if (pos >= line.size() || line[pos] != '(')
        throw Error(Errc::MalformedLine, "expected '(' opening the timestamp", line_no);
    ++pos;

    // Timestamp: digits '.' digits, closed by ')'. Anything else between the
    // parentheses is a timestamp problem, not a line-structure problem.
    std::size_t ts_begin = pos;
    while (pos < line.size() && line[pos] != ')')
        ++pos;
    if (pos >= line.size())
        throw Error(Errc::MalformedLine, "unterminated timestamp field", line_no);
    std::string_view ts = line.substr(ts_begin, pos - ts_begin);
    ++pos; // consume ')'

    std::size_t dot = ts.find('.');
    if (ts.empty() || dot == std::string_view::npos || dot == 0 || dot + 1 == ts.size())
        throw Error(Errc::BadTimestamp,
                    "timestamp must be decimal seconds with a fractional part", line_no);
    for (std::size_t i = 0; i < ts.size(); ++i) {
        if (i == dot)
            continue;
        if (ts[i] < '0' || ts[i] > '9')
            throw Error(Errc::BadTimestamp, "non-digit in timestamp", line_no);
    }
    errno = 0;
    double timestamp = std::strtod(std::string(ts).c_str(), nullptr);
    if (!std::isfinite(timestamp))
        throw Error(Errc::BadTimestamp, "timestamp out of range", line_no);

    std::size_t after_ts = pos;
    pos = skip_spaces(line, pos);
    if (pos == after_ts || pos >= line.size())
        throw Error(Errc::MalformedLine, "missing channel field", line_no);

    std::size_t ch_begin = pos;
    while (pos < line.size() && line[pos] != ' ' && line[pos] != '\t')
        ++pos;
    std::string channel(line.substr(ch_begin, pos - ch_begin));

    std::size_t after_ch = pos;
    pos = skip_spaces(line, pos);
    if (pos == after_ch || pos >= line.size())
        throw Error(Errc::MalformedLine, "missing id#data field", line_no);

    std::size_t id_begin = pos;
    while (pos < line.size() && line[pos] != '#') {
        if (line[pos] == ' ' || line[pos] == '\t')
            throw Error(Errc::MalformedLine, "unexpected space in id#data field", line_no);
        ++pos;
    }
    if (pos >= line.size())
        throw Error(Errc::MalformedLine, "missing '#' separator", line_no);
    std::string_view pid_sv = line.substr(id_begin, pos - id_begin);
    ++pos; // consume '#'

    if (pid_sv.empty() || pid_sv.size() > 8)
        throw Error(Errc::MalformedLine, "id must be 1..8 hex digits", line_no);
    std::string pid;
    pid.reserve(pid_sv.size());
    for (char c : pid_sv) {
        if (!is_hex_digit(c))
            throw Error(Errc::MalformedLine, "non-hex digit in id", line_no);
        pid.push_back(static_cast<char>(std::toupper(static_cast<unsigned char>(c))));
    }

    std::string_view data = line.substr(pos);
    // trailing spaces after the payload are tolerated
    while (!data.empty() && (data.back() == ' ' || data.back() == '\t'))
        data.remove_suffix(1);
    for (char c : data)
        if (!is_hex_digit(c))
            throw Error(Errc::MalformedLine, "non-hex digit in payload", line_no);
    if (data.size() > 16)
        throw Error(Errc::PayloadTooLong, "payload exceeds 8 bytes", line_no);
    if (data.size() % 2 != 0)
        throw Error(Errc::OddHexLength, "payload has an odd number of hex digits", line_no);

    CanFrame frame;
    frame.timestamp = timestamp;
    frame.channel = std::move(channel);
    frame.pid = std::move(pid);
    frame.payload.reserve(data.size() / 2);
    for (std::size_t i = 0; i < data.size(); i += 2)
        frame.payload.push_back(
            static_cast<std::uint8_t>(hex_value(data[i]) * 16 + hex_value(data[i + 1])));
    return frame;
}

std::string serialize_frame(const CanFrame& frame) {
    char head[64];
    std::snprintf(head, sizeof(head), "(%.6f) ", frame.timestamp);
    std::string out(head);
    out += frame.channel;
    out += ' ';
    out += frame.pid;
    out += '#';
    static const char* hex = "0123456789ABCDEF";
    for (std::uint8_t b : frame.payload) {
        out += hex[b >> 4];
        out += hex[b & 0x0F];
    }
    return out;
}

ReadResult read_log(std::istream& in, const ReadOptions& opts) {
    ReadResult result;
    std::string line;
    std::size_t line_no = 0;
    double last_ts = -1.0;
    while (std::getline(in, line)) {
        ++line_no;
        std::string_view sv = strip_trailing_ws(line);
        std::size_t first = skip_spaces(sv, 0);
        if (first >= sv.size() || sv[first] == '#')
            continue; // blank or comment
        try {
            CanFrame frame = parse_line(sv, line_no);
            if (frame.timestamp < last_ts)
                throw Error(Errc::BadTimestamp, "timestamp goes backwards", line_no);
            last_ts = frame.timestamp;
            result.frames.push_back(std::move(frame));
        } catch (const Error& e) {
            if (opts.strict)
                throw;
            result.warnings.push_back({line_no, e.what()});
        }
    }
    result.lines_total = line_no;
    return result;
}

ReadResult read_log_file(const std::string& path, const ReadOptions& opts) {
    std::ifstream in(path);
    if (!in)
        throw Error(Errc::IoFailure, "cannot open " + path);
    return read_log(in, opts);
}

void write_log(std::ostream& out, const std::vector<CanFrame>& frames,
               const std::vector<std::string>& header_comments) {
    for (const auto& comment : header_comments)
        out << "# " << comment << '\n';
    for (const auto& frame : frames)
        out << serialize_frame(frame) << '\n';
}

void write_log_file(const std::string& path, const std::vector<CanFrame>& frames,
                    const std::vector<std::string>& header_comments) {
    std::ofstream out(path);
    if (!out)
        throw Error(Errc::IoFailure, "cannot open " + path + " for writing");
    write_log(out, frames, header_comments);
    if (!out)
        throw Error(Errc::IoFailure, "failed writing " + path);
}

std::vector<Label> read_label_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw Error(Errc::IoFailure, "cannot open " + path);
    std::vector<Label> labels;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::string_view sv = strip_trailing_ws(line);
        if (sv.empty())
            continue;
        if (sv == "0")
            labels.push_back(Label::benign);
        else if (sv == "1")
            labels.push_back(Label::injected);
        else
            throw Error(Errc::BadCsv, "label line must be 0 or 1", line_no);
    }
    return labels;
}

void write_label_file(const std::string& path, const std::vector<Label>& labels) {
    std::ofstream out(path);
    if (!out)
        throw Error(Errc::IoFailure, "cannot open " + path + " for writing");
    for (Label l : labels)
        out << (l == Label::injected ? '1' : '0') << '\n';
    if (!out)
        throw Error(Errc::IoFailure, "failed writing " + path);
}

std::vector<CanFrame> filter_channel(const std::vector<CanFrame>& frames,
                                     const std::string& channel) {
    std::vector<CanFrame> kept;
    for (const auto& frame : frames)
        if (frame.channel == channel)
            kept.push_back(frame);
    return kept;
}

WindowizeResult windowize(const std::vector<CanFrame>& frames,
                          std::size_t window_size, std::size_t stride,
                          const std::vector<Label>& frame_labels) {
    if (window_size < 2)
        throw Error(Errc::WindowTooSmall, "window size must be at least 2");
    if (stride == 0)
        stride = window_size;
    if (!frame_labels.empty() && frame_labels.size() != frames.size())
        throw Error(Errc::LengthMismatch, "frame labels do not match frame count");

    WindowizeResult result;
    std::size_t covered_end = 0;
    std::size_t index = 0;
    for (std::size_t start = 0; start + window_size <= frames.size(); start += stride) {
        FrameWindow window;
        window.index = index++;
        window.frames.assign(frames.begin() + static_cast<std::ptrdiff_t>(start),
                             frames.begin() + static_cast<std::ptrdiff_t>(start + window_size));
        if (!frame_labels.empty()) {
            Label tag = Label::benign;
            for (std::size_t i = start; i < start + window_size; ++i)
                if (frame_labels[i] == Label::injected) {
                    tag = Label::injected;
                    break;
                }
            window.label = tag;
        }
        covered_end = start + window_size;
        result.windows.push_back(std::move(window));
    }
    result.dropped_frames = frames.size() - covered_end;
    return result;
}

} // namespace canids
