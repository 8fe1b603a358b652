#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>

#include "canids/errors.hpp"
#include "canids/log_io.hpp"
#include "canids/numeric.hpp"

using namespace canids;

namespace {

Errc code_of(const std::function<void()>& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("expected an Error");
    return Errc::MalformedLine;
}

CanFrame frame_at(double ts, const std::string& pid,
                  std::vector<std::uint8_t> payload = {0x00}) {
    CanFrame f;
    f.timestamp = ts;
    f.channel = "can0";
    f.pid = pid;
    f.payload = std::move(payload);
    return f;
}

} // namespace

TEST_CASE("parse_line reads a canonical candump line") {
    CanFrame f = parse_line("(1600000000.123456) can0 18F#DEADBEEF");
    CHECK(f.timestamp == doctest::Approx(1600000000.123456));
    CHECK(f.channel == "can0");
    CHECK(f.pid == "18F");
    CHECK(f.payload == std::vector<std::uint8_t>{0xDE, 0xAD, 0xBE, 0xEF});
}

TEST_CASE("parse_line normalizes hex case and tolerates edge payloads") {
    CHECK(parse_line("(1.000000) can1 1a#ab").pid == "1A");
    CHECK(parse_line("(1.000000) can1 1a#ab").payload == std::vector<std::uint8_t>{0xAB});
    CHECK(parse_line("(1.000000) vcan0 7FF#").payload.empty());
    CHECK(parse_line("(0.5) can0 1#00").timestamp == 0.5);
    // 8 hex digit PID and 8 byte payload are the maxima
    CanFrame f = parse_line("(2.25) can0 1FFFFFFF#0011223344556677");
    CHECK(f.pid == "1FFFFFFF");
    CHECK(f.payload.size() == 8);
}

TEST_CASE("parse_line rejects each malformed shape with its own code") {
    auto check = [](const char* line, Errc want) {
        CAPTURE(line);
        CHECK(code_of([&] { parse_line(line); }) == want);
    };
    check("no parens at all", Errc::MalformedLine);
    check("(1.5 can0 1#00", Errc::MalformedLine);          // unterminated timestamp
    check("(1.5)", Errc::MalformedLine);                   // missing channel
    check("(1.5) can0", Errc::MalformedLine);              // missing id#data
    check("(1.5) can0 123#00 junk", Errc::MalformedLine);  // space inside payload
    check("(1.5) can0 100", Errc::MalformedLine);          // missing '#'
    check("(1.5) can0 #00", Errc::MalformedLine);          // empty PID
    check("(1.5) can0 123456789#00", Errc::MalformedLine); // PID > 8 digits
    check("(1.5) can0 1G3#00", Errc::MalformedLine);       // non-hex PID
    check("(1.5) can0 1#0Z", Errc::MalformedLine);         // non-hex payload
    check("(15) can0 1#00", Errc::BadTimestamp);           // no fractional part
    check("(1.5x) can0 1#00", Errc::BadTimestamp);         // non-digit in timestamp
    check("(.5) can0 1#00", Errc::BadTimestamp);           // empty integer part
    check("(1.) can0 1#00", Errc::BadTimestamp);           // empty fraction
    check("(-1.5) can0 1#00", Errc::BadTimestamp);         // sign is not a digit
    check("(1.5) can0 264#ABC", Errc::OddHexLength);
    check("(1.5) can0 1#00112233445566778899", Errc::PayloadTooLong);
}

TEST_CASE("parse errors carry the 1-based line number") {
    try {
        parse_line("oops", 17);
        FAIL("expected an Error");
    } catch (const Error& e) {
        CHECK(e.index() == 17);
    }
}

TEST_CASE("serialize_frame uses 6 fractional digits and uppercase hex") {
    CanFrame f = frame_at(12.5, "2A4", {0xDE, 0x01});
    CHECK(serialize_frame(f) == "(12.500000) can0 2A4#DE01");
    CHECK(serialize_frame(parse_line("(3.141593) can2 1F#")) == "(3.141593) can2 1F#");
}

TEST_CASE("parse/serialize round trip is stable after one normalization") {
    Rng rng(99);
    for (int k = 0; k < 200; ++k) {
        CanFrame f;
        f.timestamp = rng.uniform() * 1e6;
        f.channel = "can" + std::to_string(rng.below(4));
        f.pid = std::to_string(100 + rng.below(900));
        f.payload.resize(rng.below(9));
        for (auto& b : f.payload)
            b = static_cast<std::uint8_t>(rng.below(256));
        // one pass may round the timestamp to microseconds; after that the
        // text form is a fixed point
        CanFrame g = parse_line(serialize_frame(f));
        CanFrame h = parse_line(serialize_frame(g));
        CHECK(h.timestamp == g.timestamp);
        CHECK(h.channel == g.channel);
        CHECK(h.pid == g.pid);
        CHECK(h.payload == g.payload);
    }
}

TEST_CASE("read_log skips comments and blank lines but counts them") {
    std::istringstream in("# header comment\n"
                          "\n"
                          "(1.000000) can0 100#11\n"
                          "   \n"
                          "  # indented comment\n"
                          "(2.000000) can0 101#22\n");
    ReadResult r = read_log(in);
    CHECK(r.frames.size() == 2);
    CHECK(r.warnings.empty());
    CHECK(r.lines_total == 6);
}

TEST_CASE("lenient read skips malformed lines with line-numbered warnings") {
    std::istringstream in("(1.000000) can0 100#11\n"
                          "garbage\n"
                          "(2.000000) can0 101#2\n"
                          "(3.000000) can0 102#33\n");
    ReadResult r = read_log(in);
    CHECK(r.frames.size() == 2);
    REQUIRE(r.warnings.size() == 2);
    CHECK(r.warnings[0].line == 2);
    CHECK(r.warnings[1].line == 3);
}

TEST_CASE("strict read aborts on the first malformed line") {
    std::istringstream in("(1.000000) can0 100#11\ngarbage\n");
    ReadOptions opts;
    opts.strict = true;
    try {
        read_log(in, opts);
        FAIL("expected an Error");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::MalformedLine);
        CHECK(e.index() == 2);
    }
}

TEST_CASE("timestamps must not decrease") {
    std::istringstream lenient_in("(2.000000) can0 100#11\n"
                                  "(1.000000) can0 101#22\n"
                                  "(2.000000) can0 102#33\n");
    ReadResult r = read_log(lenient_in);
    CHECK(r.frames.size() == 2); // offending middle frame skipped
    REQUIRE(r.warnings.size() == 1);
    CHECK(r.warnings[0].line == 2);

    std::istringstream strict_in("(2.000000) can0 100#11\n(1.000000) can0 101#22\n");
    ReadOptions opts;
    opts.strict = true;
    CHECK(code_of([&] { read_log(strict_in, opts); }) == Errc::BadTimestamp);

    // equal timestamps are allowed
    std::istringstream equal_in("(1.000000) can0 100#11\n(1.000000) can0 101#22\n");
    CHECK(read_log(equal_in).frames.size() == 2);
}

TEST_CASE("write_log emits '#'-prefixed header comments") {
    std::ostringstream out;
    write_log(out, {frame_at(1.0, "100")}, {"seed=42"});
    CHECK(out.str() == "# seed=42\n(1.000000) can0 100#00\n");
}

TEST_CASE("log file round trip preserves frames") {
    std::vector<CanFrame> frames{frame_at(1.0, "100", {0x01}),
                                 frame_at(1.5, "1A", {}),
                                 frame_at(2.0, "7FF", {0xAA, 0xBB})};
    const std::string path = "roundtrip_test.log";
    write_log_file(path, frames, {"comment"});
    ReadResult r = read_log_file(path);
    REQUIRE(r.frames.size() == frames.size());
    for (std::size_t i = 0; i < frames.size(); ++i) {
        CHECK(r.frames[i].timestamp == frames[i].timestamp);
        CHECK(r.frames[i].pid == frames[i].pid);
        CHECK(r.frames[i].payload == frames[i].payload);
    }
    std::filesystem::remove(path);
}

TEST_CASE("read_log_file reports missing files as IoFailure") {
    CHECK(code_of([] { read_log_file("does/not/exist.log"); }) == Errc::IoFailure);
}

TEST_CASE("label file round trip and validation") {
    const std::string path = "labels_test.txt";
    std::vector<Label> labels{Label::benign, Label::injected, Label::injected};
    write_label_file(path, labels);
    CHECK(read_label_file(path) == labels);
    std::ofstream(path) << "0\n2\n";
    CHECK(code_of([&] { read_label_file(path); }) == Errc::BadCsv);
    std::filesystem::remove(path);
}

TEST_CASE("filter_channel keeps only the requested channel") {
    std::vector<CanFrame> frames{frame_at(1.0, "100"), frame_at(2.0, "101")};
    frames[1].channel = "can1";
    CHECK(filter_channel(frames, "can0").size() == 1);
    CHECK(filter_channel(frames, "can1")[0].pid == "101");
    CHECK(filter_channel(frames, "vcan9").empty());
}

TEST_CASE("windowize cuts back-to-back windows and counts dropped frames") {
    std::vector<CanFrame> frames;
    for (int i = 0; i < 250; ++i)
        frames.push_back(frame_at(i * 0.01, "100"));
    WindowizeResult r = windowize(frames, 100);
    REQUIRE(r.windows.size() == 2);
    CHECK(r.windows[0].index == 0);
    CHECK(r.windows[1].index == 1);
    CHECK(r.windows[0].frames.size() == 100);
    CHECK(r.dropped_frames == 50);

    // fewer frames than one window: everything is dropped
    WindowizeResult tiny = windowize({frames.begin(), frames.begin() + 99}, 100);
    CHECK(tiny.windows.empty());
    CHECK(tiny.dropped_frames == 99);
}

TEST_CASE("windowize supports overlapping strides") {
    std::vector<CanFrame> frames;
    for (int i = 0; i < 250; ++i)
        frames.push_back(frame_at(i * 0.01, "100"));
    WindowizeResult r = windowize(frames, 100, 50);
    REQUIRE(r.windows.size() == 4); // starts 0, 50, 100, 150
    CHECK(r.windows[3].frames.front().timestamp == doctest::Approx(1.5));
    CHECK(r.dropped_frames == 0);
}

TEST_CASE("windowize labels a window injected iff any frame is injected") {
    std::vector<CanFrame> frames;
    std::vector<Label> labels;
    for (int i = 0; i < 6; ++i) {
        frames.push_back(frame_at(i * 0.01, "100"));
        labels.push_back(i == 4 ? Label::injected : Label::benign);
    }
    WindowizeResult r = windowize(frames, 3, 0, labels);
    REQUIRE(r.windows.size() == 2);
    CHECK(r.windows[0].label == Label::benign);
    CHECK(r.windows[1].label == Label::injected);

    WindowizeResult unlabeled = windowize(frames, 3);
    CHECK_FALSE(unlabeled.windows[0].label.has_value());
}

TEST_CASE("windowize validates its arguments") {
    std::vector<CanFrame> frames{frame_at(1.0, "100"), frame_at(2.0, "101")};
    CHECK(code_of([&] { windowize(frames, 1); }) == Errc::WindowTooSmall);
    CHECK(code_of([&] { windowize(frames, 2, 0, {Label::benign}); }) ==
          Errc::LengthMismatch);
}
