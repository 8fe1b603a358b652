#include "canids/inject.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

#include "canids/errors.hpp"
#include "canids/numeric.hpp"

namespace canids {

namespace {

bool valid_pid(const std::string& pid) {
    if (pid.empty() || pid.size() > 8)
        return false;
    for (char c : pid)
        if (!std::isxdigit(static_cast<unsigned char>(c)))
            return false;
    return true;
}

std::string upper_pid(const std::string& pid) {
    std::string out = pid;
    for (char& c : out)
        c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    return out;
}

} // namespace

std::vector<CanFrame> generate_benign(const SyntheticTrafficSpec& spec) {
    const std::size_t n = spec.pid_alphabet.size();
    if (n == 0)
        throw Error(Errc::BadSpec, "PID alphabet is empty");
    if (spec.frame_count == 0)
        throw Error(Errc::BadSpec, "frame count must be positive");
    if (!(spec.mean_interarrival > 0.0))
        throw Error(Errc::BadSpec, "mean inter-arrival time must be positive");
    if (spec.payload_bytes > 8)
        throw Error(Errc::BadSpec, "payload length exceeds 8 bytes");
    for (const auto& pid : spec.pid_alphabet)
        if (!valid_pid(pid))
            throw Error(Errc::BadSpec, "PID '" + pid + "' is not 1..8 hex digits");
    if (spec.transition.size() != n)
        throw Error(Errc::BadTransitionMatrix, "matrix is not square over the alphabet");
    for (std::size_t i = 0; i < n; ++i) {
        const auto& row = spec.transition[i];
        if (row.size() != n)
            throw Error(Errc::BadTransitionMatrix, "matrix is not square over the alphabet");
        KahanSum sum;
        for (double p : row) {
            if (!(p >= 0.0) || !std::isfinite(p))
                throw Error(Errc::BadTransitionMatrix, "matrix entries must be >= 0");
            sum.add(p);
        }
        if (std::abs(sum.value() - 1.0) > 1e-12)
            throw Error(Errc::BadTransitionMatrix, "row does not sum to 1");
    }

    std::vector<std::string> alphabet;
    alphabet.reserve(n);
    for (const auto& pid : spec.pid_alphabet)
        alphabet.push_back(upper_pid(pid));

    Rng rng(spec.seed);
    std::size_t state = static_cast<std::size_t>(rng.below(n));
    double t = spec.start_time;
    std::vector<CanFrame> frames;
    frames.reserve(spec.frame_count);
    for (std::size_t k = 0; k < spec.frame_count; ++k) {
        // clamp keeps timestamps strictly increasing even for tiny draws
        t += std::max(rng.exponential(spec.mean_interarrival), 1e-6);
        CanFrame frame;
        frame.timestamp = t;
        frame.channel = spec.channel;
        frame.pid = alphabet[state];
        frame.payload.resize(spec.payload_bytes);
        for (auto& b : frame.payload)
            b = static_cast<std::uint8_t>(rng.below(256));
        frames.push_back(std::move(frame));

        double u = rng.uniform();
        double acc = 0.0;
        std::size_t next = n - 1;
        for (std::size_t j = 0; j < n; ++j) {
            acc += spec.transition[state][j];
            if (u < acc) {
                next = j;
                break;
            }
        }
        state = next;
    }
    return frames;
}

InjectResult inject_frames(const std::vector<CanFrame>& frames, const InjectionSpec& spec) {
    if (spec.rate == 0)
        throw Error(Errc::BadSpec, "injection rate must be at least 1");
    if (!valid_pid(spec.target_pid))
        throw Error(Errc::BadSpec, "target PID must be 1..8 hex digits");
    if (spec.payload.size() > 8)
        throw Error(Errc::BadSpec, "payload exceeds 8 bytes");
    if (spec.start_frame > spec.end_frame || spec.end_frame > frames.size())
        throw Error(Errc::IntervalOutOfRange, "injection interval does not fit the log");

    const std::string pid = upper_pid(spec.target_pid);
    double avg_gap = 1e-3;
    if (frames.size() >= 2)
        avg_gap = (frames.back().timestamp - frames.front().timestamp) /
                  static_cast<double>(frames.size() - 1);

    Rng rng(spec.seed);
    InjectResult result;
    result.frames.reserve(frames.size() + frames.size() / spec.rate + 1);
    result.labels.reserve(result.frames.capacity());
    std::size_t since_last = 0;
    for (std::size_t i = 0; i < frames.size(); ++i) {
        result.frames.push_back(frames[i]);
        result.labels.push_back(Label::benign);
        if (i < spec.start_frame || i >= spec.end_frame)
            continue;
        if (++since_last < spec.rate)
            continue;
        since_last = 0;
        CanFrame fake;
        fake.pid = pid;
        fake.payload = spec.payload;
        fake.channel = spec.channel.empty() ? frames[i].channel : spec.channel;
        double u = std::clamp(rng.uniform(), 1e-6, 1.0 - 1e-6);
        if (i + 1 < frames.size()) {
            // strictly between the two legitimate neighbours
            fake.timestamp =
                frames[i].timestamp + u * (frames[i + 1].timestamp - frames[i].timestamp);
        } else {
            fake.timestamp = frames[i].timestamp + u * avg_gap;
        }
        result.frames.push_back(std::move(fake));
        result.labels.push_back(Label::injected);
    }
    return result;
}

} // namespace canids
