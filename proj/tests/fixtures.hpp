#pragma once

// Synthetic fixtures shared by the unit tests and the acceptance suite.
//
// ring10: a near-deterministic 10-PID ring (P[i][i+1 mod 10] = 1 - q with the
// q leak spread over the other states; q defaults to 0.1%). Because the cycle
// length 10 divides the window size 30, every benign window sees the same
// succession profile and consecutive-window cosine similarity sits at ~1.0.
// Rate-1 injection halves the legitimate frames per window to 15; 15 mod 10
// = 5 shifts the heavy cells of consecutive windows apart, dropping
// similarity to ~0.81 — a separation far wider than the boundary noise.
//
// The leak rate q controls the within-class spread of the similarity series:
// at q = 0.001 each class is a near-constant band, while q = 0.05 disperses
// benign to ~0.93 +/- 0.05 and injected to ~0.83 +/- 0.09. Classifier
// training uses the dispersed variant — two near-constant bands make the
// minimum so sharp that full-rate Adam orbits out of it, whereas the noisy
// series trains stably across seeds.
//
// ring3: a strictly deterministic 3-PID ring for tests that need exact,
// noise-free series values.

#include <cstdint>
#include <string>
#include <vector>

#include "canids/frame.hpp"
#include "canids/inject.hpp"
#include "canids/log_io.hpp"
#include "canids/sequence_graph.hpp"
#include "canids/similarity.hpp"

namespace fixtures {

inline constexpr std::size_t kWindow = 30;

inline canids::SyntheticTrafficSpec ring10_spec(std::size_t frames, std::uint64_t seed,
                                                double q = 0.001) {
    canids::SyntheticTrafficSpec spec;
    const std::size_t n = 10;
    for (std::size_t i = 0; i < n; ++i)
        spec.pid_alphabet.push_back("10" + std::string(1, static_cast<char>('0' + i)));
    spec.transition.assign(n, std::vector<double>(n, q / 9.0));
    for (std::size_t i = 0; i < n; ++i)
        spec.transition[i][(i + 1) % n] = 1.0 - q;
    spec.frame_count = frames;
    spec.seed = seed;
    return spec;
}

inline canids::SyntheticTrafficSpec ring3_spec(std::size_t frames, std::uint64_t seed) {
    canids::SyntheticTrafficSpec spec;
    spec.pid_alphabet = {"200", "201", "202"};
    spec.transition = {{0, 1, 0}, {0, 0, 1}, {1, 0, 0}};
    spec.frame_count = frames;
    spec.seed = seed;
    return spec;
}

// benign ring10 log with rate-1 alien-PID injection over [start, end)
struct InjectedCorpus {
    std::vector<canids::CanFrame> benign;
    canids::InjectResult injected;
};

inline InjectedCorpus make_corpus(std::size_t frames, std::size_t start, std::size_t end,
                                  std::uint64_t seed, double q = 0.001) {
    InjectedCorpus corpus;
    corpus.benign = canids::generate_benign(ring10_spec(frames, seed, q));
    canids::InjectionSpec inj;
    inj.target_pid = "666";
    inj.payload = {0xFF, 0xFF};
    inj.rate = 1;
    inj.start_frame = start;
    inj.end_frame = end;
    inj.seed = seed + 1;
    corpus.injected = canids::inject_frames(corpus.benign, inj);
    return corpus;
}

inline canids::SimilaritySeries series_of(const std::vector<canids::CanFrame>& frames,
                                          const std::vector<canids::Label>& labels,
                                          canids::Metric metric,
                                          std::size_t window = kWindow) {
    canids::WindowizeResult cut = canids::windowize(frames, window, 0, labels);
    std::vector<canids::MessageSequenceGraph> graphs;
    graphs.reserve(cut.windows.size());
    for (const auto& w : cut.windows)
        graphs.push_back(canids::compute_msg(w));
    return canids::similarity_series(graphs, metric, window);
}

} // namespace fixtures
