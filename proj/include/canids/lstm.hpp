#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "canids/dataset.hpp"
#include "canids/numeric.hpp"

namespace canids {

// Two stacked LSTM layers plus a sigmoid unit, trained with full
// backpropagation through time and Adam. Deliberately dependency-free: the
// model is small enough that hand-rolled dense loops beat the setup cost of
// a linear algebra package, and keeping every operation explicit is what
// makes the finite-difference gradient test meaningful.

struct ModelConfig {
    std::size_t input_units = 42;  // width of the first recurrent layer
    std::size_t hidden_units = 12; // width of the second recurrent layer
    std::size_t output_units = 1;  // sigmoid readout
    std::size_t lookback = 10;     // timesteps per sample
    double dropout = 0.20;         // inverted dropout on layer outputs
    double learning_rate = 0.01;   // Adam
    double beta1 = 0.9;
    double beta2 = 0.999;
    double epsilon = 1e-8;
    std::size_t batch_size = 128;
    std::size_t epochs = 128;
    double train_fraction = 2.0 / 3.0;
    std::uint64_t seed = 42;
};

// One LSTM layer. Weights are row-major; the leading 4*out dimension stacks
// the gates in the order: input, forget, candidate, output. Forget-gate
// biases start at 1.0, everything else Glorot-uniform.
struct LstmLayer {
    std::size_t in_size = 0;
    std::size_t out_size = 0;
    std::vector<double> w_in;  // 4*out x in
    std::vector<double> w_rec; // 4*out x out
    std::vector<double> bias;  // 4*out
};

struct LstmModel {
    ModelConfig config;
    LstmLayer layer1; // scalar input -> input_units
    LstmLayer layer2; // input_units -> hidden_units
    std::vector<double> dense_w; // hidden_units
    double dense_b = 0.0;
};

LstmModel init_model(const ModelConfig& config);

// Probability that the sequence is injected. With training == true, inverted
// dropout masks are drawn from `rng` (required then); with training == false
// the pass is deterministic. Throws NonFiniteInput on NaN/inf inputs.
double forward(const LstmModel& model, std::span<const double> sequence,
               bool training = false, Rng* rng = nullptr);

// Binary cross-entropy of one sample, deterministic pass.
double sample_loss(const LstmModel& model, std::span<const double> sequence,
                   std::uint8_t label);

// Gradient buffers mirroring the trainable arrays.
struct LstmGradients {
    std::vector<double> l1_w_in, l1_w_rec, l1_bias;
    std::vector<double> l2_w_in, l2_w_rec, l2_bias;
    std::vector<double> dense_w;
    double dense_b = 0.0;

    void match(const LstmModel& model);
    void zero();
};

// Full BPTT for one sample; gradients are accumulated (+=) into `grads` and
// the sample's loss is returned. When `dropout_rng` is non-null the pass
// trains (masks drawn per timestep); pass nullptr for the exact deterministic
// gradient used by the finite-difference check.
double backward_sample(const LstmModel& model, std::span<const double> sequence,
                       std::uint8_t label, LstmGradients& grads, Rng* dropout_rng);

// Inverted dropout: each element is zeroed with probability `rate`,
// survivors are scaled by 1/(1-rate), so the expectation is the identity.
void apply_inverted_dropout(std::span<double> values, double rate, Rng& rng);

struct EpochStats {
    double loss = 0.0;     // mean training loss (forward passes with dropout)
    double accuracy = 0.0; // training accuracy over the same passes
};

struct TrainHistory {
    std::vector<EpochStats> epochs;
};

// Train on the dataset's training split with the model's own config.
// Mini-batches of config.batch_size (final partial batch kept), one seeded
// shuffle of the training indices per epoch, Adam updates per batch.
// Throws SingleClass when the training split lacks a class and
// DivergedNonFinite (with the epoch index) when a parameter leaves the
// finite range.
TrainHistory train(LstmModel& model, const LabeledSequenceDataset& dataset);

struct Predictions {
    std::vector<double> probabilities;
    std::vector<std::uint8_t> verdicts; // probability >= 0.5 -> 1
    double accuracy = 0.0;
};

Predictions predict(const LstmModel& model, std::span<const SequenceSample> samples);

// JSON checkpoint: config plus every named parameter array with its shape.
// load validates shapes against the config (BadCheckpoint).
void save_checkpoint(const LstmModel& model, const std::string& path);
LstmModel load_checkpoint(const std::string& path);

// CSV with header: epoch, loss, train_acc
void write_history_csv(std::ostream& out, const TrainHistory& history);

// Flat views over every trainable array, for the gradient check.
struct ParamView {
    const char* name;
    double* data;
    std::size_t size;
};
std::vector<ParamView> parameter_views(LstmModel& model);

} // namespace canids
