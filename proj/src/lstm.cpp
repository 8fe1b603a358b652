#include "canids/lstm.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <ostream>

#include "json.hpp"

#include "canids/errors.hpp"

namespace canids {

namespace {

double sigmoid(double z) { return 1.0 / (1.0 + std::exp(-z)); }

// numerically stable binary cross-entropy straight from the logit
double bce_from_logit(double z, std::uint8_t label) {
    return std::max(z, 0.0) - (label ? z : 0.0) + std::log1p(std::exp(-std::abs(z)));
}

void check_finite_input(std::span<const double> sequence) {
    for (double v : sequence)
        if (!std::isfinite(v))
            throw Error(Errc::NonFiniteInput, "sequence contains a non-finite value");
}

// everything the backward pass needs about one timestep of one layer
struct StepRecord {
    std::vector<double> x; // layer input at this step (after any dropout below)
    std::vector<double> i, f, g, o;
    std::vector<double> c_prev, c, tanh_c, h;
};

// z = W_in x + W_rec h_prev + b, split through the gate nonlinearities
void layer_step(const LstmLayer& layer, std::span<const double> x,
                const std::vector<double>& h_prev, const std::vector<double>& c_prev,
                StepRecord& rec) {
    const std::size_t in = layer.in_size;
    const std::size_t out = layer.out_size;
    std::vector<double> z(4 * out);
    for (std::size_t r = 0; r < 4 * out; ++r) {
        double acc = layer.bias[r];
        const double* wi = &layer.w_in[r * in];
        for (std::size_t c = 0; c < in; ++c)
            acc += wi[c] * x[c];
        const double* wr = &layer.w_rec[r * out];
        for (std::size_t c = 0; c < out; ++c)
            acc += wr[c] * h_prev[c];
        z[r] = acc;
    }
    rec.x.assign(x.begin(), x.end());
    rec.c_prev = c_prev;
    rec.i.resize(out);
    rec.f.resize(out);
    rec.g.resize(out);
    rec.o.resize(out);
    rec.c.resize(out);
    rec.tanh_c.resize(out);
    rec.h.resize(out);
    for (std::size_t u = 0; u < out; ++u) {
        rec.i[u] = sigmoid(z[u]);
        rec.f[u] = sigmoid(z[out + u]);
        rec.g[u] = std::tanh(z[2 * out + u]);
        rec.o[u] = sigmoid(z[3 * out + u]);
        rec.c[u] = rec.f[u] * c_prev[u] + rec.i[u] * rec.g[u];
        rec.tanh_c[u] = std::tanh(rec.c[u]);
        rec.h[u] = rec.o[u] * rec.tanh_c[u];
    }
}

// one dropout mask entry per element: 0 with probability rate, else 1/(1-rate)
std::vector<double> draw_mask(std::size_t size, double rate, Rng& rng) {
    std::vector<double> mask(size, 1.0);
    if (rate <= 0.0)
        return mask;
    const double scale = 1.0 / (1.0 - rate);
    for (double& m : mask)
        m = rng.uniform() < rate ? 0.0 : scale;
    return mask;
}

struct ForwardTrace {
    std::vector<StepRecord> layer1, layer2;
    std::vector<std::vector<double>> mask1; // per timestep, empty when not training
    std::vector<double> mask2;              // final layer2 output, empty when not training
    std::vector<double> h2_final;           // post-dropout input of the dense unit
    double logit = 0.0;
    double p = 0.5;
};

// Shared forward pass. `trace` may be null when only the probability is
// needed. Dropout is drawn iff rng != nullptr, in a fixed order (layer1
// output per timestep, then the final layer2 output) so forward and backward
// consume the generator identically.
double run_forward(const LstmModel& model, std::span<const double> sequence,
                   Rng* rng, ForwardTrace* trace) {
    const std::size_t T = sequence.size();
    const double rate = model.config.dropout;
    std::vector<double> h1(model.layer1.out_size, 0.0), c1 = h1;
    std::vector<double> h2(model.layer2.out_size, 0.0), c2 = h2;
    if (trace) {
        trace->layer1.resize(T);
        trace->layer2.resize(T);
        trace->mask1.assign(T, {});
    }
    StepRecord scratch1, scratch2;
    for (std::size_t t = 0; t < T; ++t) {
        StepRecord& r1 = trace ? trace->layer1[t] : scratch1;
        double x0 = sequence[t];
        layer_step(model.layer1, std::span<const double>(&x0, 1), h1, c1, r1);
        h1 = r1.h;
        c1 = r1.c;
        std::vector<double> feed = h1;
        if (rng) {
            std::vector<double> mask = draw_mask(feed.size(), rate, *rng);
            for (std::size_t u = 0; u < feed.size(); ++u)
                feed[u] *= mask[u];
            if (trace)
                trace->mask1[t] = std::move(mask);
        }
        StepRecord& r2 = trace ? trace->layer2[t] : scratch2;
        layer_step(model.layer2, feed, h2, c2, r2);
        h2 = r2.h;
        c2 = r2.c;
    }
    std::vector<double> h2_final = h2;
    if (rng) {
        std::vector<double> mask = draw_mask(h2_final.size(), rate, *rng);
        for (std::size_t u = 0; u < h2_final.size(); ++u)
            h2_final[u] *= mask[u];
        if (trace)
            trace->mask2 = std::move(mask);
    }
    double z = model.dense_b;
    for (std::size_t u = 0; u < h2_final.size(); ++u)
        z += model.dense_w[u] * h2_final[u];
    double p = sigmoid(z);
    if (trace) {
        trace->h2_final = std::move(h2_final);
        trace->logit = z;
        trace->p = p;
    }
    return p;
}

// BPTT through one layer. ext_dh[t] is the loss gradient arriving at h_t from
// above (the next layer or the dense unit); dx_out, when non-null, receives
// the gradient w.r.t. the layer's input at each timestep.
void layer_backward(const LstmLayer& layer, const std::vector<StepRecord>& recs,
                    const std::vector<std::vector<double>>& ext_dh,
                    std::vector<double>& gw_in, std::vector<double>& gw_rec,
                    std::vector<double>& gbias,
                    std::vector<std::vector<double>>* dx_out) {
    const std::size_t T = recs.size();
    const std::size_t in = layer.in_size;
    const std::size_t out = layer.out_size;
    std::vector<double> dh_next(out, 0.0), dc_next(out, 0.0);
    std::vector<double> dz(4 * out);
    const std::vector<double> zeros(out, 0.0);
    for (std::size_t ti = T; ti-- > 0;) {
        const StepRecord& r = recs[ti];
        const std::vector<double>& h_prev = ti > 0 ? recs[ti - 1].h : zeros;
        for (std::size_t u = 0; u < out; ++u) {
            double dh = dh_next[u] + (ext_dh[ti].empty() ? 0.0 : ext_dh[ti][u]);
            double dc = dc_next[u] + dh * r.o[u] * (1.0 - r.tanh_c[u] * r.tanh_c[u]);
            dz[u] = dc * r.g[u] * r.i[u] * (1.0 - r.i[u]);                       // input gate
            dz[out + u] = dc * r.c_prev[u] * r.f[u] * (1.0 - r.f[u]);            // forget gate
            dz[2 * out + u] = dc * r.i[u] * (1.0 - r.g[u] * r.g[u]);             // candidate
            dz[3 * out + u] = dh * r.tanh_c[u] * r.o[u] * (1.0 - r.o[u]);        // output gate
            dc_next[u] = dc * r.f[u];
        }
        for (std::size_t row = 0; row < 4 * out; ++row) {
            gbias[row] += dz[row];
            double* gi = &gw_in[row * in];
            for (std::size_t c = 0; c < in; ++c)
                gi[c] += dz[row] * r.x[c];
            double* gr = &gw_rec[row * out];
            for (std::size_t c = 0; c < out; ++c)
                gr[c] += dz[row] * h_prev[c];
        }
        if (dx_out) {
            std::vector<double>& dx = (*dx_out)[ti];
            dx.assign(in, 0.0);
            for (std::size_t row = 0; row < 4 * out; ++row) {
                const double* wi = &layer.w_in[row * in];
                for (std::size_t c = 0; c < in; ++c)
                    dx[c] += wi[c] * dz[row];
            }
        }
        for (std::size_t c = 0; c < out; ++c) {
            double acc = 0.0;
            for (std::size_t row = 0; row < 4 * out; ++row)
                acc += layer.w_rec[row * out + c] * dz[row];
            dh_next[c] = acc;
        }
    }
}

double backward_impl(const LstmModel& model, std::span<const double> sequence,
                     std::uint8_t label, LstmGradients& grads, Rng* dropout_rng,
                     double* p_out) {
    check_finite_input(sequence);
    ForwardTrace trace;
    run_forward(model, sequence, dropout_rng, &trace);
    if (p_out)
        *p_out = trace.p;
    const double loss = bce_from_logit(trace.logit, label);
    const std::size_t T = sequence.size();
    const std::size_t h2n = model.layer2.out_size;

    const double dlogit = trace.p - (label ? 1.0 : 0.0);
    grads.dense_b += dlogit;
    std::vector<double> dh2(h2n);
    for (std::size_t u = 0; u < h2n; ++u) {
        grads.dense_w[u] += dlogit * trace.h2_final[u];
        dh2[u] = dlogit * model.dense_w[u];
        if (!trace.mask2.empty())
            dh2[u] *= trace.mask2[u];
    }

    std::vector<std::vector<double>> ext_dh2(T);
    ext_dh2[T - 1] = std::move(dh2);
    std::vector<std::vector<double>> dx2(T);
    layer_backward(model.layer2, trace.layer2, ext_dh2, grads.l2_w_in, grads.l2_w_rec,
                   grads.l2_bias, &dx2);

    std::vector<std::vector<double>> ext_dh1(T);
    for (std::size_t t = 0; t < T; ++t) {
        ext_dh1[t] = std::move(dx2[t]);
        if (!trace.mask1[t].empty())
            for (std::size_t u = 0; u < ext_dh1[t].size(); ++u)
                ext_dh1[t][u] *= trace.mask1[t][u];
    }
    layer_backward(model.layer1, trace.layer1, ext_dh1, grads.l1_w_in, grads.l1_w_rec,
                   grads.l1_bias, nullptr);
    return loss;
}

void init_layer(LstmLayer& layer, std::size_t in, std::size_t out, Rng& rng) {
    layer.in_size = in;
    layer.out_size = out;
    layer.w_in.resize(4 * out * in);
    layer.w_rec.resize(4 * out * out);
    layer.bias.assign(4 * out, 0.0);
    // Glorot-uniform with per-gate fans; recurrent weights use fan_in == fan_out
    const double lim_in = std::sqrt(6.0 / static_cast<double>(in + out));
    const double lim_rec = std::sqrt(6.0 / static_cast<double>(out + out));
    for (double& w : layer.w_in)
        w = (rng.uniform() * 2.0 - 1.0) * lim_in;
    for (double& w : layer.w_rec)
        w = (rng.uniform() * 2.0 - 1.0) * lim_rec;
    for (std::size_t u = 0; u < out; ++u)
        layer.bias[out + u] = 1.0; // forget gate starts open
}

struct GradView {
    double* data;
    std::size_t size;
};

std::vector<GradView> gradient_views(LstmGradients& grads) {
    return {{grads.l1_w_in.data(), grads.l1_w_in.size()},
            {grads.l1_w_rec.data(), grads.l1_w_rec.size()},
            {grads.l1_bias.data(), grads.l1_bias.size()},
            {grads.l2_w_in.data(), grads.l2_w_in.size()},
            {grads.l2_w_rec.data(), grads.l2_w_rec.size()},
            {grads.l2_bias.data(), grads.l2_bias.size()},
            {grads.dense_w.data(), grads.dense_w.size()},
            {&grads.dense_b, 1}};
}

void validate_config(const ModelConfig& config) {
    if (config.input_units < 1 || config.hidden_units < 1 || config.lookback < 1)
        throw Error(Errc::BadSpec, "model dimensions must be positive");
    if (config.output_units != 1)
        throw Error(Errc::BadSpec, "only a single sigmoid output unit is supported");
    if (config.dropout < 0.0 || config.dropout >= 1.0)
        throw Error(Errc::BadSpec, "dropout rate must lie in [0, 1)");
    if (!(config.learning_rate > 0.0))
        throw Error(Errc::BadSpec, "learning rate must be positive");
    if (config.batch_size < 1 || config.epochs < 1)
        throw Error(Errc::BadSpec, "batch size and epochs must be positive");
}

} // namespace

LstmModel init_model(const ModelConfig& config) {
    validate_config(config);
    LstmModel model;
    model.config = config;
    Rng rng(config.seed);
    init_layer(model.layer1, 1, config.input_units, rng);
    init_layer(model.layer2, config.input_units, config.hidden_units, rng);
    model.dense_w.resize(config.hidden_units);
    const double lim = std::sqrt(6.0 / static_cast<double>(config.hidden_units + 1));
    for (double& w : model.dense_w)
        w = (rng.uniform() * 2.0 - 1.0) * lim;
    model.dense_b = 0.0;
    return model;
}

double forward(const LstmModel& model, std::span<const double> sequence,
               bool training, Rng* rng) {
    check_finite_input(sequence);
    if (training && !rng)
        throw Error(Errc::BadSpec, "training forward pass needs a generator for dropout");
    return run_forward(model, sequence, training ? rng : nullptr, nullptr);
}

double sample_loss(const LstmModel& model, std::span<const double> sequence,
                   std::uint8_t label) {
    check_finite_input(sequence);
    ForwardTrace trace;
    run_forward(model, sequence, nullptr, &trace);
    return bce_from_logit(trace.logit, label);
}

void LstmGradients::match(const LstmModel& model) {
    l1_w_in.assign(model.layer1.w_in.size(), 0.0);
    l1_w_rec.assign(model.layer1.w_rec.size(), 0.0);
    l1_bias.assign(model.layer1.bias.size(), 0.0);
    l2_w_in.assign(model.layer2.w_in.size(), 0.0);
    l2_w_rec.assign(model.layer2.w_rec.size(), 0.0);
    l2_bias.assign(model.layer2.bias.size(), 0.0);
    dense_w.assign(model.dense_w.size(), 0.0);
    dense_b = 0.0;
}

void LstmGradients::zero() {
    std::fill(l1_w_in.begin(), l1_w_in.end(), 0.0);
    std::fill(l1_w_rec.begin(), l1_w_rec.end(), 0.0);
    std::fill(l1_bias.begin(), l1_bias.end(), 0.0);
    std::fill(l2_w_in.begin(), l2_w_in.end(), 0.0);
    std::fill(l2_w_rec.begin(), l2_w_rec.end(), 0.0);
    std::fill(l2_bias.begin(), l2_bias.end(), 0.0);
    std::fill(dense_w.begin(), dense_w.end(), 0.0);
    dense_b = 0.0;
}

double backward_sample(const LstmModel& model, std::span<const double> sequence,
                       std::uint8_t label, LstmGradients& grads, Rng* dropout_rng) {
    return backward_impl(model, sequence, label, grads, dropout_rng, nullptr);
}

void apply_inverted_dropout(std::span<double> values, double rate, Rng& rng) {
    if (rate <= 0.0)
        return;
    if (rate >= 1.0)
        throw Error(Errc::BadSpec, "dropout rate must lie in [0, 1)");
    const double scale = 1.0 / (1.0 - rate);
    for (double& v : values)
        v = rng.uniform() < rate ? 0.0 : v * scale;
}

TrainHistory train(LstmModel& model, const LabeledSequenceDataset& dataset) {
    const ModelConfig& cfg = model.config;
    validate_config(cfg);
    if (dataset.lookback != cfg.lookback)
        throw Error(Errc::BadSpec, "dataset lookback does not match the model config");
    if (dataset.train_count > dataset.samples.size())
        throw Error(Errc::BadSpec, "train_count exceeds the sample count");

    bool any_pos = false, any_neg = false;
    for (std::size_t i = 0; i < dataset.train_count; ++i)
        (dataset.samples[i].label ? any_pos : any_neg) = true;
    if (!any_pos || !any_neg)
        throw Error(Errc::SingleClass, "training split must contain both classes");

    LstmGradients grads;
    grads.match(model);
    auto params = parameter_views(model);
    auto gviews = gradient_views(grads);
    std::vector<std::vector<double>> adam_m(params.size()), adam_v(params.size());
    for (std::size_t k = 0; k < params.size(); ++k) {
        adam_m[k].assign(params[k].size, 0.0);
        adam_v[k].assign(params[k].size, 0.0);
    }

    Rng rng(cfg.seed);
    std::vector<std::size_t> order(dataset.train_count);
    std::iota(order.begin(), order.end(), std::size_t{0});

    TrainHistory history;
    history.epochs.reserve(cfg.epochs);
    std::uint64_t adam_step = 0;
    for (std::size_t epoch = 1; epoch <= cfg.epochs; ++epoch) {
        rng.shuffle(order);
        KahanSum loss_sum;
        std::size_t correct = 0;
        for (std::size_t begin = 0; begin < order.size(); begin += cfg.batch_size) {
            const std::size_t end = std::min(begin + cfg.batch_size, order.size());
            grads.zero();
            for (std::size_t k = begin; k < end; ++k) {
                const SequenceSample& sample = dataset.samples[order[k]];
                double p = 0.0;
                loss_sum.add(
                    backward_impl(model, sample.values, sample.label, grads, &rng, &p));
                if ((p >= 0.5 ? 1 : 0) == sample.label)
                    ++correct;
            }
            const double inv_batch = 1.0 / static_cast<double>(end - begin);
            ++adam_step;
            const double bc1 = 1.0 - std::pow(cfg.beta1, static_cast<double>(adam_step));
            const double bc2 = 1.0 - std::pow(cfg.beta2, static_cast<double>(adam_step));
            for (std::size_t k = 0; k < params.size(); ++k) {
                double* theta = params[k].data;
                double* g = gviews[k].data;
                double* m = adam_m[k].data();
                double* v = adam_v[k].data();
                for (std::size_t j = 0; j < params[k].size; ++j) {
                    const double grad = g[j] * inv_batch;
                    m[j] = cfg.beta1 * m[j] + (1.0 - cfg.beta1) * grad;
                    v[j] = cfg.beta2 * v[j] + (1.0 - cfg.beta2) * grad * grad;
                    theta[j] -= cfg.learning_rate * (m[j] / bc1) /
                                (std::sqrt(v[j] / bc2) + cfg.epsilon);
                }
            }
            for (const auto& view : params)
                for (std::size_t j = 0; j < view.size; ++j)
                    if (!std::isfinite(view.data[j]))
                        throw Error(Errc::DivergedNonFinite,
                                    "parameters left the finite range", epoch);
        }
        EpochStats stats;
        stats.loss = loss_sum.value() / static_cast<double>(order.size());
        stats.accuracy = static_cast<double>(correct) / static_cast<double>(order.size());
        history.epochs.push_back(stats);
    }
    return history;
}

Predictions predict(const LstmModel& model, std::span<const SequenceSample> samples) {
    Predictions out;
    out.probabilities.reserve(samples.size());
    out.verdicts.reserve(samples.size());
    std::size_t correct = 0;
    for (const auto& sample : samples) {
        double p = forward(model, sample.values);
        out.probabilities.push_back(p);
        std::uint8_t verdict = p >= 0.5 ? 1 : 0;
        out.verdicts.push_back(verdict);
        if (verdict == sample.label)
            ++correct;
    }
    out.accuracy = samples.empty()
                       ? 0.0
                       : static_cast<double>(correct) / static_cast<double>(samples.size());
    return out;
}

namespace {

nlohmann::json param_json(const char* /*name*/, const std::vector<double>& data,
                          std::vector<std::size_t> shape) {
    return nlohmann::json{{"shape", shape}, {"data", data}};
}

std::vector<double> load_param(const nlohmann::json& params, const std::string& name,
                               const std::vector<std::size_t>& shape) {
    if (!params.contains(name))
        throw Error(Errc::BadCheckpoint, "checkpoint misses parameter " + name);
    const auto& entry = params.at(name);
    std::vector<std::size_t> got = entry.at("shape").get<std::vector<std::size_t>>();
    if (got != shape)
        throw Error(Errc::BadCheckpoint, "shape mismatch for parameter " + name);
    std::vector<double> data = entry.at("data").get<std::vector<double>>();
    std::size_t expect = 1;
    for (std::size_t d : shape)
        expect *= d;
    if (data.size() != expect)
        throw Error(Errc::BadCheckpoint, "data length mismatch for parameter " + name);
    return data;
}

} // namespace

void save_checkpoint(const LstmModel& model, const std::string& path) {
    const ModelConfig& c = model.config;
    nlohmann::json j;
    j["format"] = "canids-lstm-checkpoint-v1";
    j["config"] = {{"input_units", c.input_units},
                   {"hidden_units", c.hidden_units},
                   {"output_units", c.output_units},
                   {"lookback", c.lookback},
                   {"dropout", c.dropout},
                   {"learning_rate", c.learning_rate},
                   {"beta1", c.beta1},
                   {"beta2", c.beta2},
                   {"epsilon", c.epsilon},
                   {"batch_size", c.batch_size},
                   {"epochs", c.epochs},
                   {"train_fraction", c.train_fraction},
                   {"seed", c.seed}};
    nlohmann::json params;
    params["layer1.w_in"] =
        param_json("layer1.w_in", model.layer1.w_in, {4 * model.layer1.out_size, 1});
    params["layer1.w_rec"] = param_json(
        "layer1.w_rec", model.layer1.w_rec, {4 * model.layer1.out_size, model.layer1.out_size});
    params["layer1.bias"] =
        param_json("layer1.bias", model.layer1.bias, {4 * model.layer1.out_size});
    params["layer2.w_in"] = param_json(
        "layer2.w_in", model.layer2.w_in, {4 * model.layer2.out_size, model.layer2.in_size});
    params["layer2.w_rec"] = param_json(
        "layer2.w_rec", model.layer2.w_rec, {4 * model.layer2.out_size, model.layer2.out_size});
    params["layer2.bias"] =
        param_json("layer2.bias", model.layer2.bias, {4 * model.layer2.out_size});
    params["dense.w"] = param_json("dense.w", model.dense_w, {model.dense_w.size()});
    params["dense.b"] = param_json("dense.b", {model.dense_b}, {1});
    j["parameters"] = std::move(params);

    std::ofstream out(path);
    if (!out)
        throw Error(Errc::IoFailure, "cannot open " + path + " for writing");
    out << j.dump(2) << '\n';
    if (!out)
        throw Error(Errc::IoFailure, "failed writing " + path);
}

LstmModel load_checkpoint(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw Error(Errc::IoFailure, "cannot open " + path);
    nlohmann::json j;
    try {
        in >> j;
        if (j.value("format", "") != "canids-lstm-checkpoint-v1")
            throw Error(Errc::BadCheckpoint, "unrecognized checkpoint format");
        const auto& c = j.at("config");
        ModelConfig config;
        config.input_units = c.at("input_units").get<std::size_t>();
        config.hidden_units = c.at("hidden_units").get<std::size_t>();
        config.output_units = c.at("output_units").get<std::size_t>();
        config.lookback = c.at("lookback").get<std::size_t>();
        config.dropout = c.at("dropout").get<double>();
        config.learning_rate = c.at("learning_rate").get<double>();
        config.beta1 = c.at("beta1").get<double>();
        config.beta2 = c.at("beta2").get<double>();
        config.epsilon = c.at("epsilon").get<double>();
        config.batch_size = c.at("batch_size").get<std::size_t>();
        config.epochs = c.at("epochs").get<std::size_t>();
        config.train_fraction = c.at("train_fraction").get<double>();
        config.seed = c.at("seed").get<std::uint64_t>();

        LstmModel model = init_model(config);
        const auto& params = j.at("parameters");
        model.layer1.w_in =
            load_param(params, "layer1.w_in", {4 * config.input_units, 1});
        model.layer1.w_rec =
            load_param(params, "layer1.w_rec", {4 * config.input_units, config.input_units});
        model.layer1.bias = load_param(params, "layer1.bias", {4 * config.input_units});
        model.layer2.w_in =
            load_param(params, "layer2.w_in", {4 * config.hidden_units, config.input_units});
        model.layer2.w_rec =
            load_param(params, "layer2.w_rec", {4 * config.hidden_units, config.hidden_units});
        model.layer2.bias = load_param(params, "layer2.bias", {4 * config.hidden_units});
        model.dense_w = load_param(params, "dense.w", {config.hidden_units});
        model.dense_b = load_param(params, "dense.b", {1})[0];
        return model;
    } catch (const Error&) {
        throw;
    } catch (const std::exception& e) {
        throw Error(Errc::BadCheckpoint, std::string("cannot parse checkpoint: ") + e.what());
    }
}

void write_history_csv(std::ostream& out, const TrainHistory& history) {
    out << "epoch,loss,train_acc\n";
    char lbuf[40], abuf[40];
    for (std::size_t i = 0; i < history.epochs.size(); ++i) {
        std::snprintf(lbuf, sizeof(lbuf), "%.17g", history.epochs[i].loss);
        std::snprintf(abuf, sizeof(abuf), "%.17g", history.epochs[i].accuracy);
        out << (i + 1) << ',' << lbuf << ',' << abuf << '\n';
    }
}

std::vector<ParamView> parameter_views(LstmModel& model) {
    return {{"layer1.w_in", model.layer1.w_in.data(), model.layer1.w_in.size()},
            {"layer1.w_rec", model.layer1.w_rec.data(), model.layer1.w_rec.size()},
            {"layer1.bias", model.layer1.bias.data(), model.layer1.bias.size()},
            {"layer2.w_in", model.layer2.w_in.data(), model.layer2.w_in.size()},
            {"layer2.w_rec", model.layer2.w_rec.data(), model.layer2.w_rec.size()},
            {"layer2.bias", model.layer2.bias.data(), model.layer2.bias.size()},
            {"dense.w", model.dense_w.data(), model.dense_w.size()},
            {"dense.b", &model.dense_b, 1}};
}

} // namespace canids
