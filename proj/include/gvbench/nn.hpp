#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "gvbench/tensor.hpp"

namespace gvbench {

// ---------------------------------------------------------------------------
// Layer primitives. Inputs are single samples in [channels, height, width]
// (or flat [n] after flatten). All gradients are exact analytic forms,
// verified against central finite differences in the test suite.
// ---------------------------------------------------------------------------

// Cross-correlation. out extent = floor((in + 2*pad - k) / stride) + 1.
template <typename S>
TensorT<S> conv2d(const TensorT<S>& input, const TensorT<S>& weights,
                  const TensorT<S>& bias, int stride, int padding);

template <typename S>
void conv2d_backward(const TensorT<S>& input, const TensorT<S>& weights,
                     const TensorT<S>& d_out, int stride, int padding,
                     TensorT<S>& d_input, TensorT<S>& d_weights, TensorT<S>& d_bias);

// Max pooling; tie on equal values goes to the lowest linear index inside
// the window (row-major scan order).
template <typename S>
TensorT<S> maxpool(const TensorT<S>& input, int window, int stride,
                   std::vector<int>* argmax = nullptr);

template <typename S>
void maxpool_backward(const TensorT<S>& input, const TensorT<S>& d_out,
                      const std::vector<int>& argmax, TensorT<S>& d_input);

template <typename S>
TensorT<S> dense(const TensorT<S>& input, const TensorT<S>& weights,
                 const TensorT<S>& bias);

template <typename S>
void dense_backward(const TensorT<S>& input, const TensorT<S>& weights,
                    const TensorT<S>& d_out, TensorT<S>& d_input,
                    TensorT<S>& d_weights, TensorT<S>& d_bias);

template <typename S>
TensorT<S> relu(const TensorT<S>& input);

template <typename S>
void relu_backward(const TensorT<S>& input, const TensorT<S>& d_out,
                   TensorT<S>& d_input);

// Numerically stable log-softmax NLL; returns the loss, and the logits
// gradient (softmax - one_hot) when d_logits is given.
template <typename S>
double softmax_nll(const TensorT<S>& logits, int target_class,
                   TensorT<S>* d_logits = nullptr);

template <typename S>
std::vector<double> softmax_probabilities(const TensorT<S>& logits);

// ---------------------------------------------------------------------------
// Architectures
// ---------------------------------------------------------------------------

enum class LayerKind { Conv, MaxPool, Dense, Relu, Flatten, SoftmaxOutput };

struct LayerSpec {
    LayerKind kind = LayerKind::Relu;
    int filters = 0, kernel = 0, stride = 1, padding = 0;  // conv
    int window = 0, pool_stride = 0;                       // maxpool
    int width = 0;                                         // dense
    int classes = 0;                                       // softmax output

    static LayerSpec conv(int filters, int kernel, int stride = 1, int padding = 0);
    static LayerSpec pool(int window, int stride);
    static LayerSpec dense_layer(int width);
    static LayerSpec relu_layer();
    static LayerSpec flatten();
    static LayerSpec softmax_output(int classes);
};

struct ArchitectureSpec {
    std::string name;
    int input_size = 0;
    int input_channels = 1;
    std::vector<LayerSpec> layers;

    int classes() const;
    bool operator==(const ArchitectureSpec& o) const;
};

// Output shape of every layer given the input shape; throws Error when
// consecutive shapes are incompatible or an extent collapses.
std::vector<std::vector<int>> validate_architecture(const ArchitectureSpec& spec);

struct ParamShape {
    std::string name;  // "layer3.weight"
    std::vector<int> shape;
    int layer_index = -1;
};

std::vector<ParamShape> parameter_shapes(const ArchitectureSpec& spec);
long long parameter_count(const ArchitectureSpec& spec);

// LeNet-style stack: conv(6@5x5, pad 2), pool 2, conv(16@5x5), pool 2, three
// dense layers (fc1, fc2, classes), ReLU activations.
ArchitectureSpec build_lenet(int input_size, int classes,
                             std::pair<int, int> fc_widths = {4096, 4096});

// VGG16 stack: 13 convs (3x3, pad 1) in 5 blocks with 2x2 pools, optional
// extra conv+pool reduction before the dense head (fc1, fc2, classes).
ArchitectureSpec build_vgg16(int input_size, int classes,
                             std::pair<int, int> fc_widths = {4096, 4096},
                             bool extra_reduction = false);

// ---------------------------------------------------------------------------
// Network, optimizer, training
// ---------------------------------------------------------------------------

template <typename S>
struct Network {
    ArchitectureSpec spec;
    std::vector<TensorT<S>> params;  // aligned with parameter_shapes(spec)
};

// Seeded He-style initialization (normal, fan-in scaled) for weights, zero
// biases; each tensor draws from its own derived seed.
template <typename S>
Network<S> make_network(const ArchitectureSpec& spec, std::uint64_t seed);

// Per-sample forward/backward scratch space, reusable across calls.
template <typename S>
struct Workspace {
    std::vector<TensorT<S>> acts;               // acts[i] = input of layer i
    std::vector<std::vector<int>> pool_argmax;  // per maxpool layer
    std::vector<TensorT<S>> grad_acts;
};

template <typename S>
const TensorT<S>& forward(const Network<S>& net, const TensorT<S>& input,
                          Workspace<S>& ws);

// Gradient of the mean NLL w.r.t. every parameter for one sample; d_params
// must be shaped like net.params and is overwritten. Returns the loss.
template <typename S>
double loss_and_gradients(const Network<S>& net, const TensorT<S>& input,
                          int target_class, Workspace<S>& ws,
                          std::vector<TensorT<S>>& d_params);

// argmax prediction, ties to the lowest class index
template <typename S>
int predict(const Network<S>& net, const TensorT<S>& input, Workspace<S>& ws);

// Adadelta (per element):
//   Eg <- rho*Eg + (1-rho) g^2
//   delta = -(sqrt(Ex+eps)/sqrt(Eg+eps)) g
//   Ex <- rho*Ex + (1-rho) delta^2
//   param <- param + delta
template <typename S>
void adadelta_step(std::vector<TensorT<S>>& params, const std::vector<TensorT<S>>& grads,
                   std::vector<TensorT<S>>& acc_grad_sq,
                   std::vector<TensorT<S>>& acc_update_sq, double rho, double epsilon);

struct TrainConfig {
    int epochs = 100;
    int batch_size = 400;
    double rho = 0.95;
    double epsilon = 1e-6;
    std::uint64_t seed = 0;
    std::string precision = "f32";  // "f32" or "f64"
    int jobs = 1;
};

// Images stay as raw luminance bytes; they are normalized to [0,1] when fed.
struct TrainingSet {
    int image_size = 0;
    std::vector<std::vector<std::uint8_t>> images;
    std::vector<int> labels;
    std::vector<std::string> sample_ids;
};

template <typename S>
struct AdadeltaState {
    std::vector<TensorT<S>> acc_grad_sq;
    std::vector<TensorT<S>> acc_update_sq;
};

// Called after each completed epoch (1-based) with the live network.
template <typename S>
using EpochCallback = std::function<void(int epoch, const Network<S>& net,
                                         const AdadeltaState<S>& state, double loss)>;

// Deterministic minibatch training: seeded shuffle per epoch, per-sample
// gradients computed (possibly in parallel) then reduced in sample order,
// one Adadelta step per batch on the mean gradient. Throws Error when a
// label is outside the class range, naming the sample.
template <typename S>
std::vector<double> train(Network<S>& net, const TrainingSet& data,
                          const TrainConfig& cfg, const EpochCallback<S>& on_epoch);

// Parallel argmax predictions for a whole set.
template <typename S>
std::vector<int> predict_all(const Network<S>& net,
                             const std::vector<std::vector<std::uint8_t>>& images,
                             int image_size, int jobs);

// ---------------------------------------------------------------------------
// Checkpoints: text JSON header (spec, epoch, precision, tensor directory
// with shapes and byte offsets) + little-endian raw payload.
// ---------------------------------------------------------------------------

struct CheckpointData {
    ArchitectureSpec spec;
    int epoch = 0;
    std::string precision;  // "f32" or "f64"
    std::vector<Tensor> params;
    std::vector<Tensor> acc_grad_sq;
    std::vector<Tensor> acc_update_sq;
};

template <typename S>
void save_checkpoint(const Network<S>& net, const AdadeltaState<S>& state, int epoch,
                     const std::string& path);

CheckpointData load_checkpoint(const std::string& path);

template <typename S>
Network<S> network_from_checkpoint(const CheckpointData& data);
template <typename S>
AdadeltaState<S> state_from_checkpoint(const CheckpointData& data);

// JSON round-trip for architecture specs (used by checkpoints and reports).
std::string architecture_to_json(const ArchitectureSpec& spec);
ArchitectureSpec architecture_from_json(const std::string& text);

}  // namespace gvbench
