#ifndef SCHEDSIM_NN_HPP
#define SCHEDSIM_NN_HPP

#include <cstddef>
#include <span>
#include <vector>

#include "schedsim/rng.hpp"

namespace schedsim {

// Fully-connected feedforward net: rectifier on hidden layers, identity on
// the output. Small enough that plain scalar loops beat any BLAS detour.
class NeuralNet {
  public:
    struct Layer {
        std::size_t in = 0;
        std::size_t out = 0;
        std::vector<double> w;  // out x in, row-major
        std::vector<double> b;  // out
    };

    // Gradients (or any accumulator) with the same shapes as the net.
    struct Params {
        std::vector<Layer> layers;
        void add_scaled(const Params& other, double scale);  // this += scale * other
    };

    // Activations cached by a forward pass, consumed by backward().
    struct Trace {
        std::vector<std::vector<double>> inputs;  // input to each layer
        std::vector<std::vector<double>> pre;     // pre-activation of each layer
    };

    NeuralNet() = default;
    // Glorot-uniform weights in [-sqrt(6/(in+out)), +], zero biases.
    NeuralNet(std::size_t input, std::span<const std::size_t> hidden, std::size_t output,
              Rng& rng);

    std::vector<double> forward(std::span<const double> x) const;
    std::vector<double> forward(std::span<const double> x, Trace& trace) const;

    // Gradients of the scalar loss whose derivative w.r.t. the net output
    // is `output_gradient`, evaluated at the pass recorded in `trace`.
    Params backward(const Trace& trace, std::span<const double> output_gradient) const;

    Params zero_like() const;
    void apply_gradients(const Params& grads, double learning_rate);  // p -= lr * g

    std::size_t input_size() const;
    std::size_t output_size() const;
    const std::vector<Layer>& layers() const { return layers_; }
    std::vector<Layer>& layers() { return layers_; }

    // Flat parameter view in a fixed order (layer, weights then biases);
    // used by the checkpoint format and the gradient checker.
    std::size_t parameter_count() const;
    std::vector<double> flatten() const;
    void unflatten(std::span<const double> flat);

  private:
    std::vector<Layer> layers_;
};

}  // namespace schedsim

#endif
