#include "schedsim/nn.hpp"

#include <cmath>
#include <string>

#include "schedsim/errors.hpp"

namespace schedsim {

NeuralNet::NeuralNet(std::size_t input, std::span<const std::size_t> hidden, std::size_t output,
                     Rng& rng) {
    std::vector<std::size_t> dims;
    dims.push_back(input);
    dims.insert(dims.end(), hidden.begin(), hidden.end());
    dims.push_back(output);

    for (std::size_t l = 0; l + 1 < dims.size(); ++l) {
        Layer layer;
        layer.in = dims[l];
        layer.out = dims[l + 1];
        layer.w.resize(layer.in * layer.out);
        layer.b.assign(layer.out, 0.0);
        double bound = std::sqrt(6.0 / static_cast<double>(layer.in + layer.out));
        for (double& w : layer.w) w = rng.symmetric(bound);
        layers_.push_back(std::move(layer));
    }
}

std::size_t NeuralNet::input_size() const { return layers_.front().in; }
std::size_t NeuralNet::output_size() const { return layers_.back().out; }

std::vector<double> NeuralNet::forward(std::span<const double> x) const {
    Trace scratch;
    return forward(x, scratch);
}

std::vector<double> NeuralNet::forward(std::span<const double> x, Trace& trace) const {
    if (x.size() != input_size())
        throw InternalError("net input size " + std::to_string(x.size()) + ", expected " +
                            std::to_string(input_size()));
    trace.inputs.assign(layers_.size(), {});
    trace.pre.assign(layers_.size(), {});

    std::vector<double> act(x.begin(), x.end());
    for (std::size_t l = 0; l < layers_.size(); ++l) {
        const Layer& layer = layers_[l];
        trace.inputs[l] = act;
        std::vector<double> z(layer.out);
        for (std::size_t o = 0; o < layer.out; ++o) {
            double sum = layer.b[o];
            const double* row = &layer.w[o * layer.in];
            for (std::size_t i = 0; i < layer.in; ++i) sum += row[i] * act[i];
            z[o] = sum;
        }
        trace.pre[l] = z;
        bool last = l + 1 == layers_.size();
        if (!last)
            for (double& v : z) v = v > 0.0 ? v : 0.0;
        act = std::move(z);
    }
    return act;
}

NeuralNet::Params NeuralNet::backward(const Trace& trace,
                                      std::span<const double> output_gradient) const {
    if (output_gradient.size() != output_size())
        throw InternalError("output gradient size mismatch");

    Params grads = zero_like();
    std::vector<double> delta(output_gradient.begin(), output_gradient.end());

    for (std::size_t li = layers_.size(); li-- > 0;) {
        const Layer& layer = layers_[li];
        Layer& g = grads.layers[li];
        bool last = li + 1 == layers_.size();
        if (!last) {
            // Rectifier gate: gradient passes only where the unit fired.
            for (std::size_t o = 0; o < layer.out; ++o)
                if (trace.pre[li][o] <= 0.0) delta[o] = 0.0;
        }
        const std::vector<double>& in = trace.inputs[li];
        for (std::size_t o = 0; o < layer.out; ++o) {
            g.b[o] += delta[o];
            double* grow = &g.w[o * layer.in];
            for (std::size_t i = 0; i < layer.in; ++i) grow[i] += delta[o] * in[i];
        }
        if (li > 0) {
            std::vector<double> prev(layer.in, 0.0);
            for (std::size_t o = 0; o < layer.out; ++o) {
                const double* row = &layer.w[o * layer.in];
                for (std::size_t i = 0; i < layer.in; ++i) prev[i] += row[i] * delta[o];
            }
            delta = std::move(prev);
        }
    }
    return grads;
}

NeuralNet::Params NeuralNet::zero_like() const {
    Params p;
    p.layers.reserve(layers_.size());
    for (const Layer& layer : layers_) {
        Layer z;
        z.in = layer.in;
        z.out = layer.out;
        z.w.assign(layer.w.size(), 0.0);
        z.b.assign(layer.b.size(), 0.0);
        p.layers.push_back(std::move(z));
    }
    return p;
}

void NeuralNet::Params::add_scaled(const Params& other, double scale) {
    for (std::size_t l = 0; l < layers.size(); ++l) {
        for (std::size_t i = 0; i < layers[l].w.size(); ++i)
            layers[l].w[i] += scale * other.layers[l].w[i];
        for (std::size_t i = 0; i < layers[l].b.size(); ++i)
            layers[l].b[i] += scale * other.layers[l].b[i];
    }
}

void NeuralNet::apply_gradients(const Params& grads, double learning_rate) {
    for (std::size_t l = 0; l < layers_.size(); ++l) {
        for (std::size_t i = 0; i < layers_[l].w.size(); ++i)
            layers_[l].w[i] -= learning_rate * grads.layers[l].w[i];
        for (std::size_t i = 0; i < layers_[l].b.size(); ++i)
            layers_[l].b[i] -= learning_rate * grads.layers[l].b[i];
    }
}

std::size_t NeuralNet::parameter_count() const {
    std::size_t n = 0;
    for (const Layer& layer : layers_) n += layer.w.size() + layer.b.size();
    return n;
}

std::vector<double> NeuralNet::flatten() const {
    std::vector<double> flat;
    flat.reserve(parameter_count());
    for (const Layer& layer : layers_) {
        flat.insert(flat.end(), layer.w.begin(), layer.w.end());
        flat.insert(flat.end(), layer.b.begin(), layer.b.end());
    }
    return flat;
}

void NeuralNet::unflatten(std::span<const double> flat) {
    if (flat.size() != parameter_count())
        throw InternalError("parameter vector size " + std::to_string(flat.size()) +
                            ", expected " + std::to_string(parameter_count()));
    std::size_t pos = 0;
    for (Layer& layer : layers_) {
        for (double& w : layer.w) w = flat[pos++];
        for (double& b : layer.b) b = flat[pos++];
    }
}

}  // namespace schedsim
