#include "schedsim/replay.hpp"

#include "schedsim/errors.hpp"

namespace schedsim {

ReplayBuffer::ReplayBuffer(std::size_t capacity) : capacity_(capacity) {
    if (capacity_ < 1) throw ConfigError("replay capacity must be >= 1");
    ring_.reserve(capacity_);
}

void ReplayBuffer::push(Transition t) {
    if (ring_.size() < capacity_) {
        ring_.push_back(std::move(t));
        return;
    }
    ring_[head_] = std::move(t);
    head_ = (head_ + 1) % capacity_;
}

std::vector<const Transition*> ReplayBuffer::sample(std::size_t n, Rng& rng) const {
    if (ring_.empty()) throw InternalError("sampling from an empty replay buffer");
    std::vector<const Transition*> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) out.push_back(&ring_[rng.index(ring_.size())]);
    return out;
}

}  // namespace schedsim
