#ifndef SCHEDSIM_REPLAY_HPP
#define SCHEDSIM_REPLAY_HPP

#include <cstddef>
#include <vector>

#include "schedsim/rng.hpp"
#include "schedsim/state_encoding.hpp"

namespace schedsim {

struct Transition {
    StateVector state;
    std::size_t action = 0;  // in [0, K]; K is the no-op
    double reward = 0.0;
    StateVector next_state;
    bool done = false;
};

// Fixed-capacity ring of transitions; oldest evicted first. Sampling is
// uniform with replacement from the caller's generator.
class ReplayBuffer {
  public:
    explicit ReplayBuffer(std::size_t capacity);

    void push(Transition t);
    std::vector<const Transition*> sample(std::size_t n, Rng& rng) const;

    std::size_t size() const { return ring_.size(); }
    std::size_t capacity() const { return capacity_; }
    const Transition& at(std::size_t i) const { return ring_[(head_ + i) % ring_.size()]; }

  private:
    std::size_t capacity_;
    std::vector<Transition> ring_;
    std::size_t head_ = 0;  // index of the oldest entry once full
};

}  // namespace schedsim

#endif
