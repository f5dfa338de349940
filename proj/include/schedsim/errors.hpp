#ifndef SCHEDSIM_ERRORS_HPP
#define SCHEDSIM_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace schedsim {

// Base class for all fatal simulator errors. The CLI maps these to exit
// code 1; anything argument-shaped is reported before a run starts.
class Error : public std::runtime_error {
  public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Bad or missing configuration input (unreadable files, invalid values).
class ConfigError : public Error {
  public:
    using Error::Error;
};

// Job trace violates the format contract (ordering, duplicate ids).
class TraceError : public Error {
  public:
    using Error::Error;
};

// A write to a results/debug sink failed.
class IoError : public Error {
  public:
    using Error::Error;
};

// A scheduling policy returned a decision the engine cannot honor even
// though the policy saw a consistent snapshot.
class PolicyContractError : public Error {
  public:
    using Error::Error;
};

// Internal consistency violation (event queue order, double release, ...).
class InternalError : public Error {
  public:
    using Error::Error;
};

// Training produced a non-finite loss.
class DivergenceError : public Error {
  public:
    using Error::Error;
};

// Malformed checkpoint file or version mismatch.
class CheckpointError : public Error {
  public:
    using Error::Error;
};

}  // namespace schedsim

#endif
