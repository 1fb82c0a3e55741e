#pragma once

#include <stdexcept>
#include <string>

namespace imdd {

// Invalid argument values: bad filter rolloff, message out of alphabet, ...
struct ParamError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Vector/matrix dimension mismatch.
struct ShapeError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Structurally valid but unusable input (all-zero signal, empty sequence).
struct DegenerateInputError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// API used outside its contract (differentiable path with quantization on,
// backward pass without a recorded forward, ...).
struct ContractError : std::logic_error {
    using std::logic_error::logic_error;
};

// Training failure; carries the optimizer step at which the loss or a
// gradient became non-finite.
class TrainError : public std::runtime_error {
public:
    TrainError(const std::string& msg, long step)
        : std::runtime_error(msg + " (step " + std::to_string(step) + ")"), step_(step) {}
    long step() const noexcept { return step_; }

private:
    long step_;
};

enum class IoErrc {
    open_failed,
    bad_magic,
    bad_version,
    truncated,
    corrupt,
};

class IoError : public std::runtime_error {
public:
    IoError(IoErrc code, const std::string& msg) : std::runtime_error(msg), code_(code) {}
    IoErrc code() const noexcept { return code_; }

private:
    IoErrc code_;
};

}  // namespace imdd
