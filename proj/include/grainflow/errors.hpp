#pragma once

#include <stdexcept>

namespace grainflow {

// Arithmetic/precondition violations in the numeric core (e.g. non-positive unit cost).
struct DomainError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Bad scenario/configuration data detected before or during a run.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Misuse of the gossip protocol (announcing without a deficit, flooding from an unknown node).
struct ProtocolError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Popping an empty supplier queue; the consumer has to re-announce on a later tick.
struct ExhaustedError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace grainflow
