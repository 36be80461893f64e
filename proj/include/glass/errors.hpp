#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace glass {

// Trajectory hit (or would hit) a codimension-2 threshold intersection;
// such points are excluded from the map's domain and the run is aborted.
struct CodimensionTwoError : std::runtime_error {
    std::size_t step;
    explicit CodimensionTwoError(std::size_t at)
        : std::runtime_error("codimension-2 tie at step " + std::to_string(at)), step(at) {}
};

struct TerminalBoxError : std::runtime_error {
    explicit TerminalBoxError(const std::string& box)
        : std::runtime_error("box " + box + " is terminal") {}
};

// A fractional-linear map was applied to a cone outside its admissible set.
struct DenominatorSignError : std::runtime_error {
    explicit DenominatorSignError(const std::string& what) : std::runtime_error(what) {}
};

// A simulated trajectory could not be parsed into first-return cycles.
struct SegmentationError : std::runtime_error {
    std::size_t position;
    SegmentationError(const std::string& what, std::size_t pos)
        : std::runtime_error(what + " (at symbol " + std::to_string(pos) + ")"), position(pos) {}
};

// An operation required a common decay rate (or another structural
// property) that the spec does not satisfy.
struct ConditionError : std::runtime_error {
    explicit ConditionError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace glass
