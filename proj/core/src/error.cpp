#include "pathfunc/error.hpp"

namespace pathfunc {

SimulationError::SimulationError(const std::string& what, std::vector<double> state, double t)
    : std::runtime_error(what), state_(std::move(state)), t_(t) {}

}  // namespace pathfunc
