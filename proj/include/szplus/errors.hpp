#pragma once

#include <stdexcept>
#include <string>

namespace szplus {

struct StructuralError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct GenericityError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct ProximityError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct PlacementError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct SingularityError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct IntegrationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct PreconditionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace szplus
