#pragma once

#include <stdexcept>
#include <string>

namespace splataa {

// Base for every typed failure the library raises. Anything escaping that is
// not an Error is a bug.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NonFinite : Error {
    using Error::Error;
};
struct Degenerate : Error {
    using Error::Error;
};
struct DegenerateDepth : Error {
    using Error::Error;
};
struct SingularCovariance : Error {
    using Error::Error;
};
struct UnsortedInput : Error {
    using Error::Error;
};
struct EmptyCloud : Error {
    using Error::Error;
};
struct MissingTrainingCameras : Error {
    using Error::Error;
};
struct MalformedHeader : Error {
    using Error::Error;
};
struct MissingProperty : Error {
    explicit MissingProperty(const std::string& property)
        : Error("missing property: " + property), property_name(property) {}
    std::string property_name;
};
struct TruncatedPayload : Error {
    using Error::Error;
};
struct DimensionMismatch : Error {
    using Error::Error;
};
struct TooSmall : Error {
    using Error::Error;
};
struct IoFailure : Error {
    using Error::Error;
};
struct InvalidCamera : Error {
    using Error::Error;
};
struct InvalidRecipe : Error {
    using Error::Error;
};

}  // namespace splataa
