#ifndef VTEXT_ERRORS_HPP
#define VTEXT_ERRORS_HPP

#include <stdexcept>

namespace vtext {

struct DecodeError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct UnsupportedFormat : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct OutOfBounds : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct TooSmall : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct DimensionMismatch : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct Degenerate : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct EmptyLine : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct InvalidStructure : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct OverlapError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct BlankCharacter : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct InsufficientData : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct LengthMismatch : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace vtext

#endif
