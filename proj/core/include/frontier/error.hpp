#pragma once

#include <stdexcept>
#include <string>

namespace frontier {

// Failure categories surfaced by the library. The CLI maps these to exit
// codes; tests match on the code rather than the message text.
enum class errc {
    empty_input,
    dimension_mismatch,
    non_positive_epsilon,
    unknown_point_id,
    same_point,
    k_too_large,
    collision_exhausted,
    duplicate_id,
    invalid_argument,
};

class Error : public std::runtime_error {
public:
    Error(errc code, const std::string& what) : std::runtime_error(what), code_(code) {}

    errc code() const noexcept { return code_; }

private:
    errc code_;
};

inline const char* errc_name(errc code) {
    switch (code) {
    case errc::empty_input: return "empty_input";
    case errc::dimension_mismatch: return "dimension_mismatch";
    case errc::non_positive_epsilon: return "non_positive_epsilon";
    case errc::unknown_point_id: return "unknown_point_id";
    case errc::same_point: return "same_point";
    case errc::k_too_large: return "k_too_large";
    case errc::collision_exhausted: return "collision_exhausted";
    case errc::duplicate_id: return "duplicate_id";
    case errc::invalid_argument: return "invalid_argument";
    }
    return "unknown";
}

}  // namespace frontier
