#ifndef RAAG_ERRORS_HPP
#define RAAG_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace raag {

// Bad user input: unknown vertex, malformed file, graph mismatch.
struct input_error : std::runtime_error {
    explicit input_error(const std::string& msg) : std::runtime_error(msg) {}
};

// A documented operation precondition was violated by the caller.
struct precondition_error : std::runtime_error {
    explicit precondition_error(const std::string& msg) : std::runtime_error(msg) {}
};

// A property that the construction guarantees failed to hold.
struct verification_error : std::runtime_error {
    explicit verification_error(const std::string& msg) : std::runtime_error(msg) {}
};

// A membership oracle threw; carries the offending word.
struct oracle_error : std::runtime_error {
    explicit oracle_error(const std::string& msg) : std::runtime_error(msg) {}
};

inline void require_input(bool cond, const std::string& msg) {
    if (!cond) throw input_error(msg);
}

inline void require_pre(bool cond, const std::string& msg) {
    if (!cond) throw precondition_error(msg);
}

inline void require_verified(bool cond, const std::string& msg) {
    if (!cond) throw verification_error(msg);
}

} // namespace raag

#endif
