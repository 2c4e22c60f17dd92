#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace fg {

/// Failure categories raised by the library. The CLI maps
/// `axiom_violation` and `internal_consistency` to exit code 1 (a
/// mathematical check failed) and everything else to exit code 2.
enum class Errc {
    descriptor_mismatch,
    shape_mismatch,
    invalid_argument,
    not_enumerable,
    not_invertible,
    not_divisible,
    axiom_violation,
    bud_mismatch,
    wrong_ring,
    invalid_fgl,
    needs_q_algebra,
    too_large,
    internal_consistency,
    not_a_complex,
    insufficient_truncation,
    parse_error,
};

std::string_view errc_name(Errc code) noexcept;

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& message)
        : std::runtime_error(message), code_(code) {}

    Errc code() const noexcept { return code_; }

    /// True when the error reports a falsified mathematical identity rather
    /// than bad input.
    bool is_math_failure() const noexcept {
        return code_ == Errc::axiom_violation || code_ == Errc::internal_consistency;
    }

private:
    Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& message) {
    throw Error(code, message);
}

} // namespace fg
