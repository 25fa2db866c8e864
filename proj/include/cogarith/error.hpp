#pragma once

#include <stdexcept>
#include <string>

namespace cogarith {

enum class Errc {
    empty_input,
    malformed_expression,
    unknown_operator,
    operand_overflow,
    division_by_zero,
    negative_result,
    bad_range,
    unknown_key,
    io_failure,
    malformed_row,
    inconsistent_result,
};

const char* errc_name(Errc code);

/// Single exception type for all domain errors; code() tells them apart.
class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& message)
        : std::runtime_error(std::string(errc_name(code)) + ": " + message), code_(code) {}

    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

[[noreturn]] inline void raise(Errc code, const std::string& message) {
    throw Error(code, message);
}

} // namespace cogarith
