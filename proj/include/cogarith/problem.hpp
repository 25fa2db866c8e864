#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace cogarith {

enum class Operator { add, sub, mul, div };

/// Largest accepted operand. Keeps every intermediate product exact in 64-bit
/// arithmetic (cap^2 < 2^63).
inline constexpr std::int64_t kOperandCap = 1'000'000'000;

char operator_symbol(Operator op);
std::string_view operator_name(Operator op);
Operator operator_from_name(std::string_view name);

/// A two-operand problem with non-negative integer operands.
struct Problem {
    std::int64_t lhs = 0;
    Operator op = Operator::add;
    std::int64_t rhs = 0;

    bool operator==(const Problem&) const = default;
};

/// Parses "<digits> <op> <digits>" with optional whitespace between tokens.
/// Operator symbols: + - * / plus the aliases x and the UTF-8 division sign.
/// Throws Error with code empty_input, malformed_expression, unknown_operator
/// or operand_overflow; messages name the failing token and its byte offset.
Problem parse_problem(std::string_view text);

/// Canonical text form, "lhs op rhs" with single spaces.
std::string render(const Problem& problem);

} // namespace cogarith
