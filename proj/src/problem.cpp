#include "cogarith/problem.hpp"

#include <cctype>
#include <cstddef>

#include "cogarith/error.hpp"

namespace cogarith {

namespace {

bool is_space(char c) {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

bool is_digit(char c) { return c >= '0' && c <= '9'; }

// UTF-8 for the division sign.
constexpr char kDivSign0 = static_cast<char>(0xC3);
constexpr char kDivSign1 = static_cast<char>(0xB7);

struct Cursor {
    std::string_view text;
    std::size_t pos = 0;

    bool done() const { return pos >= text.size(); }
    char peek() const { return text[pos]; }

    void skip_space() {
        while (!done() && is_space(peek())) ++pos;
    }

    // Next token for error messages: a run of non-space bytes.
    std::string token_here() const {
        std::size_t end = pos;
        while (end < text.size() && !is_space(text[end])) ++end;
        return std::string(text.substr(pos, end - pos));
    }
};

[[noreturn]] void fail(Errc code, const std::string& what, const Cursor& cur) {
    raise(code, what + " \"" + cur.token_here() + "\" at position " + std::to_string(cur.pos));
}

std::int64_t read_operand(Cursor& cur, const char* which) {
    cur.skip_space();
    if (cur.done() || !is_digit(cur.peek()))
        fail(Errc::malformed_expression, std::string("expected ") + which + ", got", cur);
    const std::size_t start = cur.pos;
    std::int64_t value = 0;
    bool overflow = false;
    while (!cur.done() && is_digit(cur.peek())) {
        value = value * 10 + (cur.peek() - '0');
        if (value > kOperandCap) overflow = true;
        if (overflow) value = kOperandCap + 1; // clamp so the loop cannot wrap
        ++cur.pos;
    }
    if (overflow)
        raise(Errc::operand_overflow, "operand \"" + std::string(cur.text.substr(start, cur.pos - start)) +
                                          "\" at position " + std::to_string(start) + " exceeds cap " +
                                          std::to_string(kOperandCap));
    return value;
}

Operator read_operator(Cursor& cur) {
    cur.skip_space();
    if (cur.done()) fail(Errc::malformed_expression, "expected operator, got", cur);
    const char c = cur.peek();
    if (is_digit(c)) fail(Errc::malformed_expression, "expected operator, got", cur);
    switch (c) {
        case '+': ++cur.pos; return Operator::add;
        case '-': ++cur.pos; return Operator::sub;
        case '*':
        case 'x': ++cur.pos; return Operator::mul;
        case '/': ++cur.pos; return Operator::div;
        default: break;
    }
    if (c == kDivSign0 && cur.pos + 1 < cur.text.size() && cur.text[cur.pos + 1] == kDivSign1) {
        cur.pos += 2;
        return Operator::div;
    }
    fail(Errc::unknown_operator, "unknown operator", cur);
}

} // namespace

char operator_symbol(Operator op) {
    switch (op) {
        case Operator::add: return '+';
        case Operator::sub: return '-';
        case Operator::mul: return '*';
        case Operator::div: return '/';
    }
    return '?';
}

std::string_view operator_name(Operator op) {
    switch (op) {
        case Operator::add: return "add";
        case Operator::sub: return "sub";
        case Operator::mul: return "mul";
        case Operator::div: return "div";
    }
    return "?";
}

Operator operator_from_name(std::string_view name) {
    if (name == "add") return Operator::add;
    if (name == "sub") return Operator::sub;
    if (name == "mul") return Operator::mul;
    if (name == "div") return Operator::div;
    raise(Errc::unknown_operator, "unknown operator name \"" + std::string(name) + "\"");
}

Problem parse_problem(std::string_view text) {
    Cursor cur{text};
    cur.skip_space();
    if (cur.done()) raise(Errc::empty_input, "no tokens in input");

    Problem p;
    p.lhs = read_operand(cur, "operand");
    p.op = read_operator(cur);
    p.rhs = read_operand(cur, "operand");
    cur.skip_space();
    if (!cur.done()) fail(Errc::malformed_expression, "trailing input", cur);
    return p;
}

std::string render(const Problem& problem) {
    std::string out = std::to_string(problem.lhs);
    out += ' ';
    out += operator_symbol(problem.op);
    out += ' ';
    out += std::to_string(problem.rhs);
    return out;
}

const char* errc_name(Errc code) {
    switch (code) {
        case Errc::empty_input: return "EmptyInput";
        case Errc::malformed_expression: return "MalformedExpression";
        case Errc::unknown_operator: return "UnknownOperator";
        case Errc::operand_overflow: return "OperandOverflow";
        case Errc::division_by_zero: return "DivisionByZero";
        case Errc::negative_result: return "NegativeResult";
        case Errc::bad_range: return "BadRange";
        case Errc::unknown_key: return "UnknownKey";
        case Errc::io_failure: return "IoFailure";
        case Errc::malformed_row: return "MalformedRow";
        case Errc::inconsistent_result: return "InconsistentResult";
    }
    return "Error";
}

} // namespace cogarith
