#include <doctest.h>

#include <random>
#include <string>

#include "cogarith/error.hpp"
#include "cogarith/problem.hpp"

using namespace cogarith;

namespace {

Errc code_of(const std::string& text) {
    try {
        parse_problem(text);
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("expected parse error for: " << text);
    return Errc::empty_input;
}

} // namespace

TEST_CASE("parses the plain forms") {
    CHECK(parse_problem("4 + 4") == Problem{4, Operator::add, 4});
    CHECK(parse_problem("1375 / 5") == Problem{1375, Operator::div, 5});
    CHECK(parse_problem("497 + 38") == Problem{497, Operator::add, 38});
    CHECK(parse_problem("12x3") == Problem{12, Operator::mul, 3});
    CHECK(parse_problem("10 \xC3\xB7 2") == Problem{10, Operator::div, 2});
    CHECK(parse_problem("  7*8  ") == Problem{7, Operator::mul, 8});
    CHECK(parse_problem("3 - 5") == Problem{3, Operator::sub, 5}); // domain checked at solve time
    CHECK(parse_problem("007 + 1") == Problem{7, Operator::add, 1});
}

TEST_CASE("error taxonomy") {
    CHECK(code_of("") == Errc::empty_input);
    CHECK(code_of("   \t ") == Errc::empty_input);
    CHECK(code_of("4 ++ 4") == Errc::malformed_expression);
    CHECK(code_of("+ 4 4") == Errc::malformed_expression);
    CHECK(code_of("4 4") == Errc::malformed_expression);
    CHECK(code_of("4 + 4 + 4") == Errc::malformed_expression);
    CHECK(code_of("4 +") == Errc::malformed_expression);
    CHECK(code_of("-4 + 4") == Errc::malformed_expression);
    CHECK(code_of("4 ? 4") == Errc::unknown_operator);
    CHECK(code_of("4 % 4") == Errc::unknown_operator);
    CHECK(code_of("9999999999 + 1") == Errc::operand_overflow);
    CHECK_NOTHROW(parse_problem("1000000000 + 0")); // cap is inclusive
    CHECK(code_of("1000000001 + 0") == Errc::operand_overflow);
}

TEST_CASE("errors name token and position") {
    try {
        parse_problem("4 ?? 4");
        FAIL("expected error");
    } catch (const Error& e) {
        const std::string msg = e.what();
        CHECK(msg.find("??") != std::string::npos);
        CHECK(msg.find("position 2") != std::string::npos);
    }
    try {
        parse_problem("12 + 99999999999");
        FAIL("expected error");
    } catch (const Error& e) {
        const std::string msg = e.what();
        CHECK(msg.find("99999999999") != std::string::npos);
        CHECK(msg.find("position 5") != std::string::npos);
    }
}

TEST_CASE("round-trip through render") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 2000; ++trial) {
        Problem p;
        p.lhs = static_cast<std::int64_t>(rng() % (kOperandCap + 1));
        p.rhs = static_cast<std::int64_t>(rng() % (kOperandCap + 1));
        p.op = static_cast<Operator>(rng() % 4);
        CHECK(parse_problem(render(p)) == p);
    }
}

TEST_CASE("whitespace between tokens never changes the parse") {
    std::mt19937_64 rng(11);
    auto pad = [&](const std::string& s) {
        std::string out;
        for (char c : s) {
            for (std::uint64_t k = rng() % 3; k > 0; --k) out += ' ';
            out += c;
        }
        for (std::uint64_t k = rng() % 3; k > 0; --k) out += ' ';
        return out;
    };
    for (int trial = 0; trial < 500; ++trial) {
        Problem p;
        p.lhs = static_cast<std::int64_t>(rng() % 100000);
        p.rhs = static_cast<std::int64_t>(rng() % 100000);
        p.op = static_cast<Operator>(rng() % 4);
        CHECK(parse_problem(pad(render(p))) == p);
    }
}

TEST_CASE("rejection totality on arbitrary bytes") {
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 5000; ++trial) {
        std::string s;
        const std::size_t len = rng() % 12;
        for (std::size_t i = 0; i < len; ++i) s += static_cast<char>(rng() % 256);
        try {
            (void)parse_problem(s);
        } catch (const Error& e) {
            const Errc c = e.code();
            const bool named = c == Errc::empty_input || c == Errc::malformed_expression ||
                               c == Errc::unknown_operator || c == Errc::operand_overflow;
            CHECK(named);
        }
    }
}
