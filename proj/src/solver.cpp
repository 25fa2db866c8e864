#include "cogarith/solver.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <limits>

#include "cogarith/error.hpp"
#include "text_util.hpp"

namespace cogarith {

void CostParams::validate() const {
    if (!(count_step_ms > 0.0)) raise(Errc::bad_range, "count_step_ms must be positive");
    for (double v : {carry_ms, borrow_ms, column_overhead_ms, transform_ms, shift_ms})
        if (!(v >= 0.0)) raise(Errc::bad_range, "cost parameters must be non-negative");
}

std::string_view step_kind_name(StepKind kind) {
    switch (kind) {
        case StepKind::retrieve: return "Retrieve";
        case StepKind::carry: return "Carry";
        case StepKind::borrow: return "Borrow";
        case StepKind::count: return "Count";
        case StepKind::transform: return "Transform";
        case StepKind::shift: return "Shift";
        case StepKind::compose: return "Compose";
    }
    return "?";
}

std::string_view plan_kind_name(PlanKind kind) {
    switch (kind) {
        case PlanKind::direct: return "direct";
        case PlanKind::fast_addition: return "fast-addition";
        case PlanKind::divide_by_five: return "divide-by-5";
    }
    return "?";
}

namespace {

// Accumulates steps; total is always the running sum in step order.
struct Trace {
    SolutionTrace t;

    void step(StepKind kind, std::string desc, double rt) {
        t.total_rt_ms += rt;
        t.steps.push_back({kind, std::move(desc), rt});
    }

    void append(const SolutionTrace& other) {
        for (const Step& s : other.steps) {
            t.total_rt_ms += s.rt_ms;
            t.steps.push_back(s);
        }
    }
};

int units(std::int64_t v) { return static_cast<int>(v % 10); }

std::vector<int> digits_of(std::int64_t v) {
    std::vector<int> d;
    do {
        d.push_back(units(v));
        v /= 10;
    } while (v > 0);
    return d;
}

// v == 10^k with k >= 1?
bool power_of_ten(std::int64_t v, int& k) {
    if (v < 10) return false;
    k = 0;
    while (v % 10 == 0) {
        v /= 10;
        ++k;
    }
    return v == 1;
}

std::int64_t pow10(int k) {
    std::int64_t p = 1;
    while (k-- > 0) p *= 10;
    return p;
}

std::string fact_desc(Operator op, int a, int b) {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%d%c%d", a, operator_symbol(op), b);
    return buf;
}

void count_steps(Trace& tr, const CostParams& costs, std::int64_t from, std::int64_t increments) {
    for (std::int64_t k = 1; k <= increments; ++k)
        tr.step(StepKind::count, "count " + std::to_string(from + k), costs.count_step_ms);
}

void count_down_steps(Trace& tr, const CostParams& costs, std::int64_t from, std::int64_t decrements) {
    for (std::int64_t k = 1; k <= decrements; ++k)
        tr.step(StepKind::count, "count " + std::to_string(from - k), costs.count_step_ms);
}

// Single-digit addition fact, minimum-counting fallback when absent.
void add_fact(Trace& tr, const FactLibrary& lib, const CostParams& costs, int a, int b) {
    if (auto e = lib.lookup({Operator::add, a, b})) {
        tr.step(StepKind::retrieve, fact_desc(Operator::add, a, b), e->rt_ms);
        return;
    }
    count_steps(tr, costs, std::max(a, b), std::min(a, b));
}

// Single-digit subtraction fact (a >= b); counting fallback takes the cheaper
// of counting down from a or up from b.
void sub_fact(Trace& tr, const FactLibrary& lib, const CostParams& costs, int a, int b) {
    if (auto e = lib.lookup({Operator::sub, a, b})) {
        tr.step(StepKind::retrieve, fact_desc(Operator::sub, a, b), e->rt_ms);
        return;
    }
    if (b <= a - b)
        count_down_steps(tr, costs, a, b);
    else
        count_steps(tr, costs, b, a - b);
}

// Single-digit product fact; falls back to repeated addition of the larger
// operand when the fact is gone.
void mul_fact(Trace& tr, const FactLibrary& lib, const CostParams& costs, int a, int b) {
    if (auto e = lib.lookup({Operator::mul, a, b})) {
        tr.step(StepKind::retrieve, fact_desc(Operator::mul, a, b), e->rt_ms);
        return;
    }
    const int small = std::min(a, b);
    const int big = std::max(a, b);
    if (small == 0) return; // zero groups, nothing to accumulate
    std::int64_t acc = big;
    for (int k = 2; k <= small; ++k) {
        const int u = units(acc);
        add_fact(tr, lib, costs, u, big);
        if (u + big >= 10) tr.step(StepKind::carry, "carry", costs.carry_ms);
        acc += big;
    }
}

// One addition column: digit+digit fact, a +1 fact when a carry comes in,
// a Carry event when one goes out, plus the column overhead.
void add_column(Trace& tr, const FactLibrary& lib, const CostParams& costs, int x, int y, int& carry) {
    add_fact(tr, lib, costs, x, y);
    const int s = x + y;
    if (carry) add_fact(tr, lib, costs, s % 10, 1);
    const int total = s + carry;
    carry = total / 10;
    if (carry) tr.step(StepKind::carry, "carry", costs.carry_ms);
    tr.step(StepKind::compose, "column", costs.column_overhead_ms);
}

// One subtraction column. An incoming borrow first decrements the top digit
// (a -1 fact, cascading when the digit is 0); a column that cannot subtract
// in place retrieves the inverted fact and takes the ten's complement as
// part of the Borrow event.
void sub_column(Trace& tr, const FactLibrary& lib, const CostParams& costs, int x, int y, int& borrow) {
    int v = x;
    if (borrow) {
        if (x >= 1) {
            sub_fact(tr, lib, costs, x, 1);
            v = x - 1;
            borrow = 0;
        } else {
            v = 9;
            tr.step(StepKind::borrow, "borrow", costs.borrow_ms);
            borrow = 1;
        }
    }
    if (v >= y) {
        sub_fact(tr, lib, costs, v, y);
    } else {
        sub_fact(tr, lib, costs, y, v);
        tr.step(StepKind::borrow, "borrow", costs.borrow_ms);
        borrow = 1;
    }
    tr.step(StepKind::compose, "column", costs.column_overhead_ms);
}

void validate_domain(const Problem& p) {
    if (p.op == Operator::div && p.rhs == 0)
        raise(Errc::division_by_zero, "cannot solve " + render(p));
    if (p.op == Operator::sub && p.lhs < p.rhs)
        raise(Errc::negative_result, render(p) + " has a negative result");
}

// Direct addition steps shared by direct_plan and the fast-addition plan's
// final addition.
void append_direct_add(Trace& tr, const FactLibrary& lib, const CostParams& costs, std::int64_t a,
                       std::int64_t b) {
    if (a == 0 || b == 0) {
        add_fact(tr, lib, costs, units(a + b), 0); // identity rule
        return;
    }
    if (a <= 9 && b <= 9) {
        add_fact(tr, lib, costs, static_cast<int>(a), static_cast<int>(b));
        return;
    }
    tr.append(add_multidigit(a, b, lib, costs));
}

} // namespace

SolutionTrace add_multidigit(std::int64_t a, std::int64_t b, const FactLibrary& lib,
                             const CostParams& costs) {
    Trace tr;
    const auto da = digits_of(a);
    const auto db = digits_of(b);
    const std::size_t width = std::max(da.size(), db.size());
    int carry = 0;
    for (std::size_t k = 0; k < width; ++k) {
        const int x = k < da.size() ? da[k] : 0;
        const int y = k < db.size() ? db[k] : 0;
        add_column(tr, lib, costs, x, y, carry);
    }
    // A final carry just writes the leading 1.
    tr.t.value = a + b;
    return std::move(tr.t);
}

SolutionTrace sub_multidigit(std::int64_t a, std::int64_t b, const FactLibrary& lib,
                             const CostParams& costs) {
    if (a < b) raise(Errc::negative_result, std::to_string(a) + " - " + std::to_string(b));
    Trace tr;
    const auto da = digits_of(a);
    const auto db = digits_of(b);
    int borrow = 0;
    for (std::size_t k = 0; k < da.size(); ++k) {
        const int x = da[k];
        const int y = k < db.size() ? db[k] : 0;
        sub_column(tr, lib, costs, x, y, borrow);
    }
    tr.t.value = a - b;
    return std::move(tr.t);
}

SolutionTrace mul_multidigit(std::int64_t a, std::int64_t b, const FactLibrary& lib,
                             const CostParams& costs) {
    Trace tr;
    if (a == 0 || b == 0) {
        // Zero rule: the answer is known without computing columns.
        mul_fact(tr, lib, costs, 0, units(a + b));
        tr.t.value = 0;
        return std::move(tr.t);
    }
    if (a == 1 || b == 1) {
        const std::int64_t other = (a == 1) ? b : a;
        mul_fact(tr, lib, costs, units(other), 1);
        tr.t.value = other;
        return std::move(tr.t);
    }
    int k = 0;
    if (power_of_ten(b, k) || power_of_ten(a, k)) {
        tr.step(StepKind::shift, "x10^" + std::to_string(k), k * costs.shift_ms);
        tr.t.value = a * b;
        return std::move(tr.t);
    }

    // Schoolbook rows: one row per multiplier digit, fewest rows wins.
    const std::int64_t multiplier = (digits_of(b).size() <= digits_of(a).size()) ? b : a;
    const std::int64_t multiplicand = (multiplier == b) ? a : b;
    const auto md = digits_of(multiplier);
    const auto cd = digits_of(multiplicand);

    std::vector<std::int64_t> partials;
    for (std::size_t j = 0; j < md.size(); ++j) {
        if (md[j] == 0) continue;
        int carry = 0;
        for (std::size_t i = 0; i < cd.size(); ++i) {
            mul_fact(tr, lib, costs, cd[i], md[j]);
            const int p = cd[i] * md[j];
            if (carry) add_fact(tr, lib, costs, p % 10, carry);
            const int total = p + carry;
            carry = total / 10;
            if (carry) tr.step(StepKind::carry, "carry", costs.carry_ms);
            tr.step(StepKind::compose, "column", costs.column_overhead_ms);
        }
        if (j >= 1)
            tr.step(StepKind::shift, "x10^" + std::to_string(j),
                    static_cast<double>(j) * costs.shift_ms);
        partials.push_back(multiplicand * md[j] * pow10(static_cast<int>(j)));
    }

    std::int64_t acc = partials.front();
    for (std::size_t i = 1; i < partials.size(); ++i) {
        tr.append(add_multidigit(acc, partials[i], lib, costs));
        acc += partials[i];
    }
    tr.t.value = a * b;
    return std::move(tr.t);
}

SolutionTrace div_long(std::int64_t a, std::int64_t b, const FactLibrary& lib,
                       const CostParams& costs) {
    if (b == 0) raise(Errc::division_by_zero, std::to_string(a) + " / 0");
    Trace tr;
    if (b == 1) {
        if (auto e = lib.lookup({Operator::div, units(a), 1}))
            tr.step(StepKind::retrieve, fact_desc(Operator::div, units(a), 1), e->rt_ms);
        tr.t.value = a;
        return std::move(tr.t);
    }
    int k = 0;
    if (power_of_ten(b, k)) {
        tr.step(StepKind::shift, "/10^" + std::to_string(k), k * costs.shift_ms);
        tr.t.value = a / b;
        tr.t.remainder = a % b;
        return std::move(tr.t);
    }

    auto digits = digits_of(a); // little-endian; walk from the top
    std::int64_t rem = 0;
    std::int64_t quotient = 0;
    bool started = false;
    for (std::size_t idx = digits.size(); idx-- > 0;) {
        rem = rem * 10 + digits[idx];
        quotient *= 10;
        if (rem >= b) {
            const std::int64_t q = rem / b; // one-shot estimate, q <= 9
            if (b <= 9)
                mul_fact(tr, lib, costs, static_cast<int>(q), static_cast<int>(b));
            else
                tr.append(mul_multidigit(q, b, lib, costs));
            const std::int64_t prod = q * b;
            // An exact table hit is recognized; no subtraction needed.
            if (prod != rem) tr.append(sub_multidigit(rem, prod, lib, costs));
            rem -= prod;
            quotient += q;
            started = true;
            tr.step(StepKind::compose, "quotient digit", costs.column_overhead_ms);
        } else if (started) {
            tr.step(StepKind::compose, "quotient digit 0", costs.column_overhead_ms);
        }
    }
    tr.t.value = quotient;
    tr.t.remainder = rem;
    return std::move(tr.t);
}

SolutionTrace count_min(std::int64_t a, std::int64_t b, const CostParams& costs) {
    Trace tr;
    count_steps(tr, costs, std::max(a, b), std::min(a, b));
    tr.t.value = a + b;
    return std::move(tr.t);
}

SolutionTrace direct_plan(const Problem& p, const FactLibrary& lib, const CostParams& costs) {
    validate_domain(p);
    Trace tr;
    const std::int64_t a = p.lhs;
    const std::int64_t b = p.rhs;
    const bool single = a <= 9 && b <= 9;

    switch (p.op) {
        case Operator::add:
            append_direct_add(tr, lib, costs, a, b);
            break;

        case Operator::sub:
            if (b == 0) {
                sub_fact(tr, lib, costs, units(a), 0); // identity rule
            } else if (single) {
                sub_fact(tr, lib, costs, static_cast<int>(a), static_cast<int>(b));
            } else {
                tr.append(sub_multidigit(a, b, lib, costs));
            }
            tr.t.value = a - b;
            return std::move(tr.t);

        case Operator::mul:
            if (single && a != 0 && b != 0) {
                mul_fact(tr, lib, costs, static_cast<int>(a), static_cast<int>(b));
                tr.t.value = a * b;
            } else {
                tr.append(mul_multidigit(a, b, lib, costs));
                tr.t.value = a * b;
            }
            return std::move(tr.t);

        case Operator::div:
            if (single && a % b == 0) {
                if (auto e = lib.lookup({Operator::div, static_cast<int>(a), static_cast<int>(b)})) {
                    tr.step(StepKind::retrieve,
                            fact_desc(Operator::div, static_cast<int>(a), static_cast<int>(b)),
                            e->rt_ms);
                    tr.t.value = a / b;
                    return std::move(tr.t);
                }
            }
            {
                SolutionTrace d = div_long(a, b, lib, costs);
                tr.append(d);
                tr.t.value = d.value;
                tr.t.remainder = d.remainder;
            }
            return std::move(tr.t);
    }
    tr.t.value = a + b;
    return std::move(tr.t);
}

namespace {

struct RoundNumber {
    std::int64_t value = 0;
    std::int64_t distance = 0;
};

// Nearest k*10^m (k in 1..9, m >= 1) at nonzero distance; ties prefer the
// larger round number.
std::optional<RoundNumber> nearest_round(std::int64_t v) {
    std::optional<RoundNumber> best;
    for (int m = 1; m <= 12; ++m) {
        const std::int64_t scale = pow10(m);
        const std::int64_t lower_k = v / scale;
        for (std::int64_t kk : {lower_k, lower_k + 1}) {
            if (kk < 1 || kk > 9) continue;
            const std::int64_t r = kk * scale;
            const std::int64_t d = std::llabs(r - v);
            if (d == 0) continue;
            if (!best || d < best->distance || (d == best->distance && r > best->value))
                best = RoundNumber{r, d};
        }
    }
    return best;
}

} // namespace

std::optional<FastAdditionRewrite> fast_addition_transform(const Problem& p, std::int64_t threshold,
                                                           int target) {
    if (p.op != Operator::add) return std::nullopt;
    const std::int64_t v = (target == 0) ? p.lhs : p.rhs;
    const std::int64_t other = (target == 0) ? p.rhs : p.lhs;
    const auto round = nearest_round(v);
    if (!round || round->distance > threshold) return std::nullopt;
    FastAdditionRewrite rw;
    rw.rounded = round->value;
    rw.distance = round->distance;
    rw.target = target;
    if (round->value > v) {
        if (other < round->distance) return std::nullopt; // cannot absorb
        rw.compensated = other - round->distance;
    } else {
        rw.compensated = other + round->distance;
    }
    return rw;
}

std::optional<FastAdditionRewrite> fast_addition_transform(const Problem& p, std::int64_t threshold) {
    const auto lhs = fast_addition_transform(p, threshold, 0);
    const auto rhs = fast_addition_transform(p, threshold, 1);
    if (!lhs) return rhs;
    if (!rhs) return lhs;
    if (rhs->rounded > lhs->rounded) return rhs;
    if (lhs->rounded == rhs->rounded && rhs->distance < lhs->distance) return rhs;
    return lhs;
}

std::optional<Problem> divide_by_5_transform(const Problem& p) {
    if (p.op != Operator::div || p.rhs != 5 || p.lhs % 5 != 0) return std::nullopt;
    return Problem{p.lhs * 2, Operator::div, 10};
}

namespace {

// Applies +/-d to `base` by working only the columns d spans, plus whatever
// carry or borrow propagates past them.
void apply_delta(Trace& tr, const FactLibrary& lib, const CostParams& costs, std::int64_t base,
                 std::int64_t d, bool subtract) {
    const auto bd = digits_of(base);
    const auto dd = digits_of(d);
    if (subtract) {
        int borrow = 0;
        for (std::size_t k = 0; k < bd.size() && (k < dd.size() || borrow); ++k) {
            const int y = k < dd.size() ? dd[k] : 0;
            sub_column(tr, lib, costs, bd[k], y, borrow);
        }
    } else {
        int carry = 0;
        const std::size_t width = std::max(bd.size(), dd.size());
        for (std::size_t k = 0; k < width && (k < dd.size() || carry); ++k) {
            const int x = k < bd.size() ? bd[k] : 0;
            const int y = k < dd.size() ? dd[k] : 0;
            add_column(tr, lib, costs, x, y, carry);
        }
    }
}

} // namespace

std::optional<SolutionTrace> fast_addition_plan(const Problem& p, const FactLibrary& lib,
                                                const CostParams& costs, std::int64_t threshold,
                                                int target) {
    const auto rw = fast_addition_transform(p, threshold, target);
    if (!rw) return std::nullopt;
    const std::int64_t other = (target == 0) ? p.rhs : p.lhs;
    const std::int64_t v = (target == 0) ? p.lhs : p.rhs;

    Trace tr;
    tr.step(StepKind::transform,
            render(p) + " -> " + std::to_string(target == 0 ? rw->rounded : rw->compensated) + " + " +
                std::to_string(target == 0 ? rw->compensated : rw->rounded),
            costs.transform_ms);
    apply_delta(tr, lib, costs, other, rw->distance, /*subtract=*/rw->rounded > v);
    if (target == 0)
        append_direct_add(tr, lib, costs, rw->rounded, rw->compensated);
    else
        append_direct_add(tr, lib, costs, rw->compensated, rw->rounded);
    tr.t.value = p.lhs + p.rhs;
    tr.t.plan = PlanKind::fast_addition;
    return std::move(tr.t);
}

std::optional<SolutionTrace> divide_by_5_plan(const Problem& p, const FactLibrary& lib,
                                              const CostParams& costs) {
    const auto sub = divide_by_5_transform(p);
    if (!sub) return std::nullopt;
    Trace tr;
    tr.step(StepKind::transform, render(p) + " -> " + render(*sub), costs.transform_ms);
    tr.append(mul_multidigit(p.lhs, 2, lib, costs)); // double the dividend
    tr.step(StepKind::shift, "/10", costs.shift_ms);
    tr.t.value = p.lhs / 5;
    tr.t.remainder = 0;
    tr.t.plan = PlanKind::divide_by_five;
    return std::move(tr.t);
}

SolutionTrace solve(const Problem& p, const FactLibrary& lib, const StrategyPolicy& policy,
                    const CostParams& costs) {
    costs.validate();
    if (policy.fast_addition_threshold < 1)
        raise(Errc::bad_range, "fast_addition_threshold must be >= 1");

    SolutionTrace best = direct_plan(p, lib, costs);
    auto consider = [&best](std::optional<SolutionTrace> plan) {
        if (plan && plan->total_rt_ms < best.total_rt_ms) best = std::move(*plan);
    };
    if (p.op == Operator::add && policy.fast_addition) {
        consider(fast_addition_plan(p, lib, costs, policy.fast_addition_threshold, 0));
        consider(fast_addition_plan(p, lib, costs, policy.fast_addition_threshold, 1));
    }
    if (p.op == Operator::div && policy.divide_by_5) {
        consider(divide_by_5_plan(p, lib, costs));
    }
    return best;
}

std::string trace_to_text(const SolutionTrace& trace) {
    std::string out = "plan: ";
    out += plan_kind_name(trace.plan);
    out += '\n';
    std::size_t i = 0;
    for (const Step& s : trace.steps) {
        char head[48];
        std::snprintf(head, sizeof(head), "%3zu  %-9s %9.3f ms  ", i++, step_kind_name(s.kind).data(),
                      s.rt_ms);
        out += head;
        out += s.description;
        out += '\n';
    }
    out += "total: " + detail::fixed6(trace.total_rt_ms) + " ms\n";
    return out;
}

std::string trace_to_csv(const SolutionTrace& trace) {
    std::string out = "step_index,kind,description,rt_ms\n";
    std::size_t i = 0;
    for (const Step& s : trace.steps) {
        out += std::to_string(i++);
        out += ',';
        out += step_kind_name(s.kind);
        out += ',';
        out += s.description;
        out += ',';
        out += detail::fixed6(s.rt_ms);
        out += '\n';
    }
    return out;
}

} // namespace cogarith
