#include "cogarith/fact_library.hpp"

#include <cerrno>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "cogarith/error.hpp"
#include "text_util.hpp"

namespace cogarith {

namespace {

std::int64_t native_result(const FactKey& key) {
    switch (key.op) {
        case Operator::add: return key.a + key.b;
        case Operator::sub: return key.a - key.b;
        case Operator::mul: return static_cast<std::int64_t>(key.a) * key.b;
        case Operator::div: return key.a / key.b;
    }
    return 0;
}

bool key_in_domain(const FactKey& key) {
    if (key.a < 0 || key.a > 9 || key.b < 0 || key.b > 9) return false;
    switch (key.op) {
        case Operator::add:
        case Operator::mul: return true;
        case Operator::sub: return key.a >= key.b;
        case Operator::div: return key.b >= 1 && key.a % key.b == 0;
    }
    return false;
}

void require_ms(const RTMatrix& m, const char* name) {
    if (m.scale != RtScale::milliseconds)
        throw std::logic_error(std::string("build_default: ") + name + " matrix is not millisecond-scale");
}

} // namespace

AblationMask AblationMask::novice_default() {
    AblationMask mask;
    for (int a = 5; a <= 9; ++a)
        for (int b = 5; b <= 9; ++b) mask.removed.insert({Operator::add, a, b});
    return mask;
}

FactLibrary FactLibrary::build_default(const RtTables& tables) {
    require_ms(tables.add, "add");
    require_ms(tables.sub, "sub");
    require_ms(tables.mul, "mul");

    FactLibrary lib;
    for (int a = 0; a <= 9; ++a) {
        for (int b = 0; b <= 9; ++b) {
            lib.all_entries_.emplace(FactKey{Operator::add, a, b},
                                     FactEntry{{Operator::add, a, b}, a + b, tables.add.cells[a][b]});
            lib.all_entries_.emplace(FactKey{Operator::mul, a, b},
                                     FactEntry{{Operator::mul, a, b}, static_cast<std::int64_t>(a) * b,
                                               tables.mul.cells[a][b]});
            if (a >= b)
                lib.all_entries_.emplace(FactKey{Operator::sub, a, b},
                                         FactEntry{{Operator::sub, a, b}, a - b, tables.sub.cells[a][b]});
            if (b >= 1 && a % b == 0) {
                // Division facts ride on the inverse multiplication pair.
                const int q = a / b;
                lib.all_entries_.emplace(FactKey{Operator::div, a, b},
                                         FactEntry{{Operator::div, a, b}, q, tables.mul.cells[q][b]});
            }
        }
    }
    return lib;
}

std::optional<FactEntry> FactLibrary::lookup(const FactKey& key) const {
    if (removed_.contains(key)) return std::nullopt;
    auto it = all_entries_.find(key);
    if (it == all_entries_.end()) return std::nullopt;
    return it->second;
}

FactLibrary FactLibrary::ablate(const AblationMask& mask) const {
    for (const FactKey& key : mask.removed) {
        if (!all_entries_.contains(key) || removed_.contains(key))
            raise(Errc::unknown_key, "ablation mask references absent key " +
                                         std::string(operator_name(key.op)) + "," +
                                         std::to_string(key.a) + "," + std::to_string(key.b));
    }
    FactLibrary out = *this;
    out.removed_.insert(mask.removed.begin(), mask.removed.end());
    return out;
}

std::size_t FactLibrary::key_count(Operator op) const {
    std::size_t n = 0;
    for (const auto& [key, entry] : all_entries_)
        if (key.op == op && !removed_.contains(key)) ++n;
    return n;
}

std::size_t FactLibrary::key_count() const { return all_entries_.size() - removed_.size(); }

std::vector<FactEntry> FactLibrary::entries() const {
    std::vector<FactEntry> out;
    out.reserve(key_count());
    for (const auto& [key, entry] : all_entries_)
        if (!removed_.contains(key)) out.push_back(entry);
    return out;
}

namespace {

constexpr const char* kFactHeader = "op,a,b,result,rt_ms";
constexpr const char* kMaskHeader = "op,a,b";

std::filesystem::path mask_sidecar(const std::filesystem::path& path) {
    std::filesystem::path p = path;
    p += ".mask";
    return p;
}

std::vector<std::string> split_row(const std::string& line) {
    std::vector<std::string> fields;
    std::size_t start = 0;
    while (true) {
        std::size_t comma = line.find(',', start);
        if (comma == std::string::npos) {
            fields.push_back(line.substr(start));
            break;
        }
        fields.push_back(line.substr(start, comma - start));
        start = comma + 1;
    }
    return fields;
}

[[noreturn]] void bad_row(const std::filesystem::path& path, int row, int column, const std::string& what) {
    raise(Errc::malformed_row, path.string() + " row " + std::to_string(row) + " column " +
                                   std::to_string(column) + ": " + what);
}

int parse_digit(const std::string& field, const std::filesystem::path& path, int row, int column) {
    int value = 0;
    auto [p, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
    if (ec != std::errc{} || p != field.data() + field.size() || value < 0 || value > 9)
        bad_row(path, row, column, "expected digit 0..9, got \"" + field + "\"");
    return value;
}

std::int64_t parse_int(const std::string& field, const std::filesystem::path& path, int row, int column) {
    std::int64_t value = 0;
    auto [p, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
    if (ec != std::errc{} || p != field.data() + field.size())
        bad_row(path, row, column, "expected integer, got \"" + field + "\"");
    return value;
}

double parse_real(const std::string& field, const std::filesystem::path& path, int row, int column) {
    errno = 0;
    char* end = nullptr;
    const double value = std::strtod(field.c_str(), &end);
    if (end != field.c_str() + field.size() || field.empty() || errno == ERANGE)
        bad_row(path, row, column, "expected real, got \"" + field + "\"");
    return value;
}

Operator parse_op(const std::string& field, const std::filesystem::path& path, int row) {
    try {
        return operator_from_name(field);
    } catch (const Error&) {
        bad_row(path, row, 1, "unknown operator \"" + field + "\"");
    }
}

std::vector<std::string> read_lines(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) raise(Errc::io_failure, "cannot open " + path.string());
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        lines.push_back(line);
    }
    return lines;
}

FactKey parse_key_fields(const std::vector<std::string>& fields, const std::filesystem::path& path, int row) {
    FactKey key;
    key.op = parse_op(fields[0], path, row);
    key.a = parse_digit(fields[1], path, row, 2);
    key.b = parse_digit(fields[2], path, row, 3);
    return key;
}

} // namespace

void save_csv(const FactLibrary& library, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) raise(Errc::io_failure, "cannot write " + path.string());
    out << kFactHeader << '\n';
    for (const auto& [key, entry] : library.all_entries_) {
        out << operator_name(key.op) << ',' << key.a << ',' << key.b << ',' << entry.result << ','
            << detail::fixed6(entry.rt_ms) << '\n';
    }
    if (!out) raise(Errc::io_failure, "short write to " + path.string());
    if (!library.removed_.empty()) {
        AblationMask mask;
        mask.removed = library.removed_;
        save_mask_csv(mask, mask_sidecar(path));
    } else {
        std::error_code ec;
        std::filesystem::remove(mask_sidecar(path), ec); // stale sidecar would resurrect a mask
    }
}

FactLibrary load_csv(const std::filesystem::path& path) {
    const auto lines = read_lines(path);
    if (lines.empty() || lines[0] != kFactHeader)
        raise(Errc::malformed_row, path.string() + " row 1: expected header \"" + kFactHeader + "\"");

    FactLibrary lib;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        if (lines[i].empty()) continue;
        const int row = static_cast<int>(i + 1);
        const auto fields = split_row(lines[i]);
        if (fields.size() != 5) bad_row(path, row, static_cast<int>(fields.size()), "expected 5 fields");
        FactEntry entry;
        entry.key = parse_key_fields(fields, path, row);
        if (!key_in_domain(entry.key)) bad_row(path, row, 1, "key outside the fact domain");
        entry.result = parse_int(fields[3], path, row, 4);
        entry.rt_ms = parse_real(fields[4], path, row, 5);
        if (entry.rt_ms <= 0.0) bad_row(path, row, 5, "rt_ms must be positive");
        if (entry.result != native_result(entry.key))
            raise(Errc::inconsistent_result,
                  path.string() + " row " + std::to_string(row) + ": stored result " +
                      std::to_string(entry.result) + " != recomputed " +
                      std::to_string(native_result(entry.key)));
        if (!lib.all_entries_.emplace(entry.key, entry).second)
            bad_row(path, row, 1, "duplicate key");
    }

    const auto sidecar = mask_sidecar(path);
    if (std::filesystem::exists(sidecar)) {
        const AblationMask mask = load_mask_csv(sidecar);
        for (const FactKey& key : mask.removed)
            if (!lib.all_entries_.contains(key))
                raise(Errc::unknown_key, sidecar.string() + ": mask key not present in library");
        lib.removed_ = mask.removed;
    }
    return lib;
}

void save_mask_csv(const AblationMask& mask, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) raise(Errc::io_failure, "cannot write " + path.string());
    out << kMaskHeader << '\n';
    for (const FactKey& key : mask.removed)
        out << operator_name(key.op) << ',' << key.a << ',' << key.b << '\n';
    if (!out) raise(Errc::io_failure, "short write to " + path.string());
}

AblationMask load_mask_csv(const std::filesystem::path& path) {
    const auto lines = read_lines(path);
    if (lines.empty() || lines[0] != kMaskHeader)
        raise(Errc::malformed_row, path.string() + " row 1: expected header \"" + kMaskHeader + "\"");
    AblationMask mask;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        if (lines[i].empty()) continue;
        const int row = static_cast<int>(i + 1);
        const auto fields = split_row(lines[i]);
        if (fields.size() != 3) bad_row(path, row, static_cast<int>(fields.size()), "expected 3 fields");
        mask.removed.insert(parse_key_fields(fields, path, row));
    }
    return mask;
}

} // namespace cogarith
