#pragma once

#include <compare>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "cogarith/activation.hpp"
#include "cogarith/problem.hpp"

namespace cogarith {

struct FactKey {
    Operator op = Operator::add;
    int a = 0;
    int b = 0;

    auto operator<=>(const FactKey&) const = default;
};

struct FactEntry {
    FactKey key{};
    std::int64_t result = 0;
    double rt_ms = 0.0;

    bool operator==(const FactEntry&) const = default;
};

struct AblationMask {
    std::set<FactKey> removed;

    /// Addition keys with both operands in 5..9 (25 keys), the facts novices
    /// commonly lack.
    static AblationMask novice_default();
};

/// Millisecond-scale retrieval-time matrices per learned table. Division
/// facts reuse the multiplication matrix at (quotient, divisor).
struct RtTables {
    RTMatrix add;
    RTMatrix sub;
    RTMatrix mul;
};

/// Immutable store of single-digit facts. Ablation marks keys as removed
/// without discarding their entries, so persistence round-trips losslessly
/// while lookups and key counts see only the surviving set.
class FactLibrary {
public:
    FactLibrary() = default;

    /// One entry per in-range digit pair: Add and Mul over all 100 pairs,
    /// Sub restricted to a >= b, Div to exact quotients with b >= 1.
    static FactLibrary build_default(const RtTables& tables);

    /// Entry for key, or nullopt when the key is unknown or ablated.
    std::optional<FactEntry> lookup(const FactKey& key) const;

    /// New library whose key set excludes the mask. Throws Error(unknown_key)
    /// if a mask key is not in the current key set.
    FactLibrary ablate(const AblationMask& mask) const;

    /// Surviving keys for one operator / overall.
    std::size_t key_count(Operator op) const;
    std::size_t key_count() const;

    /// Surviving entries, ordered by key.
    std::vector<FactEntry> entries() const;

    const std::set<FactKey>& removed() const { return removed_; }

    bool operator==(const FactLibrary&) const = default;

private:
    std::map<FactKey, FactEntry> all_entries_;
    std::set<FactKey> removed_;

    friend void save_csv(const FactLibrary&, const std::filesystem::path&);
    friend FactLibrary load_csv(const std::filesystem::path&);
};

/// Writes rows `op,a,b,result,rt_ms` (lowercase operator names, 6-decimal
/// rt). A non-empty ablation mask goes to a `<path>.mask` sidecar.
void save_csv(const FactLibrary& library, const std::filesystem::path& path);

/// Inverse of save_csv; picks up `<path>.mask` when present. Throws
/// Error(io_failure | malformed_row | inconsistent_result).
FactLibrary load_csv(const std::filesystem::path& path);

/// Mask CSV, rows `op,a,b`.
void save_mask_csv(const AblationMask& mask, const std::filesystem::path& path);
AblationMask load_mask_csv(const std::filesystem::path& path);

} // namespace cogarith
