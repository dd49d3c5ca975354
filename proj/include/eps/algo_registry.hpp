#pragma once

#include <array>
#include <cstdint>
#include <string_view>

namespace eps {

enum class AlgoKind : std::uint8_t { confidentiality, integrity };

/// A 4-bit EEA or EIA algorithm identifier.
class AlgoId {
public:
    /// Throws std::invalid_argument for codes >= 16.
    AlgoId(AlgoKind kind, unsigned code);

    AlgoKind kind() const { return kind_; }
    std::uint8_t code() const { return code_; }
    friend bool operator==(AlgoId, AlgoId) = default;

private:
    AlgoKind kind_;
    std::uint8_t code_;
};

enum class AlgoStatus : std::uint8_t {
    implemented,
    reserved,
    /// Standardized (SNOW 3G based) but not provided by this library.
    unsupported_external,
};

struct AlgoCapability {
    AlgoId id;
    AlgoStatus status;
    std::string_view name;
};

AlgoCapability resolve(AlgoId id);

std::string_view to_string(AlgoStatus s);
std::string_view to_string(AlgoKind k);

namespace algo {
inline const AlgoId eea0{AlgoKind::confidentiality, 0b0000};
inline const AlgoId eea1{AlgoKind::confidentiality, 0b0001};
inline const AlgoId eea2{AlgoKind::confidentiality, 0b0010};
inline const AlgoId eia0{AlgoKind::integrity, 0b0000};
inline const AlgoId eia1{AlgoKind::integrity, 0b0001};
inline const AlgoId eia2{AlgoKind::integrity, 0b0010};
} // namespace algo

} // namespace eps
