#include "eps/algo_registry.hpp"

#include <stdexcept>
#include <string>

namespace eps {

AlgoId::AlgoId(AlgoKind kind, unsigned code) : kind_(kind), code_(static_cast<std::uint8_t>(code))
{
    if (code >= 16) throw std::invalid_argument("algorithm identifier must fit in 4 bits, got " + std::to_string(code));
}

AlgoCapability resolve(AlgoId id)
{
    const bool conf = id.kind() == AlgoKind::confidentiality;
    switch (id.code()) {
    case 0b0000:
        return {id, AlgoStatus::implemented, conf ? "EEA0" : "EIA0"};
    case 0b0001:
        return {id, AlgoStatus::unsupported_external, conf ? "128-EEA1" : "128-EIA1"};
    case 0b0010:
        return {id, AlgoStatus::implemented, conf ? "128-EEA2" : "128-EIA2"};
    default:
        return {id, AlgoStatus::reserved, conf ? "EEA-reserved" : "EIA-reserved"};
    }
}

std::string_view to_string(AlgoStatus s)
{
    switch (s) {
    case AlgoStatus::implemented: return "implemented";
    case AlgoStatus::reserved: return "reserved";
    case AlgoStatus::unsupported_external: return "unsupported-external";
    }
    return "?";
}

std::string_view to_string(AlgoKind k) { return k == AlgoKind::confidentiality ? "confidentiality" : "integrity"; }

} // namespace eps
