#include "eps/algo_registry.hpp"

#include <gtest/gtest.h>

namespace {

using eps::AlgoId;
using eps::AlgoKind;
using eps::AlgoStatus;

TEST(AlgoRegistry, KnownCodes)
{
    EXPECT_EQ(eps::resolve(eps::algo::eea0).name, "EEA0");
    EXPECT_EQ(eps::resolve(eps::algo::eea2).name, "128-EEA2");
    EXPECT_EQ(eps::resolve(eps::algo::eia2).name, "128-EIA2");
    EXPECT_EQ(eps::resolve(eps::algo::eea1).status, AlgoStatus::unsupported_external);
    EXPECT_EQ(eps::resolve(eps::algo::eia1).status, AlgoStatus::unsupported_external);
    EXPECT_EQ(eps::resolve(AlgoId(AlgoKind::integrity, 7)).status, AlgoStatus::reserved);
    EXPECT_EQ(eps::resolve(AlgoId(AlgoKind::confidentiality, 15)).name, "EEA-reserved");
}

TEST(AlgoRegistry, TotalOverEveryCode)
{
    int implemented = 0;
    for (auto kind : {AlgoKind::confidentiality, AlgoKind::integrity}) {
        for (unsigned code = 0; code < 16; ++code) {
            const auto cap = eps::resolve(AlgoId(kind, code));
            EXPECT_EQ(cap.id, AlgoId(kind, code));
            EXPECT_FALSE(cap.name.empty());
            if (cap.status == AlgoStatus::implemented) ++implemented;
            if (code >= 3) EXPECT_EQ(cap.status, AlgoStatus::reserved);
        }
    }
    EXPECT_EQ(implemented, 4);
}

TEST(AlgoRegistry, RejectsFiveBitCodes)
{
    EXPECT_THROW(AlgoId(AlgoKind::integrity, 16), std::invalid_argument);
}

TEST(AlgoRegistry, StatusNames)
{
    EXPECT_EQ(eps::to_string(AlgoStatus::unsupported_external), "unsupported-external");
    EXPECT_EQ(eps::to_string(AlgoStatus::implemented), "implemented");
    EXPECT_EQ(eps::to_string(AlgoStatus::reserved), "reserved");
}

} // namespace
