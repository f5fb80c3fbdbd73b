// Copyright 2026 The flagqec Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "flagqec/code.hpp"
#include "flagqec/pauli.hpp"

#include <gtest/gtest.h>

namespace flagqec {
namespace {

TEST(PauliString, ParseAndPrint) {
  EXPECT_EQ(PauliString::parse("XXYIY").str(), "+XXYIY");
  EXPECT_EQ(PauliString::parse("-iZ").str(), "-iZ");
  EXPECT_EQ(PauliString::parse("+iXY").phase(), 1u);
  EXPECT_EQ(PauliString::parse("-ZZ").phase(), 2u);
  EXPECT_THROW(PauliString::parse("XQ"), std::invalid_argument);
}

TEST(PauliString, SingleQubitProducts) {
  auto x = PauliString::parse("X"), y = PauliString::parse("Y"), z = PauliString::parse("Z");
  EXPECT_EQ((x * y).str(), "+iZ");
  EXPECT_EQ((y * x).str(), "-iZ");
  EXPECT_EQ((y * z).str(), "+iX");
  EXPECT_EQ((z * x).str(), "+iY");
  EXPECT_EQ((x * x).str(), "+I");
}

TEST(PauliString, CommutationAndWeight) {
  auto a = PauliString::parse("XXYIY");
  EXPECT_TRUE(a.commutes(PauliString::parse("YXXYI")));
  EXPECT_FALSE(PauliString::parse("XI").commutes(PauliString::parse("ZI")));
  EXPECT_TRUE(PauliString::parse("XX").commutes(PauliString::parse("ZZ")));
  EXPECT_EQ(a.weight(), 4u);
  EXPECT_EQ(PauliString(5).weight(), 0u);
}

TEST(PauliString, DimensionMismatchThrows) {
  EXPECT_THROW(PauliString::parse("XX") * PauliString::parse("XXX"), DimensionError);
}

TEST(PauliString, ExtendTruncate) {
  auto p = PauliString::parse("-XYZ");
  EXPECT_EQ(p.extended(5).str(), "-XYZII");
  EXPECT_EQ(p.extended(5).truncated(3), p);
}

TEST(PauliString, PermutedMovesQubitJToPermJ) {
  auto p = PauliString::parse("XYZII");
  std::array<int, 5> perm{2, 0, 1, 4, 3};
  EXPECT_EQ(permuted(p, perm).letters(), "YZXII");
}

TEST(PauliString, ProductsAreAssociativeWithExactPhase) {
  const char* ops[] = {"XYZIX", "ZZYXI", "IYXYZ", "YIIXZ"};
  for (const char* a : ops) {
    for (const char* b : ops) {
      for (const char* c : ops) {
        auto pa = PauliString::parse(a), pb = PauliString::parse(b), pc = PauliString::parse(c);
        EXPECT_EQ((pa * pb) * pc, pa * (pb * pc));
      }
    }
  }
}

TEST(FiveQubitCode, StabilizersCommuteAndLogicalsAnticommute) {
  const auto& s = FiveQubitCode::stabilizers();
  for (const auto& a : s) {
    for (const auto& b : s) EXPECT_TRUE(a.commutes(b));
    EXPECT_TRUE(a.commutes(FiveQubitCode::x_logical()));
    EXPECT_TRUE(a.commutes(FiveQubitCode::z_logical()));
  }
  EXPECT_FALSE(FiveQubitCode::x_logical().commutes(FiveQubitCode::z_logical()));
  EXPECT_EQ(FiveQubitCode::y_logical().str(), "+YYYYY");
}

TEST(FiveQubitCode, ProductOfPOperatorsIsMinusXL) {
  PauliString acc(5);
  for (const auto& p : FiveQubitCode::p_ops()) acc *= p;
  EXPECT_EQ(acc.str(), "-XXXXX");
}

TEST(FiveQubitCode, POperatorsAreXLTimesStabilizers) {
  for (const auto& p : FiveQubitCode::p_ops()) {
    ClassResult c = logical_class(p);
    EXPECT_EQ(c.cls, LogicalClass::kX);
    EXPECT_TRUE(c.rep.is_identity());
  }
}

TEST(FiveQubitCode, VerificationChecksAreProductsOfP) {
  const auto& p = FiveQubitCode::p_ops();
  EXPECT_EQ((p[1] * p[3] * p[4]).str(), "+IXIYY");
  EXPECT_EQ((p[0] * p[2] * p[4]).str(), "+XIYYI");
}

TEST(FiveQubitCode, GroupHasSixteenDistinctElements) {
  const auto& g = FiveQubitCode::group();
  ASSERT_EQ(g.size(), 16u);
  for (std::size_t i = 0; i < g.size(); ++i) {
    for (std::size_t j = i + 1; j < g.size(); ++j) EXPECT_FALSE(g[i].equal_up_to_phase(g[j]));
  }
}

TEST(FiveQubitCode, SyndromesOfSingleQubitErrorsAreDistinct) {
  std::set<unsigned> seen;
  for (const auto& e : single_qubit_errors()) seen.insert(syndrome_index(syndrome_of(e)));
  EXPECT_EQ(seen.size(), 16u);
}

TEST(FiveQubitCode, LogicalClassOnAll1024Paulis) {
  std::array<int, 4> counts{};
  for (unsigned code = 0; code < 1024; ++code) {
    PauliString p(5);
    for (std::size_t q = 0; q < 5; ++q) p.set(q, static_cast<Pauli>((code >> (2 * q)) & 3u));
    ClassResult c = logical_class(p);
    ++counts[static_cast<int>(c.cls)];
    EXPECT_LE(c.rep.weight(), 1u);
    EXPECT_EQ(syndrome_of(c.rep), syndrome_of(p));
  }
  for (int n : counts) EXPECT_EQ(n, 256);
}

}  // namespace
}  // namespace flagqec
