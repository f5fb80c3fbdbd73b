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

#include "flagqec/code_tables.hpp"

#include <gtest/gtest.h>

namespace flagqec {
namespace {

std::string report(const CheckReport& r) {
  std::string s;
  for (const auto& c : r.failures()) s += c.name + ": " + c.detail + "\n";
  return s;
}

TEST(CodeTables, GeneratedTablesMatchReference) {
  CheckReport r = verify_tables();
  EXPECT_TRUE(r.ok()) << report(r);
  EXPECT_GE(r.checks.size(), 10u);
}

TEST(CodeTables, RecoveryExample) {
  // Syndrome [+1,-1,-1,-1] without a flag is corrected by Z_4.
  EXPECT_EQ(compact_name(decode({+1, -1, -1, -1}, false)), "Z4");
  EXPECT_EQ(compact_name(decode({+1, -1, -1, -1}, true)), "Y3Y5");
}

TEST(CodeTables, FlagTableReductions) {
  EXPECT_EQ(reduce_by(PauliString::parse("IXYIY"), FiveQubitCode::stabilizers()[0]).letters(), "XIIII");
  EXPECT_EQ(reduce_by(PauliString::parse("IIYIY"), FiveQubitCode::stabilizers()[0]).letters(), "IIYIY");
  EXPECT_EQ(reduce_by(PauliString::parse("IZYIY"), FiveQubitCode::stabilizers()[0]).letters(), "XYIII");
}

TEST(CodeTables, EveryTableEntryIsItsOwnDecoding) {
  const auto& t = DecodeTables::standard();
  for (const auto& [idx, e] : t.no_flag) EXPECT_EQ(t.decode(syndrome_of(e), false), e);
  for (int k = 1; k <= 4; ++k) {
    for (const auto& [idx, e] : t.with_flag[static_cast<std::size_t>(k - 1)]) {
      EXPECT_EQ(t.decode(syndrome_of(e), true, k), e);
      EXPECT_LE(e.weight(), 2u);
    }
  }
}

TEST(CodeTables, NoFlagTableIsWeightAtMostOne) {
  for (const auto& [idx, e] : DecodeTables::standard().no_flag) EXPECT_LE(e.weight(), 1u);
}

TEST(CodeTables, FrameCorrectionFixesMeasuredPattern) {
  const auto& p = FiveQubitCode::p_ops();
  for (int m3 : {+1, -1}) {
    for (int m4 : {+1, -1}) {
      for (int m5 : {+1, -1}) {
        const PauliString& c = frame_correction(m3, m4, m5);
        EXPECT_EQ(c.commutes(p[2]), m3 > 0);
        EXPECT_EQ(c.commutes(p[3]), m4 > 0);
        EXPECT_EQ(c.commutes(p[4]), m5 > 0);
        EXPECT_TRUE(c.commutes(p[0]) && c.commutes(p[1]));
      }
    }
  }
  EXPECT_EQ(compact_name(frame_correction(-1, -1, +1)), "Z1Z2");
  EXPECT_EQ(compact_name(frame_correction(+1, +1, +1)), "I");
}

TEST(CodeTables, IncarnationsAreLogicalOperators) {
  for (LogicalClass c : {LogicalClass::kX, LogicalClass::kY, LogicalClass::kZ}) {
    auto w3 = incarnations(c, 3);
    EXPECT_EQ(w3.size(), 10u);
    for (const auto& e : w3) {
      ClassResult r = logical_class(e);
      EXPECT_EQ(r.cls, c);
      EXPECT_TRUE(r.rep.is_identity());
      EXPECT_EQ(e.weight(), 3u);
    }
  }
}

TEST(CodeTables, CyclicShift) {
  EXPECT_EQ(cyclic_shift(PauliString::parse("XXYIY"), 1).letters(), "YXXYI");
  EXPECT_EQ(cyclic_shift(PauliString::parse("XXYIY"), 5).letters(), "XXYIY");
}

TEST(CodeTables, MissingSyndromeThrows) {
  DecodeTables t = DecodeTables::standard();
  t.no_flag.erase(0);
  EXPECT_THROW(t.decode({+1, +1, +1, +1}, false), std::out_of_range);
  EXPECT_FALSE(check_table_invariants(t).ok());
}

TEST(CodeTables, CorruptedTableFailsVerification) {
  DecodeTables t = DecodeTables::standard();
  t.with_flag[0].begin()->second = PauliString::parse("ZZZZZ");
  EXPECT_FALSE(verify_tables(t).ok());
}

TEST(CodeTables, CompactNames) {
  EXPECT_EQ(compact_name(PauliString::parse("XZIII")), "X1Z2");
  EXPECT_EQ(compact_name(PauliString::parse("-IIIIY")), "Y5");
}

}  // namespace
}  // namespace flagqec
