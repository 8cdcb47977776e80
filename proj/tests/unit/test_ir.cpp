// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include "rtune/ir/parser.hpp"

using namespace rtune;

TEST(Parser, MinimalProgram) {
  Program p = parse_program("fn main { block e { x = havoc(0,3); assert div: x != 0 #1; return; } }");
  ASSERT_EQ(p.functions.size(), 1u);
  EXPECT_EQ(p.functions[0].blocks.size(), 1u);
  EXPECT_EQ(p.count_assertions(), 1u);
}

TEST(Parser, DanglingTarget) {
  try {
    parse_program("fn main { block e { x = havoc(0,3); goto b_missing; } }");
    FAIL();
  } catch (const ProgramError& e) {
    EXPECT_NE(std::string(e.what()).find("dangling branch target"), std::string::npos);
  }
}

TEST(Parser, DuplicateId) {
  try {
    parse_program("fn main { block e { x = havoc(0,3); assert div: x != 0 #1; assert div: x != 1 #1; return; } }");
    FAIL();
  } catch (const ProgramError& e) {
    EXPECT_NE(std::string(e.what()).find("duplicate assertion id"), std::string::npos);
  }
}
