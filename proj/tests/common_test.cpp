// Copyright 2026 The kgforge Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "kgforge/common.hpp"

#include <gtest/gtest.h>

#include <cstdio>
#include <random>

namespace kgforge {
namespace {

// Reference FNV-1a over 128-bit integers.
std::string oracle_fnv128(std::string_view data) {
  unsigned __int128 h = (static_cast<unsigned __int128>(0x6c62272e07bb0142ULL) << 64) |
                        0x62b821756295c58dULL;
  const unsigned __int128 prime = (static_cast<unsigned __int128>(1) << 88) | 0x13b;
  for (unsigned char c : data) {
    h ^= c;
    h *= prime;
  }
  char buf[33];
  std::snprintf(buf, sizeof buf, "%016llx%016llx",
                static_cast<unsigned long long>(h >> 64), static_cast<unsigned long long>(h));
  return buf;
}

TEST(HashTest, MatchesReferenceFnv) {
  EXPECT_EQ(stable_hash128("").hex(), "6c62272e07bb014262b821756295c58d");
  std::mt19937 rng(1);
  for (int i = 0; i < 200; ++i) {
    std::string s(rng() % 40, '\0');
    for (char& c : s) c = static_cast<char>(rng());
    EXPECT_EQ(stable_hash128(s).hex(), oracle_fnv128(s));
  }
}

TEST(HashTest, PartsAreSeparated) {
  EXPECT_NE(stable_hash128(std::vector<std::string>{"ab", "c"}),
            stable_hash128(std::vector<std::string>{"a", "bc"}));
  EXPECT_EQ(stable_hash128(std::vector<std::string>{"ab", "c"}),
            stable_hash128(std::string("ab\x1f" "c")));
}

TEST(TextTest, Tokenize) {
  EXPECT_EQ(tokenize("Linked-Data, 2.0 & RDF!"),
            (std::vector<std::string>{"linked", "data", "2", "0", "rdf"}));
  EXPECT_TRUE(tokenize("  ,;  ").empty());
  EXPECT_EQ(tokenize("caf\xc3\xa9 bar"), (std::vector<std::string>{"caf\xc3\xa9", "bar"}));
}

TEST(TextTest, WhitespaceHelpers) {
  EXPECT_EQ(trim("  a b \n"), "a b");
  EXPECT_EQ(collapse_whitespace(" a \t b\n\nc "), "a b c");
  EXPECT_EQ(to_lower_ascii("ÀBC"), "Àbc");
}

TEST(PercentTest, EncodeDecode) {
  EXPECT_EQ(percent_encode("m.rossi@research.example"), "m.rossi%40research.example");
  EXPECT_EQ(percent_encode("a b/c~"), "a%20b%2Fc~");
  std::mt19937 rng(2);
  for (int i = 0; i < 200; ++i) {
    std::string s(rng() % 20, '\0');
    for (char& c : s) c = static_cast<char>(rng());
    EXPECT_EQ(percent_decode(percent_encode(s)), s);
  }
}

TEST(DecimalTest, ShortestRoundTrip) {
  EXPECT_EQ(format_decimal(0.8), "0.8");
  EXPECT_EQ(format_decimal(1.0), "1");
  EXPECT_EQ(format_decimal(0.125), "0.125");
  EXPECT_EQ(format_decimal(-0.0), "0");
  EXPECT_THROW(format_decimal(std::nan("")), ValidationError);
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 500; ++i) {
    double v = u(rng);
    EXPECT_EQ(std::stod(format_decimal(v)), v);
  }
}

TEST(FileTest, MissingFileIsNotFound) {
  EXPECT_THROW(read_file("/nonexistent/kgforge"), NotFoundError);
}

}  // namespace
}  // namespace kgforge
