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

#ifndef KGFORGE_COMMON_HPP_
#define KGFORGE_COMMON_HPP_

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace kgforge {

// Base class for every error raised by the library. The CLI maps these to
// exit code 2 (data error); UsageError maps to exit code 1.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A triple violates the graph model (literal subject, non-IRI predicate).
class StructuralError : public Error {
 public:
  using Error::Error;
};

// Line-oriented parse failure. line() is 1-based; 0 means "not line related".
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

class ValidationError : public Error {
 public:
  using Error::Error;
};

class NormalizationError : public Error {
 public:
  NormalizationError(std::string path, const std::string& what)
      : Error(path + ": " + what), path_(std::move(path)) {}
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

class ResolutionError : public Error {
 public:
  ResolutionError(std::string field, const std::string& what)
      : Error(field + ": " + what), field_(std::move(field)) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

class NotFoundError : public Error {
 public:
  using Error::Error;
};

class UsageError : public Error {
 public:
  using Error::Error;
};

// 128-bit FNV-1a. Stable across platforms and builds; not cryptographic.
struct Digest128 {
  std::uint64_t hi = 0;
  std::uint64_t lo = 0;

  std::string hex() const;
  friend bool operator==(const Digest128&, const Digest128&) = default;
};

Digest128 stable_hash128(std::string_view data);

// Hashes the parts joined by the ASCII unit separator, so ("ab","c") and
// ("a","bc") differ.
Digest128 stable_hash128(const std::vector<std::string>& parts);

// Text helpers shared by ingestion, extraction and featurization. All of them
// are byte-oriented: bytes >= 0x80 are treated as word characters so UTF-8
// sequences never split a token.
bool is_word_byte(unsigned char c);
bool is_space_byte(unsigned char c);
std::string to_lower_ascii(std::string_view s);
std::string trim(std::string_view s);
std::string collapse_whitespace(std::string_view s);

// Lowercases and splits on non-alphanumeric bytes.
std::vector<std::string> tokenize(std::string_view s);

// RFC 3986: everything outside ALPHA / DIGIT / "-" / "." / "_" / "~" becomes
// %XX (uppercase hex).
std::string percent_encode(std::string_view s);
std::string percent_decode(std::string_view s);

// Shortest decimal text that round-trips the double ("0.8", "1", "0.125").
std::string format_decimal(double value);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view contents);

}  // namespace kgforge

#endif  // KGFORGE_COMMON_HPP_
