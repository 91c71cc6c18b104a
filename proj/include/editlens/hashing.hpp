/* Copyright 2026 The editlens Authors.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#pragma once

#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace editlens {

// splitmix64 finalizer; bijective on 64-bit values.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Platform-independent 64-bit hash of a seed and a sequence of byte strings.
// Parts are length-prefixed so ("ab","c") and ("a","bc") hash differently.
std::uint64_t hash64(std::uint64_t seed, std::initializer_list<std::string_view> parts) noexcept;

// Lowercase hex SHA-256 of the exact bytes of `text`.
std::string sha256_hex(std::string_view text);

std::string base64_encode(std::span<const std::uint8_t> bytes);
// Returns false on malformed input instead of throwing.
bool base64_decode(std::string_view text, std::vector<std::uint8_t>& out);

}  // namespace editlens
