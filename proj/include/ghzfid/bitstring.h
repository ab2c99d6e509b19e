// Copyright 2026 The ghzfid Authors
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

#ifndef GHZFID_BITSTRING_H
#define GHZFID_BITSTRING_H

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace ghzfid {

/// Largest register handled by the dense simulator.
inline constexpr std::size_t kMaxQubits = 12;

/// An L-bit string j = j_1 j_2 ... j_L.
///
/// Bit 1 (index 0 here) is the most significant bit of the computational
/// basis index, so the string "011" names basis state |011> = index 3.
class BitString {
   public:
    BitString() = default;

    /// All-zero string of the given length. Throws std::invalid_argument
    /// unless 1 <= length <= kMaxQubits.
    explicit BitString(std::size_t length);

    /// Parses a string of '0'/'1' characters.
    static BitString from_str(std::string_view text);

    /// Builds a string from the low `length` bits of a basis-state index.
    static BitString from_index(std::uint32_t index, std::size_t length);

    std::size_t size() const { return length_; }
    std::uint32_t index() const { return bits_; }

    /// Value of bit `pos` (0-based, leftmost first).
    bool operator[](std::size_t pos) const;
    void set(std::size_t pos, bool value);

    std::size_t popcount() const;
    bool parity() const { return (popcount() & 1U) != 0; }
    BitString complement() const;

    /// Inner product mod 2.
    bool dot(const BitString &other) const;

    std::string str() const;

    bool operator==(const BitString &other) const = default;
    auto operator<=>(const BitString &other) const = default;

   private:
    std::size_t length_ = 0;
    std::uint32_t bits_ = 0;
};

/// All even-parity strings of length L, in increasing index order.
std::vector<BitString> even_parity_strings(std::size_t length);

}  // namespace ghzfid

#endif  // GHZFID_BITSTRING_H
