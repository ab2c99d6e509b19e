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

#include "ghzfid/bitstring.h"

#include <bit>
#include <stdexcept>

namespace ghzfid {

BitString::BitString(std::size_t length) : length_(length) {
    if (length == 0 || length > kMaxQubits) {
        throw std::invalid_argument(
            "bit string length must be in [1, " + std::to_string(kMaxQubits) + "], got " + std::to_string(length));
    }
}

BitString BitString::from_str(std::string_view text) {
    BitString result(text.size());
    for (std::size_t k = 0; k < text.size(); ++k) {
        char c = text[k];
        if (c != '0' && c != '1') {
            throw std::invalid_argument("not a bit string: '" + std::string(text) + "'");
        }
        result.set(k, c == '1');
    }
    return result;
}

BitString BitString::from_index(std::uint32_t index, std::size_t length) {
    BitString result(length);
    if (index >> length != 0) {
        throw std::invalid_argument("index " + std::to_string(index) + " does not fit in " + std::to_string(length) +
                                    " bits");
    }
    result.bits_ = index;
    return result;
}

bool BitString::operator[](std::size_t pos) const {
    if (pos >= length_) {
        throw std::out_of_range("bit position out of range");
    }
    return ((bits_ >> (length_ - 1 - pos)) & 1U) != 0;
}

void BitString::set(std::size_t pos, bool value) {
    if (pos >= length_) {
        throw std::out_of_range("bit position out of range");
    }
    std::uint32_t mask = 1U << (length_ - 1 - pos);
    bits_ = value ? (bits_ | mask) : (bits_ & ~mask);
}

std::size_t BitString::popcount() const { return static_cast<std::size_t>(std::popcount(bits_)); }

BitString BitString::complement() const {
    BitString result = *this;
    result.bits_ = ~bits_ & ((1U << length_) - 1U);
    return result;
}

bool BitString::dot(const BitString &other) const {
    if (other.length_ != length_) {
        throw std::invalid_argument("dot product of bit strings with different lengths");
    }
    return (std::popcount(bits_ & other.bits_) & 1) != 0;
}

std::string BitString::str() const {
    std::string out(length_, '0');
    for (std::size_t k = 0; k < length_; ++k) {
        if ((*this)[k]) {
            out[k] = '1';
        }
    }
    return out;
}

std::vector<BitString> even_parity_strings(std::size_t length) {
    static_cast<void>(BitString{length});  // validates the length
    std::vector<BitString> out;
    out.reserve(std::size_t{1} << (length - 1));
    for (std::uint32_t v = 0; v < (1U << length); ++v) {
        if ((std::popcount(v) & 1) == 0) {
            out.push_back(BitString::from_index(v, length));
        }
    }
    return out;
}

}  // namespace ghzfid
