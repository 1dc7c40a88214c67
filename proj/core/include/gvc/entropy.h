// Copyright 2026 The gvc-lab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace gvc {

inline constexpr std::uint32_t kProbBits = 12;
inline constexpr std::uint32_t kProbScale = 1u << kProbBits;

// Static order-0 model. Frequencies always sum to kProbScale and every
// symbol in the alphabet keeps a frequency of at least one.
class SymbolModel {
 public:
  // Normalizes empirical counts; symbols with a zero count still receive the
  // minimum frequency. Alphabet size is counts.size() (1..kProbScale).
  static SymbolModel from_counts(std::span<const std::uint64_t> counts);
  // Adopts already-normalized frequencies; throws DecodeError if they do not
  // sum to kProbScale or contain a zero.
  static SymbolModel from_frequencies(std::vector<std::uint32_t> frequencies);

  std::uint32_t alphabet_size() const {
    return static_cast<std::uint32_t>(freq_.size());
  }
  std::span<const std::uint32_t> frequencies() const { return freq_; }
  std::uint32_t frequency(std::uint32_t symbol) const { return freq_[symbol]; }
  std::uint32_t cumulative(std::uint32_t symbol) const { return cum_[symbol]; }
  std::uint32_t symbol_for_slot(std::uint32_t slot) const { return slot_[slot]; }

  // Ideal code length in bits of a message with these symbol counts.
  double cost_bits(std::span<const std::uint64_t> counts) const;

 private:
  explicit SymbolModel(std::vector<std::uint32_t> frequencies);

  std::vector<std::uint32_t> freq_;
  std::vector<std::uint32_t> cum_;
  std::vector<std::uint16_t> slot_;
};

// rANS coder with a 32-bit state and byte-wise renormalization. An empty
// sequence encodes to an empty chunk.
std::vector<std::uint8_t> entropy_encode(std::span<const std::uint32_t> symbols,
                                         const SymbolModel& model);

// Decodes exactly `count` symbols and requires the chunk to be consumed
// completely with the coder back in its initial state.
std::vector<std::uint32_t> entropy_decode(std::span<const std::uint8_t> chunk,
                                          const SymbolModel& model,
                                          std::size_t count);

}  // namespace gvc
