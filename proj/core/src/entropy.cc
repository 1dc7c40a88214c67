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

#include "gvc/entropy.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "gvc/error.h"

namespace gvc {

namespace {

constexpr std::uint32_t kStateLow = 1u << 23;

}  // namespace

SymbolModel::SymbolModel(std::vector<std::uint32_t> frequencies)
    : freq_(std::move(frequencies)), cum_(freq_.size() + 1, 0), slot_(kProbScale) {
  for (std::size_t s = 0; s < freq_.size(); ++s) {
    cum_[s + 1] = cum_[s] + freq_[s];
    for (std::uint32_t i = cum_[s]; i < cum_[s + 1]; ++i) {
      slot_[i] = static_cast<std::uint16_t>(s);
    }
  }
}

SymbolModel SymbolModel::from_frequencies(std::vector<std::uint32_t> frequencies) {
  if (frequencies.empty() || frequencies.size() > kProbScale) {
    throw DecodeError("symbol model alphabet size out of range");
  }
  std::uint64_t total = 0;
  for (std::uint32_t f : frequencies) {
    if (f == 0) throw DecodeError("symbol model contains a zero frequency");
    total += f;
  }
  if (total != kProbScale) {
    throw DecodeError("symbol model frequencies sum to " + std::to_string(total) +
                      ", expected " + std::to_string(kProbScale));
  }
  return SymbolModel(std::move(frequencies));
}

SymbolModel SymbolModel::from_counts(std::span<const std::uint64_t> counts) {
  const std::size_t n = counts.size();
  if (n == 0 || n > kProbScale) {
    throw EncodeError("alphabet size must be in [1, " +
                      std::to_string(kProbScale) + "]");
  }
  const std::uint64_t total = std::accumulate(counts.begin(), counts.end(),
                                              std::uint64_t{0});
  std::vector<std::uint32_t> freq(n, 1);
  if (total == 0) {
    // No statistics: spread the scale as evenly as possible.
    for (std::size_t s = 0; s < n; ++s) {
      freq[s] = static_cast<std::uint32_t>(kProbScale / n + (s < kProbScale % n ? 1 : 0));
    }
    return SymbolModel(std::move(freq));
  }
  std::int64_t assigned = 0;
  for (std::size_t s = 0; s < n; ++s) {
    const double ideal = static_cast<double>(counts[s]) * kProbScale /
                         static_cast<double>(total);
    freq[s] = std::max<std::uint32_t>(1, static_cast<std::uint32_t>(std::llround(ideal)));
    assigned += freq[s];
  }
  // Greedy fix-up: each unit goes to (or comes from) the symbol where it
  // changes the total code length the most (least).
  std::int64_t diff = static_cast<std::int64_t>(kProbScale) - assigned;
  while (diff > 0) {
    std::size_t best = 0;
    double best_gain = -1.0;
    for (std::size_t s = 0; s < n; ++s) {
      const double gain = static_cast<double>(counts[s]) *
                          std::log2((freq[s] + 1.0) / freq[s]);
      if (gain > best_gain) {
        best_gain = gain;
        best = s;
      }
    }
    ++freq[best];
    --diff;
  }
  while (diff < 0) {
    std::size_t best = n;
    double best_loss = 0.0;
    for (std::size_t s = 0; s < n; ++s) {
      if (freq[s] <= 1) continue;
      const double loss = static_cast<double>(counts[s]) *
                          std::log2(static_cast<double>(freq[s]) / (freq[s] - 1.0));
      if (best == n || loss < best_loss) {
        best_loss = loss;
        best = s;
      }
    }
    --freq[best];
    ++diff;
  }
  return SymbolModel(std::move(freq));
}

double SymbolModel::cost_bits(std::span<const std::uint64_t> counts) const {
  double bits = 0.0;
  for (std::size_t s = 0; s < counts.size() && s < freq_.size(); ++s) {
    if (counts[s] == 0) continue;
    bits += static_cast<double>(counts[s]) *
            (kProbBits - std::log2(static_cast<double>(freq_[s])));
  }
  return bits;
}

std::vector<std::uint8_t> entropy_encode(std::span<const std::uint32_t> symbols,
                                         const SymbolModel& model) {
  std::vector<std::uint8_t> out;
  if (symbols.empty()) return out;
  out.reserve(symbols.size() / 2 + 8);
  std::uint32_t x = kStateLow;
  for (std::size_t i = symbols.size(); i-- > 0;) {
    const std::uint32_t s = symbols[i];
    if (s >= model.alphabet_size()) {
      throw EncodeError("symbol " + std::to_string(s) + " at position " +
                        std::to_string(i) + " is outside the alphabet of size " +
                        std::to_string(model.alphabet_size()));
    }
    const std::uint32_t freq = model.frequency(s);
    const std::uint32_t x_max = ((kStateLow >> kProbBits) << 8) * freq;
    while (x >= x_max) {
      out.push_back(static_cast<std::uint8_t>(x & 0xff));
      x >>= 8;
    }
    x = ((x / freq) << kProbBits) + (x % freq) + model.cumulative(s);
  }
  for (int shift = 24; shift >= 0; shift -= 8) {
    out.push_back(static_cast<std::uint8_t>(x >> shift));
  }
  std::reverse(out.begin(), out.end());
  return out;
}

std::vector<std::uint32_t> entropy_decode(std::span<const std::uint8_t> chunk,
                                          const SymbolModel& model,
                                          std::size_t count) {
  std::vector<std::uint32_t> out;
  if (count == 0) {
    if (!chunk.empty()) throw DecodeError("non-empty chunk for an empty sequence");
    return out;
  }
  if (chunk.size() < 4) throw DecodeError("entropy chunk shorter than its state");
  out.reserve(std::min<std::size_t>(count, std::size_t{1} << 20));
  std::size_t pos = 0;
  std::uint32_t x = 0;
  for (int i = 0; i < 4; ++i) x |= std::uint32_t{chunk[pos++]} << (8 * i);
  if (x < kStateLow) throw DecodeError("invalid entropy coder state");
  constexpr std::uint32_t mask = kProbScale - 1;
  for (std::size_t i = 0; i < count; ++i) {
    const std::uint32_t slot = x & mask;
    const std::uint32_t s = model.symbol_for_slot(slot);
    x = model.frequency(s) * (x >> kProbBits) + slot - model.cumulative(s);
    while (x < kStateLow) {
      if (pos >= chunk.size()) {
        throw DecodeError("entropy chunk exhausted after " + std::to_string(i) +
                          " of " + std::to_string(count) + " symbols");
      }
      x = (x << 8) | chunk[pos++];
    }
    out.push_back(s);
  }
  if (pos != chunk.size() || x != kStateLow) {
    throw DecodeError("entropy chunk does not terminate cleanly");
  }
  return out;
}

}  // namespace gvc
