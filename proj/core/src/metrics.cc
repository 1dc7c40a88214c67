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

#include "gvc/metrics.h"

#include <algorithm>
#include <cmath>

#include "gvc/error.h"

namespace gvc {

namespace {

void check_same_luma(std::span<const Frame> a, std::span<const Frame> b) {
  if (a.size() != b.size()) {
    throw ShapeError("frame counts differ (" + std::to_string(a.size()) + " vs " +
                     std::to_string(b.size()) + ")");
  }
  if (a.empty()) throw ShapeError("no frames to compare");
  for (std::size_t i = 0; i < a.size(); ++i) {
    const Plane& pa = a[i].luma();
    const Plane& pb = b[i].luma();
    if (pa.width != pb.width || pa.height != pb.height) {
      throw ShapeError("luma geometry differs at frame " + std::to_string(i));
    }
  }
}

}  // namespace

double psnr(std::span<const Frame> reference, std::span<const Frame> test) {
  check_same_luma(reference, test);
  std::uint64_t sse = 0;
  std::uint64_t count = 0;
  for (std::size_t i = 0; i < reference.size(); ++i) {
    const auto& a = reference[i].luma().samples;
    const auto& b = test[i].luma().samples;
    for (std::size_t j = 0; j < a.size(); ++j) {
      const int d = static_cast<int>(a[j]) - static_cast<int>(b[j]);
      sse += static_cast<std::uint64_t>(d * d);
    }
    count += a.size();
  }
  if (sse == 0) return kPsnrCap;
  const double mse = static_cast<double>(sse) / static_cast<double>(count);
  return std::min(kPsnrCap, 10.0 * std::log10(255.0 * 255.0 / mse));
}

double psnr(const Gop& reference, const Gop& test) {
  return psnr(reference.frames, test.frames);
}

double psnr(const VideoSequence& reference, const VideoSequence& test) {
  return psnr(reference.frames, test.frames);
}

double ssim_plane(const Plane& reference, const Plane& test,
                  const SsimParams& params) {
  if (reference.width != test.width || reference.height != test.height) {
    throw ShapeError("SSIM inputs differ in geometry");
  }
  const std::uint32_t wx = std::min(params.window, reference.width);
  const std::uint32_t wy = std::min(params.window, reference.height);
  const std::uint32_t step = std::max<std::uint32_t>(params.step, 1);
  const double c1 = std::pow(params.k1 * params.dynamic_range, 2);
  const double c2 = std::pow(params.k2 * params.dynamic_range, 2);
  const double n = static_cast<double>(wx) * wy;

  double total = 0.0;
  std::size_t windows = 0;
  for (std::uint32_t y0 = 0; y0 + wy <= reference.height; y0 += step) {
    for (std::uint32_t x0 = 0; x0 + wx <= reference.width; x0 += step) {
      std::uint64_t sa = 0, sb = 0, saa = 0, sbb = 0, sab = 0;
      for (std::uint32_t y = y0; y < y0 + wy; ++y) {
        for (std::uint32_t x = x0; x < x0 + wx; ++x) {
          const std::uint64_t a = reference.at(x, y);
          const std::uint64_t b = test.at(x, y);
          sa += a;
          sb += b;
          saa += a * a;
          sbb += b * b;
          sab += a * b;
        }
      }
      const double ma = sa / n, mb = sb / n;
      const double va = saa / n - ma * ma;
      const double vb = sbb / n - mb * mb;
      const double cov = sab / n - ma * mb;
      total += ((2 * ma * mb + c1) * (2 * cov + c2)) /
               ((ma * ma + mb * mb + c1) * (va + vb + c2));
      ++windows;
    }
  }
  return total / static_cast<double>(windows);
}

double ssim(std::span<const Frame> reference, std::span<const Frame> test,
            const SsimParams& params) {
  check_same_luma(reference, test);
  double total = 0.0;
  for (std::size_t i = 0; i < reference.size(); ++i) {
    total += ssim_plane(reference[i].luma(), test[i].luma(), params);
  }
  return total / static_cast<double>(reference.size());
}

double ssim(const VideoSequence& reference, const VideoSequence& test) {
  return ssim(reference.frames, test.frames);
}

double compression_rate(double bpp) {
  if (bpp < 0.0) throw InvalidArgument("bpp must be non-negative");
  return 100.0 * bpp / kRawBitsPerPixel;
}

DatasetMetrics aggregate(std::span<const SequenceMetrics> sequences) {
  DatasetMetrics d;
  d.sequence_count = sequences.size();
  if (sequences.empty()) return d;
  for (const SequenceMetrics& s : sequences) {
    d.mean_bpp += s.bpp;
    d.mean_compression_rate_percent += s.compression_rate_percent;
    d.mean_psnr_db += s.psnr_db;
    d.mean_ssim += s.ssim;
  }
  const double n = static_cast<double>(sequences.size());
  d.mean_bpp /= n;
  d.mean_compression_rate_percent /= n;
  d.mean_psnr_db /= n;
  d.mean_ssim /= n;
  return d;
}

}  // namespace gvc
