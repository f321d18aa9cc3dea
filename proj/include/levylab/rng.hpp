/*
   Copyright 2026 The levylab Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#pragma once

#include <array>
#include <cstdint>

namespace levylab {

/// Keyed 64-bit mix of (seed, stream_id). Two rounds of the splitmix64
/// finalizer; this function is part of the reproducibility contract and must
/// not change.
std::uint64_t hash64(std::uint64_t seed, std::uint64_t stream_id);

/// Counter-based random stream: Philox4x32-10 keyed by hash64(seed, stream_id)
/// over a 128-bit block counter starting at zero.
///
/// Each block yields 128 bits, consumed as two 64-bit words (low word first).
/// Uniform doubles are built from the top 53 bits of one word as
/// (w >> 11) * 2^-53 + 2^-54, so they lie strictly inside (0, 1).
///
/// Derived variates (exponential, normal, gamma, beta) are generated from
/// uniforms only, by the algorithms documented on each member, so that draws
/// are bit-reproducible across standard libraries.
class RandomStream {
 public:
  RandomStream(std::uint64_t seed, std::uint64_t stream_id);

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t stream_id() const noexcept { return stream_id_; }

  std::uint64_t next_u64();
  /// Uniform on the open interval (0, 1).
  double uniform();
  /// Exp(1) by inversion: -log(U).
  double exponential();
  /// N(0,1) by the Marsaglia polar method; the spare variate is cached.
  double normal();
  /// Gamma(shape, 1). Marsaglia-Tsang squeeze/rejection for shape >= 1;
  /// shape < 1 uses the boost G(shape+1) * U^(1/shape).
  double gamma(double shape);
  /// log of a Gamma(shape, 1) variate, accurate for tiny shapes where the
  /// variate itself underflows.
  double log_gamma(double shape);
  /// Beta(a, b) as X / (X + Y) with X ~ Gamma(a), Y ~ Gamma(b), evaluated in
  /// log space.
  double beta(double a, double b);
  /// log(1 - B) for B ~ Beta(a, b), computed without cancellation.
  double log1m_beta(double a, double b);

 private:
  void refill();

  std::uint64_t seed_;
  std::uint64_t stream_id_;
  std::array<std::uint32_t, 2> key_{};
  std::array<std::uint32_t, 4> counter_{};
  std::array<std::uint64_t, 2> buffer_{};
  int buffered_ = 0;
  double spare_normal_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace levylab
