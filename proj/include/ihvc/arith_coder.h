// Copyright 2026 The IHVC Authors
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

#ifndef IHVC_ARITH_CODER_H_
#define IHVC_ARITH_CODER_H_

#include <cstdint>
#include <span>
#include <vector>

namespace ihvc {

// Adaptive probability of a binary context, stored as P(bit = 1) * 4096.
class BinContext {
 public:
  static constexpr int kOne = 4096;
  static constexpr int kInitial = 2048;
  static constexpr int kMin = 1;
  static constexpr int kMax = 4095;
  static constexpr int kAdaptShift = 32;  // divisor of the update step

  int p() const { return p_; }

  // p <- p + (4096 * bit - p) / 32, truncated toward zero, clamped.
  void Update(int bit) {
    int next = p_ + (kOne * bit - p_) / kAdaptShift;
    if (next < kMin) next = kMin;
    if (next > kMax) next = kMax;
    p_ = next;
  }

 private:
  int p_ = kInitial;
};

// 32-bit range encoder. Bytes are emitted once range drops below 2^24;
// carries propagate back into the already-emitted bytes.
class BinaryEncoder {
 public:
  void Encode(int bit, BinContext& ctx);
  void EncodeBypass(int bit);
  // Writes the 4 low bytes. No further symbols may be coded afterwards.
  void Flush();

  // Bits committed so far, including the fractional cost still held in
  // the range register. Equals 8 * bytes().size() after Flush().
  double BitPosition() const;
  std::size_t bin_count() const { return bin_count_; }

  const std::vector<std::uint8_t>& bytes() const { return bytes_; }
  std::vector<std::uint8_t> TakeBytes() { return std::move(bytes_); }

 private:
  void Split(int bit, std::uint32_t bound);
  void PropagateCarry();
  void Renormalize();

  std::uint64_t low_ = 0;
  std::uint32_t range_ = 0xFFFFFFFFu;
  std::vector<std::uint8_t> bytes_;
  std::size_t bin_count_ = 0;
  bool flushed_ = false;
};

// Mirror of BinaryEncoder. Reading beyond the segment throws
// Error(kTruncated); the segment is never over-read.
class BinaryDecoder {
 public:
  explicit BinaryDecoder(std::span<const std::uint8_t> data);

  int Decode(BinContext& ctx);
  int DecodeBypass();

  std::size_t consumed() const { return pos_; }
  std::size_t size() const { return data_.size(); }

 private:
  std::uint8_t NextByte();
  int Split(std::uint32_t bound);
  void Renormalize();

  std::span<const std::uint8_t> data_;
  std::size_t pos_ = 0;
  std::uint32_t code_ = 0;
  std::uint32_t range_ = 0xFFFFFFFFu;
};

}  // namespace ihvc

#endif  // IHVC_ARITH_CODER_H_
