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

#include "ihvc/arith_coder.h"

#include <cassert>
#include <cmath>

#include "ihvc/error.h"

namespace ihvc {
namespace {

constexpr std::uint32_t kTopValue = 1u << 24;
constexpr int kProbBits = 12;

}  // namespace

void BinaryEncoder::Split(int bit, std::uint32_t bound) {
  assert(!flushed_);
  if (bit) {
    range_ = bound;
  } else {
    low_ += bound;
    range_ -= bound;
    PropagateCarry();
  }
  Renormalize();
  ++bin_count_;
}

void BinaryEncoder::Encode(int bit, BinContext& ctx) {
  const std::uint32_t bound =
      (range_ >> kProbBits) * static_cast<std::uint32_t>(ctx.p());
  Split(bit, bound);
  ctx.Update(bit);
}

void BinaryEncoder::EncodeBypass(int bit) { Split(bit, range_ >> 1); }

void BinaryEncoder::PropagateCarry() {
  if (low_ < (std::uint64_t{1} << 32)) return;
  low_ &= 0xFFFFFFFFu;
  for (auto it = bytes_.rbegin(); it != bytes_.rend(); ++it) {
    if (++*it != 0) return;
  }
  // low_ + range_ never exceeds the initial interval.
  assert(false && "carry out of the coded interval");
}

void BinaryEncoder::Renormalize() {
  while (range_ < kTopValue) {
    bytes_.push_back(static_cast<std::uint8_t>(low_ >> 24));
    low_ = (low_ << 8) & 0xFFFFFFFFu;
    range_ <<= 8;
  }
}

void BinaryEncoder::Flush() {
  if (flushed_) return;
  for (int shift = 24; shift >= 0; shift -= 8) {
    bytes_.push_back(static_cast<std::uint8_t>(low_ >> shift));
  }
  flushed_ = true;
}

double BinaryEncoder::BitPosition() const {
  if (flushed_) return 8.0 * static_cast<double>(bytes_.size());
  return 8.0 * static_cast<double>(bytes_.size()) + 32.0 -
         std::log2(static_cast<double>(range_));
}

BinaryDecoder::BinaryDecoder(std::span<const std::uint8_t> data)
    : data_(data) {
  for (int i = 0; i < 4; ++i) code_ = (code_ << 8) | NextByte();
}

std::uint8_t BinaryDecoder::NextByte() {
  if (pos_ >= data_.size()) {
    throw Error(ErrorCode::kTruncated, "truncated segment");
  }
  return data_[pos_++];
}

int BinaryDecoder::Split(std::uint32_t bound) {
  int bit;
  if (code_ < bound) {
    range_ = bound;
    bit = 1;
  } else {
    code_ -= bound;
    range_ -= bound;
    bit = 0;
  }
  Renormalize();
  return bit;
}

void BinaryDecoder::Renormalize() {
  while (range_ < kTopValue) {
    code_ = (code_ << 8) | NextByte();
    range_ <<= 8;
  }
}

int BinaryDecoder::Decode(BinContext& ctx) {
  const std::uint32_t bound =
      (range_ >> kProbBits) * static_cast<std::uint32_t>(ctx.p());
  const int bit = Split(bound);
  ctx.Update(bit);
  return bit;
}

int BinaryDecoder::DecodeBypass() { return Split(range_ >> 1); }

}  // namespace ihvc
