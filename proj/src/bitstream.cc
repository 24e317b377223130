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

#include "ihvc/bitstream.h"

#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iterator>
#include <limits>

#include "ihvc/error.h"

namespace ihvc {
namespace {

class ByteWriter {
 public:
  void U8(std::uint8_t v) { out_.push_back(v); }
  void U16(std::uint16_t v) {
    for (int i = 0; i < 2; ++i) out_.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
  }
  void U32(std::uint32_t v) {
    for (int i = 0; i < 4; ++i) out_.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
  }
  void F32(float v) { U32(std::bit_cast<std::uint32_t>(v)); }
  void Bytes(std::span<const std::uint8_t> b) {
    out_.insert(out_.end(), b.begin(), b.end());
  }
  std::vector<std::uint8_t> Take() { return std::move(out_); }

 private:
  std::vector<std::uint8_t> out_;
};

class ByteReader {
 public:
  explicit ByteReader(std::span<const std::uint8_t> data) : data_(data) {}

  void set_section(const char* section) { section_ = section; }
  std::size_t remaining() const { return data_.size() - pos_; }

  std::uint8_t U8() { return Take(1)[0]; }
  std::uint16_t U16() {
    auto b = Take(2);
    return static_cast<std::uint16_t>(b[0] | (b[1] << 8));
  }
  std::uint32_t U32() {
    auto b = Take(4);
    return std::uint32_t{b[0]} | (std::uint32_t{b[1]} << 8) |
           (std::uint32_t{b[2]} << 16) | (std::uint32_t{b[3]} << 24);
  }
  float F32() { return std::bit_cast<float>(U32()); }
  std::span<const std::uint8_t> Take(std::size_t n) {
    if (remaining() < n) {
      throw Error(ErrorCode::kTruncated,
                  std::string("truncated ") + section_);
    }
    auto out = data_.subspan(pos_, n);
    pos_ += n;
    return out;
  }

 private:
  std::span<const std::uint8_t> data_;
  std::size_t pos_ = 0;
  const char* section_ = "header";
};

}  // namespace

double QuantConfig::StepFor(std::size_t flat_index) const {
  if (flat_index < kTransOffset) return step_pose;
  if (flat_index < kRotOffset) return step_trans;
  if (flat_index < kLocOffset) return step_rot;
  return step_loc;
}

QuantConfig QuantConfig::Representable() const {
  auto f = [](double v) { return static_cast<double>(static_cast<float>(v)); };
  return {f(step_pose), f(step_trans), f(step_rot), f(step_loc)};
}

QuantConfig QuantConfig::Scaled(double factor) const {
  return {step_pose * factor, step_trans * factor, step_rot * factor,
          step_loc * factor};
}

void Validate(const QuantConfig& cfg) {
  const double steps[4] = {cfg.step_pose, cfg.step_trans, cfg.step_rot,
                           cfg.step_loc};
  const char* names[4] = {"step_pose", "step_trans", "step_rot", "step_loc"};
  for (int i = 0; i < 4; ++i) {
    const float as_f32 = static_cast<float>(steps[i]);
    if (!std::isfinite(steps[i]) || !(steps[i] > 0.0) ||
        !std::isfinite(as_f32) ||
        as_f32 < std::numeric_limits<float>::min()) {
      throw Error(ErrorCode::kValidation,
                  std::string(names[i]) + " must be a positive finite f32");
    }
  }
}

std::pair<std::uint16_t, std::uint16_t> FpsToRational(double fps) {
  constexpr double kLimit = 65535.0;
  if (!std::isfinite(fps) || fps < 1.0 / kLimit || fps > kLimit) {
    throw Error(ErrorCode::kValidation, "fps out of range");
  }
  // Continued-fraction convergents, stopping before either term overflows.
  double h_prev = 1, h_prev2 = 0, k_prev = 0, k_prev2 = 1;
  double x = fps;
  std::pair<std::uint16_t, std::uint16_t> best{1, 1};
  for (int iter = 0; iter < 64; ++iter) {
    const double a = std::floor(x);
    const double h = a * h_prev + h_prev2;
    const double k = a * k_prev + k_prev2;
    if (h > kLimit || k > kLimit) break;
    if (h >= 1) {
      best = {static_cast<std::uint16_t>(h), static_cast<std::uint16_t>(k)};
    }
    if (std::abs(h / k - fps) <= 1e-12 * fps) break;
    h_prev2 = h_prev;
    h_prev = h;
    k_prev2 = k_prev;
    k_prev = k;
    const double frac = x - a;
    if (frac < 1e-15) break;
    x = 1.0 / frac;
  }
  return best;
}

std::vector<std::uint8_t> Serialize(const CodedSequence& cs) {
  ByteWriter w;
  for (char c : kMagic) w.U8(static_cast<std::uint8_t>(c));
  w.U8(kVersion);
  w.U16(cs.header.width);
  w.U16(cs.header.height);
  w.U16(cs.header.fps_num);
  w.U16(cs.header.fps_den);
  w.U32(cs.header.frame_count);
  w.F32(static_cast<float>(cs.header.steps.step_pose));
  w.F32(static_cast<float>(cs.header.steps.step_trans));
  w.F32(static_cast<float>(cs.header.steps.step_rot));
  w.F32(static_cast<float>(cs.header.steps.step_loc));
  w.U32(static_cast<std::uint32_t>(cs.key_payload.size()));
  w.Bytes(cs.key_payload);
  for (float v : cs.key_params) w.F32(v);
  w.U32(static_cast<std::uint32_t>(cs.inter_segment.size()));
  w.Bytes(cs.inter_segment);
  return w.Take();
}

CodedSequence Parse(std::span<const std::uint8_t> bytes) {
  ByteReader r(bytes);
  auto magic = r.Take(4);
  if (std::memcmp(magic.data(), kMagic, 4) != 0) {
    throw Error(ErrorCode::kBadMagic, "bad magic");
  }
  const std::uint8_t version = r.U8();
  if (version != kVersion) {
    throw Error(ErrorCode::kBadVersion,
                "unsupported version " + std::to_string(version));
  }
  CodedSequence cs;
  cs.header.width = r.U16();
  cs.header.height = r.U16();
  cs.header.fps_num = r.U16();
  cs.header.fps_den = r.U16();
  cs.header.frame_count = r.U32();
  cs.header.steps.step_pose = r.F32();
  cs.header.steps.step_trans = r.F32();
  cs.header.steps.step_rot = r.F32();
  cs.header.steps.step_loc = r.F32();
  if (cs.header.fps_num == 0 || cs.header.fps_den == 0) {
    throw Error(ErrorCode::kCorrupt, "zero fps term");
  }
  Validate(cs.header.steps);
  r.set_section("key payload");
  const std::uint32_t payload_len = r.U32();
  auto payload = r.Take(payload_len);
  cs.key_payload.assign(payload.begin(), payload.end());
  r.set_section("key params");
  for (float& v : cs.key_params) v = r.F32();
  r.set_section("segment");
  const std::uint32_t segment_len = r.U32();
  auto segment = r.Take(segment_len);
  cs.inter_segment.assign(segment.begin(), segment.end());
  if (r.remaining() != 0) {
    throw Error(ErrorCode::kTrailingBytes,
                std::to_string(r.remaining()) + " trailing bytes");
  }
  return cs;
}

std::vector<std::uint8_t> ReadFileBytes(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void WriteFileBytes(const std::string& path,
                    std::span<const std::uint8_t> bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + path);
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error(ErrorCode::kIo, "write failed for " + path);
}

}  // namespace ihvc
