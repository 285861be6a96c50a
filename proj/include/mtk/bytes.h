// Copyright 2026 The Model Transparency Kit Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef MTK_BYTES_H_
#define MTK_BYTES_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "absl/status/statusor.h"

namespace mtk {

using Bytes = std::vector<uint8_t>;
using ByteSpan = std::span<const uint8_t>;

inline ByteSpan AsBytes(std::string_view s) {
  return {reinterpret_cast<const uint8_t*>(s.data()), s.size()};
}

inline std::string_view AsStringView(ByteSpan b) {
  return {reinterpret_cast<const char*>(b.data()), b.size()};
}

std::string HexEncode(ByteSpan data);
absl::StatusOr<Bytes> HexDecode(std::string_view hex);

std::string Base64Encode(ByteSpan data);
absl::StatusOr<Bytes> Base64Decode(std::string_view text);

// Append-only big-endian writer used by every canonical encoding in the
// project. Variable-length fields are framed with a u32 length.
class ByteWriter {
 public:
  ByteWriter() = default;

  void PutU8(uint8_t v) { out_.push_back(v); }
  void PutU16(uint16_t v);
  void PutU32(uint32_t v);
  void PutU64(uint64_t v);
  void PutRaw(ByteSpan data) { out_.insert(out_.end(), data.begin(), data.end()); }
  void PutRaw(std::string_view s) { PutRaw(AsBytes(s)); }
  // u32 length followed by the bytes.
  void PutFramed(ByteSpan data);
  void PutFramed(std::string_view s) { PutFramed(AsBytes(s)); }

  const Bytes& bytes() const& { return out_; }
  Bytes&& Take() && { return std::move(out_); }

 private:
  Bytes out_;
};

// Bounds-checked reader mirroring ByteWriter. Every accessor fails with
// InvalidArgument on truncated input instead of reading past the end.
class ByteReader {
 public:
  explicit ByteReader(ByteSpan data) : data_(data) {}

  absl::StatusOr<uint8_t> GetU8();
  absl::StatusOr<uint16_t> GetU16();
  absl::StatusOr<uint32_t> GetU32();
  absl::StatusOr<uint64_t> GetU64();
  absl::StatusOr<ByteSpan> GetRaw(size_t n);
  absl::StatusOr<ByteSpan> GetFramed(size_t max_len = 1u << 30);

  size_t remaining() const { return data_.size() - pos_; }
  bool done() const { return pos_ == data_.size(); }

 private:
  ByteSpan data_;
  size_t pos_ = 0;
};

}  // namespace mtk

#endif  // MTK_BYTES_H_
