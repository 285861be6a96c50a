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

#include "mtk/bytes.h"

#include <sodium.h>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"

namespace mtk {

std::string HexEncode(ByteSpan data) {
  std::string out(data.size() * 2 + 1, '\0');
  sodium_bin2hex(out.data(), out.size(), data.data(), data.size());
  out.pop_back();
  return out;
}

absl::StatusOr<Bytes> HexDecode(std::string_view hex) {
  if (hex.size() % 2 != 0) {
    return absl::InvalidArgumentError("hex string has odd length");
  }
  Bytes out(hex.size() / 2);
  size_t bin_len = 0;
  if (sodium_hex2bin(out.data(), out.size(), hex.data(), hex.size(), nullptr,
                     &bin_len, nullptr) != 0 ||
      bin_len != out.size()) {
    return absl::InvalidArgumentError("invalid hex string");
  }
  return out;
}

std::string Base64Encode(ByteSpan data) {
  constexpr int kVariant = sodium_base64_VARIANT_ORIGINAL;
  std::string out(sodium_base64_ENCODED_LEN(data.size(), kVariant), '\0');
  sodium_bin2base64(out.data(), out.size(), data.data(), data.size(), kVariant);
  out.pop_back();
  return out;
}

absl::StatusOr<Bytes> Base64Decode(std::string_view text) {
  Bytes out(text.size() / 4 * 3 + 3);
  size_t len = 0;
  const char* end = nullptr;
  if (sodium_base642bin(out.data(), out.size(), text.data(), text.size(), nullptr, &len,
                        &end, sodium_base64_VARIANT_ORIGINAL) != 0 ||
      end != text.data() + text.size()) {
    return absl::InvalidArgumentError("invalid base64");
  }
  out.resize(len);
  // Reject non-zero trailing bits so each byte string has one encoding.
  if (Base64Encode(out) != text) {
    return absl::InvalidArgumentError("non-canonical base64");
  }
  return out;
}

void ByteWriter::PutU16(uint16_t v) {
  out_.push_back(static_cast<uint8_t>(v >> 8));
  out_.push_back(static_cast<uint8_t>(v));
}

void ByteWriter::PutU32(uint32_t v) {
  for (int shift = 24; shift >= 0; shift -= 8) {
    out_.push_back(static_cast<uint8_t>(v >> shift));
  }
}

void ByteWriter::PutU64(uint64_t v) {
  for (int shift = 56; shift >= 0; shift -= 8) {
    out_.push_back(static_cast<uint8_t>(v >> shift));
  }
}

void ByteWriter::PutFramed(ByteSpan data) {
  PutU32(static_cast<uint32_t>(data.size()));
  PutRaw(data);
}

absl::StatusOr<ByteSpan> ByteReader::GetRaw(size_t n) {
  if (remaining() < n) {
    return absl::InvalidArgumentError(
        absl::StrCat("truncated input: need ", n, " bytes, have ", remaining()));
  }
  ByteSpan out = data_.subspan(pos_, n);
  pos_ += n;
  return out;
}

absl::StatusOr<uint8_t> ByteReader::GetU8() {
  auto b = GetRaw(1);
  if (!b.ok()) return b.status();
  return (*b)[0];
}

absl::StatusOr<uint16_t> ByteReader::GetU16() {
  auto b = GetRaw(2);
  if (!b.ok()) return b.status();
  return static_cast<uint16_t>(((*b)[0] << 8) | (*b)[1]);
}

absl::StatusOr<uint32_t> ByteReader::GetU32() {
  auto b = GetRaw(4);
  if (!b.ok()) return b.status();
  uint32_t v = 0;
  for (uint8_t x : *b) v = (v << 8) | x;
  return v;
}

absl::StatusOr<uint64_t> ByteReader::GetU64() {
  auto b = GetRaw(8);
  if (!b.ok()) return b.status();
  uint64_t v = 0;
  for (uint8_t x : *b) v = (v << 8) | x;
  return v;
}

absl::StatusOr<ByteSpan> ByteReader::GetFramed(size_t max_len) {
  auto len = GetU32();
  if (!len.ok()) return len.status();
  if (*len > max_len) {
    return absl::InvalidArgumentError("framed field exceeds maximum length");
  }
  return GetRaw(*len);
}

}  // namespace mtk
