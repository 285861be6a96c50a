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

// Deterministic hashing of model artifacts.
//
// A file is hashed either in one pass (naive) or as a list of chunks
// C_1..C_n of chunk_size bytes (the last may be shorter; an empty file is a
// single empty chunk):
//
//   chunked digest = H(H(C_1) || ... || H(C_n))
//
// A directory is described by a manifest of its regular files sorted by
// relative path (bytewise), and its digest is the hash of the manifest text:
//
//   mtk-manifest/v1 \t <alg> \t <scheme> \t <chunk_size> \n
//   <path> \t <size> \t <hex digest> \n        (one line per file)
//
// with chunk_size 0 for the naive scheme. Paths use '/' separators and are
// relative to the model root. Files named *.sig are excluded so a model can
// carry its own signature. Only content and relative path are covered; file
// modes, timestamps and empty directories are not.

#ifndef MTK_MODEL_HASH_H_
#define MTK_MODEL_HASH_H_

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "absl/status/statusor.h"
#include "mtk/hash.h"

namespace mtk {

enum class HashScheme { kNaive, kChunked };

std::string_view HashSchemeName(HashScheme scheme);
absl::StatusOr<HashScheme> ParseHashScheme(std::string_view name);

inline constexpr uint64_t kDefaultChunkSize = uint64_t{1} << 30;  // 1 GiB

struct HashOptions {
  HashScheme scheme = HashScheme::kChunked;
  uint64_t chunk_size = kDefaultChunkSize;
  HashAlg alg = HashAlg::kSha256;
  // Chunk-hashing threads; 0 = hardware concurrency. Does not affect output.
  unsigned workers = 0;
};

struct ModelDigest {
  HashScheme scheme = HashScheme::kNaive;
  uint64_t chunk_size = 0;  // 0 for naive
  HashAlg alg = HashAlg::kSha256;
  Digest digest{};

  // "<alg>:<scheme>:<chunk_size>:<hex>"
  std::string ToString() const;
  static absl::StatusOr<ModelDigest> FromString(std::string_view s);
  friend bool operator==(const ModelDigest&, const ModelDigest&) = default;
};

struct ManifestEntry {
  std::string path;
  uint64_t size = 0;
  Digest digest{};
  friend bool operator==(const ManifestEntry&, const ManifestEntry&) = default;
};

struct ModelManifest {
  std::vector<ManifestEntry> entries;

  std::string Serialize(const HashOptions& options) const;
};

absl::StatusOr<ModelDigest> HashFile(const std::filesystem::path& path,
                                     const HashOptions& options);

// Single file: the file digest and a one-entry manifest naming the file.
// Directory: the manifest over all regular files and the digest of its
// serialization. Symlinks resolving outside the root are an error.
absl::StatusOr<std::pair<ModelManifest, ModelDigest>> HashModel(
    const std::filesystem::path& root, const HashOptions& options);

// Hash of the manifest serialization under options.alg.
Digest ManifestDigest(const ModelManifest& manifest, const HashOptions& options);

}  // namespace mtk

#endif  // MTK_MODEL_HASH_H_
