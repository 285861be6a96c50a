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

#include "mtk/model_hash.h"

#include <fcntl.h>
#include <sys/stat.h>
#include <unistd.h>

#include <algorithm>
#include <cerrno>
#include <charconv>
#include <cstring>
#include <memory>
#include <span>
#include <system_error>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_split.h"
#include "mtk/parallel.h"
#include "mtk/strings.h"

namespace mtk {
namespace fs = std::filesystem;
namespace {

constexpr size_t kReadBlock = size_t{1} << 20;

class FileHandle {
 public:
  explicit FileHandle(int fd) : fd_(fd) {}
  ~FileHandle() {
    if (fd_ >= 0) ::close(fd_);
  }
  FileHandle(const FileHandle&) = delete;
  FileHandle& operator=(const FileHandle&) = delete;
  int get() const { return fd_; }

 private:
  int fd_;
};

absl::Status ErrnoStatus(std::string_view what, const fs::path& path) {
  return absl::UnavailableError(
      absl::StrCat(AV(what), " ", path.string(), ": ", std::strerror(errno)));
}

// Feeds [offset, offset + len) into the hasher.
absl::Status HashRange(int fd, uint64_t offset, uint64_t len, Hasher& hasher,
                       std::span<uint8_t> buf) {
  while (len > 0) {
    const size_t want = static_cast<size_t>(std::min<uint64_t>(len, buf.size()));
    const ssize_t got = ::pread(fd, buf.data(), want, static_cast<off_t>(offset));
    if (got < 0) {
      if (errno == EINTR) continue;
      return absl::UnavailableError(absl::StrCat("read failed: ", std::strerror(errno)));
    }
    if (got == 0) return absl::DataLossError("file shrank while hashing");
    hasher.Update(ByteSpan(buf.data(), static_cast<size_t>(got)));
    offset += static_cast<uint64_t>(got);
    len -= static_cast<uint64_t>(got);
  }
  return absl::OkStatus();
}

absl::StatusOr<uint64_t> ParseU64(std::string_view s) {
  uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
    return absl::InvalidArgumentError(absl::StrCat("invalid integer '", AV(s), "'"));
  }
  return v;
}

bool IsWithin(const fs::path& root, const fs::path& p) {
  auto r = root.begin();
  auto q = p.begin();
  for (; r != root.end(); ++r, ++q) {
    if (q == p.end() || *r != *q) return false;
  }
  return true;
}

}  // namespace

std::string_view HashSchemeName(HashScheme scheme) {
  return scheme == HashScheme::kNaive ? "naive" : "chunked";
}

absl::StatusOr<HashScheme> ParseHashScheme(std::string_view name) {
  if (name == "naive") return HashScheme::kNaive;
  if (name == "chunked") return HashScheme::kChunked;
  return absl::InvalidArgumentError(absl::StrCat("unknown hash scheme '", AV(name), "'"));
}

std::string ModelDigest::ToString() const {
  return absl::StrCat(AV(HashAlgName(alg)), ":", AV(HashSchemeName(scheme)), ":", chunk_size, ":",
                      DigestHex(digest));
}

absl::StatusOr<ModelDigest> ModelDigest::FromString(std::string_view s) {
  std::vector<std::string> parts = absl::StrSplit(AV(s), ':');
  if (parts.size() != 4) return absl::InvalidArgumentError("malformed model digest string");
  ModelDigest d;
  auto alg = ParseHashAlg(parts[0]);
  if (!alg.ok()) return alg.status();
  auto scheme = ParseHashScheme(parts[1]);
  if (!scheme.ok()) return scheme.status();
  auto chunk = ParseU64(parts[2]);
  if (!chunk.ok()) return chunk.status();
  auto digest = DigestFromHex(parts[3]);
  if (!digest.ok()) return digest.status();
  if ((*scheme == HashScheme::kNaive) != (*chunk == 0)) {
    return absl::InvalidArgumentError("chunk size inconsistent with scheme");
  }
  d.alg = *alg;
  d.scheme = *scheme;
  d.chunk_size = *chunk;
  d.digest = *digest;
  return d;
}

std::string ModelManifest::Serialize(const HashOptions& options) const {
  const uint64_t chunk = options.scheme == HashScheme::kNaive ? 0 : options.chunk_size;
  std::string out = absl::StrCat("mtk-manifest/v1\t", AV(HashAlgName(options.alg)), "\t",
                                 AV(HashSchemeName(options.scheme)), "\t", chunk, "\n");
  for (const ManifestEntry& e : entries) {
    absl::StrAppend(&out, e.path, "\t", e.size, "\t", DigestHex(e.digest), "\n");
  }
  return out;
}

Digest ManifestDigest(const ModelManifest& manifest, const HashOptions& options) {
  return HashBytes(options.alg, AsBytes(manifest.Serialize(options)));
}

absl::StatusOr<ModelDigest> HashFile(const fs::path& path, const HashOptions& options) {
  if (options.scheme == HashScheme::kChunked && options.chunk_size == 0) {
    return absl::InvalidArgumentError("chunk size must be at least 1 byte");
  }
  FileHandle fd(::open(path.c_str(), O_RDONLY | O_CLOEXEC));
  if (fd.get() < 0) return ErrnoStatus("cannot open", path);
  struct stat st;
  if (::fstat(fd.get(), &st) != 0) return ErrnoStatus("cannot stat", path);
  if (!S_ISREG(st.st_mode)) {
    return absl::InvalidArgumentError(absl::StrCat(path.string(), " is not a regular file"));
  }
  const uint64_t size = static_cast<uint64_t>(st.st_size);
  ::posix_fadvise(fd.get(), 0, 0, POSIX_FADV_SEQUENTIAL);

  ModelDigest out;
  out.alg = options.alg;
  out.scheme = options.scheme;
  if (options.scheme == HashScheme::kNaive) {
    const size_t buf_size = static_cast<size_t>(std::clamp<uint64_t>(size, 1, kReadBlock));
    const std::unique_ptr<uint8_t[]> buf(new uint8_t[buf_size]);
    Hasher hasher(options.alg);
    if (auto s = HashRange(fd.get(), 0, size, hasher, {buf.get(), buf_size}); !s.ok()) return s;
    out.digest = hasher.Finish();
    return out;
  }

  out.chunk_size = options.chunk_size;
  const uint64_t n_chunks = size == 0 ? 1 : (size + options.chunk_size - 1) / options.chunk_size;
  std::vector<Digest> chunk_digests(n_chunks);
  std::vector<absl::Status> errors(n_chunks);
  const size_t buf_size =
      static_cast<size_t>(std::clamp<uint64_t>(std::min(size, options.chunk_size), 1, kReadBlock));
  ParallelFor(n_chunks, options.workers, [&](size_t i) {
    const std::unique_ptr<uint8_t[]> buf(new uint8_t[buf_size]);
    const uint64_t begin = i * options.chunk_size;
    const uint64_t len = std::min(options.chunk_size, size - std::min(size, begin));
    Hasher hasher(options.alg);
    errors[i] = HashRange(fd.get(), begin, len, hasher, {buf.get(), buf_size});
    chunk_digests[i] = hasher.Finish();
  });
  for (const absl::Status& s : errors) {
    if (!s.ok()) return s;
  }
  Hasher list(options.alg);
  for (const Digest& d : chunk_digests) list.Update(d);
  out.digest = list.Finish();
  return out;
}

absl::StatusOr<std::pair<ModelManifest, ModelDigest>> HashModel(const fs::path& root,
                                                                const HashOptions& options) {
  std::error_code ec;
  const fs::file_status root_status = fs::status(root, ec);
  if (ec) return absl::NotFoundError(absl::StrCat("cannot access ", root.string(), ": ", ec.message()));

  if (fs::is_regular_file(root_status)) {
    auto d = HashFile(root, options);
    if (!d.ok()) return d.status();
    ModelManifest m;
    m.entries.push_back({root.filename().generic_string(), fs::file_size(root, ec), d->digest});
    return std::make_pair(std::move(m), *d);
  }
  if (!fs::is_directory(root_status)) {
    return absl::InvalidArgumentError(
        absl::StrCat(root.string(), " is neither a file nor a directory"));
  }

  const fs::path canonical_root = fs::canonical(root, ec);
  if (ec) return absl::UnavailableError(ec.message());
  std::vector<std::pair<std::string, fs::path>> files;
  for (auto it = fs::recursive_directory_iterator(root, ec);
       !ec && it != fs::recursive_directory_iterator(); it.increment(ec)) {
    const fs::directory_entry& entry = *it;
    if (entry.is_symlink()) {
      const fs::path target = fs::weakly_canonical(entry.path(), ec);
      if (ec) return absl::UnavailableError(ec.message());
      if (!IsWithin(canonical_root, target)) {
        return absl::PermissionDeniedError(absl::StrCat(
            "symlink ", entry.path().string(), " resolves outside the model root"));
      }
      // In-root directory links are not followed; their targets are
      // reached through the real path.
      if (!fs::is_regular_file(target)) continue;
    } else if (!entry.is_regular_file()) {
      continue;
    }
    std::string rel = entry.path().lexically_relative(root).generic_string();
    if (rel.ends_with(".sig")) continue;
    if (rel.find_first_of("\t\n") != std::string::npos) {
      return absl::InvalidArgumentError(
          absl::StrCat("path contains a tab or newline: ", entry.path().string()));
    }
    files.emplace_back(std::move(rel), entry.path());
  }
  if (ec) return absl::UnavailableError(absl::StrCat("directory walk failed: ", ec.message()));
  std::sort(files.begin(), files.end());

  ModelManifest manifest;
  manifest.entries.reserve(files.size());
  for (const auto& [rel, path] : files) {
    auto d = HashFile(path, options);
    if (!d.ok()) return d.status();
    manifest.entries.push_back({rel, fs::file_size(path), d->digest});
  }
  ModelDigest out;
  out.alg = options.alg;
  out.scheme = options.scheme;
  out.chunk_size = options.scheme == HashScheme::kNaive ? 0 : options.chunk_size;
  out.digest = ManifestDigest(manifest, options);
  return std::make_pair(std::move(manifest), out);
}

}  // namespace mtk
