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

// Local append-only transparency log.
//
// The tree is the RFC 6962 / RFC 9162 Merkle tree: leaf hash
// SHA-256(0x00 || payload), interior SHA-256(0x01 || left || right), empty
// tree SHA-256(""). Every append produces a checkpoint signed with the log's
// Ed25519 key. The checkpoint text form is
//
//   <tree_size>\n<root hex>\n<signature base64>\n
//
// and the signature covers "mtk-log-checkpoint/v1\n<tree_size>\n<root hex>\n".
//
// On disk a log is a directory:
//   log.key          signing key seed (hex), absent in mirrors
//   log.pub          public key (hex)
//   entries.dat      u32-BE length || payload, repeated
//   index.dat        u64-BE offset of each entry in entries.dat
//   checkpoints.txt  every checkpoint ever issued, concatenated

#ifndef MTK_TRANSLOG_H_
#define MTK_TRANSLOG_H_

#include <cstdint>
#include <filesystem>
#include <memory>
#include <shared_mutex>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "absl/status/statusor.h"
#include "mtk/bytes.h"
#include "mtk/hash.h"
#include "mtk/sig.h"

namespace mtk {

Digest LogLeafHash(ByteSpan payload);
Digest LogNodeHash(const Digest& left, const Digest& right);
Digest LogRoot(std::span<const Digest> leaves);

struct LogInclusionProof {
  uint64_t index = 0;
  uint64_t tree_size = 0;
  std::vector<Digest> path;  // bottom-up
  friend bool operator==(const LogInclusionProof&, const LogInclusionProof&) = default;
};

struct LogConsistencyProof {
  uint64_t old_size = 0;
  uint64_t new_size = 0;
  std::vector<Digest> path;
};

struct LogCheckpoint {
  uint64_t tree_size = 0;
  Digest root{};
  Bytes signature;

  Bytes SignedMessage() const;
  std::string ToText() const;
  static absl::StatusOr<LogCheckpoint> FromText(std::string_view text);
  // Parses a concatenation of checkpoint texts.
  static absl::StatusOr<std::vector<LogCheckpoint>> ParseAll(std::string_view text);
  friend bool operator==(const LogCheckpoint&, const LogCheckpoint&) = default;
};

struct LogEntry {
  uint64_t index = 0;
  Bytes payload;
  Digest leaf_hash{};
};

enum class LogVerdict {
  kAccept,
  kBadSignature,
  kRootMismatch,
  kMalformed,
};

std::string_view LogVerdictName(LogVerdict v);

// Pure path computations over a leaf-hash vector.
absl::StatusOr<std::vector<Digest>> MerkleInclusionPath(std::span<const Digest> leaves,
                                                        uint64_t index);
absl::StatusOr<std::vector<Digest>> MerkleConsistencyPath(std::span<const Digest> leaves,
                                                          uint64_t old_size);
bool VerifyMerkleInclusion(uint64_t index, uint64_t tree_size, const Digest& leaf_hash,
                           std::span<const Digest> path, const Digest& root);
bool VerifyMerkleConsistency(uint64_t old_size, uint64_t new_size, const Digest& old_root,
                             const Digest& new_root, std::span<const Digest> path);

bool VerifyCheckpointSignature(const LogCheckpoint& cp, const PublicKey& log_key);

// Accepts iff the checkpoint is signed by log_key, the proof is for the
// checkpoint's tree size and it reproduces the checkpoint root.
LogVerdict LogVerifyInclusion(const LogCheckpoint& cp, const Digest& leaf_hash,
                              const LogInclusionProof& proof, const PublicKey& log_key);
LogVerdict LogVerifyConsistency(const LogCheckpoint& old_cp, const LogCheckpoint& new_cp,
                                const LogConsistencyProof& proof, const PublicKey& log_key);

struct AppendResult {
  LogEntry entry;
  LogInclusionProof proof;
  LogCheckpoint checkpoint;
};

struct AuditReport {
  size_t checkpoints_checked = 0;
  bool ok = true;
  std::string failure;  // first failure, empty when ok
};

// Single writer, many readers. Appends are serialized internally; a
// read-write open also takes an exclusive flock on the directory.
class TransparencyLog {
 public:
  enum class Mode { kReadWrite, kReadOnly };

  static absl::StatusOr<std::unique_ptr<TransparencyLog>> Create(
      const std::filesystem::path& dir, const SigningKey& key);
  static absl::StatusOr<std::unique_ptr<TransparencyLog>> Open(
      const std::filesystem::path& dir, Mode mode = Mode::kReadWrite);
  ~TransparencyLog();

  absl::StatusOr<AppendResult> Append(ByteSpan payload);

  uint64_t size() const;
  const PublicKey& public_key() const { return public_key_; }
  absl::StatusOr<LogEntry> Entry(uint64_t index) const;
  absl::StatusOr<Digest> RootAt(uint64_t tree_size) const;
  absl::StatusOr<LogInclusionProof> ProveInclusion(uint64_t index, uint64_t tree_size) const;
  absl::StatusOr<LogConsistencyProof> ProveConsistency(uint64_t old_size,
                                                       uint64_t new_size) const;
  // Checkpoints recorded in checkpoints.txt, oldest first.
  absl::StatusOr<std::vector<LogCheckpoint>> RecordedCheckpoints() const;
  // Replays every recorded checkpoint: signature, root against the current
  // contents, and pairwise consistency.
  AuditReport Audit() const;

  // Makes the next Append fail after its n-th storage write (1-based).
  void InjectFailureForTesting(int after_write) { fail_after_write_ = after_write; }

 private:
  TransparencyLog(std::filesystem::path dir, Mode mode);
  absl::Status Load();
  absl::Status StorageWrite(const std::filesystem::path& file, ByteSpan data, int& write_no);

  std::filesystem::path dir_;
  Mode mode_;
  int lock_fd_ = -1;
  std::unique_ptr<SigningKey> key_;
  PublicKey public_key_;
  mutable std::shared_mutex mu_;
  std::vector<uint64_t> offsets_;
  std::vector<Digest> leaves_;
  int fail_after_write_ = 0;
};

}  // namespace mtk

#endif  // MTK_TRANSLOG_H_
