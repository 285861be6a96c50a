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

#include "mtk/translog.h"

#include <fcntl.h>
#include <sys/file.h>
#include <unistd.h>

#include <bit>
#include <cerrno>
#include <charconv>
#include <cstring>
#include <fstream>
#include <mutex>
#include <sstream>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_split.h"
#include "absl/strings/strip.h"
#include "mtk/effects.h"
#include "mtk/strings.h"

namespace mtk {
namespace fs = std::filesystem;
namespace {

constexpr std::string_view kCheckpointContext = "mtk-log-checkpoint/v1\n";
constexpr char kKeyFile[] = "log.key";
constexpr char kPubFile[] = "log.pub";
constexpr char kEntriesFile[] = "entries.dat";
constexpr char kIndexFile[] = "index.dat";
constexpr char kCheckpointsFile[] = "checkpoints.txt";
constexpr char kLockFile[] = "lock";

// Largest power of two strictly less than n (n >= 2).
uint64_t SplitPoint(uint64_t n) { return std::bit_floor(n - 1); }

Digest SubtreeRoot(std::span<const Digest> leaves) {
  if (leaves.empty()) return Sha256(std::string_view());
  if (leaves.size() == 1) return leaves[0];
  const uint64_t k = SplitPoint(leaves.size());
  return LogNodeHash(SubtreeRoot(leaves.first(k)), SubtreeRoot(leaves.subspan(k)));
}

void InclusionPath(std::span<const Digest> leaves, uint64_t m, std::vector<Digest>& out) {
  if (leaves.size() <= 1) return;
  const uint64_t k = SplitPoint(leaves.size());
  if (m < k) {
    InclusionPath(leaves.first(k), m, out);
    out.push_back(SubtreeRoot(leaves.subspan(k)));
  } else {
    InclusionPath(leaves.subspan(k), m - k, out);
    out.push_back(SubtreeRoot(leaves.first(k)));
  }
}

void SubProof(std::span<const Digest> leaves, uint64_t m, bool complete,
              std::vector<Digest>& out) {
  const uint64_t n = leaves.size();
  if (m == n) {
    if (!complete) out.push_back(SubtreeRoot(leaves));
    return;
  }
  const uint64_t k = SplitPoint(n);
  if (m <= k) {
    SubProof(leaves.first(k), m, complete, out);
    out.push_back(SubtreeRoot(leaves.subspan(k)));
  } else {
    SubProof(leaves.subspan(k), m - k, false, out);
    out.push_back(SubtreeRoot(leaves.first(k)));
  }
}

absl::Status Errno(std::string_view what, const fs::path& p) {
  return absl::UnavailableError(absl::StrCat(AV(what), " ", p.string(), ": ", std::strerror(errno)));
}

absl::StatusOr<std::string> ReadWholeFile(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) return absl::NotFoundError(absl::StrCat("cannot read ", p.string()));
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

absl::Status WriteNewFile(const fs::path& p, std::string_view data) {
  std::ofstream out(p, std::ios::binary | std::ios::trunc);
  out << data;
  out.close();
  if (!out) return absl::UnavailableError(absl::StrCat("cannot write ", p.string()));
  return absl::OkStatus();
}

uint64_t FileSizeOrZero(const fs::path& p) {
  std::error_code ec;
  const auto s = fs::file_size(p, ec);
  return ec ? 0 : s;
}

}  // namespace

Digest LogLeafHash(ByteSpan payload) {
  const uint8_t prefix = 0x00;
  return Hasher(HashAlg::kSha256).Update(ByteSpan(&prefix, 1)).Update(payload).Finish();
}

Digest LogNodeHash(const Digest& left, const Digest& right) {
  const uint8_t prefix = 0x01;
  return Hasher(HashAlg::kSha256).Update(ByteSpan(&prefix, 1)).Update(left).Update(right).Finish();
}

Digest LogRoot(std::span<const Digest> leaves) { return SubtreeRoot(leaves); }

absl::StatusOr<std::vector<Digest>> MerkleInclusionPath(std::span<const Digest> leaves,
                                                        uint64_t index) {
  if (index >= leaves.size()) {
    return absl::OutOfRangeError(absl::StrCat("leaf index ", index, " not below tree size ",
                                              leaves.size()));
  }
  std::vector<Digest> path;
  InclusionPath(leaves, index, path);
  return path;
}

absl::StatusOr<std::vector<Digest>> MerkleConsistencyPath(std::span<const Digest> leaves,
                                                          uint64_t old_size) {
  if (old_size > leaves.size()) {
    return absl::OutOfRangeError("old size exceeds new size");
  }
  std::vector<Digest> path;
  if (old_size == 0 || old_size == leaves.size()) return path;
  SubProof(leaves, old_size, true, path);
  return path;
}

bool VerifyMerkleInclusion(uint64_t index, uint64_t tree_size, const Digest& leaf_hash,
                           std::span<const Digest> path, const Digest& root) {
  if (index >= tree_size) return false;
  uint64_t fn = index;
  uint64_t sn = tree_size - 1;
  Digest r = leaf_hash;
  for (const Digest& p : path) {
    if (sn == 0) return false;
    if ((fn & 1) || fn == sn) {
      r = LogNodeHash(p, r);
      while (!(fn & 1) && fn != 0) {
        fn >>= 1;
        sn >>= 1;
      }
    } else {
      r = LogNodeHash(r, p);
    }
    fn >>= 1;
    sn >>= 1;
  }
  return sn == 0 && r == root;
}

bool VerifyMerkleConsistency(uint64_t old_size, uint64_t new_size, const Digest& old_root,
                             const Digest& new_root, std::span<const Digest> path) {
  if (old_size > new_size) return false;
  if (old_size == new_size) return path.empty() && old_root == new_root;
  if (old_size == 0) return path.empty();
  std::vector<Digest> proof(path.begin(), path.end());
  if (std::has_single_bit(old_size)) proof.insert(proof.begin(), old_root);
  if (proof.empty()) return false;
  uint64_t fn = old_size - 1;
  uint64_t sn = new_size - 1;
  while (fn & 1) {
    fn >>= 1;
    sn >>= 1;
  }
  Digest fr = proof[0];
  Digest sr = proof[0];
  for (size_t i = 1; i < proof.size(); ++i) {
    const Digest& c = proof[i];
    if (sn == 0) return false;
    if ((fn & 1) || fn == sn) {
      fr = LogNodeHash(c, fr);
      sr = LogNodeHash(c, sr);
      while (!(fn & 1) && fn != 0) {
        fn >>= 1;
        sn >>= 1;
      }
    } else {
      sr = LogNodeHash(sr, c);
    }
    fn >>= 1;
    sn >>= 1;
  }
  return fr == old_root && sr == new_root && sn == 0;
}

Bytes LogCheckpoint::SignedMessage() const {
  const std::string msg =
      absl::StrCat(AV(kCheckpointContext), tree_size, "\n", DigestHex(root), "\n");
  return Bytes(msg.begin(), msg.end());
}

std::string LogCheckpoint::ToText() const {
  return absl::StrCat(tree_size, "\n", DigestHex(root), "\n", Base64Encode(signature), "\n");
}

absl::StatusOr<LogCheckpoint> LogCheckpoint::FromText(std::string_view text) {
  auto all = ParseAll(text);
  if (!all.ok()) return all.status();
  if (all->size() != 1) return absl::InvalidArgumentError("expected exactly one checkpoint");
  return (*all)[0];
}

absl::StatusOr<std::vector<LogCheckpoint>> LogCheckpoint::ParseAll(std::string_view text) {
  std::vector<LogCheckpoint> out;
  if (!text.empty() && text.back() != '\n') {
    return absl::InvalidArgumentError("checkpoint text must end with a newline");
  }
  std::vector<std::string> lines = absl::StrSplit(AV(text), '\n');
  lines.pop_back();  // after the final newline
  if (lines.size() % 3 != 0) return absl::InvalidArgumentError("truncated checkpoint text");
  for (size_t i = 0; i < lines.size(); i += 3) {
    LogCheckpoint cp;
    const std::string& size_str = lines[i];
    auto [ptr, ec] = std::from_chars(size_str.data(), size_str.data() + size_str.size(),
                                     cp.tree_size);
    if (size_str.empty() || ec != std::errc() || ptr != size_str.data() + size_str.size()) {
      return absl::InvalidArgumentError("invalid checkpoint tree size");
    }
    auto root = DigestFromHex(lines[i + 1]);
    if (!root.ok()) return root.status();
    cp.root = *root;
    auto sig = Base64Decode(lines[i + 2]);
    if (!sig.ok()) return sig.status();
    if (sig->size() != kSignatureSize) {
      return absl::InvalidArgumentError("checkpoint signature has wrong length");
    }
    cp.signature = std::move(*sig);
    out.push_back(std::move(cp));
  }
  return out;
}

std::string_view LogVerdictName(LogVerdict v) {
  switch (v) {
    case LogVerdict::kAccept:
      return "accept";
    case LogVerdict::kBadSignature:
      return "bad-log-signature";
    case LogVerdict::kRootMismatch:
      return "root-mismatch";
    case LogVerdict::kMalformed:
      return "malformed";
  }
  return "unknown";
}

bool VerifyCheckpointSignature(const LogCheckpoint& cp, const PublicKey& log_key) {
  return log_key.Verify(cp.SignedMessage(), cp.signature);
}

LogVerdict LogVerifyInclusion(const LogCheckpoint& cp, const Digest& leaf_hash,
                              const LogInclusionProof& proof, const PublicKey& log_key) {
  if (!VerifyCheckpointSignature(cp, log_key)) return LogVerdict::kBadSignature;
  if (proof.tree_size != cp.tree_size || proof.index >= proof.tree_size || proof.path.size() > 64) {
    return LogVerdict::kMalformed;
  }
  if (!VerifyMerkleInclusion(proof.index, proof.tree_size, leaf_hash, proof.path, cp.root)) {
    return LogVerdict::kRootMismatch;
  }
  return LogVerdict::kAccept;
}

LogVerdict LogVerifyConsistency(const LogCheckpoint& old_cp, const LogCheckpoint& new_cp,
                                const LogConsistencyProof& proof, const PublicKey& log_key) {
  if (!VerifyCheckpointSignature(old_cp, log_key) || !VerifyCheckpointSignature(new_cp, log_key)) {
    return LogVerdict::kBadSignature;
  }
  if (proof.old_size != old_cp.tree_size || proof.new_size != new_cp.tree_size ||
      old_cp.tree_size > new_cp.tree_size) {
    return LogVerdict::kMalformed;
  }
  if (!VerifyMerkleConsistency(old_cp.tree_size, new_cp.tree_size, old_cp.root, new_cp.root,
                               proof.path)) {
    return LogVerdict::kRootMismatch;
  }
  return LogVerdict::kAccept;
}

TransparencyLog::TransparencyLog(fs::path dir, Mode mode) : dir_(std::move(dir)), mode_(mode) {}

TransparencyLog::~TransparencyLog() {
  if (lock_fd_ >= 0) {
    ::flock(lock_fd_, LOCK_UN);
    ::close(lock_fd_);
  }
}

absl::StatusOr<std::unique_ptr<TransparencyLog>> TransparencyLog::Create(const fs::path& dir,
                                                                         const SigningKey& key) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) return absl::UnavailableError(ec.message());
  if (fs::exists(dir / kIndexFile)) {
    return absl::AlreadyExistsError(absl::StrCat("a log already exists at ", dir.string()));
  }
  if (auto s = WriteNewFile(dir / kKeyFile, HexEncode(key.Seed()) + "\n"); !s.ok()) return s;
  fs::permissions(dir / kKeyFile, fs::perms::owner_read | fs::perms::owner_write,
                  fs::perm_options::replace, ec);
  if (auto s = WriteNewFile(dir / kPubFile, key.public_key().ToHex() + "\n"); !s.ok()) return s;
  for (const char* f : {kEntriesFile, kIndexFile, kCheckpointsFile}) {
    if (auto s = WriteNewFile(dir / f, ""); !s.ok()) return s;
  }
  return Open(dir, Mode::kReadWrite);
}

absl::StatusOr<std::unique_ptr<TransparencyLog>> TransparencyLog::Open(const fs::path& dir,
                                                                       Mode mode) {
  std::unique_ptr<TransparencyLog> log(new TransparencyLog(dir, mode));
  auto pub = ReadWholeFile(dir / kPubFile);
  if (!pub.ok()) return pub.status();
  auto pk = PublicKey::FromHex(SV(absl::StripTrailingAsciiWhitespace(*pub)));
  if (!pk.ok()) return pk.status();
  log->public_key_ = *pk;

  if (mode == Mode::kReadWrite) {
    log->lock_fd_ = ::open((dir / kLockFile).c_str(), O_RDWR | O_CREAT | O_CLOEXEC, 0600);
    if (log->lock_fd_ < 0) return Errno("cannot open lock file in", dir);
    if (::flock(log->lock_fd_, LOCK_EX | LOCK_NB) != 0) {
      return absl::FailedPreconditionError(
          absl::StrCat("log ", dir.string(), " is open for writing elsewhere"));
    }
    auto seed_hex = ReadWholeFile(dir / kKeyFile);
    if (!seed_hex.ok()) return seed_hex.status();
    auto seed = HexDecode(SV(absl::StripTrailingAsciiWhitespace(*seed_hex)));
    if (!seed.ok()) return seed.status();
    auto key = SigningKey::FromSeed(*seed);
    if (!key.ok()) return key.status();
    if (!(key->public_key() == log->public_key_)) {
      return absl::FailedPreconditionError("log.key does not match log.pub");
    }
    log->key_ = std::make_unique<SigningKey>(*key);
  }
  if (auto s = log->Load(); !s.ok()) return s;
  return log;
}

absl::Status TransparencyLog::Load() {
  auto index = ReadWholeFile(dir_ / kIndexFile);
  if (!index.ok()) return index.status();
  auto entries = ReadWholeFile(dir_ / kEntriesFile);
  if (!entries.ok()) return entries.status();
  if (index->size() % 8 != 0) return absl::DataLossError("index.dat is truncated");

  ByteReader idx(AsBytes(*index));
  uint64_t expected_offset = 0;
  const ByteSpan data = AsBytes(*entries);
  while (!idx.done()) {
    const uint64_t off = *idx.GetU64();
    if (off != expected_offset) return absl::DataLossError("index.dat is inconsistent");
    ByteReader r(data.subspan(std::min<uint64_t>(off, data.size())));
    auto payload = r.GetFramed();
    if (!payload.ok()) return absl::DataLossError("entries.dat is truncated");
    offsets_.push_back(off);
    leaves_.push_back(LogLeafHash(*payload));
    expected_offset = off + 4 + payload->size();
  }
  if (expected_offset != data.size() && mode_ == Mode::kReadWrite) {
    // Bytes past the last indexed entry come from an interrupted append.
    if (::truncate((dir_ / kEntriesFile).c_str(), static_cast<off_t>(expected_offset)) != 0) {
      return Errno("cannot truncate", dir_ / kEntriesFile);
    }
  }
  return absl::OkStatus();
}

absl::Status TransparencyLog::StorageWrite(const fs::path& file, ByteSpan data, int& write_no) {
  const int fd = ::open(file.c_str(), O_WRONLY | O_APPEND | O_CLOEXEC);
  if (fd < 0) return Errno("cannot open", file);
  size_t done = 0;
  while (done < data.size()) {
    const ssize_t n = ::write(fd, data.data() + done, data.size() - done);
    if (n < 0) {
      if (errno == EINTR) continue;
      const absl::Status s = Errno("write failed on", file);
      ::close(fd);
      return s;
    }
    done += static_cast<size_t>(n);
  }
  const int sync_rc = ::fdatasync(fd);
  ::close(fd);
  if (sync_rc != 0) return Errno("fdatasync failed on", file);
  if (++write_no == fail_after_write_) {
    fail_after_write_ = 0;
    return absl::UnavailableError("injected storage failure");
  }
  return absl::OkStatus();
}

absl::StatusOr<AppendResult> TransparencyLog::Append(ByteSpan payload) {
  if (mode_ != Mode::kReadWrite) return absl::FailedPreconditionError("log opened read-only");
  if (payload.size() > (1u << 30)) return absl::InvalidArgumentError("payload too large");
  std::unique_lock lock(mu_);

  const fs::path entries_path = dir_ / kEntriesFile;
  const fs::path index_path = dir_ / kIndexFile;
  const fs::path cps_path = dir_ / kCheckpointsFile;
  const uint64_t entries_size = FileSizeOrZero(entries_path);
  const uint64_t index_size = FileSizeOrZero(index_path);
  const uint64_t cps_size = FileSizeOrZero(cps_path);

  const uint64_t index = leaves_.size();
  ByteWriter record;
  record.PutFramed(payload);
  ByteWriter offset;
  offset.PutU64(entries_size);

  std::vector<Digest> leaves = leaves_;
  leaves.push_back(LogLeafHash(payload));
  LogCheckpoint cp{leaves.size(), LogRoot(leaves), {}};
  cp.signature = key_->Sign(cp.SignedMessage());
  const std::string cp_text = cp.ToText();

  int write_no = 0;
  absl::Status s = StorageWrite(entries_path, record.bytes(), write_no);
  if (s.ok()) s = StorageWrite(index_path, offset.bytes(), write_no);
  if (s.ok()) s = StorageWrite(cps_path, AsBytes(cp_text), write_no);
  if (!s.ok()) {
    std::error_code ec;
    bool rolled_back = true;
    for (const auto& [path, len] : {std::pair{entries_path, entries_size},
                                    std::pair{index_path, index_size},
                                    std::pair{cps_path, cps_size}}) {
      fs::resize_file(path, len, ec);
      rolled_back = rolled_back && !ec;
    }
    if (!rolled_back) {
      return absl::DataLossError(absl::StrCat(s.message(), "; rollback failed"));
    }
    return s;
  }

  leaves_ = std::move(leaves);
  offsets_.push_back(entries_size);
  Effects().log_writes.fetch_add(1);

  AppendResult result;
  result.entry = LogEntry{index, Bytes(payload.begin(), payload.end()), leaves_.back()};
  result.proof = LogInclusionProof{index, leaves_.size(), *MerkleInclusionPath(leaves_, index)};
  result.checkpoint = std::move(cp);
  return result;
}

uint64_t TransparencyLog::size() const {
  std::shared_lock lock(mu_);
  return leaves_.size();
}

absl::StatusOr<LogEntry> TransparencyLog::Entry(uint64_t index) const {
  std::shared_lock lock(mu_);
  if (index >= leaves_.size()) return absl::OutOfRangeError("entry index out of range");
  const int fd = ::open((dir_ / kEntriesFile).c_str(), O_RDONLY | O_CLOEXEC);
  if (fd < 0) return Errno("cannot open", dir_ / kEntriesFile);
  std::array<uint8_t, 4> len_buf;
  Bytes payload;
  bool ok = ::pread(fd, len_buf.data(), 4, static_cast<off_t>(offsets_[index])) == 4;
  if (ok) {
    const uint32_t len = (uint32_t{len_buf[0]} << 24) | (uint32_t{len_buf[1]} << 16) |
                         (uint32_t{len_buf[2]} << 8) | len_buf[3];
    payload.resize(len);
    ok = ::pread(fd, payload.data(), len, static_cast<off_t>(offsets_[index] + 4)) ==
         static_cast<ssize_t>(len);
  }
  ::close(fd);
  if (!ok) return absl::DataLossError("cannot read log entry");
  if (LogLeafHash(payload) != leaves_[index]) {
    return absl::DataLossError("log entry changed on disk");
  }
  return LogEntry{index, std::move(payload), leaves_[index]};
}

absl::StatusOr<Digest> TransparencyLog::RootAt(uint64_t tree_size) const {
  std::shared_lock lock(mu_);
  if (tree_size > leaves_.size()) return absl::OutOfRangeError("tree size beyond log size");
  return LogRoot(std::span<const Digest>(leaves_).first(tree_size));
}

absl::StatusOr<LogInclusionProof> TransparencyLog::ProveInclusion(uint64_t index,
                                                                  uint64_t tree_size) const {
  std::shared_lock lock(mu_);
  if (tree_size > leaves_.size()) {
    return absl::OutOfRangeError(
        absl::StrCat("tree size ", tree_size, " beyond log size ", leaves_.size()));
  }
  auto path = MerkleInclusionPath(std::span<const Digest>(leaves_).first(tree_size), index);
  if (!path.ok()) return path.status();
  return LogInclusionProof{index, tree_size, std::move(*path)};
}

absl::StatusOr<LogConsistencyProof> TransparencyLog::ProveConsistency(uint64_t old_size,
                                                                      uint64_t new_size) const {
  std::shared_lock lock(mu_);
  if (old_size > new_size || new_size > leaves_.size()) {
    return absl::OutOfRangeError(absl::StrCat("invalid consistency range ", old_size, " -> ",
                                              new_size, " for log size ", leaves_.size()));
  }
  auto path = MerkleConsistencyPath(std::span<const Digest>(leaves_).first(new_size), old_size);
  if (!path.ok()) return path.status();
  return LogConsistencyProof{old_size, new_size, std::move(*path)};
}

absl::StatusOr<std::vector<LogCheckpoint>> TransparencyLog::RecordedCheckpoints() const {
  std::shared_lock lock(mu_);
  auto text = ReadWholeFile(dir_ / kCheckpointsFile);
  if (!text.ok()) return text.status();
  return LogCheckpoint::ParseAll(*text);
}

AuditReport TransparencyLog::Audit() const {
  AuditReport report;
  auto fail = [&](std::string msg) {
    report.ok = false;
    report.failure = std::move(msg);
    return report;
  };
  auto cps = RecordedCheckpoints();
  if (!cps.ok()) return fail(std::string(cps.status().message()));
  const LogCheckpoint* prev = nullptr;
  for (const LogCheckpoint& cp : *cps) {
    const size_t i = report.checkpoints_checked;
    if (!VerifyCheckpointSignature(cp, public_key_)) {
      return fail(absl::StrCat("checkpoint ", i, ": bad signature"));
    }
    auto root = RootAt(cp.tree_size);
    if (!root.ok()) {
      return fail(absl::StrCat("checkpoint ", i, ": size ", cp.tree_size, " exceeds log"));
    }
    if (*root != cp.root) {
      return fail(absl::StrCat("checkpoint ", i, ": log contents diverge from signed root"));
    }
    if (prev != nullptr) {
      if (prev->tree_size > cp.tree_size) {
        return fail(absl::StrCat("checkpoint ", i, ": tree size decreased"));
      }
      auto proof = ProveConsistency(prev->tree_size, cp.tree_size);
      if (!proof.ok() ||
          LogVerifyConsistency(*prev, cp, *proof, public_key_) != LogVerdict::kAccept) {
        return fail(absl::StrCat("checkpoint ", i, ": not consistent with checkpoint ", i - 1));
      }
    }
    prev = &cp;
    ++report.checkpoints_checked;
  }
  return report;
}

}  // namespace mtk
