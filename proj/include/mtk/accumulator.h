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

// Static Patricia-Merkle accumulator over 256-bit keys.
//
// The trie is binary and prefix-compressed. Every internal node sits at a
// path p (a bit string) and has children at full paths p.c0 and p.c1, where
// the suffixes c0 and c1 are relative to p and start with bit 0 and bit 1.
// All hashes are SHA-256:
//
//   leaf      H("mtk.acc.v1.leaf"  || key || value)
//   internal  H("mtk.acc.v1.node"  || enc(p) || h_{p.c0} || h_{p.c1}
//                                  || enc(c0) || enc(c1))
//   empty     H("mtk.acc.v1.empty")
//
// where enc(bits) = u16-BE bit length || ceil(len/8) bytes, MSB first, with
// the unused low bits of the last byte zero.
//
// The root always sits at the empty path. When every key starts with the
// same bit (in particular for a single key) the root has one "absent" child,
// encoded as the empty suffix with the empty hash. Inclusion paths list only
// nodes that have two present children; a verifier that ends below the root
// closes the path with the one-sided root. A single-entry tree therefore has
// root H(node || enc("") || ...) over the lone leaf and an empty proof path.
// The empty map commits to the empty hash.

#ifndef MTK_ACCUMULATOR_H_
#define MTK_ACCUMULATOR_H_

#include <array>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "absl/status/statusor.h"
#include "mtk/bytes.h"
#include "mtk/hash.h"

namespace mtk {

inline constexpr size_t kTrieKeyBits = 256;
using TrieKey = Digest;

// Fixed-capacity bit string of at most 256 bits, MSB-first.
class BitString {
 public:
  BitString() = default;
  // The first `len` bits of `key`.
  static BitString PrefixOf(const TrieKey& key, size_t len);
  // Bits [begin, end) of `key`.
  static BitString Slice(const TrieKey& key, size_t begin, size_t end);

  size_t size() const { return len_; }
  bool empty() const { return len_ == 0; }
  bool Bit(size_t i) const { return (bytes_[i / 8] >> (7 - i % 8)) & 1; }

  // this || other; the result must fit in 256 bits.
  BitString Concat(const BitString& other) const;
  bool IsPrefixOf(const TrieKey& key) const;
  bool IsPrefixOf(const BitString& other) const;

  void Encode(ByteWriter& w) const;
  static absl::StatusOr<BitString> Decode(ByteReader& r);

  friend bool operator==(const BitString&, const BitString&) = default;

 private:
  void SetBit(size_t i, bool v);

  std::array<uint8_t, 32> bytes_{};
  uint16_t len_ = 0;
};

bool KeyBit(const TrieKey& key, size_t i);

Digest AccLeafHash(const TrieKey& key, const Digest& value);
Digest AccNodeHash(const BitString& prefix, const Digest& h0, const Digest& h1,
                   const BitString& c0, const BitString& c1);
const Digest& AccEmptyHash();

struct TrieCommitment {
  Digest root;
  uint64_t size = 0;

  Bytes Serialize() const;
  static absl::StatusOr<TrieCommitment> Parse(ByteSpan bytes);
  friend bool operator==(const TrieCommitment&, const TrieCommitment&) = default;
};

// One internal node on the path, as seen from the child being proven.
struct PathStep {
  BitString prefix;
  BitString c0;
  BitString c1;
  Digest sibling_hash;

  friend bool operator==(const PathStep&, const PathStep&) = default;
};

// Steps are ordered bottom-up (leaf's parent first).
struct InclusionProof {
  TrieKey key;
  Digest value;
  std::vector<PathStep> path;

  Bytes Serialize() const;
  static absl::StatusOr<InclusionProof> Parse(ByteSpan bytes);
  friend bool operator==(const InclusionProof&, const InclusionProof&) = default;
};

// Witness node z with the longest prefix p of the queried key, its two
// children, and the inclusion path from z to the root. For the empty tree
// the proof carries only the empty_tree flag.
struct NonInclusionProof {
  bool empty_tree = false;
  BitString prefix;
  BitString c0;
  BitString c1;
  Digest h0{};
  Digest h1{};
  Digest node_hash{};
  std::vector<PathStep> path;

  Bytes Serialize() const;
  static absl::StatusOr<NonInclusionProof> Parse(ByteSpan bytes);
  friend bool operator==(const NonInclusionProof&, const NonInclusionProof&) = default;
};

struct TrieEntry {
  TrieKey key;
  Digest value;
};

// Immutable after construction; concurrent proving is safe.
class PatriciaTrie {
 public:
  // Keys must be distinct. Leaf hashing uses up to `workers` threads
  // (0 = hardware concurrency). The resulting root does not depend on the
  // order of `entries` or on the worker count.
  static absl::StatusOr<PatriciaTrie> Build(std::vector<TrieEntry> entries,
                                            unsigned workers = 1);

  TrieCommitment commitment() const { return {root_hash_, entries_.size()}; }
  size_t size() const { return entries_.size(); }
  std::optional<Digest> Lookup(const TrieKey& key) const;

  // NotFound if the key is absent.
  absl::StatusOr<InclusionProof> ProveInclusion(const TrieKey& key) const;
  // AlreadyExists if the key is present.
  absl::StatusOr<NonInclusionProof> ProveNonInclusion(const TrieKey& key) const;

 private:
  static constexpr uint32_t kAbsent = UINT32_MAX;

  struct Node {
    uint16_t prefix_len;  // 256 for leaves
    bool leaf;
    uint32_t child[2];
    uint32_t rep;  // entry index whose key carries this node's path bits
    Digest hash;
  };

  PatriciaTrie() = default;
  uint32_t BuildRange(size_t lo, size_t hi, const std::vector<Digest>& leaf_hashes);
  size_t PathLen(uint32_t node) const { return nodes_[node].prefix_len; }
  BitString Suffix(uint32_t parent, uint32_t child) const;
  PathStep StepAt(uint32_t node, bool own_side) const;
  // Descends towards `key`; returns the visited internal nodes (root first)
  // and the node at which the descent stopped.
  std::pair<std::vector<uint32_t>, uint32_t> Descend(const TrieKey& key) const;

  std::vector<TrieEntry> entries_;  // sorted by key
  std::vector<Node> nodes_;
  uint32_t root_ = kAbsent;
  Digest root_hash_{};
};

bool AccVerifyInclusion(const TrieCommitment& com, const TrieKey& key,
                        const Digest& value, const InclusionProof& proof);
bool AccVerifyNonInclusion(const TrieCommitment& com, const TrieKey& key,
                           const NonInclusionProof& proof);

}  // namespace mtk

#endif  // MTK_ACCUMULATOR_H_
