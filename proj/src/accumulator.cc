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

#include "mtk/accumulator.h"

#include <algorithm>
#include <bit>
#include <cstring>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "mtk/parallel.h"

namespace mtk {
namespace {

constexpr std::string_view kLeafTag = "mtk.acc.v1.leaf";
constexpr std::string_view kNodeTag = "mtk.acc.v1.node";
constexpr std::string_view kEmptyTag = "mtk.acc.v1.empty";

// Serialized object header: format version, object type, hash id.
constexpr uint8_t kFormatVersion = 1;
constexpr uint8_t kHashIdSha256 = 1;
constexpr uint8_t kTypeCommitment = 1;
constexpr uint8_t kTypeInclusion = 2;
constexpr uint8_t kTypeNonInclusion = 3;

void PutHeader(ByteWriter& w, uint8_t type) {
  w.PutU8(kFormatVersion);
  w.PutU8(type);
  w.PutU8(kHashIdSha256);
}

absl::Status CheckHeader(ByteReader& r, uint8_t type) {
  auto v = r.GetU8();
  auto t = r.GetU8();
  auto h = r.GetU8();
  if (!v.ok() || !t.ok() || !h.ok()) return absl::InvalidArgumentError("truncated header");
  if (*v != kFormatVersion) return absl::InvalidArgumentError("unsupported accumulator format version");
  if (*t != type) return absl::InvalidArgumentError("unexpected accumulator object type");
  if (*h != kHashIdSha256) return absl::InvalidArgumentError("unsupported hash id");
  return absl::OkStatus();
}

absl::StatusOr<Digest> GetDigest(ByteReader& r) {
  auto b = r.GetRaw(kDigestSize);
  if (!b.ok()) return b.status();
  return DigestFromBytes(*b);
}

size_t CommonPrefixBits(const TrieKey& a, const TrieKey& b) {
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] != b[i]) {
      return i * 8 + static_cast<size_t>(std::countl_zero(static_cast<uint8_t>(a[i] ^ b[i])));
    }
  }
  return kTrieKeyBits;
}

void PutStep(ByteWriter& w, const PathStep& s) {
  s.prefix.Encode(w);
  s.c0.Encode(w);
  s.c1.Encode(w);
  w.PutRaw(s.sibling_hash);
}

absl::StatusOr<std::vector<PathStep>> GetSteps(ByteReader& r) {
  auto count = r.GetU16();
  if (!count.ok()) return count.status();
  if (*count > kTrieKeyBits) return absl::InvalidArgumentError("proof path too long");
  std::vector<PathStep> steps;
  steps.reserve(*count);
  for (uint16_t i = 0; i < *count; ++i) {
    PathStep s;
    auto p = BitString::Decode(r);
    if (!p.ok()) return p.status();
    auto c0 = BitString::Decode(r);
    if (!c0.ok()) return c0.status();
    auto c1 = BitString::Decode(r);
    if (!c1.ok()) return c1.status();
    auto h = GetDigest(r);
    if (!h.ok()) return h.status();
    steps.push_back(PathStep{*p, *c0, *c1, *h});
  }
  return steps;
}

// Folds `steps` onto (hash, path length) of a node whose path is a prefix of
// `key`, then closes with the one-sided root if the walk ends below it.
bool WalkToRoot(Digest cur, size_t cur_len, const TrieKey& key,
                const std::vector<PathStep>& steps, const Digest& root) {
  for (const PathStep& step : steps) {
    const size_t p_len = step.prefix.size();
    if (p_len >= cur_len || !step.prefix.IsPrefixOf(key)) return false;
    const bool b = KeyBit(key, p_len);
    const BitString& own = b ? step.c1 : step.c0;
    const BitString& other = b ? step.c0 : step.c1;
    if (own != BitString::Slice(key, p_len, cur_len)) return false;
    if (other.empty() || other.Bit(0) == b || p_len + other.size() > kTrieKeyBits) {
      return false;
    }
    cur = b ? AccNodeHash(step.prefix, step.sibling_hash, cur, step.c0, step.c1)
            : AccNodeHash(step.prefix, cur, step.sibling_hash, step.c0, step.c1);
    cur_len = p_len;
  }
  if (cur_len > 0) {
    const BitString own = BitString::Slice(key, 0, cur_len);
    const BitString none;
    cur = KeyBit(key, 0) ? AccNodeHash(none, AccEmptyHash(), cur, none, own)
                         : AccNodeHash(none, cur, AccEmptyHash(), own, none);
  }
  return cur == root;
}

}  // namespace

bool KeyBit(const TrieKey& key, size_t i) { return (key[i / 8] >> (7 - i % 8)) & 1; }

BitString BitString::PrefixOf(const TrieKey& key, size_t len) { return Slice(key, 0, len); }

BitString BitString::Slice(const TrieKey& key, size_t begin, size_t end) {
  BitString out;
  if (end <= begin) return out;
  const size_t len = end - begin;
  const size_t shift = begin % 8;
  const size_t first = begin / 8;
  const size_t nbytes = (len + 7) / 8;
  for (size_t j = 0; j < nbytes; ++j) {
    const size_t src = first + j;
    uint8_t v = static_cast<uint8_t>(key[src] << shift);
    if (shift != 0 && src + 1 < key.size()) {
      v |= static_cast<uint8_t>(key[src + 1] >> (8 - shift));
    }
    out.bytes_[j] = v;
  }
  if (len % 8 != 0) out.bytes_[nbytes - 1] &= static_cast<uint8_t>(0xff << (8 - len % 8));
  out.len_ = static_cast<uint16_t>(len);
  return out;
}

void BitString::SetBit(size_t i, bool v) {
  const uint8_t mask = static_cast<uint8_t>(0x80 >> (i % 8));
  if (v) {
    bytes_[i / 8] |= mask;
  } else {
    bytes_[i / 8] &= static_cast<uint8_t>(~mask);
  }
}

BitString BitString::Concat(const BitString& other) const {
  BitString out = *this;
  const size_t total = std::min<size_t>(len_ + other.len_, kTrieKeyBits);
  for (size_t i = len_; i < total; ++i) out.SetBit(i, other.Bit(i - len_));
  out.len_ = static_cast<uint16_t>(total);
  return out;
}

bool BitString::IsPrefixOf(const TrieKey& key) const {
  const size_t full = len_ / 8;
  if (std::memcmp(bytes_.data(), key.data(), full) != 0) return false;
  if (len_ % 8 == 0) return true;
  const uint8_t mask = static_cast<uint8_t>(0xff << (8 - len_ % 8));
  return (bytes_[full] & mask) == (key[full] & mask);
}

bool BitString::IsPrefixOf(const BitString& other) const {
  if (len_ > other.len_) return false;
  return IsPrefixOf(other.bytes_);
}

void BitString::Encode(ByteWriter& w) const {
  w.PutU16(len_);
  w.PutRaw(ByteSpan(bytes_.data(), (len_ + 7) / 8));
}

absl::StatusOr<BitString> BitString::Decode(ByteReader& r) {
  auto len = r.GetU16();
  if (!len.ok()) return len.status();
  if (*len > kTrieKeyBits) return absl::InvalidArgumentError("bit string longer than 256 bits");
  auto raw = r.GetRaw((*len + 7) / 8);
  if (!raw.ok()) return raw.status();
  BitString out;
  std::copy(raw->begin(), raw->end(), out.bytes_.begin());
  out.len_ = *len;
  if (*len % 8 != 0) {
    const uint8_t pad_mask = static_cast<uint8_t>(0xff >> (*len % 8));
    if ((raw->back() & pad_mask) != 0) {
      return absl::InvalidArgumentError("nonzero padding bits in bit string");
    }
  }
  return out;
}

Digest AccLeafHash(const TrieKey& key, const Digest& value) {
  return Hasher(HashAlg::kSha256).Update(kLeafTag).Update(key).Update(value).Finish();
}

Digest AccNodeHash(const BitString& prefix, const Digest& h0, const Digest& h1,
                   const BitString& c0, const BitString& c1) {
  ByteWriter w;
  w.PutRaw(kNodeTag);
  prefix.Encode(w);
  w.PutRaw(h0);
  w.PutRaw(h1);
  c0.Encode(w);
  c1.Encode(w);
  return Sha256(w.bytes());
}

const Digest& AccEmptyHash() {
  static const Digest empty = Sha256(kEmptyTag);
  return empty;
}

Bytes TrieCommitment::Serialize() const {
  ByteWriter w;
  PutHeader(w, kTypeCommitment);
  w.PutRaw(root);
  w.PutU64(size);
  return std::move(w).Take();
}

absl::StatusOr<TrieCommitment> TrieCommitment::Parse(ByteSpan bytes) {
  ByteReader r(bytes);
  if (auto st = CheckHeader(r, kTypeCommitment); !st.ok()) return st;
  auto root = GetDigest(r);
  if (!root.ok()) return root.status();
  auto size = r.GetU64();
  if (!size.ok()) return size.status();
  if (!r.done()) return absl::InvalidArgumentError("trailing bytes after commitment");
  return TrieCommitment{*root, *size};
}

Bytes InclusionProof::Serialize() const {
  ByteWriter w;
  PutHeader(w, kTypeInclusion);
  w.PutRaw(key);
  w.PutRaw(value);
  w.PutU16(static_cast<uint16_t>(path.size()));
  for (const PathStep& s : path) PutStep(w, s);
  return std::move(w).Take();
}

absl::StatusOr<InclusionProof> InclusionProof::Parse(ByteSpan bytes) {
  ByteReader r(bytes);
  if (auto st = CheckHeader(r, kTypeInclusion); !st.ok()) return st;
  auto key = GetDigest(r);
  if (!key.ok()) return key.status();
  auto value = GetDigest(r);
  if (!value.ok()) return value.status();
  auto steps = GetSteps(r);
  if (!steps.ok()) return steps.status();
  if (!r.done()) return absl::InvalidArgumentError("trailing bytes after inclusion proof");
  return InclusionProof{*key, *value, std::move(*steps)};
}

Bytes NonInclusionProof::Serialize() const {
  ByteWriter w;
  PutHeader(w, kTypeNonInclusion);
  w.PutU8(empty_tree ? 1 : 0);
  if (empty_tree) return std::move(w).Take();
  prefix.Encode(w);
  c0.Encode(w);
  c1.Encode(w);
  w.PutRaw(h0);
  w.PutRaw(h1);
  w.PutRaw(node_hash);
  w.PutU16(static_cast<uint16_t>(path.size()));
  for (const PathStep& s : path) PutStep(w, s);
  return std::move(w).Take();
}

absl::StatusOr<NonInclusionProof> NonInclusionProof::Parse(ByteSpan bytes) {
  ByteReader r(bytes);
  if (auto st = CheckHeader(r, kTypeNonInclusion); !st.ok()) return st;
  auto flag = r.GetU8();
  if (!flag.ok()) return flag.status();
  if (*flag > 1) return absl::InvalidArgumentError("invalid empty-tree flag");
  NonInclusionProof p;
  p.empty_tree = *flag == 1;
  if (!p.empty_tree) {
    auto prefix = BitString::Decode(r);
    if (!prefix.ok()) return prefix.status();
    auto c0 = BitString::Decode(r);
    if (!c0.ok()) return c0.status();
    auto c1 = BitString::Decode(r);
    if (!c1.ok()) return c1.status();
    auto h0 = GetDigest(r);
    if (!h0.ok()) return h0.status();
    auto h1 = GetDigest(r);
    if (!h1.ok()) return h1.status();
    auto hz = GetDigest(r);
    if (!hz.ok()) return hz.status();
    auto steps = GetSteps(r);
    if (!steps.ok()) return steps.status();
    p.prefix = *prefix;
    p.c0 = *c0;
    p.c1 = *c1;
    p.h0 = *h0;
    p.h1 = *h1;
    p.node_hash = *hz;
    p.path = std::move(*steps);
  }
  if (!r.done()) return absl::InvalidArgumentError("trailing bytes after non-inclusion proof");
  return p;
}

absl::StatusOr<PatriciaTrie> PatriciaTrie::Build(std::vector<TrieEntry> entries,
                                                 unsigned workers) {
  std::sort(entries.begin(), entries.end(),
            [](const TrieEntry& a, const TrieEntry& b) { return a.key < b.key; });
  for (size_t i = 1; i < entries.size(); ++i) {
    if (entries[i - 1].key == entries[i].key) {
      return absl::InvalidArgumentError(
          absl::StrCat("duplicate trie key ", DigestHex(entries[i].key)));
    }
  }
  PatriciaTrie trie;
  trie.entries_ = std::move(entries);
  const size_t n = trie.entries_.size();
  if (n == 0) {
    trie.root_hash_ = AccEmptyHash();
    return trie;
  }
  if (n > UINT32_MAX / 2) return absl::ResourceExhaustedError("too many trie entries");

  std::vector<Digest> leaf_hashes(n);
  ParallelFor(n, workers, [&](size_t i) {
    leaf_hashes[i] = AccLeafHash(trie.entries_[i].key, trie.entries_[i].value);
  });

  trie.nodes_.reserve(2 * n);
  const uint32_t top = trie.BuildRange(0, n, leaf_hashes);
  if (trie.nodes_[top].prefix_len == 0) {
    trie.root_ = top;
  } else {
    // All keys share their first bit: wrap in a one-sided root.
    const bool b = KeyBit(trie.entries_[0].key, 0);
    Node root{0, false, {kAbsent, kAbsent}, 0, {}};
    root.child[b] = top;
    trie.nodes_.push_back(root);
    trie.root_ = static_cast<uint32_t>(trie.nodes_.size() - 1);
    const BitString none;
    const BitString suffix = trie.Suffix(trie.root_, top);
    trie.nodes_[trie.root_].hash =
        b ? AccNodeHash(none, AccEmptyHash(), trie.nodes_[top].hash, none, suffix)
          : AccNodeHash(none, trie.nodes_[top].hash, AccEmptyHash(), suffix, none);
  }
  trie.root_hash_ = trie.nodes_[trie.root_].hash;
  return trie;
}

uint32_t PatriciaTrie::BuildRange(size_t lo, size_t hi, const std::vector<Digest>& leaf_hashes) {
  if (hi - lo == 1) {
    nodes_.push_back(Node{static_cast<uint16_t>(kTrieKeyBits), true, {kAbsent, kAbsent},
                          static_cast<uint32_t>(lo), leaf_hashes[lo]});
    return static_cast<uint32_t>(nodes_.size() - 1);
  }
  const size_t lcp = CommonPrefixBits(entries_[lo].key, entries_[hi - 1].key);
  const auto split_it = std::partition_point(
      entries_.begin() + lo, entries_.begin() + hi,
      [lcp](const TrieEntry& e) { return !KeyBit(e.key, lcp); });
  const size_t split = static_cast<size_t>(split_it - entries_.begin());
  const uint32_t left = BuildRange(lo, split, leaf_hashes);
  const uint32_t right = BuildRange(split, hi, leaf_hashes);
  nodes_.push_back(Node{static_cast<uint16_t>(lcp), false, {left, right},
                        static_cast<uint32_t>(lo), {}});
  const uint32_t self = static_cast<uint32_t>(nodes_.size() - 1);
  nodes_[self].hash =
      AccNodeHash(BitString::PrefixOf(entries_[lo].key, lcp), nodes_[left].hash,
                  nodes_[right].hash, Suffix(self, left), Suffix(self, right));
  return self;
}

BitString PatriciaTrie::Suffix(uint32_t parent, uint32_t child) const {
  if (child == kAbsent) return BitString();
  return BitString::Slice(entries_[nodes_[child].rep].key, PathLen(parent), PathLen(child));
}

PathStep PatriciaTrie::StepAt(uint32_t node, bool own_side) const {
  const Node& n = nodes_[node];
  return PathStep{BitString::PrefixOf(entries_[n.rep].key, n.prefix_len),
                  Suffix(node, n.child[0]), Suffix(node, n.child[1]),
                  nodes_[n.child[!own_side]].hash};
}

std::pair<std::vector<uint32_t>, uint32_t> PatriciaTrie::Descend(const TrieKey& key) const {
  std::vector<uint32_t> ancestors;
  uint32_t cur = root_;
  while (!nodes_[cur].leaf) {
    const Node& n = nodes_[cur];
    const uint32_t c = n.child[KeyBit(key, n.prefix_len)];
    if (c == kAbsent || CommonPrefixBits(entries_[nodes_[c].rep].key, key) < PathLen(c)) break;
    ancestors.push_back(cur);
    cur = c;
  }
  return {std::move(ancestors), cur};
}

std::optional<Digest> PatriciaTrie::Lookup(const TrieKey& key) const {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), key,
                             [](const TrieEntry& e, const TrieKey& k) { return e.key < k; });
  if (it == entries_.end() || it->key != key) return std::nullopt;
  return it->value;
}

absl::StatusOr<InclusionProof> PatriciaTrie::ProveInclusion(const TrieKey& key) const {
  if (entries_.empty()) return absl::NotFoundError("key is not a member (empty tree)");
  auto [ancestors, stop] = Descend(key);
  if (!nodes_[stop].leaf) return absl::NotFoundError("key is not a member");
  InclusionProof proof{key, entries_[nodes_[stop].rep].value, {}};
  for (auto it = ancestors.rbegin(); it != ancestors.rend(); ++it) {
    const Node& n = nodes_[*it];
    if (n.child[0] == kAbsent || n.child[1] == kAbsent) continue;  // one-sided root
    proof.path.push_back(StepAt(*it, KeyBit(key, n.prefix_len)));
  }
  return proof;
}

absl::StatusOr<NonInclusionProof> PatriciaTrie::ProveNonInclusion(const TrieKey& key) const {
  NonInclusionProof proof;
  if (entries_.empty()) {
    proof.empty_tree = true;
    return proof;
  }
  auto [ancestors, stop] = Descend(key);
  if (nodes_[stop].leaf) return absl::AlreadyExistsError("key is a member");
  const Node& z = nodes_[stop];
  auto child_hash = [&](uint32_t c) { return c == kAbsent ? AccEmptyHash() : nodes_[c].hash; };
  proof.prefix = BitString::PrefixOf(entries_[z.rep].key, z.prefix_len);
  proof.c0 = Suffix(stop, z.child[0]);
  proof.c1 = Suffix(stop, z.child[1]);
  proof.h0 = child_hash(z.child[0]);
  proof.h1 = child_hash(z.child[1]);
  proof.node_hash = z.hash;
  for (auto it = ancestors.rbegin(); it != ancestors.rend(); ++it) {
    const Node& n = nodes_[*it];
    if (n.child[0] == kAbsent || n.child[1] == kAbsent) continue;
    proof.path.push_back(StepAt(*it, KeyBit(key, n.prefix_len)));
  }
  return proof;
}

bool AccVerifyInclusion(const TrieCommitment& com, const TrieKey& key,
                        const Digest& value, const InclusionProof& proof) {
  if (proof.key != key || proof.value != value) return false;
  if (proof.path.size() > kTrieKeyBits) return false;
  return WalkToRoot(AccLeafHash(key, value), kTrieKeyBits, key, proof.path, com.root);
}

bool AccVerifyNonInclusion(const TrieCommitment& com, const TrieKey& key,
                           const NonInclusionProof& proof) {
  if (proof.empty_tree) return com.size == 0 && com.root == AccEmptyHash();
  const size_t p_len = proof.prefix.size();
  if (p_len >= kTrieKeyBits || !proof.prefix.IsPrefixOf(key)) return false;
  int present = 0;
  for (int b = 0; b < 2; ++b) {
    const BitString& c = b ? proof.c1 : proof.c0;
    const Digest& h = b ? proof.h1 : proof.h0;
    if (c.empty()) {
      // Absent children exist only under the root.
      if (p_len != 0 || h != AccEmptyHash()) return false;
      continue;
    }
    ++present;
    if (c.Bit(0) != static_cast<bool>(b) || p_len + c.size() > kTrieKeyBits) return false;
    if (proof.prefix.Concat(c).IsPrefixOf(key)) return false;
  }
  if (present == 0) return false;
  if (AccNodeHash(proof.prefix, proof.h0, proof.h1, proof.c0, proof.c1) != proof.node_hash) {
    return false;
  }
  if (proof.path.size() > kTrieKeyBits) return false;
  return WalkToRoot(proof.node_hash, p_len, key, proof.path, com.root);
}

}  // namespace mtk
