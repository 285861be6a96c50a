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

// Benchmark harness for hashing and ZKS operations.
//
// Every record is a median over `runs` independent runs. A run of a fast
// operation repeats it until at least min_run_seconds have elapsed and
// reports the mean, so microsecond-scale timings are not dominated by clock
// granularity. Outputs are verified while they are timed; fingerprints let a
// CSV double as a correctness log.

#ifndef MTK_BENCH_H_
#define MTK_BENCH_H_

#include <cstdint>
#include <filesystem>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "absl/status/statusor.h"
#include "mtk/hash.h"

namespace mtk {

inline constexpr std::string_view kBenchSchema = "mtk-bench/v1";
inline constexpr int kMinHashRuns = 5;
inline constexpr int kMinZksRuns = 10;

struct BenchRecord {
  std::string experiment;  // "hash" or "zks"
  std::string operation;   // e.g. "hash-naive", "commit", "prove-incl"
  uint64_t param = 0;      // file size in bytes or set size n
  int runs = 0;
  unsigned workers = 0;
  double median_seconds = 0;
  double min_seconds = 0;
  double max_seconds = 0;
  std::string fingerprint;
  std::string note;  // non-empty for skipped or degraded rows
};

std::string BenchCsvHeader();
std::string BenchCsvRow(const BenchRecord& r);
absl::StatusOr<std::vector<BenchRecord>> ParseBenchCsv(std::string_view text);

using RecordSink = std::function<void(const BenchRecord&)>;

struct HashBenchOptions {
  std::vector<uint64_t> sizes;
  int runs = 5;
  unsigned workers = 0;  // chunked scheme only; 0 = hardware concurrency
  uint64_t chunk_size = uint64_t{8} << 20;
  HashAlg alg = HashAlg::kSha256;
  std::filesystem::path scratch_dir = std::filesystem::temp_directory_path();
  uint64_t seed = 1;
  // Evict each file from the page cache before every timed pass.
  bool cold_cache = false;
  double min_run_seconds = 0.02;
  RecordSink on_record;
};

// Emits hash-naive and hash-chunked rows per size. Sizes that do not fit
// in free scratch space produce a "skipped" row with a note.
absl::StatusOr<std::vector<BenchRecord>> BenchHash(const HashBenchOptions& options);

struct ZksBenchOptions {
  std::vector<uint64_t> sizes;
  int runs = 10;
  // Queries averaged per prove/verify run.
  int queries_per_run = 20;
  unsigned workers = 1;
  size_t lambda_bits = 256;
  uint64_t seed = 1;
  RecordSink on_record;
};

// Emits commit, prove-incl, verify-incl, prove-nonincl and verify-nonincl
// rows per set size.
absl::StatusOr<std::vector<BenchRecord>> BenchZks(const ZksBenchOptions& options);

// Writes size bytes of seeded pseudorandom content.
absl::Status WriteSyntheticFile(const std::filesystem::path& path, uint64_t size,
                                uint64_t seed);

}  // namespace mtk

#endif  // MTK_BENCH_H_
