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

#include "mtk/bench.h"

#include <fcntl.h>
#include <unistd.h>

#include <algorithm>
#include <cerrno>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <optional>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_split.h"
#include "mtk/model_hash.h"
#include "mtk/parallel.h"
#include "mtk/random.h"
#include "mtk/strings.h"
#include "mtk/zks.h"

namespace mtk {
namespace fs = std::filesystem;
namespace {

using SteadyClock = std::chrono::steady_clock;

constexpr uint64_t kScratchHeadroom = uint64_t{256} << 20;

double Elapsed(SteadyClock::time_point t0) {
  return std::chrono::duration<double>(SteadyClock::now() - t0).count();
}

std::string FormatSeconds(double s) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.9g", s);
  return buf;
}

BenchRecord Summarize(std::string experiment, std::string operation, uint64_t param,
                      unsigned workers, std::vector<double> samples, std::string fingerprint) {
  BenchRecord r;
  r.experiment = std::move(experiment);
  r.operation = std::move(operation);
  r.param = param;
  r.runs = static_cast<int>(samples.size());
  r.workers = workers;
  r.fingerprint = std::move(fingerprint);
  std::sort(samples.begin(), samples.end());
  const size_t k = samples.size();
  if (k > 0) {
    r.median_seconds = k % 2 == 1 ? samples[k / 2] : (samples[k / 2 - 1] + samples[k / 2]) / 2;
    r.min_seconds = samples.front();
    r.max_seconds = samples.back();
  }
  return r;
}

// Repeats op until min_seconds of measured time accumulate; prepare runs
// before each repetition and is not timed. Returns seconds per repetition.
absl::StatusOr<double> TimeRun(double min_seconds, const std::function<void()>& prepare,
                               const std::function<absl::Status()>& op) {
  double total = 0;
  int iters = 0;
  do {
    if (prepare) prepare();
    const auto t0 = SteadyClock::now();
    const absl::Status s = op();
    total += Elapsed(t0);
    if (!s.ok()) return s;
    ++iters;
  } while (total < min_seconds);
  return total / iters;
}

void EvictFromCache(const fs::path& path) {
  const int fd = ::open(path.c_str(), O_RDONLY | O_CLOEXEC);
  if (fd < 0) return;
  ::posix_fadvise(fd, 0, 0, POSIX_FADV_DONTNEED);
  ::close(fd);
}

void Emit(std::vector<BenchRecord>& out, const RecordSink& sink, BenchRecord r) {
  if (sink) sink(r);
  out.push_back(std::move(r));
}

}  // namespace

std::string BenchCsvHeader() {
  return "schema,experiment,operation,param,runs,workers,median_seconds,min_seconds,"
         "max_seconds,fingerprint,note\n";
}

std::string BenchCsvRow(const BenchRecord& r) {
  std::string note = r.note;
  std::replace(note.begin(), note.end(), ',', ';');
  return absl::StrCat(AV(kBenchSchema), ",", r.experiment, ",", r.operation, ",", r.param, ",",
                      r.runs, ",", r.workers, ",", FormatSeconds(r.median_seconds), ",",
                      FormatSeconds(r.min_seconds), ",", FormatSeconds(r.max_seconds), ",",
                      r.fingerprint, ",", note, "\n");
}

absl::StatusOr<std::vector<BenchRecord>> ParseBenchCsv(std::string_view text) {
  std::vector<BenchRecord> out;
  bool header = true;
  for (absl::string_view line : absl::StrSplit(AV(text), '\n', absl::SkipEmpty())) {
    if (header) {
      if (absl::StrCat(line, "\n") != BenchCsvHeader()) {
        return absl::InvalidArgumentError("unexpected benchmark CSV header");
      }
      header = false;
      continue;
    }
    std::vector<std::string> f = absl::StrSplit(line, ',');
    if (f.size() != 11 || f[0] != kBenchSchema) {
      return absl::InvalidArgumentError(absl::StrCat("malformed benchmark row: ", line));
    }
    BenchRecord r;
    r.experiment = f[1];
    r.operation = f[2];
    r.param = std::strtoull(f[3].c_str(), nullptr, 10);
    r.runs = std::atoi(f[4].c_str());
    r.workers = static_cast<unsigned>(std::strtoul(f[5].c_str(), nullptr, 10));
    r.median_seconds = std::strtod(f[6].c_str(), nullptr);
    r.min_seconds = std::strtod(f[7].c_str(), nullptr);
    r.max_seconds = std::strtod(f[8].c_str(), nullptr);
    r.fingerprint = f[9];
    r.note = f[10];
    out.push_back(std::move(r));
  }
  if (header) return absl::InvalidArgumentError("empty benchmark CSV");
  return out;
}

absl::Status WriteSyntheticFile(const fs::path& path, uint64_t size, uint64_t seed) {
  const int fd = ::open(path.c_str(), O_WRONLY | O_CREAT | O_TRUNC | O_CLOEXEC, 0644);
  if (fd < 0) {
    return absl::UnavailableError(absl::StrCat("cannot create ", path.string(), ": ",
                                               std::strerror(errno)));
  }
  SeededRng rng(seed);
  std::vector<uint8_t> buf(std::min<uint64_t>(size, uint64_t{4} << 20));
  uint64_t left = size;
  while (left > 0) {
    const size_t n = static_cast<size_t>(std::min<uint64_t>(left, buf.size()));
    rng.Fill(std::span<uint8_t>(buf.data(), n));
    size_t done = 0;
    while (done < n) {
      const ssize_t w = ::write(fd, buf.data() + done, n - done);
      if (w < 0 && errno == EINTR) continue;
      if (w < 0) {
        const int err = errno;
        ::close(fd);
        return absl::UnavailableError(absl::StrCat("write failed: ", std::strerror(err)));
      }
      done += static_cast<size_t>(w);
    }
    left -= n;
  }
  // Dirty pages cannot be evicted; flush so cold-cache runs really read disk.
  const int rc = ::fdatasync(fd);
  ::close(fd);
  if (rc != 0) return absl::UnavailableError("fdatasync failed");
  return absl::OkStatus();
}

absl::StatusOr<std::vector<BenchRecord>> BenchHash(const HashBenchOptions& options) {
  if (options.runs < kMinHashRuns) {
    return absl::InvalidArgumentError(absl::StrCat("hash benchmarks need at least ", kMinHashRuns, " runs"));
  }
  std::vector<BenchRecord> out;
  const unsigned workers = ResolveWorkers(options.workers);

  HashOptions naive;
  naive.scheme = HashScheme::kNaive;
  naive.chunk_size = 0;
  naive.alg = options.alg;
  naive.workers = 1;
  HashOptions chunked;
  chunked.scheme = HashScheme::kChunked;
  chunked.chunk_size = options.chunk_size;
  chunked.alg = options.alg;
  chunked.workers = workers;

  for (const uint64_t size : options.sizes) {
    std::error_code ec;
    const fs::space_info space = fs::space(options.scratch_dir, ec);
    if (ec || space.available < size + kScratchHeadroom) {
      for (const char* op : {"hash-naive", "hash-chunked"}) {
        BenchRecord skipped;
        skipped.experiment = "hash";
        skipped.operation = op;
        skipped.param = size;
        skipped.workers = std::string_view(op) == "hash-naive" ? 1 : workers;
        skipped.note = absl::StrCat("skipped: needs ", size + kScratchHeadroom,
                                    " bytes of free scratch space");
        Emit(out, options.on_record, std::move(skipped));
      }
      continue;
    }

    const fs::path file =
        options.scratch_dir / absl::StrCat("mtk-bench-", options.seed, "-", size, ".bin");
    if (auto s = WriteSyntheticFile(file, size, options.seed ^ size); !s.ok()) return s;

    std::vector<double> naive_t;
    std::vector<double> chunked_t;
    std::optional<ModelDigest> naive_d;
    std::optional<ModelDigest> chunked_d;
    std::function<void()> prepare;
    if (options.cold_cache) prepare = [&] { EvictFromCache(file); };
    auto timed = [&](const HashOptions& ho, std::optional<ModelDigest>& seen,
                     std::vector<double>& samples) -> absl::Status {
      auto t = TimeRun(options.min_run_seconds, prepare, [&]() -> absl::Status {
        auto d = HashFile(file, ho);
        if (!d.ok()) return d.status();
        if (seen && !(*seen == *d)) return absl::InternalError("digest changed between runs");
        seen = *d;
        return absl::OkStatus();
      });
      if (!t.ok()) return t.status();
      samples.push_back(*t);
      return absl::OkStatus();
    };
    absl::Status status;
    // Interleaved so slow drift in machine state affects both schemes alike.
    for (int r = 0; r < options.runs && status.ok(); ++r) {
      status = timed(naive, naive_d, naive_t);
      if (status.ok()) status = timed(chunked, chunked_d, chunked_t);
    }
    fs::remove(file, ec);
    if (!status.ok()) return status;

    BenchRecord rn = Summarize("hash", "hash-naive", size, 1, naive_t, naive_d->ToString());
    BenchRecord rc =
        Summarize("hash", "hash-chunked", size, workers, chunked_t, chunked_d->ToString());
    if (options.cold_cache) rn.note = rc.note = "cold-cache";
    Emit(out, options.on_record, std::move(rn));
    Emit(out, options.on_record, std::move(rc));
  }
  return out;
}

absl::StatusOr<std::vector<BenchRecord>> BenchZks(const ZksBenchOptions& options) {
  if (options.runs < kMinZksRuns || options.queries_per_run < 1) {
    return absl::InvalidArgumentError(
        absl::StrCat("ZKS benchmarks need at least ", kMinZksRuns, " runs and one query"));
  }
  std::vector<BenchRecord> out;
  for (const uint64_t n : options.sizes) {
    if (n == 0) return absl::InvalidArgumentError("set size must be positive");
    SeededRng rng(options.seed * 0x9e3779b97f4a7c15ULL + n);
    std::vector<Bytes> elements;
    try {
      elements.reserve(n);
      for (uint64_t i = 0; i < n; ++i) elements.push_back(rng.RandomBytes(32));
    } catch (const std::bad_alloc&) {
      BenchRecord skipped;
      skipped.experiment = "zks";
      skipped.operation = "commit";
      skipped.param = n;
      skipped.note = "skipped: allocation failed";
      Emit(out, options.on_record, std::move(skipped));
      continue;
    }

    std::vector<double> commit_t;
    std::optional<ZksState> state;
    ZksCommitment com;
    std::string fingerprint;
    for (int r = 0; r < options.runs; ++r) {
      state.reset();
      std::vector<Bytes> input = elements;
      const auto t0 = SteadyClock::now();
      auto committed = ZksState::Commit(std::move(input), options.lambda_bits, rng,
                                        options.workers);
      commit_t.push_back(Elapsed(t0));
      if (!committed.ok()) return committed.status();
      state.emplace(std::move(committed->first));
      com = committed->second;
      if (r == 0) fingerprint = absl::StrCat("root=", DigestHex(com.com.root));
    }
    Emit(out, options.on_record,
         Summarize("zks", "commit", n, options.workers, commit_t, fingerprint));

    std::vector<double> prove_in, verify_in, prove_out, verify_out;
    for (int r = 0; r < options.runs; ++r) {
      double pi = 0, vi = 0, po = 0, vo = 0;
      for (int q = 0; q < options.queries_per_run; ++q) {
        const Bytes& member = elements[rng.Uniform(n)];
        const Bytes outsider = rng.RandomBytes(33);  // length differs from members
        for (const bool is_member : {true, false}) {
          const ByteSpan x = is_member ? ByteSpan(member) : ByteSpan(outsider);
          auto t0 = SteadyClock::now();
          auto proof = state->Query(x, rng);
          const double tp = Elapsed(t0);
          if (!proof.ok()) return proof.status();
          const ZksResponse want = is_member ? ZksResponse::kMember : ZksResponse::kNonMember;
          t0 = SteadyClock::now();
          const ZksVerdict v = ZksVerify(com, x, proof->resp, *proof);
          const double tv = Elapsed(t0);
          if (v != ZksVerdict::kAccept || proof->resp != want) {
            return absl::InternalError(absl::StrCat("benchmark proof failed to verify at n=", n));
          }
          (is_member ? pi : po) += tp;
          (is_member ? vi : vo) += tv;
        }
      }
      const double q = options.queries_per_run;
      prove_in.push_back(pi / q);
      verify_in.push_back(vi / q);
      prove_out.push_back(po / q);
      verify_out.push_back(vo / q);
    }
    Emit(out, options.on_record, Summarize("zks", "prove-incl", n, 1, prove_in, fingerprint));
    Emit(out, options.on_record, Summarize("zks", "verify-incl", n, 1, verify_in, fingerprint));
    Emit(out, options.on_record, Summarize("zks", "prove-nonincl", n, 1, prove_out, fingerprint));
    Emit(out, options.on_record,
         Summarize("zks", "verify-nonincl", n, 1, verify_out, fingerprint));
  }
  return out;
}

}  // namespace mtk
