#!/usr/bin/env python3
# Copyright 2026 The Model Transparency Kit Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Independent model digests with hashlib.

Reads requests from stdin, one per line, tab separated:

    file <path> <alg> <chunk_size>      chunk_size 0 means naive
    dir  <path> <alg> <chunk_size>

and prints one lowercase hex digest per request.
"""

import hashlib
import os
import sys


def new_hash(alg):
    if alg == "sha256":
        return hashlib.sha256()
    if alg == "blake2b256":
        return hashlib.blake2b(digest_size=32)
    raise ValueError(alg)


def file_digest(path, alg, chunk):
    with open(path, "rb") as f:
        data = f.read()
    if chunk == 0:
        h = new_hash(alg)
        h.update(data)
        return h.digest()
    outer = new_hash(alg)
    pieces = [data[i:i + chunk] for i in range(0, len(data), chunk)] or [b""]
    for piece in pieces:
        inner = new_hash(alg)
        inner.update(piece)
        outer.update(inner.digest())
    return outer.digest()


def dir_digest(root, alg, chunk):
    entries = []
    for dirpath, _, files in os.walk(root):
        for name in files:
            if name.endswith(".sig"):
                continue
            full = os.path.join(dirpath, name)
            rel = os.path.relpath(full, root).replace(os.sep, "/")
            entries.append((rel.encode(), full))
    entries.sort()
    scheme = "naive" if chunk == 0 else "chunked"
    text = "mtk-manifest/v1\t%s\t%s\t%d\n" % (alg, scheme, chunk)
    for rel, full in entries:
        text += "%s\t%d\t%s\n" % (rel.decode(), os.path.getsize(full),
                                  file_digest(full, alg, chunk).hex())
    h = new_hash(alg)
    h.update(text.encode())
    return h.digest()


def main():
    for line in sys.stdin:
        line = line.rstrip("\n")
        if not line:
            continue
        kind, path, alg, chunk = line.split("\t")
        fn = file_digest if kind == "file" else dir_digest
        print(fn(path, alg, int(chunk)).hex(), flush=True)


if __name__ == "__main__":
    main()
