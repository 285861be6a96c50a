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

"""Recomputes ZKS trie keys and leaf values from the secret state.

Reads lines "sk_hex<TAB>element_hex<TAB>opening_hex" on stdin and prints
"key_hex<TAB>leaf_hex" per line.
"""

import hashlib
import os
import sys

sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))
import ristretto255 as r255  # noqa: E402

H2G_DST = b"MTK-V01-CS01-with-ristretto255_XMD:SHA-512_R255MAP_RO_"


def main():
    for line in sys.stdin:
        line = line.rstrip("\n")
        if not line:
            continue
        sk_hex, elem_hex, opening_hex = line.split("\t")
        sk = int.from_bytes(bytes.fromhex(sk_hex), "little")
        elem = bytes.fromhex(elem_hex)
        h = r255.from_uniform_bytes(r255.expand_message_xmd_sha512(elem, H2G_DST, 64))
        y = r255.encode(r255.mul(sk, h))
        key = hashlib.sha256(b"mtk.zks.v1.key" + y).hexdigest()
        leaf = hashlib.sha256(b"mtk.zks.v1.commit" + len(elem).to_bytes(8, "big") + elem +
                              bytes.fromhex(opening_hex)).hexdigest()
        print(f"{key}\t{leaf}")


if __name__ == "__main__":
    main()
