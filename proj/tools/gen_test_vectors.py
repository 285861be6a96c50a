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

"""Writes tests/data/group_vrf_vectors_v1.json from the pure-Python oracle.

Usage: gen_test_vectors.py [output.json]
"""

import hashlib
import json
import os
import struct
import sys

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "oracle"))
import ristretto255 as r255  # noqa: E402

H2G_DST = b"MTK-V01-CS01-with-ristretto255_XMD:SHA-512_R255MAP_RO_"
H2S_DST = b"MTK-V01-CS02-with-ristretto255_XMD:SHA-512_SCALAR_RO_"


def scalar_bytes(k):
    return (k % r255.L).to_bytes(32, "little")


def derive_scalar(label, i):
    h = hashlib.sha512(b"mtk-test-vector/" + label + struct.pack(">I", i)).digest()
    return int.from_bytes(h, "little") % r255.L


def hash_to_group(msg):
    return r255.from_uniform_bytes(r255.expand_message_xmd_sha512(msg, H2G_DST, 64))


def hash_to_scalar(parts):
    enc = struct.pack(">I", len(parts))
    for p in parts:
        enc += struct.pack(">Q", len(p)) + p
    wide = r255.expand_message_xmd_sha512(enc, H2S_DST, 64)
    return int.from_bytes(wide, "little") % r255.L


def vrf(sk, x, nonce):
    g = r255.BASE
    h = hash_to_group(x)
    pk = r255.mul(sk, g)
    y = r255.mul(sk, h)
    s = hash_to_scalar([x, r255.encode(r255.mul(nonce, g)), r255.encode(r255.mul(nonce, h))])
    t = (nonce - sk * s) % r255.L
    return pk, y, s, t


def main():
    out_path = sys.argv[1] if len(sys.argv) > 1 else os.path.join(
        os.path.dirname(__file__), "..", "tests", "data", "group_vrf_vectors_v1.json")
    msgs = [b"", b"a", b"b", b"abc", b"x" * 200, bytes(range(256))]

    xmd = []
    for dst in (H2G_DST, H2S_DST, b"QUUX-V01-CS02-with-expander-SHA512-256"):
        for m in msgs[:4]:
            for n in (32, 64, 128, 200):
                xmd.append({"dst": dst.decode(), "msg_hex": m.hex(), "len": n,
                            "out_hex": r255.expand_message_xmd_sha512(m, dst, n).hex()})

    h2g = [{"msg_hex": m.hex(), "point_hex": r255.encode(hash_to_group(m)).hex()} for m in msgs]

    h2s = []
    for parts in ([], [b""], [b"a"], [b"a", b""], [b"", b"a"], [b"ab", b"c"], [b"a", b"bc"]):
        h2s.append({"parts_hex": [p.hex() for p in parts],
                    "scalar_hex": scalar_bytes(hash_to_scalar(parts)).hex()})

    base = []
    for k in [1, 2, 3, 255, r255.L - 1] + [derive_scalar(b"base", i) for i in range(4)]:
        base.append({"k_hex": scalar_bytes(k).hex(),
                     "point_hex": r255.encode(r255.mul(k, r255.BASE)).hex()})

    vrf_vectors = []
    for i in range(8):
        sk = 1 if i == 0 else derive_scalar(b"sk", i)
        nonce = derive_scalar(b"nonce", i)
        x = msgs[i % len(msgs)] + bytes([i])
        pk, y, s, t = vrf(sk, x, nonce)
        vrf_vectors.append({
            "sk_hex": scalar_bytes(sk).hex(),
            "nonce_hex": scalar_bytes(nonce).hex(),
            "x_hex": x.hex(),
            "pk_hex": r255.encode(pk).hex(),
            "y_hex": r255.encode(y).hex(),
            "proof_hex": (scalar_bytes(s) + scalar_bytes(t)).hex(),
        })

    doc = {
        "version": 1,
        "group": "ristretto255",
        "generator": "tools/gen_test_vectors.py",
        "expand_message_xmd_sha512": xmd,
        "hash_to_group": h2g,
        "hash_to_scalar": h2s,
        "base_mul": base,
        "vrf": vrf_vectors,
    }
    with open(out_path, "w") as f:
        json.dump(doc, f, indent=1)
        f.write("\n")


if __name__ == "__main__":
    main()
