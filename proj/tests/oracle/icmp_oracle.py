#!/usr/bin/env python3
# Copyright 2026 The DFSL Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     https://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Independent bit-by-bit extraction of the ICMP sample, following the
icmp.dfsl layout literally. Used once to freeze expected values into
the interpreter and acceptance tests. Not part of the build."""
import sys

LAYOUT = [
    # (path, width_bits)
    ("ether_header.destination.vendor", 24),
    ("ether_header.destination.serialnumber", 24),
    ("ether_header.source.vendor", 24),
    ("ether_header.source.serialnumber", 24),
    ("ether_header.type", 16),
    ("ip_header.version", 4),
    ("ip_header.ihl", 4),
    ("ip_header.tos", 8),
    ("ip_header.identification", 16),
    ("ip_header.flag0", 1),
    ("ip_header.flag1", 1),
    ("ip_header.flag2", 1),
    ("ip_header.offset", 13),
    ("ip_header.time2live", 8),
    ("ip_header.protocol", 8),
    ("ip_header.checksum", 16),
    ("ip_header.source.first", 8),
    ("ip_header.source.second", 8),
    ("ip_header.source.third", 8),
    ("ip_header.source.forth", 8),
    ("ip_header.destination.first", 8),
    ("ip_header.destination.second", 8),
    ("ip_header.destination.third", 8),
    ("ip_header.destination.forth", 8),
    ("icmp_header.type", 8),
    ("icmp_header.code", 8),
    ("icmp_header.checksum", 16),
]


def bit(data, o):
    return (data[o // 8] >> (7 - o % 8)) & 1


def main(path):
    data = open(path, "rb").read()
    o = 0
    for name, w in LAYOUT:
        v = 0
        for i in range(w):
            v = (v << 1) | bit(data, o + i)
        print(f"{name} offset={o} width={w} value={v} (0x{v:x})")
        o += w
    print(f"total_bits={o}")


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else "scripts/icmp.dat")
