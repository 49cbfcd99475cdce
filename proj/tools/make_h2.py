#!/usr/bin/env python3
# Copyright 2026 The hqc Authors
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

"""Writes the minimal-basis H2 fermion Hamiltonian (R = 1.401 bohr).

Spin orbitals: 0 = g up, 1 = g down, 2 = u up, 3 = u down.
"""

import itertools
import sys

NUCLEAR = 0.7137539936876182
ONE = {0: -1.2524635735648981, 1: -0.4759487152209648}
# chemist-notation spatial integrals (ij|kl), real orbitals
TWO = {
    (0, 0, 0, 0): 0.6744887663568382,
    (1, 1, 1, 1): 0.6973949208360082,
    (0, 0, 1, 1): 0.6634581420621265,
    (0, 1, 0, 1): 0.1812948726851713,
}


def spatial_eri(i, j, k, l):
    key = (i, j, k, l)
    for perm in ((i, j, k, l), (j, i, k, l), (i, j, l, k), (j, i, l, k),
                 (k, l, i, j), (l, k, i, j), (k, l, j, i), (l, k, j, i)):
        if perm in TWO:
            return TWO[perm]
    return 0.0


def main(out):
    lines = ["# minimal-basis H2, R = 1.401 bohr", "modes 4",
             f"constant {NUCLEAR!r}"]
    spatial = lambda p: p // 2
    spin = lambda p: p % 2
    for p in range(4):
        lines.append(f"{ONE[spatial(p)]!r} 0 {p}^ {p}")
    # 1/2 sum (pq|rs) a+_p a+_r a_s a_q
    for p, q, r, s in itertools.product(range(4), repeat=4):
        if spin(p) != spin(q) or spin(r) != spin(s):
            continue
        if p == r or q == s:
            continue
        v = spatial_eri(spatial(p), spatial(q), spatial(r), spatial(s))
        if v == 0.0:
            continue
        lines.append(f"{0.5 * v!r} 0 {p}^ {r}^ {s} {q}")
    text = "\n".join(lines) + "\n"
    if out == "-":
        sys.stdout.write(text)
    else:
        with open(out, "w") as f:
            f.write(text)


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else "-")
