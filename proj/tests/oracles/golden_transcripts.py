#!/usr/bin/env python3
# Copyright 2026 The stratprice Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Stand-alone re-implementation of the golden episodes.

Writes tests/golden/monotone_scripted.csv and tests/golden/phased_seeded.csv.
Shares no code with the C++ library; only the published seed mixer and the
seller rules are restated here.
"""

import math
import os

MASK = (1 << 64) - 1
GOLDEN = 0x9E3779B97F4A7C15


def finalize(z):
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK
    return z ^ (z >> 31)


def mix64(base, index):
    return finalize((base + GOLDEN * (index + 1)) & MASK)


class Rng:
    def __init__(self, seed):
        self.state = seed

    def uniform(self):
        self.state = (self.state + GOLDEN) & MASK
        return (finalize(self.state) >> 11) * 2.0**-53


def fmt(x):
    return "0" if x == 0 else "{:.12g}".format(x)


def csv(rows, value):
    out = "t,price,accepted,value\n"
    for t, (p, a) in enumerate(rows, 1):
        out += "%d,%s,%d,%s\n" % (t, fmt(p), 1 if a else 0, fmt(value))
    return out


def monotone(beta, script):
    rows, p = [], 1.0
    for a in script:
        rows.append((p, a))
        if not a:
            p *= beta
    return rows


def phased(alpha, samples, first, horizon, seed, script):
    rng = Rng(mix64(seed, 0))
    rows, start, i = [], 1, 0
    while start <= horizon:
        nominal = 2 ** (first + i)
        k = max(1, int(math.ceil(nominal ** alpha - 1e-9)))
        length = min(nominal, horizon - start + 1)
        explore = min(k * samples, length)
        left = [samples] * k
        offered = [0] * k
        accepted = [0] * k
        best = None
        for pos in range(length):
            t = start + pos
            a = script[t - 1]
            if pos < explore:
                total = sum(left)
                if sum(1 for c in left if c) > 1:
                    u, cdf = rng.uniform(), 0.0
                    opts = [j for j in range(k) if left[j]]
                    pick = opts[-1]
                    for j in opts[:-1]:
                        cdf += left[j] / total
                        if u < cdf:
                            pick = j
                            break
                else:
                    pick = next(j for j in range(k) if left[j])
                left[pick] -= 1
                offered[pick] += 1
                accepted[pick] += a
                rows.append(((pick + 1) / k, a))
                if pos + 1 == explore == k * samples:
                    est = [((j + 1) / k) * accepted[j] / offered[j] for j in range(k)]
                    best = est.index(max(est))
            else:
                rows.append(((best + 1) / k, a))
        start += length
        i += 1
    return rows


def main():
    here = os.path.join(os.path.dirname(os.path.abspath(__file__)), "..", "golden")
    R, A = False, True
    mono = monotone(0.8, [R, R, A, R, A, A, R, R, A, A])
    ph = phased(0.5, 1, 2, 14, 7, [A, R, A, A, R, A, A, R, A, A, A, R, A, A])
    with open(os.path.join(here, "monotone_scripted.csv"), "w", newline="\n") as f:
        f.write(csv(mono, 0.5))
    with open(os.path.join(here, "phased_seeded.csv"), "w", newline="\n") as f:
        f.write(csv(ph, 0.5))


if __name__ == "__main__":
    main()
