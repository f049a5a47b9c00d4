#!/usr/bin/env python3
# Copyright 2026 The oscnet Authors. All Rights Reserved.
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
"""Regenerates tests/unit/oracle_values.inc with 50-digit mpmath references.

    python3 tools/gen_oracles.py > tests/unit/oracle_values.inc
"""

import mpmath as mp

mp.mp.dps = 50

ZS = ["-30", "-8.5", "-3", "-1.25", "-0.5", "-1e-3", "0.2", "0.75", "1.5", "2.8", "6", "15", "35"]

def sig(z):
    return 1 / (1 + mp.exp(-z))

FUNCS = [
    ("kSigmoid", sig),
    ("kTanh", mp.tanh),
    ("kSwish", lambda z: z * sig(z)),
    ("kMish", lambda z: z * mp.tanh(mp.log(1 + mp.exp(z)))),
    ("kGCU", lambda z: z * mp.cos(z)),
    ("kPolyCubic", lambda z: z - z**3 / 2),
]

def lit(x):
    return mp.nstr(x, 20, min_fixed=-mp.inf, max_fixed=mp.inf) if x == 0 else mp.nstr(x, 20)

print("// Generated by tools/gen_oracles.py; do not edit.")
print("// {activation, z, g(z), g'(z), g''(z)} at 50 significant digits, rounded to 20.")
print("constexpr ActivationOracle kActivationOracles[] = {")
for name, f in FUNCS:
    for zs in ZS:
        z = mp.mpf(zs)
        v, d1, d2 = (mp.diff(f, z, n) for n in (0, 1, 2))
        print(f"    {{Activation::{name}, {zs}, {lit(v)}, {lit(d1)}, {lit(d2)}}},")
print("};")

# softmax cross-entropy on a fixed 3 x 4 logit batch with class targets
LOGITS = [["0.5", "-1.25", "2.0", "0.0"],
          ["30.0", "-30.0", "10.0", "29.5"],
          ["-4.0", "-4.0", "-4.0", "-3.0"]]
TARGETS = [2, 3, 0]
n = len(LOGITS)
loss = mp.mpf(0)
grad = []
for row, t in zip(LOGITS, TARGETS):
    a = [mp.mpf(x) for x in row]
    zsum = mp.fsum(mp.exp(x) for x in a)
    p = [mp.exp(x) / zsum for x in a]
    loss += -mp.log(p[t])
    grad.append([(p[c] - (1 if c == t else 0)) / n for c in range(len(a))])
loss /= n
print()
print("constexpr double kCeLogits[3][4] = {")
for row in LOGITS:
    print("    {" + ", ".join(row) + "},")
print("};")
print("constexpr int kCeTargets[3] = {" + ", ".join(map(str, TARGETS)) + "};")
print(f"constexpr double kCeLoss = {lit(loss)};")
print("constexpr double kCeGradient[3][4] = {")
for row in grad:
    print("    {" + ", ".join(lit(g) for g in row) + "},")
print("};")
