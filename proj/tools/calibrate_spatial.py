#!/usr/bin/env python3
# Copyright 2026 The prime-aug Authors. All Rights Reserved.
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
"""Monte-Carlo calibration of the spatial strength range.

Draws displacement fields with unit strength, measures the maximum pixel
displacement of each, and reports the sigma_max for which the 99th
percentile of the max displacement (with sigma ~ U[0, sigma_max]) hits a
target. Independent of the C++ implementation: evaluates the sine series
with dense numpy matrices.
"""
import argparse

import numpy as np


def max_displacements(size, cut, fields, rng):
    i = np.arange(1, cut + 1)
    ii, jj = np.meshgrid(i, i, indexing="ij")
    norm2 = ii**2 + jj**2
    mask = norm2 <= cut * cut
    std = np.where(mask, 1.0 / np.sqrt(np.maximum(norm2, 1)), 0.0)
    r = np.arange(size) / (size - 1)
    basis = np.sin(np.pi * np.outer(r, i))  # size x cut
    out = np.empty(fields)
    for f in range(fields):
        disp = []
        for _ in range(2):
            beta = rng.standard_normal((cut, cut)) * std
            disp.append(basis @ beta @ basis.T * (size - 1))
        out[f] = np.sqrt(disp[0] ** 2 + disp[1] ** 2).max()
    return out


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--size", type=int, required=True)
    ap.add_argument("--cut", type=int, required=True)
    ap.add_argument("--target", type=float, required=True, help="target p99 in pixels")
    ap.add_argument("--fields", type=int, default=1000)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    rng = np.random.default_rng(args.seed)
    unit = max_displacements(args.size, args.cut, args.fields, rng)
    scale = rng.uniform(0.0, 1.0, size=args.fields)
    p99_unit = np.percentile(unit * scale, 99)
    sigma_max = args.target / p99_unit
    # verify on a fresh batch
    check = max_displacements(args.size, args.cut, args.fields, rng)
    check *= rng.uniform(0.0, sigma_max, size=args.fields)
    print(f"size={args.size} cut={args.cut} p99(unit)={p99_unit:.4f}px "
          f"sigma_max={sigma_max:.6g} verify_p99={np.percentile(check, 99):.3f}px")


if __name__ == "__main__":
    main()
