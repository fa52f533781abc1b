#!/usr/bin/env python3
# Copyright 2026 The kxdyn Authors
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
"""Writes tests/fixtures/formulas.json from 60-digit mpmath evaluations."""

import json
import pathlib

import mpmath as mp

mp.mp.dps = 60


def condition_lhs(c, rho, p):
    c, rho, p = mp.mpf(c), mp.mpf(rho), mp.mpf(p)
    gain = (1 - p) * (1 - rho) * c * mp.exp(-c * (1 + 2 * rho))
    loss = p * (1 - mp.exp(-c * rho)) * (
        1 - c * (1 - rho) * mp.exp(-c) - mp.exp(-c * (1 - rho)))
    return gain - loss


def delta_half_bound(d):
    d = mp.mpf(d)
    m = min(mp.mpf(1), d / 2)
    return d ** 2 * mp.exp(-3 * d) * m ** 3 / 48


def residual_bound(p_high, t):
    q = mp.mpf(p_high) ** 2
    return 1 + (1 - q - q * (t - 1) * (1 - q) ** t) / q ** 2


def text(x):
    return mp.nstr(x, 40, strip_zeros=False)


def main():
    cond_points = [
        (1, 0.5, 0.1), (0.5, 0, 0.1), (2, 0, 0.3), (0.3, 0.1, 0.1),
        (0.7, 0.2, 0.05), (1.5, 0.3, 0.1), (0.2, 0.8, 0.1), (3, 0.1, 0.1),
        (4.5, 0.05, 0.2), (0.05, 0.5, 0.1), (1, 0.9, 0.1), (2.5, 0.7, 0.3),
        (0.8, 0.4, 0.0), (1.2, 0.6, 1.0), (5, 0.5, 0.1), (0.1, 0.25, 0.5),
        (3.3, 0.33, 0.01), (0.9, 0.15, 0.25), (1.75, 0.95, 0.1),
        (0.6, 0.45, 0.15),
    ]
    delta_points = [1e-3, 0.01, 0.05, 0.1, 0.25, 0.5, 0.75, 1, 1.25, 1.5,
                    1.9, 2, 2.1, 2.5, 3, 4, 5, 7.5, 10, 20]
    residual_points = [
        (1, 2), (1, 1000), (0.3, 500), (0.3, 2), (0.3, 10), (0.2, 1000),
        (0.4, 1000), (0.8, 1000), (0.5, 3), (0.5, 50), (0.1, 100),
        (0.1, 5000), (0.05, 20000), (0.9, 7), (0.6, 25), (0.25, 250),
        (0.35, 40), (0.7, 2), (0.15, 800), (0.45, 123),
    ]
    out = {
        "digits": 60,
        "condition_lhs": [
            {"c": c, "rho": r, "p": p, "value": text(condition_lhs(c, r, p))}
            for c, r, p in cond_points],
        "delta_half_bound": [
            {"d": d, "value": text(delta_half_bound(d))} for d in delta_points],
        "residual_bound": [
            {"p_high": p, "t": t, "value": text(residual_bound(p, t))}
            for p, t in residual_points],
    }
    path = pathlib.Path(__file__).resolve().parent.parent / "tests" / "fixtures"
    path.mkdir(parents=True, exist_ok=True)
    (path / "formulas.json").write_text(json.dumps(out, indent=1) + "\n")


if __name__ == "__main__":
    main()
