#!/usr/bin/env python3
# Copyright 2026 The quadref Authors
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

"""Recomputes metrics.json from timeseries.csv and compares the two."""

import argparse
import csv
import json
import math
import sys


def recompute(rows, reference, tol):
    t = [float(r["t"]) for r in rows]
    err = [abs(float(r["p_y"]) - float(r["goal_y"])) for r in rows]
    ts = t[1] - t[0] if len(t) > 1 else 0.04

    settled = None
    for i in range(len(rows) - 1, -1, -1):
        if t[i] < reference - 1e-9 or not err[i] < tol:
            break
        settled = t[i] - reference

    start = t[-1] + ts - 1.0
    tail = [e for ti, e in zip(t, err) if ti >= start - 1e-9]
    return {
        "settling_time_s": settled,
        "steady_state_error_m": sum(tail) / len(tail),
        "max_slack_m": max(0.0, max(float(r["slack_y_max"]) for r in rows)),
        "fallback_ticks": sum(1 for r in rows if r["status"] == "2"),
    }


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("out_dir")
    ap.add_argument("--tol", type=float, default=1e-9)
    args = ap.parse_args()

    with open(f"{args.out_dir}/timeseries.csv", newline="") as f:
        rows = list(csv.DictReader(f))
    with open(f"{args.out_dir}/metrics.json") as f:
        reported = json.load(f)

    mine = recompute(rows, reported["settling_reference_s"], reported["settling_tol_m"])
    ok = True
    for key, value in mine.items():
        theirs = reported[key]
        if value is None or theirs is None:
            good = value is None and theirs is None
        else:
            good = math.isclose(value, theirs, rel_tol=0.0, abs_tol=args.tol)
        print(f"{key:22s} csv={value!r:24} json={theirs!r:24} {'ok' if good else 'MISMATCH'}")
        ok = ok and good
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
