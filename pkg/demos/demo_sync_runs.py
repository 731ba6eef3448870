#!/usr/bin/env python3
"""Synchronizing sets and tau-runs: construction plus exhaustive checking."""

import numpy as np

from packedlcs import build_sync_set, find_tau_runs, misperiods, succ_sync
from packedlcs.oracles import check_sync_set

rng = np.random.default_rng(2)
codes = rng.integers(0, 2, size=400).astype(np.int64)
tau = 6

sync = build_sync_set(codes, tau)
rep = check_sync_set(sync.positions, codes, tau)
print(f"tau = {tau}: |A| = {len(sync)} positions, "
      f"density |A| tau / n = {rep['density_ratio']:.2f}, valid = {rep['valid']}")
print("succ from position 1:", succ_sync(sync, 1))

# Highly periodic stretches have no anchors; runs cover them instead.
periodic = np.array([0, 1] * 40 + [1, 0, 0] * 20, dtype=np.int64)
sync_p = build_sync_set(periodic, tau)
runs = find_tau_runs(periodic, tau)
print(f"\nperiodic text: |A| = {len(sync_p)}, tau-runs = "
      f"{[(r.start, r.end, r.period, r.tail) for r in runs]}")
for r in runs:
    root = periodic[r.lyndon_start - 1 : r.lyndon_start - 1 + r.period]
    print(f"  run [{r.start},{r.end}] period {r.period} "
          f"Lyndon root {root.tolist()} at {r.lyndon_start}")

# Misperiods: positions breaking a candidate period around a window.
text = np.frombuffer(b"aaabaaacaaa", dtype=np.uint8).astype(np.int64)
ms = misperiods(text, 5, 6, 2)  # window "a" at position 5, period 1
print(f"\nmisperiods around text[5..6): left {ms.left}, right {ms.right}")
