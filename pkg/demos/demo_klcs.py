#!/usr/bin/env python3
"""k-mismatch LCS: anchors, modified-string families, and the driver."""

import numpy as np

from packedlcs import is_maxpair, klcs, klcs_anchors, lcp_k, max_pair_lcp_k
from packedlcs.oracles import klcs_dp

# lcp_k: longest prefix pair within a mismatch budget.
u, v = "ababbabb", "aacbaaab"
print(f"LCP_3({u!r}, {v!r}) = {lcp_k(u, v, 3)}")

# A maxpair reconciles exactly the mismatches inside that window.
delta = [(2, ord("a")), (3, ord("b"))]
nabla = [(3, ord("b")), (5, ord("b"))]
print("maxpair check:", is_maxpair(u, v, 3, delta, nabla))

# maxPairLCP_{k1,k2} over fragment-pair families of one text.
text = b"abcdxbcyq"
U = [((1, 2), (3, 2))]  # ("ab", "cd")
V = [((5, 2), (7, 2))]  # ("xb", "cy")
res = max_pair_lcp_k(text, U, V, 1, 1, 2)
print(f"maxPairLCP_(1,1) = {res.value} "
      f"(family tuples generated: {res.counters.family_total})")

# The driver: plant a pair at Hamming distance 2 and recover it exactly.
rng = np.random.default_rng(11)
core = bytearray(rng.integers(97, 103, size=120, dtype=np.uint8))
core2 = bytearray(core)
core2[30] = (core2[30] - 97 + 1) % 6 + 97
core2[77] = (core2[77] - 97 + 1) % 6 + 97
s = bytes(rng.integers(97, 103, size=40, dtype=np.uint8)) + bytes(core)
t = bytes(core2) + bytes(rng.integers(97, 103, size=40, dtype=np.uint8))

a_s, a_t = klcs_anchors(s, t, 128, 2)
print(f"anchors for ell = 128, k = 2: |A_S| = {len(a_s)}, |A_T| = {len(a_t)}")

got = klcs(s, t, 2)
want, _, _ = klcs_dp(s, t, 2)
print(f"klcs(S, T, 2) = {got.length} (oracle {want}), "
      f"mismatch offsets {got.mismatches}")
