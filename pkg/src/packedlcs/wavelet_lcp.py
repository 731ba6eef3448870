"""Wavelet-tree solver for (alpha,beta)-family Two Families LCP instances.

Pipeline: binarize the compacted trie of the first components into a
prefix-consistent skeleton (weight-balanced splits keep the height at
O(alpha + log M)), build a wavelet tree of the first-component symbol
sequence, then push packed lists of adjacent second-component LCP values down
the tree; at every node the candidate answer is the node's string depth plus
the maximum LCP between rank-adjacent elements of different origins.

Strings that are proper prefixes of other family members get a synthetic
pad leaf below their trie node (the pad ranks after every letter); pad leaves
are evaluated at the true string length, never the padded one.

LCP lists are bit-packed; propagation and cross-origin maxima run the block
recurrence with per-key memoized tables when a block's key fits the
configured bit cap, and a vectorized bulk path (identical output) for long
lists.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import config
from .text_core import PackedLcsError
from .family_lcp import PairLcpResult, _Best, _ordered_witness

_POP8 = np.array([bin(i).count("1") for i in range(256)], dtype=np.uint32)


class BitVec:
    """Packed bit vector with one absolute rank count per 512-bit block."""

    __slots__ = ("n", "words", "block_rank", "ones")

    def __init__(self, bits):
        bits = np.asarray(bits, dtype=bool)
        self.n = int(bits.size)
        padded = np.zeros(((self.n + 63) // 64) * 64, dtype=bool)
        padded[: self.n] = bits
        self.words = np.packbits(padded, bitorder="little").view(np.uint64)
        byte_counts = _POP8[self.words.view(np.uint8)]
        per_block = np.add.reduceat(
            byte_counts, np.arange(0, len(byte_counts), 64)
        ) if len(byte_counts) else np.empty(0, dtype=np.uint32)
        self.block_rank = np.concatenate(([0], np.cumsum(per_block)))
        self.ones = int(byte_counts.sum())

    def __len__(self):
        return self.n

    def get(self, i):
        return bool((int(self.words[i >> 6]) >> (i & 63)) & 1)

    def rank1(self, i):
        """Number of set bits in [0, i)."""
        if i <= 0:
            return 0
        i = min(i, self.n)
        block = i >> 9
        total = int(self.block_rank[block])
        w = block << 3
        target_word = i >> 6
        while w < target_word:
            total += bin(int(self.words[w])).count("1")
            w += 1
        rem = i & 63
        if rem:
            total += bin(int(self.words[target_word]) & ((1 << rem) - 1)).count("1")
        return total

    def rank0(self, i):
        return min(i, self.n) - self.rank1(i) if i > 0 else 0

    def rank_side(self, i, side):
        return self.rank1(i) if side else self.rank0(i)

    def select_side(self, k, side):
        """Position of the (k+1)-th bit equal to side (0-based)."""
        lo, hi = 0, self.n
        while lo < hi:
            mid = (lo + hi) // 2
            if self.rank_side(mid + 1, side) >= k + 1:
                hi = mid
            else:
                lo = mid + 1
        return lo

    def bools(self):
        return np.unpackbits(self.words.view(np.uint8), bitorder="little")[: self.n].astype(bool)

    def word_bits(self, start, count):
        """count bits starting at position start, right-aligned little-endian."""
        w, off = start >> 6, start & 63
        val = int(self.words[w]) >> off
        got = 64 - off
        if got < count and w + 1 < len(self.words):
            val |= int(self.words[w + 1]) << got
        return val & ((1 << count) - 1)


@dataclass
class SkeletonTree:
    left: list
    right: list
    trie_node: list
    val_depth: list  # clipped string depth used for candidates
    node_depth: list
    leaf_symbol: list  # symbol id at leaves, -1 at internal nodes
    symbol_leaf: list  # symbol id -> skeleton leaf
    path_nodes: list  # symbol id -> tuple of internal nodes, root downward
    path_bits: list  # symbol id -> tuple of 0/1 routing bits
    height: int
    root: int = 0

    def node_count(self):
        return len(self.left)

    def is_leaf(self, v):
        return self.left[v] < 0


def binarize_skeleton(trie):
    """Prefix-consistent skeleton of a compacted trie (one leaf per distinct
    string; strings that are prefixes of others become pad leaves)."""
    nc = trie.node_count()
    weight = [0] * nc
    order = []
    stack = [0]
    while stack:
        v = stack.pop()
        order.append(v)
        stack.extend(trie.children[v])
    for v in reversed(order):
        w = 1 if trie.payloads[v] else 0
        for c in trie.children[v]:
            w += weight[c]
        weight[v] = w
    if weight[0] == 0:
        raise PackedLcsError("empty trie has no skeleton")

    n_symbols = len(trie.leaf_at_rank)
    left, right, tnode, vdepth, ndepth, lsym = [], [], [], [], [], []
    symbol_leaf = [-1] * n_symbols

    def alloc(tn, vd, depth, sym=-1):
        left.append(-1)
        right.append(-1)
        tnode.append(tn)
        vdepth.append(vd)
        ndepth.append(depth)
        lsym.append(sym)
        sid = len(left) - 1
        if sym >= 0:
            symbol_leaf[sym] = sid
        return sid

    def items_of(tn):
        items = [("sub", c) for c in trie.children[tn]]
        if trie.payloads[tn]:
            items.append(("pad", tn))
        return items

    def item_weight(item):
        return 1 if item[0] == "pad" else weight[item[1]]

    # pending: (parent skel id, side, group items, group's parent trie node, depth)
    pending = [(-1, 0, [("sub", 0)], 0, 0)]
    root_id = None
    while pending:
        parent, side, group, ptn, depth = pending.pop()
        # Collapse singleton subtrie chains.
        while len(group) == 1 and group[0][0] == "sub" and not trie.is_leaf(group[0][1]):
            ptn = group[0][1]
            group = items_of(ptn)
        if len(group) == 1:
            kind, tn = group[0]
            sym = trie.leaf_rank[tn]
            sid = alloc(tn, trie.depth[tn], depth, sym)
        else:
            total = sum(item_weight(it) for it in group)
            acc, cut = 0, 1
            for i, it in enumerate(group[:-1]):
                acc += item_weight(it)
                cut = i + 1
                if 2 * acc >= total:
                    break
            sid = alloc(ptn, trie.depth[ptn], depth)
            pending.append((sid, 1, group[cut:], ptn, depth + 1))
            pending.append((sid, 0, group[:cut], ptn, depth + 1))
        if parent < 0:
            root_id = sid
        elif side == 0:
            left[parent] = sid
        else:
            right[parent] = sid

    # Per-symbol routing paths.
    path_nodes = [None] * n_symbols
    path_bits = [None] * n_symbols
    height = 0
    stack = [(root_id, [], [])]
    while stack:
        v, nodes, bits = stack.pop()
        if lsym[v] >= 0:
            path_nodes[lsym[v]] = tuple(nodes)
            path_bits[lsym[v]] = tuple(bits)
            height = max(height, len(bits))
            continue
        stack.append((left[v], nodes + [v], bits + [0]))
        stack.append((right[v], nodes + [v], bits + [1]))

    return SkeletonTree(
        left=left, right=right, trie_node=tnode, val_depth=vdepth,
        node_depth=ndepth, leaf_symbol=lsym, symbol_leaf=symbol_leaf,
        path_nodes=path_nodes, path_bits=path_bits, height=height,
        root=root_id,
    )


class WaveletTree:
    """Bit vectors of a skeleton-shaped wavelet tree over a symbol sequence."""

    def __init__(self, bitvecs, sizes, skel, root):
        self.bitvecs = bitvecs  # node -> BitVec
        self.sizes = sizes  # node -> routed subsequence length
        self.skel = skel
        self.root = root

    def access(self, i):
        """Symbol of sequence element i, reconstructed by top-down routing."""
        v = self.root
        skel = self.skel
        while skel.leaf_symbol[v] < 0:
            bv = self.bitvecs[v]
            b = bv.get(i)
            i = bv.rank1(i) if b else i - bv.rank1(i)
            v = skel.right[v] if b else skel.left[v]
        return skel.leaf_symbol[v]


def build_wavelet(seq, skel):
    """Wavelet tree of a symbol sequence routed through the skeleton."""
    seq = np.asarray(seq, dtype=np.int64)
    m = int(seq.size)
    n_sym = len(skel.symbol_leaf)
    if m and (seq.min() < 0 or seq.max() >= n_sym):
        raise PackedLcsError("sequence element is not a skeleton leaf symbol")
    height = skel.height
    bit_mat = np.zeros((n_sym, max(height, 1)), dtype=np.uint8)
    for s in range(n_sym):
        for d, b in enumerate(skel.path_bits[s]):
            bit_mat[s, d] = b
    bitvecs = {}
    sizes = {}
    order = np.arange(m)
    stack = [(skel.root, 0, m)]
    while stack:
        v, lo, hi = stack.pop()
        sizes[v] = hi - lo
        if skel.leaf_symbol[v] >= 0 or hi <= lo:
            if skel.leaf_symbol[v] < 0 and hi <= lo:
                bitvecs[v] = BitVec(np.zeros(0, dtype=bool))
                stack.append((skel.left[v], lo, lo))
                stack.append((skel.right[v], lo, lo))
            continue
        seg = order[lo:hi].copy()
        b = bit_mat[seq[seg], skel.node_depth[v]].astype(bool)
        bitvecs[v] = BitVec(b)
        nl = int((~b).sum())
        order[lo : lo + nl] = seg[~b]
        order[lo + nl : hi] = seg[b]
        stack.append((skel.left[v], lo, lo + nl))
        stack.append((skel.right[v], lo + nl, hi))
    return WaveletTree(bitvecs, sizes, skel, skel.root)


class LcpsList:
    """Packed list of adjacent-LCP values over [0, beta] plus origin bits.

    Entry 0 is 0 by construction; entry r (r >= 1) is the LCP of the second
    components of elements r-1 and r of the represented sublist.
    """

    __slots__ = ("m", "beta", "bits", "per_word", "words", "origins")

    def __init__(self, values, origins, beta):
        values = np.asarray(values, dtype=np.int64)
        self.m = int(values.size)
        self.beta = int(beta)
        self.bits = max(1, int(beta).bit_length())
        self.per_word = 64 // self.bits
        nw = (self.m + self.per_word - 1) // self.per_word
        padded = np.zeros(nw * self.per_word, dtype=np.uint64)
        if self.m:
            padded[: self.m] = values.astype(np.uint64)
        w = np.zeros(nw, dtype=np.uint64)
        for slot in range(self.per_word):
            w |= padded[slot :: self.per_word] << np.uint64(slot * self.bits)
        self.words = w
        self.origins = origins if isinstance(origins, BitVec) else BitVec(origins)
        if len(self.origins) != self.m:
            raise PackedLcsError("origin bits and LCP list lengths differ")

    def __len__(self):
        return self.m

    def values(self):
        if self.m == 0:
            return np.empty(0, dtype=np.int64)
        mask = np.uint64((1 << self.bits) - 1)
        out = np.empty(len(self.words) * self.per_word, dtype=np.uint64)
        for slot in range(self.per_word):
            out[slot :: self.per_word] = (self.words >> np.uint64(slot * self.bits)) & mask
        return out[: self.m].astype(np.int64)

    def value_block(self, start, count):
        """count packed entries starting at index start, as one int."""
        w, slot = divmod(start, self.per_word)
        bits = self.bits
        val = int(self.words[w]) >> (slot * bits)
        got = self.per_word - slot
        while got < count:
            w += 1
            val |= int(self.words[w]) << (got * bits)
            got += self.per_word
        return val & ((1 << (count * bits)) - 1)


_prop_tables = {}
_cross_tables = {}


def _block_lambda(bits):
    lam = min(64 // bits, max(1, (config.TABLE_BITS_CAP - bits) // (bits + 1)))
    return max(1, lam)


def propagate_lcps(parent, bit_vec, side):
    """LCPs list of the child sublist (elements whose bit equals the side),
    computed from the parent list without materializing the sublist."""
    side_bit = 1 if side in (1, "right") else 0
    if isinstance(bit_vec, BitVec):
        bv = bit_vec
    else:
        bv = BitVec(bit_vec)
    if len(bv) != len(parent):
        raise PackedLcsError("bit vector and LCP list lengths differ")
    m = len(parent)
    if m == 0:
        return LcpsList([], [], parent.beta)
    if m >= config.BULK_THRESHOLD:
        return _propagate_bulk(parent, bv, side_bit)
    return _propagate_blocks(parent, bv, side_bit)


def _propagate_bulk(parent, bv, side_bit):
    vals = parent.values()
    bits = bv.bools()
    g = parent.origins.bools()
    keep = np.flatnonzero(bits if side_bit else ~bits)
    if keep.size == 0:
        return LcpsList([], [], parent.beta)
    out = np.empty(keep.size, dtype=np.int64)
    out[0] = 0
    if keep.size > 1:
        starts = keep[:-1] + 1
        out[1:] = np.minimum.reduceat(vals[: keep[-1] + 1], starts)
    return LcpsList(out, g[keep], parent.beta)


def _propagate_blocks(parent, bv, side_bit):
    bits = parent.bits
    lam = _block_lambda(bits)
    table = None
    key_bits = lam * (bits + 1) + bits
    use_table = lam >= 2 and key_bits <= config.TABLE_BITS_CAP
    if use_table:
        table = _prop_tables.setdefault((lam, bits, side_bit), {})
    m = len(parent)
    mask_v = (1 << bits) - 1
    out_vals = []
    out_orig = []
    g = parent.origins
    mu = 0  # min of pending values since the last kept element (or list start)
    first_kept = True
    for start in range(0, m, lam):
        count = min(lam, m - start)
        wbits = parent.value_block(start, count)
        dbits = bv.word_bits(start, count)
        if side_bit == 0:
            dbits = (~dbits) & ((1 << count) - 1)
        if use_table and count == lam:
            key = (wbits << lam | dbits) << bits | mu
            hit = table.get(key)
            if hit is None:
                hit = _block_step(wbits, dbits, mu, lam, bits, mask_v)
                table[key] = hit
            appended, mu = hit
        else:
            appended, mu = _block_step(wbits, dbits, mu, count, bits, mask_v)
        for pos_in_block, val in appended:
            idx = start + pos_in_block
            out_orig.append(g.get(idx))
            if first_kept:
                out_vals.append(0)
                first_kept = False
            else:
                out_vals.append(val)
    return LcpsList(out_vals, np.array(out_orig, dtype=bool), parent.beta)


def _block_step(wbits, dbits, mu, count, bits, mask_v):
    """One block of the propagation recurrence: returns (kept entries as
    (position-in-block, min-LCP-since-previous-kept), new carry minimum)."""
    appended = []
    cur = mu
    for i in range(count):
        v = (wbits >> (i * bits)) & mask_v
        cur = v if v < cur else cur
        if (dbits >> i) & 1:
            appended.append((i, cur))
            cur = mask_v  # reset; next min starts after this element
    return appended, cur


def cross_origin_max(lcps):
    """(value, index) of the max LCP at an origin boundary, or None.

    Scans pairs (i-1, i) with differing origin bits; blockwise with memoized
    tables when the key fits the cap, vectorized for long lists.
    """
    m = len(lcps)
    if m < 2:
        return None
    if m >= config.BULK_THRESHOLD:
        vals = lcps.values()
        g = lcps.origins.bools()
        mask = g[1:] != g[:-1]
        if not mask.any():
            return None
        cand = np.where(mask, vals[1:], -1)
        i = int(np.argmax(cand))
        return int(cand[i]), i + 1
    bits = lcps.bits
    lam = _block_lambda(bits)
    key_bits = lam * (bits + 1) + 1
    use_table = lam >= 2 and key_bits <= config.TABLE_BITS_CAP
    table = _cross_tables.setdefault((lam, bits), {}) if use_table else None
    mask_v = (1 << bits) - 1
    best_v, best_i = -1, None
    prev_g = lcps.origins.get(0)
    # Blocks cover entries [start, start+count); pair (i-1, i) is evaluated in
    # the block containing i, with the previous origin carried across.
    for start in range(1, m, lam):
        count = min(lam, m - start)
        wbits = lcps.value_block(start, count)
        gbits = lcps.origins.word_bits(start, count)
        last_g = (gbits >> (count - 1)) & 1
        if use_table and count == lam:
            key = ((wbits << lam | gbits) << 1) | prev_g
            hit = table.get(key)
            if hit is None:
                hit = _cross_step(wbits, gbits, prev_g, lam, bits, mask_v)
                table[key] = hit
            res = hit
        else:
            res = _cross_step(wbits, gbits, prev_g, count, bits, mask_v)
        if res is not None and res[0] > best_v:
            best_v, best_i = res[0], start + res[1]
        prev_g = last_g
    if best_i is None:
        return None
    return best_v, best_i


def _cross_step(wbits, gbits, prev_g, count, bits, mask_v):
    best_v, best_i = -1, None
    g_prev = prev_g
    for i in range(count):
        gi = (gbits >> i) & 1
        if gi != g_prev:
            v = (wbits >> (i * bits)) & mask_v
            if v > best_v:
                best_v, best_i = v, i
        g_prev = gi
    return None if best_i is None else (best_v, best_i)


def solve_alpha_beta_core(trie1, seq, root_values, origins, beta):
    """Shared solver core over prepared arrays.

    trie1: compacted trie of the distinct first components (symbol s =
    leaf rank s); seq: per-element symbol ids in the order of the R list
    (sorted by second component); root_values: adjacent second-component
    LCPs of R (entry 0 is 0); origins: per-element origin bits.

    Returns (value, (position_a, position_b) in R) or (0, None).
    """
    root_list = LcpsList(root_values, origins, beta)
    skel = binarize_skeleton(trie1)
    wt = build_wavelet(np.asarray(seq, dtype=np.int64), skel)

    best_val = -1
    best_loc = None  # (node, index in the node's sublist, path from root)
    stack = [(wt.root, root_list, ())]
    while stack:
        v, lst, path = stack.pop()
        if len(lst) < 2:
            continue
        hit = cross_origin_max(lst)
        if hit is not None:
            val = skel.val_depth[v] + hit[0]
            if val > best_val:
                best_val, best_loc = val, (v, hit[1], path)
        if skel.leaf_symbol[v] >= 0:
            continue
        bv = wt.bitvecs[v]
        stack.append((skel.left[v], propagate_lcps(lst, bv, 0), path + ((v, 0),)))
        stack.append((skel.right[v], propagate_lcps(lst, bv, 1), path + ((v, 1),)))

    if best_loc is None:
        return 0, None
    _node, idx, path = best_loc
    positions = []
    for local in (idx - 1, idx):
        pos = local
        for pnode, side in reversed(path):
            pos = wt.bitvecs[pnode].select_side(pos, side)
        positions.append(pos)
    return best_val, tuple(positions)


def solve_alpha_beta(inst, alpha, beta):
    """maxPairLCP for (alpha,beta)-families via the wavelet machinery."""
    if not inst.p_elems or not inst.q_elems:
        return PairLcpResult(0, None, 0)
    trie1, trie2 = inst.trie1, inst.trie2
    for l1, l2 in inst.p_elems + inst.q_elems:
        if trie1.depth[l1] > alpha or trie2.depth[l2] > beta:
            raise PackedLcsError(
                f"family member exceeds the ({alpha},{beta}) bound"
            )
    elems = inst.elements()
    order = sorted(range(len(elems)), key=lambda u: (trie2.leaf_rank[elems[u][4]], u))
    r2 = [trie2.leaf_rank[elems[u][4]] for u in order]
    m = len(order)
    lvals = [0] * m
    for i in range(1, m):
        lvals[i] = inst.lcp2.lcp(r2[i - 1], r2[i])
    origins = np.array([elems[u][1] == 1 for u in order], dtype=bool)
    seq = [trie1.leaf_rank[elems[u][3]] for u in order]
    val, positions = solve_alpha_beta_core(trie1, seq, lvals, origins, beta)
    if positions is None:
        return PairLcpResult(0, None, 0)
    (o_a, i_a), (o_b, i_b) = (
        (elems[order[p]][1], elems[order[p]][2]) for p in positions
    )
    witness = _ordered_witness(o_a, i_a, o_b, i_b)
    return PairLcpResult(val, witness, 0)
