"""Pure-Python partition kernels.

A partition of ``n`` support points is a label tuple ``labels[i] = block id``.
All public functions return labels in restricted-growth form (block ids
numbered by first appearance), which is the canonical form used throughout.
Masses are non-negative integers sharing one denominator ``total``.

This module and ``_ckernels`` expose the same functions and must agree
exactly; ``kernels`` picks one of them at import time.
"""

from __future__ import annotations


def canonical(labels):
    seen = {}
    out = []
    for v in labels:
        k = seen.get(v)
        if k is None:
            k = seen[v] = len(seen)
        out.append(k)
    return tuple(out)


def join_labels(a, b):
    return canonical(zip(a, b))


def meet_labels(a, b):
    n = len(a)
    parent = list(range(n))

    def find(i):
        root = i
        while parent[root] != root:
            root = parent[root]
        while parent[i] != root:
            parent[i], i = root, parent[i]
        return root

    for labels in (a, b):
        first = {}
        for i, v in enumerate(labels):
            j = first.setdefault(v, i)
            if j != i:
                ri, rj = find(i), find(j)
                if ri != rj:
                    if ri < rj:
                        parent[rj] = ri
                    else:
                        parent[ri] = rj
    return canonical([find(i) for i in range(n)])


def coarser(a, b):
    """True iff every block of ``b`` lies inside a block of ``a``."""
    image = {}
    for x, y in zip(a, b):
        if image.setdefault(y, x) != x:
            return False
    return True


def block_masses(labels, masses):
    out = [0] * (max(labels) + 1 if labels else 0)
    for v, m in zip(labels, masses):
        out[v] += m
    return out


def independent(a, b, masses, total):
    ma = block_masses(a, masses)
    mb = block_masses(b, masses)
    joint = [[0] * len(mb) for _ in ma]
    for x, y, m in zip(a, b, masses):
        joint[x][y] += m
    for i, row in enumerate(joint):
        for j, m in enumerate(row):
            if m * total != ma[i] * mb[j]:
                return False
    return True


def cond_independent(a, b, c, masses):
    """Atomwise product rule ``m(ABC) m(C) == m(AC) m(BC)`` for every block triple.

    Sparse: inside each ``c``-block, every (a-block, b-block) pair meeting it
    must co-occur (otherwise the left side is 0 and the right side is not).
    """
    mc = {}
    mac = {}
    mbc = {}
    mabc = {}
    for x, y, z, m in zip(a, b, c, masses):
        mc[z] = mc.get(z, 0) + m
        mac[z, x] = mac.get((z, x), 0) + m
        mbc[z, y] = mbc.get((z, y), 0) + m
        mabc[z, x, y] = mabc.get((z, x, y), 0) + m
    xs_in = {}
    ys_in = {}
    cells_in = {}
    for z, _ in mac:
        xs_in[z] = xs_in.get(z, 0) + 1
    for z, _ in mbc:
        ys_in[z] = ys_in.get(z, 0) + 1
    for z, _, _ in mabc:
        cells_in[z] = cells_in.get(z, 0) + 1
    for z in mc:
        if cells_in[z] != xs_in[z] * ys_in[z]:
            return False
    for (z, x, y), m in mabc.items():
        if m * mc[z] != mac[z, x] * mbc[z, y]:
            return False
    return True


def complement_scan(x, z, masses, total):
    """All coarsenings ``c`` of ``z`` with ``c`` independent of ``x`` and ``x v c == z``.

    ``x`` must already be coarser than ``z``. Independence forces every
    (x-block, c-block) pair to have positive mass, so ``x v c == z`` reduces to
    ``nblocks(x) * nblocks(c) == nblocks(z)``; only coarsenings with that block
    count are generated. Results come out in lexicographic label order.
    """
    k = max(z) + 1
    nx = max(x) + 1
    if k % nx:
        return []
    want = k // nx
    found = []
    for rgs in _rgs_with_blocks(k, want):
        cand = tuple(rgs[v] for v in z)
        if independent(x, cand, masses, total):
            found.append(cand)
    return found


def _rgs_with_blocks(k, want):
    """Restricted growth strings of length k using exactly ``want`` blocks, lexicographic."""
    rgs = [0] * k

    def rec(i, used):
        if k - i < want - used:
            return
        if i == k:
            if used == want:
                yield tuple(rgs)
            return
        for v in range(min(used + 1, want)):
            rgs[i] = v
            yield from rec(i + 1, used + (v == used))

    if k == 0:
        if want == 0:
            yield ()
        return
    yield from rec(1, 1) if want >= 1 else iter(())
