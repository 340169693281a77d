# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled partition kernels; same contract as ``_pykernels``.

Mass arithmetic is done in int64. Callers must guarantee
``total <= 2**31`` so that every product of two masses fits; the selector in
``kernels`` routes larger denominators to the pure-Python backend.
"""

from libc.stdlib cimport malloc, free
from libc.string cimport memset

ctypedef long long i64


cdef int* _load(object seq, Py_ssize_t n) except NULL:
    cdef int* out = <int*> malloc((n + 1) * sizeof(int))
    cdef Py_ssize_t i = 0
    if out == NULL:
        raise MemoryError()
    for v in seq:
        out[i] = v
        i += 1
    return out


cdef i64* _load64(object seq, Py_ssize_t n) except NULL:
    cdef i64* out = <i64*> malloc((n + 1) * sizeof(i64))
    cdef Py_ssize_t i = 0
    if out == NULL:
        raise MemoryError()
    for v in seq:
        out[i] = v
        i += 1
    return out


cdef int _nblocks(int* a, Py_ssize_t n):
    cdef int m = -1
    cdef Py_ssize_t i
    for i in range(n):
        if a[i] > m:
            m = a[i]
    return m + 1


cdef tuple _canon_ints(int* a, Py_ssize_t n, int bound):
    # bound: exclusive upper bound on values in a
    cdef int* remap = <int*> malloc((bound + 1) * sizeof(int))
    cdef Py_ssize_t i
    cdef int nxt = 0
    cdef list out = [0] * n
    if remap == NULL:
        raise MemoryError()
    try:
        for i in range(bound):
            remap[i] = -1
        for i in range(n):
            if remap[a[i]] < 0:
                remap[a[i]] = nxt
                nxt += 1
            out[i] = remap[a[i]]
    finally:
        free(remap)
    return tuple(out)


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
    cdef Py_ssize_t n = len(a)
    cdef int* pa = _load(a, n)
    cdef int* pb = _load(b, n)
    cdef int* code = <int*> malloc((n + 1) * sizeof(int))
    cdef int nb
    cdef Py_ssize_t i
    try:
        nb = _nblocks(pb, n)
        for i in range(n):
            code[i] = pa[i] * nb + pb[i]
        return _canon_ints(code, n, _nblocks(pa, n) * nb)
    finally:
        free(pa)
        free(pb)
        free(code)


cdef int _find(int* parent, int i):
    cdef int root = i
    cdef int nxt
    while parent[root] != root:
        root = parent[root]
    while parent[i] != root:
        nxt = parent[i]
        parent[i] = root
        i = nxt
    return root


cdef void _union_by_labels(int* parent, int* labels, Py_ssize_t n, int* first):
    cdef Py_ssize_t i
    cdef int ri, rj, v
    for i in range(n):
        v = labels[i]
        if first[v] < 0:
            first[v] = <int> i
        else:
            ri = _find(parent, <int> i)
            rj = _find(parent, first[v])
            if ri < rj:
                parent[rj] = ri
            elif rj < ri:
                parent[ri] = rj


def meet_labels(a, b):
    cdef Py_ssize_t n = len(a)
    cdef int* pa = _load(a, n)
    cdef int* pb = _load(b, n)
    cdef int* parent = <int*> malloc((n + 1) * sizeof(int))
    cdef int* first = <int*> malloc((n + 1) * sizeof(int))
    cdef Py_ssize_t i
    try:
        for i in range(n):
            parent[i] = <int> i
            first[i] = -1
        _union_by_labels(parent, pa, n, first)
        for i in range(n):
            first[i] = -1
        _union_by_labels(parent, pb, n, first)
        for i in range(n):
            pa[i] = _find(parent, <int> i)
        return _canon_ints(pa, n, <int> n)
    finally:
        free(pa)
        free(pb)
        free(parent)
        free(first)


def coarser(a, b):
    """True iff every block of ``b`` lies inside a block of ``a``."""
    cdef Py_ssize_t n = len(a)
    cdef int* pa = _load(a, n)
    cdef int* pb = _load(b, n)
    cdef int* image
    cdef int nb
    cdef Py_ssize_t i
    try:
        nb = _nblocks(pb, n)
        image = <int*> malloc((nb + 1) * sizeof(int))
        for i in range(nb):
            image[i] = -1
        try:
            for i in range(n):
                if image[pb[i]] < 0:
                    image[pb[i]] = pa[i]
                elif image[pb[i]] != pa[i]:
                    return False
            return True
        finally:
            free(image)
    finally:
        free(pa)
        free(pb)


def block_masses(labels, masses):
    out = [0] * (max(labels) + 1 if labels else 0)
    for v, m in zip(labels, masses):
        out[v] += m
    return out


cdef bint _independent(int* a, int* b, i64* m, Py_ssize_t n, i64 total,
                       int na, int nb, i64* ma, i64* mb, i64* joint):
    cdef Py_ssize_t i, j
    memset(ma, 0, na * sizeof(i64))
    memset(mb, 0, nb * sizeof(i64))
    memset(joint, 0, na * nb * sizeof(i64))
    for i in range(n):
        ma[a[i]] += m[i]
        mb[b[i]] += m[i]
        joint[a[i] * nb + b[i]] += m[i]
    for i in range(na):
        for j in range(nb):
            if joint[i * nb + j] * total != ma[i] * mb[j]:
                return False
    return True


def independent(a, b, masses, total):
    cdef Py_ssize_t n = len(a)
    cdef int* pa = _load(a, n)
    cdef int* pb = _load(b, n)
    cdef i64* pm = _load64(masses, n)
    cdef int na = _nblocks(pa, n)
    cdef int nb = _nblocks(pb, n)
    cdef i64* ma = <i64*> malloc((na + 1) * sizeof(i64))
    cdef i64* mb = <i64*> malloc((nb + 1) * sizeof(i64))
    cdef i64* joint = <i64*> malloc((na * nb + 1) * sizeof(i64))
    try:
        return _independent(pa, pb, pm, n, <i64> total, na, nb, ma, mb, joint)
    finally:
        free(pa); free(pb); free(pm); free(ma); free(mb); free(joint)


def cond_independent(a, b, c, masses):
    cdef Py_ssize_t n = len(a)
    cdef int* pa = _load(a, n)
    cdef int* pb = _load(b, n)
    cdef int* pc = _load(c, n)
    cdef i64* pm = _load64(masses, n)
    cdef int na = _nblocks(pa, n)
    cdef int nb = _nblocks(pb, n)
    cdef int nc = _nblocks(pc, n)
    cdef i64* mc = <i64*> malloc((nc + 1) * sizeof(i64))
    cdef i64* mac = <i64*> malloc((nc * na + 1) * sizeof(i64))
    cdef i64* mbc = <i64*> malloc((nc * nb + 1) * sizeof(i64))
    cdef i64* mabc = <i64*> malloc((nc * na * nb + 1) * sizeof(i64))
    cdef Py_ssize_t i, x, y, z
    try:
        memset(mc, 0, nc * sizeof(i64))
        memset(mac, 0, nc * na * sizeof(i64))
        memset(mbc, 0, nc * nb * sizeof(i64))
        memset(mabc, 0, nc * na * nb * sizeof(i64))
        for i in range(n):
            mc[pc[i]] += pm[i]
            mac[pc[i] * na + pa[i]] += pm[i]
            mbc[pc[i] * nb + pb[i]] += pm[i]
            mabc[(pc[i] * na + pa[i]) * nb + pb[i]] += pm[i]
        for z in range(nc):
            for x in range(na):
                for y in range(nb):
                    if mabc[(z * na + x) * nb + y] * mc[z] != mac[z * na + x] * mbc[z * nb + y]:
                        return False
        return True
    finally:
        free(pa); free(pb); free(pc); free(pm)
        free(mc); free(mac); free(mbc); free(mabc)


def complement_scan(x, z, masses, total):
    """All coarsenings ``c`` of ``z`` independent of ``x`` with ``x v c == z``.

    Same pruning and output order as the pure-Python version: only
    restricted growth strings over the atoms of ``z`` with exactly
    ``nblocks(z) / nblocks(x)`` blocks are generated, lexicographically.
    """
    cdef Py_ssize_t n = len(x)
    cdef int* px = _load(x, n)
    cdef int* pz = _load(z, n)
    cdef i64* pm = _load64(masses, n)
    cdef int k = _nblocks(pz, n)
    cdef int nx = _nblocks(px, n)
    cdef int want, i, used, v
    cdef Py_ssize_t j
    cdef int* rgs
    cdef int* used_upto
    cdef int* cand
    cdef i64* ma
    cdef i64* mb
    cdef i64* joint
    found = []
    try:
        if k % nx:
            return found
        want = k // nx
        rgs = <int*> malloc((k + 1) * sizeof(int))
        used_upto = <int*> malloc((k + 1) * sizeof(int))
        cand = <int*> malloc((n + 1) * sizeof(int))
        ma = <i64*> malloc((nx + 1) * sizeof(i64))
        mb = <i64*> malloc((want + 1) * sizeof(i64))
        joint = <i64*> malloc((nx * want + 1) * sizeof(i64))
        try:
            # iterative lexicographic enumeration of RGS with exactly `want` blocks;
            # used_upto[i] = number of distinct values among rgs[0..i]
            rgs[0] = 0
            used_upto[0] = 1
            i = 1
            if k == 1:
                if want == 1:
                    for j in range(n):
                        cand[j] = 0
                    if _independent(px, cand, pm, n, <i64> total, nx, 1, ma, mb, joint):
                        found.append(tuple([0] * n))
                return found
            rgs[1] = -1
            while i > 0:
                rgs[i] += 1
                used = used_upto[i - 1]
                v = rgs[i]
                if v > used or v >= want:
                    i -= 1
                    continue
                used_upto[i] = used + (v == used)
                if k - 1 - i < want - used_upto[i]:
                    continue
                if i == k - 1:
                    if used_upto[i] == want:
                        for j in range(n):
                            cand[j] = rgs[pz[j]]
                        if _independent(px, cand, pm, n, <i64> total, nx, want, ma, mb, joint):
                            found.append(tuple([cand[j] for j in range(n)]))
                    continue
                i += 1
                rgs[i] = -1
            return found
        finally:
            free(rgs); free(used_upto); free(cand); free(ma); free(mb); free(joint)
    finally:
        free(px); free(pz); free(pm)
