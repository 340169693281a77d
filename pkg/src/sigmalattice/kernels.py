"""Backend selection for the partition kernels.

The compiled ``_ckernels`` extension is used when it imports; otherwise, or
when ``SIGMALATTICE_PURE`` is set to a non-empty value, the pure-Python
``_pykernels`` module is used. The compiled mass kernels work in int64, so
spaces whose common weight denominator exceeds ``2**31`` are always routed to
the Python implementation, as are conditional-independence queries whose dense
block table would be too large.
"""

from __future__ import annotations

import os

from . import _pykernels

_INT64_SAFE_TOTAL = 2**31
_DENSE_CELLS = 1 << 20

_c = None
if not os.environ.get("SIGMALATTICE_PURE"):
    try:
        from . import _ckernels as _c
    except ImportError:  # extension not built
        _c = None

BACKEND = "cython" if _c is not None else "python"
_impl = _c if _c is not None else _pykernels

canonical = _impl.canonical
join_labels = _impl.join_labels
meet_labels = _impl.meet_labels
coarser = _impl.coarser
block_masses = _pykernels.block_masses


def independent(a, b, masses, total):
    if total > _INT64_SAFE_TOTAL:
        return _pykernels.independent(a, b, masses, total)
    return _impl.independent(a, b, masses, total)


def cond_independent(a, b, c, masses, total):
    dense = (max(a) + 1) * (max(b) + 1) * (max(c) + 1)
    if total > _INT64_SAFE_TOTAL or dense > _DENSE_CELLS:
        return _pykernels.cond_independent(a, b, c, masses)
    return _impl.cond_independent(a, b, c, masses)


def complement_scan(x, z, masses, total):
    if total > _INT64_SAFE_TOTAL:
        return _pykernels.complement_scan(x, z, masses, total)
    return _impl.complement_scan(x, z, masses, total)
