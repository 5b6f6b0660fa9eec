"""Backend selection for the counting kernels.

Imports the compiled extension when present and falls back to the
pure-Python implementations otherwise.  Both backends implement the
same two functions with identical semantics; benchmarks/bench_kernels.py
compares them head to head.
"""

from __future__ import annotations

from . import _kernels_py

try:
    from . import _kernels as _compiled
except ImportError:
    _compiled = None

BACKEND = "compiled" if _compiled is not None else "python"

_MAX_COMPILED_BITS = 63


def count_embeddings(order, h_edges, host_n, host_masks, allowed_masks=None) -> int:
    if _compiled is not None and host_n <= _MAX_COMPILED_BITS:
        return _compiled.count_embeddings(
            list(order), [tuple(e) for e in h_edges], host_n, list(host_masks),
            None if allowed_masks is None else list(allowed_masks),
        )
    return _kernels_py.count_embeddings(order, h_edges, host_n, host_masks, allowed_masks)


def count_independent_sets(n_vertices, copies) -> int:
    if _compiled is not None and n_vertices <= _MAX_COMPILED_BITS:
        return _compiled.count_independent_sets(n_vertices, [tuple(c) for c in copies])
    return _kernels_py.count_independent_sets(n_vertices, copies)
