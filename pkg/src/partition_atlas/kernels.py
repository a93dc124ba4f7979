"""Hot kernels, compiled when available.

The compiled ``_ckernels`` extension is used if it imports; otherwise the
pure-Python implementation in ``_kernels_py`` is used. Set
``PARTITION_ATLAS_PURE=1`` to force the fallback.
"""

from __future__ import annotations

import os
from array import array

from . import _kernels_py

_compiled = None
if os.environ.get("PARTITION_ATLAS_PURE", "") not in ("1", "true", "yes"):
    try:
        from . import _ckernels as _compiled
    except ImportError:
        _compiled = None

BACKEND = "cython" if _compiled is not None else "python"


def _i64(seq) -> array:
    return seq if isinstance(seq, array) and seq.typecode == "q" else array("q", seq)


def local_clique_sizes(indptr, indices, backend: str | None = None) -> list[int]:
    if (backend or BACKEND) == "cython":
        if _compiled is None:
            raise RuntimeError("compiled kernels are not built")
        return _compiled.local_clique_sizes(_i64(indptr), _i64(indices))
    return _kernels_py.local_clique_sizes(indptr, indices)


def edge_symmetric_differences(indptr, indices, sources, targets,
                               backend: str | None = None) -> list[int]:
    if (backend or BACKEND) == "cython":
        if _compiled is None:
            raise RuntimeError("compiled kernels are not built")
        return _compiled.edge_symmetric_differences(
            _i64(indptr), _i64(indices), _i64(sources), _i64(targets))
    return _kernels_py.edge_symmetric_differences(indptr, indices, sources, targets)


def available_backends() -> list[str]:
    return ["python"] + (["cython"] if _compiled is not None else [])
