"""Backend selection for the hot kernels.

The compiled extension is preferred when importable; setting the
environment variable ``INTGRAPH_PURE=1`` forces the pure-Python
fallback (useful for debugging and for the backend benchmark).
"""

from __future__ import annotations

import os

if os.environ.get("INTGRAPH_PURE"):
    from . import _kernels_py as _impl
else:
    try:
        from . import _fastkernels as _impl  # type: ignore[no-redef]
    except ImportError:
        from . import _kernels_py as _impl  # type: ignore[no-redef]

BACKEND = _impl.BACKEND_NAME

prepare_table = _impl.prepare_table
subgroup_closure = _impl.subgroup_closure
prepare_graph = _impl.prepare_graph
vertex_disjoint_paths = _impl.vertex_disjoint_paths
