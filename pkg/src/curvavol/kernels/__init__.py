"""Hot numeric kernels with selectable backend.

The environment variable ``CURVAVOL_BACKEND`` picks the implementation:

* ``auto`` (default): numba if importable, else pure numpy;
* ``numba``: require the numba backend, raise if unavailable;
* ``numpy``: force the pure-numpy reference path.

Both backends draw from the same counter-based uniform stream, so Monte
Carlo estimates are reproducible per backend and agree across backends up
to summation-order rounding.
"""

import os

from . import reference

_CHOICE = os.environ.get("CURVAVOL_BACKEND", "auto").strip().lower()
if _CHOICE not in ("auto", "numba", "numpy"):
    raise RuntimeError(
        f"CURVAVOL_BACKEND must be auto, numba or numpy, got {_CHOICE!r}")

if _CHOICE == "numpy":
    _impl = reference
    USING_NUMBA = False
else:
    try:
        from . import fast as _impl
        USING_NUMBA = True
    except ImportError:
        if _CHOICE == "numba":
            raise RuntimeError(
                "CURVAVOL_BACKEND=numba but numba is not importable")
        _impl = reference
        USING_NUMBA = False

uniforms = _impl.uniforms
lob_series = _impl.lob_series
mc_sums = _impl.mc_sums


def backend_name() -> str:
    return "numba" if USING_NUMBA else "numpy"
