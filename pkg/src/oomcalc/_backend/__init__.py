"""Kernel backend selection.

The compiled kernel is preferred when its extension module imports cleanly;
otherwise the pure-Python twin takes over. ``OOMCALC_PURE_PYTHON=1`` in the
environment forces the fallback (useful for debugging and benchmarking).

``kernel`` is the selected module; ``BACKEND`` names it ("cython" or
"python"). Both modules expose the identical function set documented in
``py_kernel``.
"""

import os

if os.environ.get("OOMCALC_PURE_PYTHON"):
    from oomcalc._backend import py_kernel as kernel

    BACKEND = "python"
else:
    try:
        from oomcalc._backend import cy_kernel as kernel  # type: ignore[no-redef]

        BACKEND = "cython"
    except ImportError:
        from oomcalc._backend import py_kernel as kernel  # type: ignore[no-redef]

        BACKEND = "python"

__all__ = ["kernel", "BACKEND"]
