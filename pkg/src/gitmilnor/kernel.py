"""Backend selection for the row-reduction kernel.

The compiled extension is used when it was built; ``GITMILNOR_PURE_PYTHON=1``
forces the fallback.
"""
import os

from . import _echelon_py

echelon_py = _echelon_py.echelon

try:
    from ._echelon_ext import echelon as echelon_ext
except ImportError:  # extension not built
    echelon_ext = None

if echelon_ext is not None and not os.environ.get("GITMILNOR_PURE_PYTHON"):
    echelon = echelon_ext
    BACKEND = "cython"
else:
    echelon = echelon_py
    BACKEND = "python"
