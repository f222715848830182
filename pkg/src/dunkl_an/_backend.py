"""Select the series kernel: compiled if importable, else pure Python.

Set ``DUNKL_AN_PURE_PYTHON=1`` to force the fallback.
"""

import os

from . import _series_py

if os.environ.get("DUNKL_AN_PURE_PYTHON", "") not in ("", "0"):
    shell_sums = _series_py.shell_sums
    BACKEND = "python"
else:
    try:
        from ._series import shell_sums
    except ImportError:
        shell_sums = _series_py.shell_sums
        BACKEND = "python"
    else:
        BACKEND = "cython"

__all__ = ["BACKEND", "shell_sums"]
