"""Erasure decoding for CSS quantum LDPC codes.

Thin wrapper over the compiled extension. When the package ships its own
copy of the bundled codes and parameter tables, point the library at it
unless the caller already chose a data directory.
"""

import os
from pathlib import Path

_pkg_data = Path(__file__).resolve().parent / "data"
if "QLDPC_DATA_DIR" not in os.environ and _pkg_data.is_dir():
    os.environ["QLDPC_DATA_DIR"] = str(_pkg_data)

from qldpc_erasure._core import *  # noqa: F401,F403  (re-export the C++ surface)
from qldpc_erasure._core import __doc__  # noqa: F401

__version__ = "0.1.0"
