"""Kernel backend selection.

The compiled extension is used when it imports; otherwise the numpy
fallback.  Setting ``CASIMIR_RWA_PURE=1`` forces the fallback.
``BACKEND`` names the active choice.
"""

import os

from . import _pykernels

python_backend = _pykernels

compiled_backend = None
if os.environ.get("CASIMIR_RWA_PURE") != "1":
    try:
        from . import _ckernels as compiled_backend
    except ImportError:
        compiled_backend = None

_active = compiled_backend if compiled_backend is not None else python_backend
BACKEND = "cython" if _active is compiled_backend else "python"

band_coefficients = _active.band_coefficients
apply_quadratic = _active.apply_quadratic
ladder_exp = _active.ladder_exp
rk4_propagate = _active.rk4_propagate
