"""Word kernels with a compiled core and a pure-Python fallback.

The compiled module is used when it was built and importable, unless the
environment variable ``CONCORDANCE_PURE_PYTHON`` is set to a non-empty value.
``BACKEND`` names the active implementation.
"""

import os

from . import _pykernels

python_backend = _pykernels

try:
    from . import _ckernels as compiled_backend
except ImportError:  # extension not built
    compiled_backend = None

if compiled_backend is not None and not os.environ.get("CONCORDANCE_PURE_PYTHON"):
    _active = compiled_backend
    BACKEND = "cython"
else:
    _active = _pykernels
    BACKEND = "python"

reduce_syllables = _active.reduce_syllables
multiply = _active.multiply
invert = _active.invert
fox_terms = _active.fox_terms
abelianize = _active.abelianize
fox_abelian = _active.fox_abelian

__all__ = [
    "BACKEND",
    "abelianize",
    "compiled_backend",
    "fox_abelian",
    "fox_terms",
    "invert",
    "multiply",
    "python_backend",
    "reduce_syllables",
]
