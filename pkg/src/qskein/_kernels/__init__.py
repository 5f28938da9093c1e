"""Kernel selection.

The compiled kernel is preferred when present; set QSKEIN_KERNEL=python or
QSKEIN_KERNEL=c to force a backend (forcing "c" raises if the extension was
not built).  Both backends implement the identical contract and are compared
by tests and by benchmarks/bench_kernels.py.
"""

import os

from . import _kernel_py

_choice = os.environ.get("QSKEIN_KERNEL", "auto").lower()

if _choice == "python":
    _impl = _kernel_py
elif _choice == "c":
    from . import _ckernel as _impl  # type: ignore[no-redef]
else:
    try:
        from . import _ckernel as _impl  # type: ignore[no-redef]
    except ImportError:
        _impl = _kernel_py

BACKEND = _impl.BACKEND
coeff_add = _impl.coeff_add
coeff_neg = _impl.coeff_neg
coeff_mul = _impl.coeff_mul
coeff_shift = _impl.coeff_shift
torus_mul = _impl.torus_mul
