"""Evaluation kernel selection.

The compiled kernel is used when the extension was built; otherwise the
pure-Python kernel.  Set ``TEAMLOGIC_PURE_PYTHON=1`` to force the latter.

The compiled kernel walks the submasks of every team, so its cost grows
like 3^k; the Python kernel shifts whole subset tables as big integers and
overtakes it past about eight members (see benchmarks/bench_kernel.py).
Larger teams are therefore always handed to the Python kernel.
"""
import os

from . import _pykernel

#: largest member count sent to the compiled kernel
COMPILED_MAX_MEMBERS = 8

python_denote_program = _pykernel.denote_program
compiled_denote_program = None

if not os.environ.get("TEAMLOGIC_PURE_PYTHON"):
    try:
        from ._ckernel import denote_program as compiled_denote_program
    except ImportError:
        pass

if compiled_denote_program is None:
    denote_program = python_denote_program
    BACKEND = "python"
else:
    def denote_program(ops, a0, a1, lits, compat, k):
        run = compiled_denote_program if k <= COMPILED_MAX_MEMBERS else python_denote_program
        return run(ops, a0, a1, lits, compat, k)

    BACKEND = "cython"

__all__ = ["denote_program", "python_denote_program", "compiled_denote_program", "BACKEND",
           "COMPILED_MAX_MEMBERS"]
