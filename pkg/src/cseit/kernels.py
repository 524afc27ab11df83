"""Backend selection for the series kernels.

The compiled extension is preferred; set ``CSEIT_PURE_PYTHON=1`` to force
the pure-Python twin (the benchmark and the kernel tests exercise both).
"""
import os

if os.environ.get("CSEIT_PURE_PYTHON"):
    from . import _kernels_py as _impl

    BACKEND = "python"
else:
    try:
        from . import _kernels_c as _impl

        BACKEND = "cython"
    except ImportError:  # extension not built
        from . import _kernels_py as _impl

        BACKEND = "python"

poisson_inverse_sum = _impl.poisson_inverse_sum
poisson_inverse_many = _impl.poisson_inverse_many
poisson_group_sum = _impl.poisson_group_sum
hyp1f1_series = _impl.hyp1f1_series
inverse_bound = _impl.inverse_bound

__all__ = [
    "BACKEND",
    "poisson_inverse_sum",
    "poisson_inverse_many",
    "poisson_group_sum",
    "hyp1f1_series",
    "inverse_bound",
]
