"""Numerical laboratory for Hankel measures on the unit disk."""

try:
    from ._hml import (
        __version__,
        canonical_spec,
        condition2_sup,
        hilbert_norm,
        moments,
        opnorm,
        run_cli,
    )
except ImportError:  # build-tree layout: the extension sits next to the package
    from _hml import (
        __version__,
        canonical_spec,
        condition2_sup,
        hilbert_norm,
        moments,
        opnorm,
        run_cli,
    )

__all__ = [
    "__version__",
    "canonical_spec",
    "condition2_sup",
    "hilbert_norm",
    "moments",
    "opnorm",
    "run_cli",
]
