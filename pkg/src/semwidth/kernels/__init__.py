"""Integer kernels behind the homomorphism search, the decomposition DP and
the set-function property checks.

The compiled extension is used when it imports; otherwise, or when the
environment variable ``SEMWIDTH_PURE`` is set to a non-empty value, the
pure-Python module is used.  ``BACKEND`` names the active one.
"""
import os

from . import _pure

try:
    if os.environ.get("SEMWIDTH_PURE"):
        raise ImportError("pure backend forced")
    from . import _ckernels as _impl
    BACKEND = "compiled"
except ImportError:
    _impl = _pure
    BACKEND = "pure"


def hom_search(n_vars, n_values, domains, atom_vars, cands, injective=False):
    return _impl.hom_search(n_vars, n_values, domains, atom_vars, cands, injective)


def elimination_bags(n, adj):
    try:
        return _impl.elimination_bags(n, adj)
    except OverflowError:
        return _pure.elimination_bags(n, adj)


def elimination_dp(n, bags, rank):
    return _impl.elimination_dp(n, bags, rank)


def pair_checks(n, vals):
    try:
        return _impl.pair_checks(n, vals)
    except OverflowError:
        return _pure.pair_checks(n, vals)


def backends():
    """Available kernel modules by name, for cross-checking and benchmarks."""
    out = {"pure": _pure}
    try:
        from . import _ckernels
        out["compiled"] = _ckernels
    except ImportError:
        pass
    return out
