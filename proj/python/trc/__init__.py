"""Koszul-flattening lower-bound certificates for matrix multiplication tensors."""

import json

from . import _core
from ._core import TrcError, rank_one_flattening_rank

__version__ = _core.__version__

__all__ = [
    "TrcError",
    "best_p",
    "bound_table_csv",
    "certify_matmul",
    "certify_tensor",
    "matmul_tensor",
    "rank_one_flattening_rank",
    "reference_bounds",
    "replay",
    "simple_rank_lb",
    "soundness_sweep",
    "strassen_7",
    "theorem_rank_lb",
    "verify_decomposition",
]


def _dump(obj):
    return obj if isinstance(obj, str) else json.dumps(obj)


def theorem_rank_lb(n, m, p):
    return int(_core.theorem_rank_lb(n, m, p))


def simple_rank_lb(n, m, p):
    return int(_core.simple_rank_lb(n, m, p))


def reference_bounds(n, m):
    blaser, lo = _core.reference_bounds(n, m)
    return {"blaser": int(blaser), "lo_borderrank": int(lo)}


def best_p(n, m):
    p, bound = _core.best_p(n, m)
    return p, int(bound)


def bound_table_csv(n_max, n_min=2, p_max=3):
    return _core.bound_table_csv(n_min, n_max, p_max)


def certify_matmul(n, m, p, seed=0, retries=3, exact=False):
    return json.loads(_core.certify_matmul(n, m, p, seed, retries, exact))


def certify_tensor(tensor, p, seed=0):
    return json.loads(_core.certify_tensor(_dump(tensor), p, seed))


def replay(certificate, tensor=None):
    return _core.replay(_dump(certificate), None if tensor is None else _dump(tensor))


def matmul_tensor(m, n, l):
    return json.loads(_core.matmul_tensor(m, n, l))


def strassen_7():
    return json.loads(_core.strassen_7())


def verify_decomposition(tensor, decomposition):
    return _core.verify_decomposition(_dump(tensor), _dump(decomposition))


def soundness_sweep(dims, p, r_max, trials, seed=0):
    a, b, c = dims
    return json.loads(_core.soundness_sweep(a, b, c, p, r_max, trials, seed))
