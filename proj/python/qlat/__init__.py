"""Quadratic lattices over Z and F_p, p-neighbors and special-cycle lattices.

Lattices are given either as a standard name such as ``"H+H+E8"`` or as a
dict ``{"rank": n, "half_gram": [[...], ...]}`` with Q(x) = x^T H x. Results
are plain dicts and lists matching the JSON output of the ``qlat`` tool.
"""

import json

from . import _qlat
from ._qlat import GuardExceeded, InvariantViolation, NotFound, PreconditionError, QlatError

__all__ = [
    "QlatError",
    "PreconditionError",
    "GuardExceeded",
    "NotFound",
    "InvariantViolation",
    "lattice_info",
    "isotropic_lines",
    "neighbors",
    "index_p_sublattices",
    "shrink",
    "grow",
    "k3_isogeny",
    "qisog_kernel",
    "cokernel_m",
    "verify",
    "suite_names",
]


def _lattice(lattice):
    return lattice if isinstance(lattice, str) else json.dumps(lattice)


def lattice_info(lattice, prime_bound=50):
    """Rank, signature, determinant, parity, discriminant group and self-dual primes."""
    return json.loads(_qlat.lattice_info(_lattice(lattice), prime_bound))


def isotropic_lines(lattice, p):
    """Normalized generators of the isotropic lines of N/pN."""
    return json.loads(_qlat.isotropic_lines(_lattice(lattice), p))


def neighbors(lattice, p):
    """Self-dual p-neighbors, one per smooth isotropic line, as {"line", "lattice"} dicts."""
    return json.loads(_qlat.neighbors(_lattice(lattice), p))


def index_p_sublattices(lambda_, p):
    """All sublattices of index p of a positive definite lattice, as minimal pairs."""
    return json.loads(_qlat.index_p_sublattices(_lattice(lambda_), p))


def shrink(lattice, embedding, pair):
    """Neighbors N~ of N meeting the span of the embedded Lambda in Lambda~."""
    return json.loads(_qlat.shrink(_lattice(lattice), json.dumps(embedding), json.dumps(pair)))


def grow(n_tilde, embedding):
    """The unique neighbor of N~ containing the saturation of the embedded Lambda~."""
    return json.loads(_qlat.grow(json.dumps(n_tilde), json.dumps(embedding)))


def k3_isogeny(d, p):
    """Polarized K3 lattice of degree p^2 d obtained from degree d."""
    return json.loads(_qlat.k3_isogeny(d, p))


def qisog_kernel(a, b, c, p):
    return json.loads(_qlat.qisog_kernel(a, b, c, p))


def cokernel_m(b, w, p):
    return json.loads(_qlat.cokernel_m(b, json.dumps(w), p))


def verify(suite, p=None, max_rank=None, seed=0):
    """Runs a named property suite and returns its report."""
    return json.loads(_qlat.verify(suite, p, max_rank, seed))


def suite_names():
    return list(_qlat.suite_names())
