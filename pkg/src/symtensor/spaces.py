"""Constitutive-tensor spaces described by index-permutation symmetries.

A space is a set of order-k tensors over R^n whose coefficients are
invariant under a list of index-position permutations.  The orthogonal
projector onto the space (its symmetrization identity) is the average of
the permutation operators over the group those generators generate; its
trace is the space dimension.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .core import FlatOperator, FlatTensor


def _check_permutation(perm: tuple, k: int) -> tuple:
    perm = tuple(int(p) for p in perm)
    if sorted(perm) != list(range(k)):
        raise ValueError(f"{perm} is not a permutation of 0..{k - 1}")
    return perm


def _compose(p: tuple, q: tuple) -> tuple:
    # (p then q) acting by axis relabeling: transpose(transpose(X, p), q)
    return tuple(p[q[i]] for i in range(len(p)))


def generate_permutation_group(generators, k: int) -> tuple:
    """Closure of the generators inside the symmetric group on k symbols."""
    identity = tuple(range(k))
    seen = {identity}
    frontier = [identity]
    gens = [_check_permutation(g, k) for g in generators]
    while frontier:
        nxt = []
        for p in frontier:
            for g in gens:
                q = _compose(p, g)
                if q not in seen:
                    seen.add(q)
                    nxt.append(q)
        frontier = nxt
    return tuple(sorted(seen))


def permutation_operator(perm: tuple, n: int) -> np.ndarray:
    """Matrix of X -> transpose(X, perm) on flattened order-k tensors."""
    k = len(perm)
    dim = n**k
    idx = np.indices((n,) * k).reshape(k, dim)
    strides = np.array([n ** (k - 1 - m) for m in range(k)])
    cols = (idx[list(perm), :] * strides[:, None]).sum(axis=0)
    mat = np.zeros((dim, dim))
    mat[np.arange(dim), cols] = 1.0
    return mat


@dataclass(frozen=True, eq=False)
class TensorSpace:
    """Descriptor of an index-symmetric tensor space.

    Attributes
    ----------
    name : str
        Catalog name.
    n : int
        Ambient dimension.
    k : int
        Tensor order.
    generators : tuple of tuple of int
        Index-position permutations (0-based) under which coefficients
        are invariant.
    """

    name: str
    n: int
    k: int
    generators: tuple

    def __post_init__(self):
        object.__setattr__(
            self, "generators",
            tuple(_check_permutation(g, self.k) for g in self.generators),
        )

    @cached_property
    def permutation_group(self) -> tuple:
        return generate_permutation_group(self.generators, self.k)

    @cached_property
    def projector(self) -> FlatOperator:
        dim = self.n**self.k
        acc = np.zeros((dim, dim))
        for perm in self.permutation_group:
            acc += permutation_operator(perm, self.n)
        return FlatOperator(self.n, self.k, acc / len(self.permutation_group))

    @cached_property
    def dim(self) -> int:
        tr = float(np.trace(self.projector.matrix))
        rounded = round(tr)
        if abs(tr - rounded) > 1e-9:
            raise RuntimeError(f"non-integer symmetrizer trace {tr!r} for {self.name}")
        return int(rounded)


def sym_identity(space: TensorSpace) -> FlatOperator:
    """Symmetrization identity: orthogonal projector onto the space."""
    return space.projector


def space_dim(space: TensorSpace) -> int:
    """Dimension of the space (trace of its symmetrization identity)."""
    return space.dim


def membership_residual(space: TensorSpace, t: FlatTensor) -> float:
    """``||Pi t - t||_inf``; zero iff ``t`` lies in the space."""
    if (t.n, t.k) != (space.n, space.k):
        raise ValueError(
            f"tensor of order {t.k} over R^{t.n} does not match space "
            f"{space.name} (order {space.k} over R^{space.n})"
        )
    return float(np.max(np.abs(space.projector.matrix @ t.coeffs - t.coeffs)))


def symmetrize(space: TensorSpace, arr) -> FlatTensor:
    """Project an arbitrary coefficient array into the space."""
    t = arr if isinstance(arr, FlatTensor) else FlatTensor(space.n, space.k, np.asarray(arr).reshape(-1))
    return space.projector.apply(t)


# ---------------------------------------------------------------------------
# Catalog
#
# Position permutations are 0-based.  Pair swaps below exchange the two
# argument blocks of an operator-valued tensor (major symmetry).

_PAIR_SWAP_4 = (2, 3, 0, 1)
_BLOCK_SWAP_6 = (3, 4, 5, 0, 1, 2)

SPACES: dict[str, TensorSpace] = {
    # symmetric matrices
    "sym2": TensorSpace("sym2", 2, 2, ((1, 0),)),
    "sym3": TensorSpace("sym3", 3, 2, ((1, 0),)),
    # classical elasticity: both minor symmetries and the major one
    "ela2": TensorSpace("ela2", 2, 4, ((1, 0, 2, 3), (0, 1, 3, 2), _PAIR_SWAP_4)),
    "ela3": TensorSpace("ela3", 3, 4, ((1, 0, 2, 3), (0, 1, 3, 2), _PAIR_SWAP_4)),
    # non-symmetric constitutive law: major symmetry only
    "major3": TensorSpace("major3", 3, 4, (_PAIR_SWAP_4,)),
    # order-5 coupling tensors: one symmetric pair per argument block
    "v1": TensorSpace("v1", 3, 5, ((0, 2, 1, 3, 4), (0, 1, 2, 4, 3))),
    "v1bar": TensorSpace("v1bar", 3, 5, ((1, 0, 2, 3, 4), (0, 1, 2, 4, 3))),
    # order-6 curvature tensors: symmetric pair in each block plus block swap
    "v2": TensorSpace("v2", 3, 6, ((0, 2, 1, 3, 4, 5), (0, 1, 2, 3, 5, 4), _BLOCK_SWAP_6)),
    "v2bar": TensorSpace("v2bar", 3, 6, ((1, 0, 2, 3, 4, 5), (0, 1, 2, 4, 3, 5), _BLOCK_SWAP_6)),
    # planar third-order theory: block swap only
    "high2": TensorSpace("high2", 2, 6, (_BLOCK_SWAP_6,)),
}

CATALOG_NAMES = tuple(SPACES)


def lookup(name: str) -> TensorSpace:
    key = name.strip().lower()
    if key not in SPACES:
        raise KeyError(f"unknown space name {name!r}; known: {', '.join(SPACES)}")
    return SPACES[key]
