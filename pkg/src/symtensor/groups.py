"""Closed subgroups of SO(3) and O(2) with normalized Haar integration.

Finite groups are explicit element lists (checked for closure at
construction).  Continuous groups carry quadrature-rule generators that
integrate polynomial functions of the matrix entries exactly up to a
requested degree:

* circle groups use uniformly spaced angles (trapezoid rule, exact for
  trigonometric polynomials below the node count),
* O(2)-type groups add the same angles composed with a fixed coset
  representative at half weight,
* SO(3) uses a product rule over Euler-type angles with uniform grids in
  the two circle angles and Gauss-Legendre nodes in u = cos(theta), which
  absorbs the sin(theta) Jacobian of the invariant volume element.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np
from numpy.polynomial.legendre import leggauss

ORTHO_TOL = 1e-12
CLOSURE_TOL = 1e-10

FINITE_CATALOG_IDS = ("Zn_2D", "Dn_2D", "Zn_3D", "Dn_3D", "cubic_O", "trivial")
CONTINUOUS_IDS = ("SO2_2D", "O2_2D", "SO2_e3", "O2_e3", "SO3")

# Coset representatives for the improper halves, fixed so output is
# deterministic: a reflection in 2D, a rotation by pi about e1 in 3D.
REFLECTION_2D = np.array([[-1.0, 0.0], [0.0, 1.0]])
FLIP_E1_3D = np.diag([1.0, -1.0, -1.0])


@dataclass(frozen=True, eq=False)
class GroupElement:
    """An orthogonal matrix with a human-readable label."""

    matrix: np.ndarray
    label: str = ""

    def __post_init__(self):
        m = np.asarray(self.matrix, dtype=float)
        if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] not in (2, 3):
            raise ValueError(f"group element must be a 2x2 or 3x3 matrix, got {m.shape}")
        if np.max(np.abs(m.T @ m - np.eye(m.shape[0]))) > ORTHO_TOL:
            raise ValueError(f"group element {self.label!r} is not orthogonal")
        det = float(np.linalg.det(m))
        if abs(abs(det) - 1.0) > ORTHO_TOL:
            raise ValueError("group element determinant must be +-1")
        if det < 0.0 and m.shape[0] == 3:
            raise ValueError("improper 3x3 elements are not admitted (use SO(3) rotations)")
        m = m.copy()
        m.flags.writeable = False
        object.__setattr__(self, "matrix", m)

    @property
    def ambient(self) -> int:
        return self.matrix.shape[0]

    @property
    def det_sign(self) -> int:
        return 1 if np.linalg.det(self.matrix) > 0.0 else -1


@dataclass(frozen=True, eq=False)
class QuadratureRule:
    """Weighted nodes realizing the normalized Haar integral."""

    nodes: tuple

    def __post_init__(self):
        weights = np.array([w for _, w in self.nodes])
        if np.any(weights <= 0.0):
            raise ValueError("all quadrature weights must be positive")
        if abs(weights.sum() - 1.0) > 1e-12:
            raise ValueError(f"weights sum to {weights.sum()!r}, expected 1")
        object.__setattr__(self, "nodes", tuple(self.nodes))

    def __len__(self) -> int:
        return len(self.nodes)


@dataclass(frozen=True, eq=False)
class SymmetryGroup:
    """A closed subgroup of SO(3) or O(2).

    ``kind`` is ``"finite"`` (explicit ``elements``) or ``"continuous"``
    (``continuous_id`` from ``CONTINUOUS_IDS``).  ``generators`` is a small
    generating (finite case) or sampling (continuous case) set used by
    invariance checks and the linear-system oracle.  3D groups built about
    a non-default axis carry the conjugating rotation in ``frame``.
    """

    ambient: int
    catalog_id: str
    kind: str
    elements: tuple = ()
    continuous_id: str = ""
    generators: tuple = ()
    frame: Optional[np.ndarray] = None

    def __post_init__(self):
        if self.kind not in ("finite", "continuous"):
            raise ValueError(f"unknown group kind {self.kind!r}")
        if self.kind == "finite":
            if not self.elements:
                raise ValueError("finite group needs at least the identity")
            report = closure_check(self)
            if not report.passed:
                raise ValueError(f"group {self.catalog_id!r} fails closure: {report.message}")
        else:
            if self.continuous_id not in CONTINUOUS_IDS:
                raise ValueError(f"unknown continuous group id {self.continuous_id!r}")

    @property
    def is_finite(self) -> bool:
        return self.kind == "finite"

    def order(self) -> int:
        if not self.is_finite:
            raise ValueError("continuous groups have no finite order")
        return len(self.elements)

    def sample_elements(self) -> tuple:
        """Elements used for invariance spot checks (generators if finite)."""
        if self.is_finite:
            return self.generators if self.generators else self.elements
        return self.generators


@dataclass(frozen=True)
class ClosureReport:
    passed: bool
    message: str = ""
    witness: Optional[tuple] = None


def rotation_2d(theta: float) -> np.ndarray:
    c, s = np.cos(theta), np.sin(theta)
    return np.array([[c, -s], [s, c]])


def rotation_z(theta: float) -> np.ndarray:
    c, s = np.cos(theta), np.sin(theta)
    return np.array([[c, -s, 0.0], [s, c, 0.0], [0.0, 0.0, 1.0]])


def rotation_y(theta: float) -> np.ndarray:
    c, s = np.cos(theta), np.sin(theta)
    return np.array([[c, 0.0, s], [0.0, 1.0, 0.0], [-s, 0.0, c]])


def axis_aligner(axis) -> np.ndarray:
    """Rotation carrying e3 to the requested unit axis (deterministic)."""
    axis = np.asarray(axis, dtype=float)
    if axis.shape != (3,):
        raise ValueError("axis must be a 3-vector")
    if abs(np.linalg.norm(axis) - 1.0) > 1e-9:
        raise ValueError(f"axis must be a unit vector, |axis| = {np.linalg.norm(axis)!r}")
    e3 = np.array([0.0, 0.0, 1.0])
    c = float(axis @ e3)
    if c > 1.0 - 1e-14:
        return np.eye(3)
    if c < -1.0 + 1e-14:
        return np.diag([1.0, -1.0, -1.0])
    v = np.cross(e3, axis)
    vx = np.array([[0.0, -v[2], v[1]], [v[2], 0.0, -v[0]], [-v[1], v[0], 0.0]])
    return np.eye(3) + vx + vx @ vx / (1.0 + c)


def _conjugate(q: np.ndarray, frame) -> np.ndarray:
    if frame is None:
        return q
    return frame @ q @ frame.T


def make_finite_group(catalog_id: str, order_param: int = 1, axis=None,
                      ambient: int = 3) -> SymmetryGroup:
    """Build a finite catalog group.

    ``Zn_2D``/``Dn_2D`` are the cyclic/dihedral groups of the plane (the
    dihedral group of order n has cardinality 2n, obtained by adjoining the
    reflection diag(-1, 1)).  ``Zn_3D``/``Dn_3D`` are their SO(3) embeddings
    about ``axis`` (default e3); the dihedral extension adjoins the rotation
    by pi about an in-plane axis.  ``cubic_O`` is the 24-element rotation
    group of the cube.  ``trivial`` is {I} in the requested ambient.
    """
    if catalog_id not in FINITE_CATALOG_IDS:
        raise ValueError(f"unknown finite group id {catalog_id!r}")
    if order_param < 1:
        raise ValueError("order_param must be >= 1")
    frame = None
    if catalog_id in ("Zn_3D", "Dn_3D") and axis is not None:
        frame = axis_aligner(axis)
        if np.max(np.abs(frame - np.eye(3))) < 1e-15:
            frame = None

    def elem3(q, label):
        return GroupElement(_conjugate(q, frame), label)

    n = order_param
    if catalog_id == "trivial":
        eye = np.eye(ambient)
        return SymmetryGroup(ambient, "trivial", "finite",
                             elements=(GroupElement(eye, "id"),),
                             generators=(GroupElement(eye, "id"),))

    if catalog_id == "Zn_2D":
        els = tuple(GroupElement(rotation_2d(2 * np.pi * j / n), f"rot({j}*2pi/{n})")
                    for j in range(n))
        gens = (els[1 % n],) if n > 1 else (els[0],)
        return SymmetryGroup(2, f"z{n}_2d", "finite", elements=els, generators=gens)

    if catalog_id == "Dn_2D":
        rots = [rotation_2d(2 * np.pi * j / n) for j in range(n)]
        els = tuple(
            [GroupElement(r, f"rot({j}*2pi/{n})") for j, r in enumerate(rots)]
            + [GroupElement(r @ REFLECTION_2D, f"rot({j}*2pi/{n})*refl") for j, r in enumerate(rots)]
        )
        gens = ((els[1 % n],) if n > 1 else ()) + (GroupElement(REFLECTION_2D, "refl"),)
        return SymmetryGroup(2, f"d{n}_2d", "finite", elements=els, generators=gens)

    if catalog_id == "Zn_3D":
        els = tuple(elem3(rotation_z(2 * np.pi * j / n), f"rot(axis,{j}*2pi/{n})")
                    for j in range(n))
        gens = (els[1 % n],) if n > 1 else (els[0],)
        return SymmetryGroup(3, f"z{n}_3d", "finite", elements=els,
                             generators=gens, frame=frame)

    if catalog_id == "Dn_3D":
        rots = [rotation_z(2 * np.pi * j / n) for j in range(n)]
        els = tuple(
            [elem3(r, f"rot(axis,{j}*2pi/{n})") for j, r in enumerate(rots)]
            + [elem3(r @ FLIP_E1_3D, f"rot(axis,{j}*2pi/{n})*flip") for j, r in enumerate(rots)]
        )
        gens = ((els[1 % n],) if n > 1 else ()) + (elem3(FLIP_E1_3D, "flip"),)
        return SymmetryGroup(3, f"d{n}_3d", "finite", elements=els,
                             generators=gens, frame=frame)

    # cubic_O: rotations of the cube = signed permutation matrices, det +1
    els = []
    perms = [(0, 1, 2), (0, 2, 1), (1, 0, 2), (1, 2, 0), (2, 0, 1), (2, 1, 0)]
    for perm in perms:
        base = np.zeros((3, 3))
        for row, col in enumerate(perm):
            base[row, col] = 1.0
        for signs in ((1, 1, 1), (1, 1, -1), (1, -1, 1), (1, -1, -1),
                      (-1, 1, 1), (-1, 1, -1), (-1, -1, 1), (-1, -1, -1)):
            q = np.diag(signs).astype(float) @ base
            if np.linalg.det(q) > 0.0:
                els.append(GroupElement(q, f"signed_perm{perm}{signs}"))
    gens = (GroupElement(rotation_z(np.pi / 2).round(12), "rot(e3,pi/2)"),
            GroupElement(np.array([[0.0, 0.0, 1.0], [1.0, 0.0, 0.0], [0.0, 1.0, 0.0]]),
                         "rot(111,2pi/3)"))
    return SymmetryGroup(3, "cubic", "finite", elements=tuple(els), generators=gens)


def make_continuous_group(continuous_id: str, axis=None) -> SymmetryGroup:
    """Build a continuous catalog group, optionally about a non-default axis."""
    if continuous_id not in CONTINUOUS_IDS:
        raise ValueError(f"unknown continuous group id {continuous_id!r}")
    ambient = 2 if continuous_id.endswith("2D") else 3
    frame = None
    if axis is not None and ambient == 3 and continuous_id != "SO3":
        frame = axis_aligner(axis)
        if np.max(np.abs(frame - np.eye(3))) < 1e-15:
            frame = None

    def sample(q, label):
        return GroupElement(_conjugate(q, frame), label)

    if continuous_id == "SO2_2D":
        gens = (GroupElement(rotation_2d(0.9), "rot(0.9)"),
                GroupElement(rotation_2d(2.31), "rot(2.31)"))
    elif continuous_id == "O2_2D":
        gens = (GroupElement(rotation_2d(0.9), "rot(0.9)"),
                GroupElement(REFLECTION_2D, "refl"))
    elif continuous_id == "SO2_e3":
        gens = (sample(rotation_z(0.9), "rot(axis,0.9)"),
                sample(rotation_z(2.31), "rot(axis,2.31)"))
    elif continuous_id == "O2_e3":
        gens = (sample(rotation_z(0.9), "rot(axis,0.9)"),
                sample(FLIP_E1_3D, "flip"))
    else:  # SO3
        gens = (GroupElement(rotation_z(0.9), "rot(e3,0.9)"),
                GroupElement(rotation_y(1.3), "rot(e2,1.3)"),
                GroupElement(rotation_z(np.pi / 2).round(12) @ rotation_y(0.4), "mixed"))
    name = {"SO2_2D": "so2", "O2_2D": "o2", "SO2_e3": "so2-e3",
            "O2_e3": "o2-e3", "SO3": "so3"}[continuous_id]
    return SymmetryGroup(ambient, name, "continuous", continuous_id=continuous_id,
                         generators=gens, frame=frame)


def closure_check(g) -> ClosureReport:
    """Verify a finite element list is closed under products and has the identity.

    Accepts a finite ``SymmetryGroup`` or a plain sequence of
    ``GroupElement`` (useful for vetting a candidate list before it can
    be turned into a group at all).
    """
    if isinstance(g, SymmetryGroup):
        if g.kind != "finite":
            raise ValueError("closure_check applies to finite groups only")
        elements = g.elements
    else:
        elements = tuple(g)
        if not elements:
            return ClosureReport(False, "empty element list")
    mats = [e.matrix for e in elements]
    eye = np.eye(mats[0].shape[0])
    if not any(np.max(np.abs(m - eye)) < CLOSURE_TOL for m in mats):
        return ClosureReport(False, "identity element missing")
    for i, a in enumerate(elements):
        for j, b in enumerate(elements):
            prod = a.matrix @ b.matrix
            if not any(np.max(np.abs(prod - m)) < CLOSURE_TOL for m in mats):
                return ClosureReport(
                    False,
                    f"product of elements {i} ({a.label}) and {j} ({b.label}) not in set",
                    witness=(a, b),
                )
    return ClosureReport(True, "closed under multiplication; identity present")


def _circle_nodes(degree: int):
    count = 2 * degree + 2
    return [2 * np.pi * j / count for j in range(count)], count


def haar_rule(g: SymmetryGroup, max_poly_degree: int = 8) -> QuadratureRule:
    """Quadrature nodes realizing the normalized Haar measure on ``g``.

    Finite groups get uniform weights 1/|G|.  Circle groups get
    2*degree + 2 equispaced angles; O(2)-type groups additionally traverse
    the improper coset at half weight.  SO(3) uses the product rule over
    (phi, theta, psi) in [0,2pi] x [0,pi] x [0,2pi] with the invariant
    density sin(theta)/(8 pi^2): uniform grids in phi and psi and
    Gauss-Legendre nodes in u = cos(theta).  Exact (up to roundoff) for
    polynomials in the matrix entries of total degree <= max_poly_degree.
    """
    if g.is_finite:
        w = 1.0 / len(g.elements)
        return QuadratureRule(tuple((e, w) for e in g.elements))
    if not 1 <= max_poly_degree <= 12:
        raise ValueError(f"max_poly_degree must be in [1, 12], got {max_poly_degree}")

    cid = g.continuous_id
    if cid in ("SO2_2D", "O2_2D"):
        angles, count = _circle_nodes(max_poly_degree)
        proper = [(GroupElement(rotation_2d(t), f"rot({t:.6f})"), 1.0 / count) for t in angles]
        if cid == "SO2_2D":
            return QuadratureRule(tuple(proper))
        improper = [(GroupElement(rotation_2d(t) @ REFLECTION_2D, f"rot({t:.6f})*refl"),
                     0.5 / count) for t in angles]
        proper = [(e, 0.5 / count) for e, _ in proper]
        return QuadratureRule(tuple(proper + improper))

    if cid in ("SO2_e3", "O2_e3"):
        angles, count = _circle_nodes(max_poly_degree)
        proper = [(GroupElement(_conjugate(rotation_z(t), g.frame), f"rot(axis,{t:.6f})"),
                   1.0 / count) for t in angles]
        if cid == "SO2_e3":
            return QuadratureRule(tuple(proper))
        improper = [(GroupElement(_conjugate(rotation_z(t) @ FLIP_E1_3D, g.frame),
                     f"rot(axis,{t:.6f})*flip"), 0.5 / count) for t in angles]
        proper = [(e, 0.5 / count) for e, _ in proper]
        return QuadratureRule(tuple(proper + improper))

    # SO3
    angles, count = _circle_nodes(max_poly_degree)
    u_nodes, u_weights = leggauss(max_poly_degree + 1)
    nodes = []
    for phi in angles:
        rz_phi = rotation_z(phi)
        for u, wu in zip(u_nodes, u_weights):
            mid = rz_phi @ rotation_y(float(np.arccos(u)))
            for psi in angles:
                q = mid @ rotation_z(psi)
                nodes.append((GroupElement(q, f"euler({phi:.4f},{u:.4f},{psi:.4f})"),
                              float(wu) / (2 * count * count)))
    return QuadratureRule(tuple(nodes))


def integrate(g: SymmetryGroup, f: Callable[[GroupElement], float],
              degree: int = 8) -> float:
    """Haar integral of ``f`` over ``g``, exact for polynomial integrands
    in the matrix entries of total degree <= ``degree``.

    Finite groups take the arithmetic mean over the element list; the
    quadrature path accumulates with exact summation in node order, so
    repeated runs are bit-identical.
    """
    if g.is_finite:
        return math.fsum(f(e) for e in g.elements) / len(g.elements)
    rule = haar_rule(g, degree)
    return math.fsum(weight * f(element) for element, weight in rule.nodes)


# ---------------------------------------------------------------------------
# CLI-facing catalog resolution

_FINITE_NAMES = {"z2": ("Zn", 2), "z3": ("Zn", 3), "z4": ("Zn", 4), "z6": ("Zn", 6),
                 "d2": ("Dn", 2), "d3": ("Dn", 3), "d4": ("Dn", 4), "d6": ("Dn", 6)}

CATALOG_NAMES = ("trivial", "z2", "z3", "z4", "z6", "d2", "d3", "d4", "d6",
                 "cubic", "so2", "o2", "so2-e3", "o2-e3", "so3")


def resolve_group(name: str, ambient: int, axis=None) -> SymmetryGroup:
    """Resolve a CLI catalog name against the requested ambient dimension.

    The cyclic/dihedral names build 2D groups for 2D spaces and the
    corresponding SO(3) embeddings (about ``axis``, default e3) for 3D
    spaces.
    """
    key = name.strip().lower()
    if key not in CATALOG_NAMES:
        raise KeyError(f"unknown group name {name!r}; known: {', '.join(CATALOG_NAMES)}")
    if key == "trivial":
        return make_finite_group("trivial", ambient=ambient)
    if key == "cubic":
        if ambient != 3:
            raise KeyError("group 'cubic' requires a 3D space")
        return make_finite_group("cubic_O")
    if key in _FINITE_NAMES:
        kind, order = _FINITE_NAMES[key]
        suffix = "_2D" if ambient == 2 else "_3D"
        return make_finite_group(kind + suffix, order_param=order, axis=axis, ambient=ambient)
    if key in ("so2", "o2"):
        if ambient != 2:
            raise KeyError(f"group {key!r} is planar; use '{key}-e3' for 3D spaces")
        return make_continuous_group("SO2_2D" if key == "so2" else "O2_2D")
    if key == "so2-e3":
        if ambient != 3:
            raise KeyError("group 'so2-e3' requires a 3D space")
        return make_continuous_group("SO2_e3", axis=axis)
    if key == "o2-e3":
        if ambient != 3:
            raise KeyError("group 'o2-e3' requires a 3D space")
        return make_continuous_group("O2_e3", axis=axis)
    if ambient != 3:
        raise KeyError("group 'so3' requires a 3D space")
    return make_continuous_group("SO3")
