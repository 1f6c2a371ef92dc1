"""Verification table: every published value the library must reproduce.

Each row is an independently runnable check returning (expected, actual,
ok).  The CLI ``verify-paper`` command and the acceptance test suite both
iterate this table; rows are grouped by category so subsets can be run
(``dims``, ``characters``, ``haar``, ``structure``, ``projector``,
``oracle``, ``voigt``, ``moduli``, ``spot``).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable

import numpy as np

from . import groups, voigt
from .characters import character_closed_form, character_direct, fix_dimension
from .core import FlatTensor, image_basis, kron_power
from .groups import GroupElement, haar_rule, integrate, resolve_group
from .projector import (averaged_projector, extract_isotropic_moduli,
                        isotropic_nine_matrix, moduli_from_matrix,
                        structure_report)
from .spaces import SPACES, symmetrize
from .voigt import (EXTENDED18, EXTENDED18_ORDER, NINE_SLOT, VOIGT6, anti,
                    axl, induced_matrix)

SEED = 20240815


@dataclass(frozen=True)
class RowResult:
    ok: bool
    expected: str
    actual: str


@dataclass(frozen=True)
class VerifyRow:
    name: str
    category: str
    run: Callable[[], RowResult]


def _row(ok: bool, expected, actual) -> RowResult:
    return RowResult(bool(ok), str(expected), str(actual))


@lru_cache(maxsize=None)
def _group(name: str, ambient: int) -> groups.SymmetryGroup:
    return resolve_group(name, ambient)


@lru_cache(maxsize=None)
def _proj(space_name: str, group_name: str):
    sp = SPACES[space_name]
    return averaged_projector(sp, _group(group_name, sp.n))


@lru_cache(maxsize=None)
def _report(space_name: str, group_name: str):
    sp = SPACES[space_name]
    return structure_report(sp, _group(group_name, sp.n))


@lru_cache(maxsize=None)
def _space_basis(space_name: str):
    return image_basis(SPACES[space_name].projector)


def _random_rotation(rng, n: int) -> np.ndarray:
    q, r = np.linalg.qr(rng.normal(size=(n, n)))
    q = q * np.sign(np.diag(r))
    if np.linalg.det(q) < 0.0:
        q[:, [0, 1]] = q[:, [1, 0]]
    return q


def _random_member(space_name: str, seed_offset: int = 0) -> FlatTensor:
    sp = SPACES[space_name]
    rng = np.random.default_rng(SEED + seed_offset)
    return symmetrize(sp, rng.normal(size=sp.n**sp.k))


# ---------------------------------------------------------------------------
# Criterion 1: dimension table

DIMENSION_TABLE = (
    ("ela3", "d2", 9), ("ela3", "so2-e3", 5), ("ela3", "cubic", 3), ("ela3", "so3", 2),
    ("major3", "trivial", 45), ("major3", "d2", 15), ("major3", "so2-e3", 11),
    ("major3", "o2-e3", 8), ("major3", "cubic", 4), ("major3", "so3", 3),
    ("v1", "cubic", 3), ("v1bar", "cubic", 3), ("v2", "cubic", 11), ("v2bar", "cubic", 11),
    ("v2bar", "so2-e3", 31), ("v2bar", "o2-e3", 21),
    ("sym2", "o2", 1), ("sym2", "d4", 1), ("sym2", "d2", 2), ("sym2", "z2", 3),
    ("ela2", "d4", 3),
    ("high2", "d4", 10), ("high2", "d2", 20), ("high2", "z2", 36),
)


def _dim_row(space_name: str, group_name: str, expected: int) -> VerifyRow:
    def run():
        sp = SPACES[space_name]
        got = fix_dimension(sp, _group(group_name, sp.n))
        return _row(got == expected, expected, got)

    return VerifyRow(f"dim {space_name} x {group_name}", "dims", run)


# ---------------------------------------------------------------------------
# Criterion 2: character identities

def _character_row(space_name: str) -> VerifyRow:
    def run():
        sp = SPACES[space_name]
        rng = np.random.default_rng(SEED)
        worst = 0.0
        for i in range(200):
            q = _random_rotation(rng, sp.n)
            if sp.n == 2 and i % 2 == 1:
                q = q @ np.diag([1.0, -1.0])
            e = GroupElement(q)
            worst = max(worst, abs(character_direct(sp, e) - character_closed_form(sp, e)))
        eye = GroupElement(np.eye(sp.n))
        chi_id = character_direct(sp, eye)
        ok = worst < 1e-9 and abs(chi_id - sp.dim) < 1e-9
        return _row(ok, f"|direct-closed| < 1e-9, chi(I) = {sp.dim}",
                    f"|direct-closed| = {worst:.2e}, chi(I) = {chi_id:.6f}")

    return VerifyRow(f"characters {space_name}: closed form + chi(I)", "characters", run)


def _class_function_row() -> VerifyRow:
    def run():
        rng = np.random.default_rng(SEED + 1)
        worst = 0.0
        for name in ("ela3", "major3", "v2bar"):
            sp = SPACES[name]
            for _ in range(20):
                q = _random_rotation(rng, 3)
                r = _random_rotation(rng, 3)
                a = GroupElement(q)
                b = GroupElement(r @ q @ r.T)
                worst = max(worst, abs(character_direct(sp, a) - character_direct(sp, b)))
        return _row(worst < 1e-9, "class-function residual < 1e-9", f"{worst:.2e}")

    return VerifyRow("characters: chi(R Q R^-1) = chi(Q)", "characters", run)


def _monotonicity_row() -> VerifyRow:
    def run():
        checks = []
        for name in ("sym2", "ela2", "high2"):
            sp = SPACES[name]
            dims = [fix_dimension(sp, _group(g, 2)) for g in ("trivial", "z2", "d2", "d4")]
            checks.append(dims[0] >= dims[1] >= dims[2] >= dims[3])
        for name in ("major3", "v2bar"):
            sp = SPACES[name]
            checks.append(fix_dimension(sp, _group("so2-e3", 3))
                          >= fix_dimension(sp, _group("o2-e3", 3)))
        return _row(all(checks), "monotone under subgroup inclusion", checks)

    return VerifyRow("characters: dimension monotone on group chains", "characters", run)


# ---------------------------------------------------------------------------
# Criterion 6: Haar quadrature

def _haar_normalization_row() -> VerifyRow:
    def run():
        worst = 0.0
        for name, ambient in (("so2", 2), ("o2", 2), ("so2-e3", 3), ("o2-e3", 3), ("so3", 3)):
            rule = haar_rule(_group(name, ambient), 8)
            worst = max(worst, abs(math.fsum(w for _, w in rule.nodes) - 1.0))
        return _row(worst < 1e-12, "sum of weights = 1 (< 1e-12)", f"{worst:.2e}")

    return VerifyRow("haar: rules are normalized", "haar", run)


def _haar_example_row() -> VerifyRow:
    def run():
        val = integrate(_group("so2", 2),
                        lambda e: 3.0 * e.matrix[0, 0] ** 2 - e.matrix[1, 0] ** 2, 8)
        return _row(abs(val - 1.0) < 1e-12, 1, val)

    return VerifyRow("haar: circle average of 3cos^2 - sin^2 equals 1", "haar", run)


def _poly_integrand(rng, n: int):
    a = rng.normal(size=(n, n))
    b = rng.normal(size=(n, n))

    def f(e: GroupElement) -> float:
        q = e.matrix
        return (float(np.sum(a * q)) ** 3
                + float(np.sum(b * q)) ** 2 * float(np.trace(q))
                + float(np.trace(q @ q)) * float(np.trace(q)))

    return f


def _haar_invariance_row(name: str, ambient: int) -> VerifyRow:
    def run():
        g = _group(name, ambient)
        rng = np.random.default_rng(SEED + 2)
        f = _poly_integrand(rng, ambient)
        h = g.sample_elements()[0].matrix
        base = integrate(g, f, 8)
        left = integrate(g, lambda e: f(GroupElement(h @ e.matrix)), 8)
        right = integrate(g, lambda e: f(GroupElement(e.matrix @ h)), 8)
        worst = max(abs(base - left), abs(base - right))
        return _row(worst < 1e-9, "translation residual < 1e-9", f"{worst:.2e}")

    return VerifyRow(f"haar: left/right invariance on {name}", "haar", run)


def _haar_doubling_row() -> VerifyRow:
    def run():
        worst = 0.0
        for name, ambient, space_name in (("so2", 2, "ela2"), ("o2", 2, "ela2"),
                                          ("so2-e3", 3, "major3"), ("so3", 3, "major3")):
            g = _group(name, ambient)
            sp = SPACES[space_name]
            f = lambda e: character_closed_form(sp, e)
            coarse = integrate(g, f, sp.k)
            fine = integrate(g, f, 2 * sp.k + 1)  # doubled node counts
            worst = max(worst, abs(coarse - fine))
        return _row(worst < 1e-10, "node-doubling shift < 1e-10", f"{worst:.2e}")

    return VerifyRow("haar: node-doubling stability", "haar", run)


def _haar_finite_mean_row() -> VerifyRow:
    def run():
        g = _group("cubic", 3)
        f = lambda e: float(np.trace(e.matrix)) ** 2 + e.matrix[0, 1]
        lhs = integrate(g, f, 4)
        rhs = math.fsum(f(e) for e in g.elements) / g.order()
        return _row(lhs == rhs, "arithmetic mean (bit-exact)", f"diff = {lhs - rhs!r}")

    return VerifyRow("haar: finite rule is the arithmetic mean", "haar", run)


# ---------------------------------------------------------------------------
# Criterion 3: structure patterns

def _parse_pattern(text: str):
    return [line.split() for line in text.strip().splitlines()]


ELA3_ORTHO = _parse_pattern("""
A B C 0 0 0
B D E 0 0 0
C E F 0 0 0
0 0 0 G 0 0
0 0 0 0 H 0
0 0 0 0 0 I
""")

ELA3_TRANSISO = _parse_pattern("""
A B C 0 0 0
B A C 0 0 0
C C D 0 0 0
0 0 0 E 0 0
0 0 0 0 E 0
0 0 0 0 0 F
""")

ELA3_CUBIC = _parse_pattern("""
A B B 0 0 0
B A B 0 0 0
B B A 0 0 0
0 0 0 C 0 0
0 0 0 0 C 0
0 0 0 0 0 C
""")

MAJOR3_ORTHO = _parse_pattern("""
A B C 0 0 0 0 0 0
B D E 0 0 0 0 0 0
C E F 0 0 0 0 0 0
0 0 0 G H 0 0 0 0
0 0 0 H I 0 0 0 0
0 0 0 0 0 J K 0 0
0 0 0 0 0 K L 0 0
0 0 0 0 0 0 0 M N
0 0 0 0 0 0 0 N O
""")

MAJOR3_TRANS_HEMI = _parse_pattern("""
A B C 0 0 0 0 P -P
B A C 0 0 0 0 P -P
C C D 0 0 0 0 Q -Q
0 0 0 E F 0 -G 0 0
0 0 0 F H G 0 0 0
0 0 0 0 G E F 0 0
0 0 0 -G 0 F H 0 0
P P Q 0 0 0 0 R S
-P -P -Q 0 0 0 0 S R
""")

MAJOR3_TRANS_ISO = _parse_pattern("""
A B C 0 0 0 0 0 0
B A C 0 0 0 0 0 0
C C D 0 0 0 0 0 0
0 0 0 E F 0 0 0 0
0 0 0 F H 0 0 0 0
0 0 0 0 0 E F 0 0
0 0 0 0 0 F H 0 0
0 0 0 0 0 0 0 R S
0 0 0 0 0 0 0 S R
""")

MAJOR3_CUBIC = _parse_pattern("""
A B B 0 0 0 0 0 0
B A B 0 0 0 0 0 0
B B A 0 0 0 0 0 0
0 0 0 C D 0 0 0 0
0 0 0 D C 0 0 0 0
0 0 0 0 0 C D 0 0
0 0 0 0 0 D C 0 0
0 0 0 0 0 0 0 C D
0 0 0 0 0 0 0 D C
""")

ELA2_D4 = _parse_pattern("""
A B 0
B A 0
0 0 C
""")

SYM2_O2 = _parse_pattern("""
A 0
0 A
""")

SYM2_D2 = _parse_pattern("""
A 0
0 B
""")

# 18x6 coupling display under the cubic group: two sign-alternating
# columns per axis block plus the circulant zeta block on the pair slots.
V1BAR_CUBIC = _parse_pattern("""
0 0 0 0 0 0
0 0 0 y 0 0
0 0 0 z 0 0
0 0 0 -y 0 0
0 0 0 -z 0 0
0 0 0 0 0 0
0 0 0 0 -y 0
0 0 0 0 -z 0
0 0 0 0 y 0
0 0 0 0 z 0
0 0 0 0 0 0
0 0 0 0 0 y
0 0 0 0 0 z
0 0 0 0 0 -y
0 0 0 0 0 -z
x -x 0 0 0 0
-x 0 x 0 0 0
0 x -x 0 0 0
""")


def _g1_pattern():
    return [["a", "b", "c", "b", "c"],
            ["b", "d", "e", "f", "g"],
            ["c", "e", "h", "g", "i"],
            ["b", "f", "g", "d", "e"],
            ["c", "g", "i", "e", "h"]]


def _v2bar_cubic_pattern():
    cells = [["0"] * 18 for _ in range(18)]
    g1 = _g1_pattern()
    for block in range(3):
        for r in range(5):
            for c in range(5):
                cells[5 * block + r][5 * block + c] = g1[r][c]
    g2 = [["j", "k", "k"], ["k", "j", "k"], ["k", "k", "j"]]
    for r in range(3):
        for c in range(3):
            cells[15 + r][15 + c] = g2[r][c]
    return cells


def _symmetric_block_pattern(size: int, prefix: str):
    cells = [[""] * size for _ in range(size)]
    for r in range(size):
        for c in range(r, size):
            cells[r][c] = cells[c][r] = f"{prefix}{r}{c}"
    return cells


def _high2_pattern(kind: str):
    cells = [["0"] * 8 for _ in range(8)]
    if kind == "d4":
        block = _symmetric_block_pattern(4, "s")
        for r in range(4):
            for c in range(4):
                cells[r][c] = cells[4 + r][4 + c] = block[r][c]
    elif kind == "d2":
        top = _symmetric_block_pattern(4, "s")
        bottom = _symmetric_block_pattern(4, "t")
        for r in range(4):
            for c in range(4):
                cells[r][c] = top[r][c]
                cells[4 + r][4 + c] = bottom[r][c]
    else:  # z2: everything free
        cells = _symmetric_block_pattern(8, "u")
    return cells


def _check_pattern(space_name: str, group_name: str, pattern, expected_dim: int,
                   constraints=()) -> RowResult:
    rep = _report(space_name, group_name)
    row_map, col_map = voigt.STRUCTURE_MAPS[space_name]
    t = _random_member(space_name)
    proj = _proj(space_name, group_name).apply(t)
    m = induced_matrix(row_map, col_map, proj)
    scale = float(np.max(np.abs(m))) or 1.0
    tol = 1e-9 * scale

    problems = []
    if rep.dim != expected_dim:
        problems.append(f"dim {rep.dim} != {expected_dim}")
    refs: dict[str, float] = {}
    for r, row in enumerate(pattern):
        for c, token in enumerate(row):
            val = m[r, c]
            if token == "0":
                if abs(val) > tol:
                    problems.append(f"slot ({r + 1},{c + 1}) = {val:.2e}, expected 0")
                if rep.entry(r, c).kind != "zero":
                    problems.append(f"report slot ({r + 1},{c + 1}) not classified zero")
                continue
            sign = -1.0 if token.startswith("-") else 1.0
            symbol = token.lstrip("-")
            if abs(val) <= tol:
                problems.append(f"slot ({r + 1},{c + 1}) vanished but expected {token}")
            if symbol in refs:
                if abs(sign * refs[symbol] - val) > tol:
                    problems.append(
                        f"slot ({r + 1},{c + 1}) = {val:.6f} breaks class {token} "
                        f"(reference {refs[symbol]:.6f})"
                    )
            else:
                refs[symbol] = sign * val
    for want in constraints:
        if want not in rep.constraints:
            problems.append(f"missing constraint {want!r} (got {list(rep.constraints)})")
    if not problems:
        return _row(True, "pattern + constraints match", "match")
    return _row(False, "pattern + constraints match", "; ".join(problems[:4]))


def _pattern_row(name: str, space_name: str, group_name: str, pattern,
                 expected_dim: int, constraints=()) -> VerifyRow:
    return VerifyRow(f"structure {name}", "structure",
                     lambda: _check_pattern(space_name, group_name, pattern,
                                            expected_dim, constraints))


def _v2bar_transversal_row(group_name: str, expected_dim: int) -> VerifyRow:
    # Block-level zero pattern of the 18x18 displays: 5+5+5+3 split; the
    # proper-rotation group couples blocks (1,2) and (3,4), the full
    # axis-transversal group is block diagonal.
    def run():
        rep = _report("v2bar", group_name)
        t = _random_member("v2bar")
        proj = _proj("v2bar", group_name).apply(t)
        m = induced_matrix(EXTENDED18, EXTENDED18, proj)
        scale = float(np.max(np.abs(m)))
        bounds = ((0, 5), (5, 10), (10, 15), (15, 18))
        nonzero = {(0, 0), (1, 1), (2, 2), (3, 3)}
        if group_name == "so2-e3":
            nonzero |= {(0, 1), (1, 0), (2, 3), (3, 2)}
        problems = []
        if rep.dim != expected_dim:
            problems.append(f"dim {rep.dim} != {expected_dim}")
        for i, (r0, r1) in enumerate(bounds):
            for j, (c0, c1) in enumerate(bounds):
                mag = float(np.max(np.abs(m[r0:r1, c0:c1])))
                if (i, j) in nonzero and mag < 1e-9 * scale:
                    problems.append(f"block ({i + 1},{j + 1}) unexpectedly zero")
                if (i, j) not in nonzero and mag > 1e-9 * scale:
                    problems.append(f"block ({i + 1},{j + 1}) = {mag:.2e}, expected 0")
        eq = float(np.max(np.abs(m[0:5, 0:5] - m[5:10, 5:10])))
        if eq > 1e-9 * scale:
            problems.append(f"repeated diagonal block differs by {eq:.2e}")
        if not problems:
            return _row(True, f"dim {expected_dim} + block pattern", "match")
        return _row(False, f"dim {expected_dim} + block pattern", "; ".join(problems[:4]))

    return VerifyRow(f"structure v2bar x {group_name} (blocks)", "structure", run)


# ---------------------------------------------------------------------------
# Criteria 4 and 5: projector properties and the linear-system oracle

PAIRS_2D = tuple((s, g) for s in ("sym2", "ela2", "high2")
                 for g in ("trivial", "z2", "z3", "z4", "z6", "d2", "d3", "d4", "d6",
                           "so2", "o2"))
PAIRS_3D = tuple((s, g) for s in ("sym3", "ela3", "major3", "v1", "v1bar", "v2", "v2bar")
                 for g in ("trivial", "z2", "z3", "z4", "z6", "d2", "d3", "d4", "d6",
                           "cubic", "so2-e3", "o2-e3", "so3"))
ALL_PAIRS = PAIRS_2D + PAIRS_3D
FINITE_PAIRS = tuple((s, g) for s, g in ALL_PAIRS
                     if g not in ("so2", "o2", "so2-e3", "o2-e3", "so3"))


def _projector_props_row(space_name: str, group_name: str) -> VerifyRow:
    def run():
        sp = SPACES[space_name]
        g = _group(group_name, sp.n)
        a = _proj(space_name, group_name).matrix
        idem = float(np.max(np.abs(a @ a - a)))
        sym = float(np.max(np.abs(a - a.T)))
        eigs = np.linalg.eigvalsh((a + a.T) / 2.0)
        rank = int(np.sum(eigs > 0.5))
        dim = fix_dimension(sp, g)
        trace_gap = abs(float(np.trace(a)) - dim)
        equiv = 0.0
        for e in g.sample_elements():
            kq = kron_power(e.matrix, sp.k).matrix
            equiv = max(equiv,
                        float(np.max(np.abs(kq @ a - a))),
                        float(np.max(np.abs(a @ kq - a))))
        ok = idem < 1e-9 and rank == dim and equiv < 1e-9 and sym < 1e-9 and trace_gap < 1e-6
        return _row(ok, f"idem/equiv < 1e-9, rank = {dim}",
                    f"idem {idem:.1e}, sym {sym:.1e}, rank {rank}, equiv {equiv:.1e}, "
                    f"trace gap {trace_gap:.1e}")

    return VerifyRow(f"projector {space_name} x {group_name}", "projector", run)


def _oracle_row(space_name: str, group_name: str) -> VerifyRow:
    # Joint null space of {kron_power(Q_g, k) - I} restricted to the space,
    # assembled from generators only: independent of the averaging path.
    def run():
        sp = SPACES[space_name]
        g = _group(group_name, sp.n)
        basis = _space_basis(space_name)
        b = np.column_stack([t.coeffs for t in basis]) if basis else np.zeros((sp.n**sp.k, 0))
        blocks = []
        for e in g.sample_elements():
            kq = kron_power(e.matrix, sp.k).matrix
            blocks.append(b.T @ kq @ b - np.eye(b.shape[1]))
        stack = np.vstack(blocks) if blocks else np.zeros((1, b.shape[1]))
        sv = np.linalg.svd(stack, compute_uv=False)
        rank = int(np.sum(sv > 1e-8 * max(1.0, sv[0] if sv.size else 1.0)))
        null_dim = b.shape[1] - rank
        dim = fix_dimension(sp, g)
        return _row(null_dim == dim, f"null-space dim {dim}", null_dim)

    return VerifyRow(f"oracle {space_name} x {group_name}", "oracle", run)


# ---------------------------------------------------------------------------
# Criterion 8: slot maps

# Slot -> symmetric index pair of the classical 6x6 convention; entry
# (alpha, beta) of the rendered matrix sources the tensor component with
# the column pair first (pairs are interchangeable by the major symmetry).
VOIGT6_SOURCE_PAIRS = ((0, 0), (1, 1), (2, 2), (2, 1), (2, 0), (1, 0))


def _voigt_roundtrip_row() -> VerifyRow:
    def run():
        rng = np.random.default_rng(SEED + 3)
        worst = 0.0
        for vmap in voigt.ALL_MAPS:
            vec = rng.normal(size=vmap.length)
            worst = max(worst, float(np.max(np.abs(vmap.forward(vmap.inverse(vec)) - vec))))
            arr = vmap.inverse(rng.normal(size=vmap.length)).reshaped()
            back = vmap.inverse(vmap.forward(arr)).reshaped()
            worst = max(worst, float(np.max(np.abs(back - arr))))
        return _row(worst < 1e-14, "roundtrip < 1e-14", f"{worst:.2e}")

    return VerifyRow("voigt: all slot maps roundtrip", "voigt", run)


def _mandel_isometry_row() -> VerifyRow:
    def run():
        rng = np.random.default_rng(SEED + 4)
        x = rng.normal(size=(3, 3))
        x = (x + x.T) / 2.0
        mand = float(np.linalg.norm(voigt.mandel_forward(x)))
        frob = float(np.linalg.norm(x))
        gap = abs(mand - frob)
        plain = float(np.linalg.norm(voigt.voigt_forward(x)))
        not_isometry = abs(plain - frob) > 1e-6
        return _row(gap < 1e-12 and not_isometry,
                    "mandel isometric, plain voigt not",
                    f"mandel gap {gap:.2e}, plain gap {abs(plain - frob):.2e}")

    return VerifyRow("voigt: mandel isometry", "voigt", run)


def _slot_sourcing_row() -> VerifyRow:
    def run():
        t = _random_member("ela3")
        arr = t.reshaped()
        m = induced_matrix(VOIGT6, VOIGT6, t)
        worst = 0.0
        for a, pa in enumerate(VOIGT6_SOURCE_PAIRS):
            for b, pb in enumerate(VOIGT6_SOURCE_PAIRS):
                worst = max(worst, abs(m[a, b] - arr[pb + pa]))
        eye_sym = np.einsum("ik,jl->ijkl", np.eye(3), np.eye(3))
        eye_sym = (eye_sym + np.einsum("il,jk->ijkl", np.eye(3), np.eye(3))) / 2.0
        rendered = induced_matrix(VOIGT6, VOIGT6, FlatTensor.from_array(eye_sym))
        diag_gap = float(np.max(np.abs(rendered - np.diag([1, 1, 1, 0.5, 0.5, 0.5]))))
        return _row(worst < 1e-12 and diag_gap < 1e-12,
                    "slot sources match the component table",
                    f"sweep {worst:.2e}, identity render gap {diag_gap:.2e}")

    return VerifyRow("voigt: 6x6 slot sourcing sweep", "voigt", run)


def _extended_order_row() -> VerifyRow:
    # 18-slot assignment, 1-based (pair, pair, last): the published table.
    published = ((1, 1, 1), (2, 2, 1), (1, 2, 2), (3, 3, 1), (1, 3, 3),
                 (2, 2, 2), (1, 1, 2), (1, 2, 1), (3, 3, 2), (2, 3, 3),
                 (3, 3, 3), (1, 1, 3), (1, 3, 1), (2, 2, 3), (2, 3, 2),
                 (1, 2, 3), (1, 3, 2), (2, 3, 1))

    def run():
        ours = tuple(tuple(i + 1 for i in idx) for idx in EXTENDED18_ORDER)
        if ours != published:
            return _row(False, published, ours)
        # basis behaviour: sigma_111 -> slot 1, sigma_123 -> slot 16
        s111 = np.zeros((3, 3, 3)); s111[0, 0, 0] = 1.0
        v = voigt.extended_n_forward(s111)
        ok1 = abs(v[0] - 1.0) < 1e-14 and float(np.max(np.abs(np.delete(v, 0)))) < 1e-14
        s123 = np.zeros((3, 3, 3))
        s123[0, 1, 2] = s123[1, 0, 2] = 1.0 / math.sqrt(2.0)
        v = voigt.extended_n_forward(s123)
        ok2 = abs(v[15] - 1.0) < 1e-14 and float(np.max(np.abs(np.delete(v, 15)))) < 1e-14
        return _row(ok1 and ok2, "orthonormal basis maps to unit slots", (ok1, ok2))

    return VerifyRow("voigt: 18-slot ordering matches the published table", "voigt", run)


def _axl_row() -> VerifyRow:
    def run():
        rng = np.random.default_rng(SEED + 5)
        vec = rng.normal(size=3)
        skew = anti(vec)
        ok1 = float(np.max(np.abs(axl(skew) - vec))) < 1e-14
        e3 = anti(np.array([0.0, 0.0, 1.0]))
        ok2 = float(np.max(np.abs(e3 - np.array([[0, -1, 0], [1, 0, 0], [0, 0, 0]])))) == 0.0
        v = rng.normal(size=3)
        ok3 = float(np.max(np.abs(skew @ v - np.cross(vec, v)))) < 1e-14
        return _row(ok1 and ok2 and ok3, "axl/anti identities", (ok1, ok2, ok3))

    return VerifyRow("voigt: axl and anti", "voigt", run)


def _transiso_relation_row() -> VerifyRow:
    def run():
        t = _random_member("ela3")
        inv = _proj("ela3", "so2-e3").apply(t)
        m = induced_matrix(VOIGT6, VOIGT6, inv)
        gap = abs(m[0, 0] - m[0, 1] - 2.0 * m[5, 5])
        return _row(gap < 1e-9, "C11 - C12 - 2 C66 = 0", f"{gap:.2e}")

    return VerifyRow("voigt: transversely isotropic 6x6 relation", "voigt", run)


# ---------------------------------------------------------------------------
# Criterion 7: isotropic moduli

def _moduli_rows() -> list:
    def run_example():
        rep = _report("major3", "so3")
        lam, mu, mu_c = extract_isotropic_moduli(rep, {"C12": 1.0, "C44": 3.0, "C45": 1.0})
        ok = (lam, mu, mu_c) == (1.0, 2.0, 1.0)
        return _row(ok, "(1, 2, 1)", (lam, mu, mu_c))

    def run_roundtrip():
        rng = np.random.default_rng(SEED + 6)
        worst = 0.0
        for _ in range(5):
            lam, mu, mu_c = rng.normal(size=3)
            m = isotropic_nine_matrix(lam, mu, mu_c)
            back = moduli_from_matrix(m)
            worst = max(worst, max(abs(back[0] - lam), abs(back[1] - mu), abs(back[2] - mu_c)))
            again = isotropic_nine_matrix(*back)
            worst = max(worst, float(np.max(np.abs(again - m))))
        return _row(worst < 1e-12, "roundtrip residual < 1e-12", f"{worst:.2e}")

    def run_symmetric_only():
        m = isotropic_nine_matrix(0.7, 1.3, 0.0)
        _, _, mu_c = moduli_from_matrix(m)
        ok = mu_c == 0.0 and m[3, 3] == m[3, 4]
        rep = _report("major3", "so3")
        lam, mu, mu_c2 = extract_isotropic_moduli(rep, {"C12": 0.5, "C44": 2.0, "C45": 2.0})
        return _row(ok and mu_c2 == 0.0, "mu_c = 0 iff C44 = C45", (mu_c, mu_c2))

    def run_invariant_matrix():
        # the projector's isotropic output is exactly the two-parameter family
        t = _random_member("major3")
        inv = _proj("major3", "so3").apply(t)
        m = induced_matrix(NINE_SLOT, NINE_SLOT, inv)
        lam, mu, mu_c = moduli_from_matrix(m)
        gap = float(np.max(np.abs(m - isotropic_nine_matrix(lam, mu, mu_c))))
        return _row(gap < 1e-9, "9x9 matches the modulus form < 1e-9", f"{gap:.2e}")

    return [
        VerifyRow("moduli: worked example (1, 3, 1)", "moduli", run_example),
        VerifyRow("moduli: matrix roundtrip", "moduli", run_roundtrip),
        VerifyRow("moduli: mu_c = 0 iff C44 = C45", "moduli", run_symmetric_only),
        VerifyRow("moduli: projected tensor fits the modulus form", "moduli", run_invariant_matrix),
    ]


# ---------------------------------------------------------------------------
# Criterion 9: published component averages (cubic case)

def _spot_rows() -> list:
    def run_v2bar():
        g = _random_member("v2bar", 7).reshaped()
        proj = _proj("v2bar", "cubic").apply(_random_member("v2bar", 7)).reshaped()

        def c(t, idx):
            return t[tuple(i - 1 for i in idx)]

        gamma11 = (c(g, (1, 2, 3, 1, 2, 3)) + c(g, (1, 3, 2, 1, 3, 2))
                   + c(g, (2, 3, 1, 2, 3, 1))) / 3.0
        gamma12 = (c(g, (1, 2, 3, 1, 3, 2)) + c(g, (1, 2, 3, 2, 3, 1))
                   + c(g, (1, 3, 2, 2, 3, 1))) / 3.0
        eta22 = (c(g, (1, 1, 2, 1, 1, 2)) + c(g, (1, 1, 3, 1, 1, 3))
                 + c(g, (2, 2, 1, 2, 2, 1)) + c(g, (2, 2, 3, 2, 2, 3))
                 + c(g, (3, 3, 1, 3, 3, 1)) + c(g, (3, 3, 2, 3, 3, 2))) / 6.0
        eta24 = (c(g, (1, 1, 2, 3, 3, 2)) + c(g, (1, 1, 3, 2, 2, 3))
                 + c(g, (2, 2, 1, 3, 3, 1))) / 3.0
        worst = max(abs(c(proj, (1, 2, 3, 1, 2, 3)) - gamma11),
                    abs(c(proj, (1, 2, 3, 1, 3, 2)) - gamma12),
                    abs(c(proj, (1, 1, 2, 1, 1, 2)) - eta22),
                    abs(c(proj, (1, 1, 2, 3, 3, 2)) - eta24))
        return _row(worst < 1e-9, "gamma/eta averages < 1e-9", f"{worst:.2e}")

    def run_v1bar():
        h = _random_member("v1bar", 8).reshaped()
        proj = _proj("v1bar", "cubic").apply(_random_member("v1bar", 8)).reshaped()

        def c(t, idx):
            return t[tuple(i - 1 for i in idx)]

        zeta1 = (-c(h, (1, 1, 2, 1, 3)) + c(h, (1, 1, 3, 1, 2)) + c(h, (2, 2, 1, 2, 3))
                 - c(h, (2, 2, 3, 1, 2)) - c(h, (3, 3, 1, 2, 3)) + c(h, (3, 3, 2, 1, 3))) / 6.0
        zeta2 = (c(h, (1, 2, 3, 1, 1)) - c(h, (1, 2, 3, 2, 2)) - c(h, (1, 3, 2, 1, 1))
                 + c(h, (1, 3, 2, 3, 3)) + c(h, (2, 3, 1, 2, 2)) - c(h, (2, 3, 1, 3, 3))) / 6.0
        zeta3 = (c(h, (1, 2, 1, 1, 3)) - c(h, (1, 2, 2, 2, 3)) - c(h, (1, 3, 1, 1, 2))
                 + c(h, (1, 3, 3, 2, 3)) + c(h, (2, 3, 2, 1, 2)) - c(h, (2, 3, 3, 1, 3))) / 6.0
        worst = max(abs(c(proj, (1, 1, 3, 1, 2)) - zeta1),
                    abs(c(proj, (1, 2, 3, 1, 1)) - zeta2),
                    abs(c(proj, (1, 2, 1, 1, 3)) - zeta3))
        return _row(worst < 1e-9, "zeta averages < 1e-9", f"{worst:.2e}")

    return [
        VerifyRow("spot: cubic gamma/eta component averages", "spot", run_v2bar),
        VerifyRow("spot: cubic zeta component averages", "spot", run_v1bar),
    ]


# ---------------------------------------------------------------------------
# Table assembly

def build_rows() -> list:
    rows: list[VerifyRow] = []
    rows += [_dim_row(s, g, d) for s, g, d in DIMENSION_TABLE]
    rows += [_character_row(name) for name in SPACES]
    rows += [_class_function_row(), _monotonicity_row()]
    rows += [
        _haar_normalization_row(),
        _haar_example_row(),
        _haar_invariance_row("so2", 2),
        _haar_invariance_row("o2", 2),
        _haar_invariance_row("so2-e3", 3),
        _haar_invariance_row("o2-e3", 3),
        _haar_invariance_row("so3", 3),
        _haar_doubling_row(),
        _haar_finite_mean_row(),
    ]
    rows += [
        _pattern_row("ela3 orthotropic", "ela3", "d2", ELA3_ORTHO, 9),
        _pattern_row("ela3 transversely isotropic", "ela3", "so2-e3", ELA3_TRANSISO, 5,
                     ("C11 = C12 + 2 C66",)),
        _pattern_row("ela3 cubic", "ela3", "cubic", ELA3_CUBIC, 3),
        _pattern_row("ela3 isotropic", "ela3", "so3", ELA3_CUBIC, 2,
                     ("C11 = C12 + 2 C44",)),
        _pattern_row("major3 orthotropic", "major3", "d2", MAJOR3_ORTHO, 15),
        _pattern_row("major3 transversal hemitropic", "major3", "so2-e3",
                     MAJOR3_TRANS_HEMI, 11, ("C11 = C12 + C88 + C89",)),
        _pattern_row("major3 transversal isotropic", "major3", "o2-e3",
                     MAJOR3_TRANS_ISO, 8, ("C11 = C12 + C88 + C89",)),
        _pattern_row("major3 cubic", "major3", "cubic", MAJOR3_CUBIC, 4),
        _pattern_row("major3 isotropic", "major3", "so3", MAJOR3_CUBIC, 3,
                     ("C11 = C12 + C44 + C45",)),
        _pattern_row("v2bar cubic blocks", "v2bar", "cubic", _v2bar_cubic_pattern(), 11),
        _pattern_row("v1bar cubic", "v1bar", "cubic", V1BAR_CUBIC, 3),
        _v2bar_transversal_row("so2-e3", 31),
        _v2bar_transversal_row("o2-e3", 21),
        _pattern_row("ela2 d4", "ela2", "d4", ELA2_D4, 3),
        _pattern_row("high2 d4", "high2", "d4", _high2_pattern("d4"), 10),
        _pattern_row("high2 d2", "high2", "d2", _high2_pattern("d2"), 20),
        _pattern_row("high2 z2", "high2", "z2", _high2_pattern("z2"), 36),
        _pattern_row("sym2 o2", "sym2", "o2", SYM2_O2, 1),
        _pattern_row("sym2 d4", "sym2", "d4", SYM2_O2, 1),
        _pattern_row("sym2 d2", "sym2", "d2", SYM2_D2, 2),
    ]
    rows += [_projector_props_row(s, g) for s, g in ALL_PAIRS]
    rows += [_oracle_row(s, g) for s, g in FINITE_PAIRS]
    rows += [
        _voigt_roundtrip_row(),
        _mandel_isometry_row(),
        _slot_sourcing_row(),
        _extended_order_row(),
        _axl_row(),
        _transiso_relation_row(),
    ]
    rows += _moduli_rows()
    rows += _spot_rows()
    return rows


ROW_CATEGORIES = ("dims", "characters", "haar", "structure", "projector",
                  "oracle", "voigt", "moduli", "spot")


def run_rows(categories=None):
    """Run (a subset of) the table; yields (row, result) pairs."""
    wanted = set(categories) if categories else None
    for row in build_rows():
        if wanted is not None and row.category not in wanted:
            continue
        try:
            result = row.run()
        except Exception as exc:  # a crashed check is a failed check
            result = RowResult(False, "no exception", f"{type(exc).__name__}: {exc}")
        yield row, result
