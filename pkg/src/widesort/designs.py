"""Point/line incidence designs used as minimal single-round schedules.

A design with the S(2, t, n) property (every pair of points on exactly one
t-point line) turns directly into a single-round schedule -- one comparator
per line -- that compares every pair exactly once with fully utilized
comparators, matching the C(n,2)/C(t,2) lower bound.

Constructions: the affine plane of order ``t`` (t a prime power, n = t^2),
the projective plane of order ``q`` (n = q^2 + q + 1, line size q + 1), and
an equivalent shifted-matrix layout built from row rotations over GF(t).
Constructors verify the Steiner property before returning; a silent coverage
bug here would corrupt every downstream sort.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _kernels as kernels
from .core import ID_DTYPE, Batch, Schedule, _decode_pairs
from .gf import FieldSpec, field_of_order, prime_power


@dataclass(frozen=True)
class Design:
    """``lines`` is a (num_lines, line_size) array of point ids."""

    n_points: int
    line_size: int
    lines: np.ndarray

    @property
    def num_lines(self) -> int:
        return self.lines.shape[0]


@dataclass(frozen=True)
class SteinerReport:
    """Outcome of a pairwise-balance check of a design."""

    ok: bool
    # (i, j, multiplicity) for every pair covered a number of times != 1
    violations: np.ndarray
    # indices of lines whose size or distinctness is wrong
    bad_lines: tuple[int, ...]


def verify_steiner2(design: Design) -> SteinerReport:
    """Check the S(2, t, n) property: every line has exactly ``line_size``
    distinct points and every unordered pair lies on exactly one line."""
    lines = design.lines
    bad_lines = []
    for idx in range(lines.shape[0]):
        row = lines[idx]
        if row.size != design.line_size or np.unique(row).size != row.size:
            bad_lines.append(idx)
    batch = Batch.from_matrix(lines)
    counts = kernels.pair_multiplicities(batch.members, batch.offsets, design.n_points)
    bad = np.nonzero(counts != 1)[0]
    pairs = _decode_pairs(bad, design.n_points)
    violations = np.concatenate([pairs, counts[bad][:, None]], axis=1)
    ok = not bad_lines and violations.shape[0] == 0
    return SteinerReport(ok, violations, tuple(bad_lines))


def _checked(design: Design, what: str) -> Design:
    report = verify_steiner2(design)
    if not report.ok:
        raise RuntimeError(
            f"{what} failed its pairwise-balance self-check "
            f"({report.violations.shape[0]} bad pairs, {len(report.bad_lines)} bad lines)"
        )
    return design


def _require_prime_power(value: int, name: str) -> tuple[int, int]:
    pm = prime_power(value)
    if pm is None:
        raise ValueError(f"{name}={value} must be a prime power")
    return pm


def affine_plane(t: int) -> Design:
    """Affine plane of order ``t``: n = t^2 points, t^2 + t lines of size t.

    Points are pairs (x, y) over GF(t), id = x*t + y on encodings; lines are
    the graphs y = a*x + b for all slopes/intercepts plus the t verticals
    x = c.  Enumerated by (a, b) then by c, each line ordered by x.
    """
    if t < 2:
        raise ValueError("order must be at least 2")
    _require_prime_power(t, "t")
    gf = field_of_order(t)
    lines = np.empty((t * t + t, t), dtype=ID_DTYPE)
    xs = np.arange(t, dtype=np.int64)
    row = 0
    if gf.mul_table is not None:
        for a in range(t):
            ax = gf.mul_table[a, :].astype(np.int64)
            for b in range(t):
                ys = gf.add_table[ax, b]
                lines[row] = xs * t + ys
                row += 1
    else:
        for a in range(t):
            ax = [gf.mul_rep(a, int(x)) for x in xs]
            for b in range(t):
                lines[row] = [x * t + gf.add_rep(v, b) for x, v in zip(xs, ax)]
                row += 1
    for c in range(t):
        lines[row] = c * t + xs
        row += 1
    return _checked(Design(t * t, t, lines), f"affine plane of order {t}")


def shifted_matrix_design(t: int) -> Design:
    """Row/column design on n = t^2 points equivalent to the affine plane.

    The first t lines are the rows S_r = {r*t .. r*t + t - 1}.  Matrix M_i
    places the entry at (r, c) of the row-major base matrix into column
    c + r*i (arithmetic over GF(t) on encodings); each column of each M_i is
    a line, giving t^2 more lines for t + t^2 total.
    """
    if t < 2:
        raise ValueError("order must be at least 2")
    _require_prime_power(t, "t")
    gf = field_of_order(t)
    lines = np.empty((t + t * t, t), dtype=ID_DTYPE)
    base = np.arange(t, dtype=np.int64) * t  # first element of each row
    for r in range(t):
        lines[r] = r * t + np.arange(t, dtype=np.int64)
    row = t
    for i in range(t):
        for col in range(t):
            # entry of M_i in (r, col) came from column col - r*i of the base
            members = [
                int(base[r]) + gf.sub_rep(col, gf.mul_rep(r, i)) for r in range(t)
            ]
            lines[row] = members
            row += 1
    return _checked(Design(t * t, t, lines), f"shifted-matrix design of order {t}")


def _gf_dot3(gf: FieldSpec, u: tuple[int, int, int], v: tuple[int, int, int]) -> int:
    acc = 0
    for a, b in zip(u, v):
        acc = gf.add_rep(acc, gf.mul_rep(a, b))
    return acc


def projective_plane(q: int) -> Design:
    """Projective plane of order ``q``: n = q^2 + q + 1 points, as many
    lines, each of size q + 1; no two lines are parallel.

    Points are the 1-dimensional subspaces of GF(q)^3, represented by the
    canonical vector whose first nonzero coordinate is 1, enumerated as
    (1, y, z), then (0, 1, z), then (0, 0, 1).  Lines are indexed by the
    same canonical triples acting as normal vectors: point P lies on line L
    iff <P, L> = 0.
    """
    if q < 2:
        raise ValueError("order must be at least 2")
    _require_prime_power(q, "q")
    gf = field_of_order(q)
    points: list[tuple[int, int, int]] = []
    points.extend((1, y, z) for y in range(q) for z in range(q))
    points.extend((0, 1, z) for z in range(q))
    points.append((0, 0, 1))
    n = len(points)
    lines = np.empty((n, q + 1), dtype=ID_DTYPE)
    for li, normal in enumerate(points):
        incident = [pi for pi, pt in enumerate(points) if _gf_dot3(gf, normal, pt) == 0]
        if len(incident) != q + 1:
            raise RuntimeError(
                f"projective line {li} has {len(incident)} points, expected {q + 1}"
            )
        lines[li] = incident
    return _checked(Design(n, q + 1, lines), f"projective plane of order {q}")


def design_to_schedule(design: Design) -> Schedule:
    """One round, every line a comparator, in construction order."""
    return Schedule(design.n_points, design.line_size, [Batch.from_matrix(design.lines)])
