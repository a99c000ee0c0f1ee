"""Ground-truth spline dimension by brute force.

Unknowns are the monomial coefficients of every face polynomial.  Across
an interior edge on ``t = b`` with order ``r`` the difference ``p - p'``
must be divisible by ``(t - b)**(r+1)``, i.e. its first ``r + 1``
``t``-derivatives vanish on the line.  Each derivative order ``j`` gives one
equation per power of ``s``.  The spline space is the kernel of the
stacked equations.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb

from .errors import BoundaryEdge
from .exactla import ExactMatrix, kernel_basis, rank
from .mesh import TMesh
from .polynomials import MonomialBox, evaluate
from .smoothness import SmoothnessDistribution

MIN_SAMPLES = 3


def sample_parameters(degree: int) -> tuple:
    """Evenly spaced points in (0, 1); enough that a zero jump at all of them is a zero jump."""
    n = max(MIN_SAMPLES, degree + 1)
    return tuple(Fraction(k, n + 1) for k in range(1, n + 1))


@dataclass(frozen=True)
class PiecewisePolynomial:
    m: int
    mp: int
    coefficients: tuple  # one coefficient tuple per face id

    @property
    def box(self) -> MonomialBox:
        return MonomialBox(self.m, self.mp)

    def on_face(self, face_id: int) -> tuple:
        return self.coefficients[face_id]

    def __call__(self, face_id: int, s, t, ds: int = 0, dt: int = 0):
        return evaluate(self.box, self.coefficients[face_id], s, t, ds, dt)

    def flat(self) -> tuple:
        return tuple(c for face in self.coefficients for c in face)


@dataclass(frozen=True)
class ConstraintBlock:
    edge_id: int
    plus_face: int
    minus_face: int
    rows: tuple  # local rows acting on (p_plus - p_minus) coefficients

    @property
    def n_rows(self) -> int:
        return len(self.rows)


def edge_constraints(mesh: TMesh, dist: SmoothnessDistribution, edge_id: int, m: int, mp: int) -> ConstraintBlock:
    if not mesh.is_interior_edge(edge_id):
        raise BoundaryEdge(edge_id)
    e = mesh.edges[edge_id]
    faces = sorted(e.adjacent_faces)
    if len(faces) != 2:
        raise BoundaryEdge(f"edge {edge_id} does not separate two faces")
    box = MonomialBox(m, mp)
    r = dist[edge_id]
    c = mesh.edge_line(edge_id)
    rows = []
    if box.dim:
        if e.is_horizontal:
            # coefficient of s^i in (1/j!) d^j/dt^j (p - p')(s, c)
            for j in range(min(r, mp) + 1):
                for i in range(m + 1):
                    row = [0] * box.dim
                    for k in range(j, mp + 1):
                        row[box.index(i, k)] = comb(k, j) * c ** (k - j)
                    rows.append(tuple(row))
        else:
            for j in range(min(r, m) + 1):
                for k in range(mp + 1):
                    row = [0] * box.dim
                    for i in range(j, m + 1):
                        row[box.index(i, k)] = comb(i, j) * c ** (i - j)
                    rows.append(tuple(row))
    return ConstraintBlock(edge_id, faces[0], faces[1], tuple(rows))


def constraint_matrix(mesh: TMesh, dist: SmoothnessDistribution, m: int, mp: int) -> ExactMatrix:
    box = MonomialBox(m, mp)
    n = box.dim
    cols = mesh.n2 * n
    entries = []
    nrows = 0
    for eid in mesh.interior_edges:
        block = edge_constraints(mesh, dist, eid, m, mp)
        for local in block.rows:
            row = [0] * cols
            for k, a in enumerate(local):
                if a:
                    row[block.plus_face * n + k] = a
                    row[block.minus_face * n + k] = -a
            entries.extend(row)
            nrows += 1
    return ExactMatrix(nrows, cols, entries)


def spline_dimension_oracle(mesh: TMesh, dist: SmoothnessDistribution, m: int, mp: int) -> int:
    M = constraint_matrix(mesh, dist, m, mp)
    return M.cols - rank(M)


def spline_basis_oracle(mesh: TMesh, dist: SmoothnessDistribution, m: int, mp: int) -> list[PiecewisePolynomial]:
    n = MonomialBox(m, mp).dim
    M = constraint_matrix(mesh, dist, m, mp)
    out = []
    for v in kernel_basis(M):
        out.append(PiecewisePolynomial(m, mp, tuple(tuple(v[f * n:(f + 1) * n]) for f in range(mesh.n2))))
    return out


def jumps(mesh: TMesh, dist: SmoothnessDistribution, f: PiecewisePolynomial):
    """Yield ``(edge id, derivative order, point, jump)`` for every sampled jump.

    Along an edge the jump is a polynomial of degree at most m (horizontal)
    or m' (vertical), so sampling degree + 1 points decides it exactly.
    """
    m, mp = f.m, f.mp
    for eid in mesh.interior_edges:
        e = mesh.edges[eid]
        a, b = sorted(e.adjacent_faces)
        top = mp if e.is_horizontal else m
        along = m if e.is_horizontal else mp
        for j in range(min(dist[eid], top) + 1):
            ds, dt = (0, j) if e.is_horizontal else (j, 0)
            for u in sample_parameters(along):
                x, y = mesh.edge_point(eid, u)
                yield eid, j, (x, y), f(a, x, y, ds, dt) - f(b, x, y, ds, dt)


def verify_smoothness(mesh: TMesh, dist: SmoothnessDistribution, f: PiecewisePolynomial, m: int, mp: int) -> bool:
    """Exact check that all transversal derivative jumps vanish at the sample points."""
    if (f.m, f.mp) != (m, mp) or len(f.coefficients) != mesh.n2:
        raise ValueError("piecewise polynomial does not match the mesh/degree")
    return all(jump == 0 for *_, jump in jumps(mesh, dist, f))


def basis_rank(basis) -> int:
    if not basis:
        return 0
    return rank(ExactMatrix.from_rows([f.flat() for f in basis]))
