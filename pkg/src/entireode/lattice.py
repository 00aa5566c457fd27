"""Exact integer and rational linear algebra on small dense matrices.

Row-style Hermite normal form over the integers answers every lattice
question the decision procedure asks: the rank of a set of exponent vectors,
membership of a vector in their Z-span, and its integer coordinates.  On the
rational side, kernels, preimages and rank completions are computed with
Fraction (or Gaussian-rational) arithmetic so all answers are exact.

HNF convention: pivot entries positive, entries above a pivot reduced into
[0, pivot), entries left of a pivot zero, pivot columns strictly increasing.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Callable, Iterable, Sequence

from .rationals import GaussianRational, as_gaussian


class NotInLatticeError(ValueError):
    """A vector has no integer coordinates in the given lattice basis."""

    def __init__(self, vector):
        super().__init__(f"{tuple(vector)} is not in the lattice")
        self.vector = tuple(vector)


class NoSolutionError(ValueError):
    """A linear system has no solution with the required exactness."""


@dataclass(frozen=True)
class IntMatrix:
    """A rectangular matrix of arbitrary-precision integers (0 rows allowed)."""

    entries: tuple
    ncols: int

    def __post_init__(self):
        for row in self.entries:
            if len(row) != self.ncols:
                raise ValueError("ragged rows")

    @classmethod
    def from_rows(cls, rows: Iterable[Sequence[int]], ncols: int | None = None) -> "IntMatrix":
        tup = tuple(tuple(int(x) for x in row) for row in rows)
        if ncols is None:
            if not tup:
                raise ValueError("ncols required for an empty matrix")
            ncols = len(tup[0])
        return cls(tup, ncols)

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls(tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n)), n)

    @property
    def nrows(self) -> int:
        return len(self.entries)

    def mul(self, other: "IntMatrix") -> "IntMatrix":
        if self.ncols != other.nrows:
            raise ValueError(
                f"dimension mismatch: ({self.nrows}x{self.ncols}) * ({other.nrows}x{other.ncols})"
            )
        rows = tuple(
            tuple(
                sum(self.entries[i][k] * other.entries[k][j] for k in range(self.ncols))
                for j in range(other.ncols)
            )
            for i in range(self.nrows)
        )
        return IntMatrix(rows, other.ncols)

    def apply(self, vector: Sequence) -> tuple:
        """Matrix-vector product; vector entries may be any exact scalar type."""
        if len(vector) != self.ncols:
            raise ValueError(f"vector length {len(vector)} != {self.ncols} columns")
        return tuple(
            sum((self.entries[i][j] * vector[j] for j in range(self.ncols)), start=0)
            for i in range(self.nrows)
        )


@dataclass(frozen=True)
class HnfBasis:
    """Hermite-normal-form basis of an integer lattice (rank rows, no more)."""

    matrix: IntMatrix
    pivots: tuple

    @property
    def rank(self) -> int:
        return self.matrix.nrows

    @property
    def cols(self) -> int:
        return self.matrix.ncols


def _row_sub(m, u, i, j, q):
    """m[i] -= q*m[j] mirrored on the transform u."""
    if q == 0:
        return
    m[i] = [a - q * b for a, b in zip(m[i], m[j])]
    u[i] = [a - q * b for a, b in zip(u[i], u[j])]


def _hnf_core(rows: Sequence[Sequence[int]], ncols: int):
    """Reduce rows to HNF, returning (hnf_rows, pivots, transform).

    transform is a unimodular nrows x nrows integer matrix U with
    U * rows = hnf_rows stacked over zero rows.
    """
    m = [list(map(int, r)) for r in rows]
    nr = len(m)
    u = [[1 if i == j else 0 for j in range(nr)] for i in range(nr)]
    r = 0
    for c in range(ncols):
        if r == nr:
            break
        while True:
            nz = [i for i in range(r, nr) if m[i][c] != 0]
            if not nz:
                pivot_row = None
                break
            if len(nz) == 1:
                pivot_row = nz[0]
                break
            best = min(nz, key=lambda i: abs(m[i][c]))
            for i in nz:
                if i != best:
                    _row_sub(m, u, i, best, m[i][c] // m[best][c])
        if pivot_row is None:
            continue
        if pivot_row != r:
            m[r], m[pivot_row] = m[pivot_row], m[r]
            u[r], u[pivot_row] = u[pivot_row], u[r]
        if m[r][c] < 0:
            m[r] = [-x for x in m[r]]
            u[r] = [-x for x in u[r]]
        for i in range(r):
            _row_sub(m, u, i, r, m[i][c] // m[r][c])
        r += 1
    pivots = tuple(next(j for j, x in enumerate(row) if x != 0) for row in m[:r])
    return m[:r], pivots, u


def hnf(generators: Iterable[Sequence[int]], ncols: int | None = None) -> HnfBasis:
    """HNF basis of the Z-span of the generators (deterministic, canonical).

    An empty generating set yields a rank-0 basis; ncols must then be given.
    """
    gens = [tuple(int(x) for x in g) for g in generators]
    if gens:
        widths = {len(g) for g in gens}
        if len(widths) != 1:
            raise ValueError("generators have mixed lengths")
        width = widths.pop()
        if ncols is not None and ncols != width:
            raise ValueError(f"ncols={ncols} but generators have length {width}")
        ncols = width
    elif ncols is None:
        raise ValueError("ncols required for an empty generating set")
    rows, pivots, _ = _hnf_core(sorted(gens), ncols)
    return HnfBasis(IntMatrix.from_rows(rows, ncols), pivots)


def hnf_with_transform(generators: Sequence[Sequence[int]], ncols: int | None = None):
    """Like hnf but on the generators in the given order, returning (basis, U).

    U is unimodular with U * generators = basis rows stacked over zero rows,
    so the first rank rows of U express each basis row as an integer
    combination of the generators.
    """
    gens = [tuple(int(x) for x in g) for g in generators]
    if ncols is None:
        if not gens:
            raise ValueError("ncols required for an empty generating set")
        ncols = len(gens[0])
    rows, pivots, u = _hnf_core(gens, ncols)
    basis = HnfBasis(IntMatrix.from_rows(rows, ncols), pivots)
    return basis, IntMatrix.from_rows(u, len(gens)) if gens else IntMatrix((), 0)


def _coords_in_hnf(v: Sequence[int], rows, pivots) -> tuple:
    residual = list(map(int, v))
    coords = []
    for row, pc in zip(rows, pivots):
        q, rem = divmod(residual[pc], row[pc])
        if rem != 0:
            raise NotInLatticeError(v)
        coords.append(q)
        if q:
            residual = [a - q * b for a, b in zip(residual, row)]
    if any(residual):
        raise NotInLatticeError(v)
    return tuple(coords)


def coordinates(v: Sequence[int], basis: HnfBasis) -> tuple:
    """Integer coordinates of v in the HNF basis, or NotInLatticeError."""
    if len(v) != basis.cols:
        raise ValueError(f"vector length {len(v)} != basis width {basis.cols}")
    return _coords_in_hnf(v, basis.matrix.entries, basis.pivots)


def integer_solver(mat: IntMatrix) -> Callable[[Sequence[int]], tuple]:
    """Precompute a solver for x * mat = v over the integers.

    The returned callable maps v to one integer coordinate row x (length
    mat.nrows) or raises NotInLatticeError.  Deterministic: coordinates are
    taken in the HNF of mat's rows and pulled back through the tracked
    unimodular transform.
    """
    basis, u = hnf_with_transform(mat.entries, mat.ncols)
    rows = basis.matrix.entries
    pivots = basis.pivots
    rank = basis.rank
    u_top = u.entries[:rank]

    def solve(v: Sequence[int]) -> tuple:
        d = _coords_in_hnf(v, rows, pivots)
        return tuple(
            sum(d[k] * u_top[k][i] for k in range(rank)) for i in range(mat.nrows)
        )

    return solve


def matrix_coordinates(v: Sequence[int], mat: IntMatrix) -> tuple:
    """One-shot integer_solver(mat)(v)."""
    return integer_solver(mat)(v)


def _normalize_primitive(vec: Sequence[Fraction]) -> tuple:
    """Scale a rational vector to a primitive integer vector, first nonzero > 0."""
    denom = 1
    for x in vec:
        denom = denom * x.denominator // gcd(denom, x.denominator)
    ints = [int(x * denom) for x in vec]
    g = 0
    for x in ints:
        g = gcd(g, abs(x))
    if g > 1:
        ints = [x // g for x in ints]
    for x in ints:
        if x != 0:
            if x < 0:
                ints = [-y for y in ints]
            break
    return tuple(Fraction(x) for x in ints)


def kernel_rational(mat: IntMatrix) -> tuple:
    """Basis of the right null space of mat over Q.

    Each basis vector is normalised to a primitive integer vector with
    positive leading entry; the list is empty iff mat has full column rank.
    Deterministic: one vector per free column, in column order.
    """
    nr, nc = mat.nrows, mat.ncols
    m = [[Fraction(x) for x in row] for row in mat.entries]
    pivot_cols = []
    r = 0
    for c in range(nc):
        pivot = next((i for i in range(r, nr) if m[i][c] != 0), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(nr):
            if i != r and m[i][c] != 0:
                factor = m[i][c]
                m[i] = [a - factor * b for a, b in zip(m[i], m[r])]
        pivot_cols.append(c)
        r += 1
        if r == nr:
            break
    free_cols = [c for c in range(nc) if c not in pivot_cols]
    basis = []
    for fc in free_cols:
        vec = [Fraction(0)] * nc
        vec[fc] = Fraction(1)
        for row_idx, pc in enumerate(pivot_cols):
            vec[pc] = -m[row_idx][fc]
        basis.append(_normalize_primitive(vec))
    return tuple(basis)


def solve_preimage(mat: IntMatrix, v: Sequence) -> tuple:
    """One exact solution u of mat * u = v, free coordinates set to zero.

    v may have Gaussian-rational entries.  Pivoting is leftmost-column,
    first-nonzero-row, so the choice of u is deterministic.  Raises
    NoSolutionError when mat lacks full row rank over Q.
    """
    nr, nc = mat.nrows, mat.ncols
    if len(v) != nr:
        raise ValueError(f"right-hand side length {len(v)} != {nr} rows")
    a = [[GaussianRational(x) for x in row] for row in mat.entries]
    rhs = [as_gaussian(x) for x in v]
    pivot_cols = []
    r = 0
    for c in range(nc):
        pivot = next((i for i in range(r, nr) if a[i][c]), None)
        if pivot is None:
            continue
        a[r], a[pivot] = a[pivot], a[r]
        rhs[r], rhs[pivot] = rhs[pivot], rhs[r]
        for i in range(r + 1, nr):
            if a[i][c]:
                factor = a[i][c] / a[r][c]
                a[i] = [x - factor * y for x, y in zip(a[i], a[r])]
                rhs[i] = rhs[i] - factor * rhs[r]
        pivot_cols.append(c)
        r += 1
        if r == nr:
            break
    if r < nr:
        raise NoSolutionError(f"matrix rank {r} < {nr} rows; no canonical preimage")
    u = [GaussianRational.ZERO] * nc
    for k in reversed(range(nr)):
        pc = pivot_cols[k]
        s = rhs[k]
        for j in range(pc + 1, nc):
            if a[k][j] and u[j]:
                s = s - a[k][j] * u[j]
        u[pc] = s / a[k][pc]
    return tuple(u)


def rational_rank(rows: Sequence[Sequence[int]], ncols: int) -> int:
    m = [[Fraction(x) for x in row] for row in rows]
    rank = 0
    for c in range(ncols):
        pivot = next((i for i in range(rank, len(m)) if m[i][c] != 0), None)
        if pivot is None:
            continue
        m[rank], m[pivot] = m[pivot], m[rank]
        for i in range(rank + 1, len(m)):
            if m[i][c] != 0:
                factor = m[i][c] / m[rank][c]
                m[i] = [a - factor * b for a, b in zip(m[i], m[rank])]
        rank += 1
        if rank == len(m):
            break
    return rank


def complete_to_rank(basis: HnfBasis, target: int) -> IntMatrix:
    """Extend the basis rows to target Q-independent rows with unit vectors.

    Unit vectors are tried greedily by smallest index; each is kept only if
    it increases the rational rank.  Requires basis.rank <= target <= columns.
    """
    n = basis.cols
    if not basis.rank <= target <= n:
        raise ValueError(f"target {target} outside [{basis.rank}, {n}]")
    rows = [list(r) for r in basis.matrix.entries]
    for i in range(n):
        if len(rows) == target:
            break
        candidate = [1 if j == i else 0 for j in range(n)]
        if rational_rank(rows + [candidate], n) > len(rows):
            rows.append(candidate)
    return IntMatrix.from_rows(rows, n)


def matrix_chain_product(mats: Sequence[IntMatrix], size: int | None = None) -> IntMatrix:
    """Exact product of the matrices in order; empty chain is identity(size)."""
    if not mats:
        if size is None:
            raise ValueError("size required for an empty product")
        return IntMatrix.identity(size)
    out = mats[0]
    for m in mats[1:]:
        out = out.mul(m)
    return out
