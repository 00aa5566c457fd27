"""The recursive decision procedure for the all-solutions-entire property.

One step: take the lattice generated by the exponent vectors occurring in the
right-hand side.  If it has full rank n, generic solutions develop
singularities and the spanning exponents witness the failure.  Otherwise the
basis is completed to n-1 independent rows, the right-hand side is rewritten
in the corresponding monomials, and logarithmic differentiation yields a
subsystem in n-1 variables that has only entire solutions exactly when the
original does.  Iterating reaches either a full-rank level (verdict:
NotEntire) or a one-variable constant system (verdict: Entire, with a
normal-form certificate assembled from the recorded steps).
"""

from __future__ import annotations

from dataclasses import dataclass

from . import certificate as _certificate
from .lattice import HnfBasis, IntMatrix, complete_to_rank, coordinates, hnf
from .laurent import LaurentPoly, OdeSystem, support


@dataclass(frozen=True)
class FullRank:
    """The support exponents span the whole space at this level."""

    spanning_exponents: tuple


@dataclass(frozen=True)
class ReductionStep:
    """One level of the recursion, from a system in `level` variables.

    ``basis`` is the HNF basis (rank l) of the support lattice, ``a`` the
    (level-1) x level completion of its rows, ``f`` the right-hand sides
    rewritten in the basis monomials (padded with the unused completion
    variables), and ``subsystem`` the logarithmic-derivative system with
    right-hand side a*f in level-1 variables.
    """

    level: int
    basis: HnfBasis
    a: IntMatrix
    f: tuple
    subsystem: OdeSystem


@dataclass(frozen=True)
class Witness:
    """Proof data for a NotEntire verdict: where and why the recursion failed."""

    chain: tuple
    failing_level: int
    spanning_exponents: tuple


@dataclass(frozen=True)
class Entire:
    certificate: "_certificate.Certificate"


@dataclass(frozen=True)
class NotEntire:
    witness: Witness


Verdict = Entire | NotEntire


def _rewrite_in_basis_rows(p: LaurentPoly, basis: HnfBasis, width: int) -> LaurentPoly:
    """Rewrite p using only the genuine basis rows, zero-padding to width vars."""
    pad = width - basis.rank
    terms = {}
    for exp, c in p.terms.items():
        coords = coordinates(exp, basis)
        terms[coords + (0,) * pad] = c
    return LaurentPoly(width, terms)


def reduce_step(sys: OdeSystem) -> FullRank | ReductionStep:
    """Perform one reduction, or report that the support already spans."""
    sup = sorted(support(sys))
    basis = hnf(sup, ncols=sys.n)
    if basis.rank == sys.n:
        return FullRank(tuple(sup))
    if sys.n == 1:
        raise ValueError(
            "a 1-variable system with constant right-hand side is the recursion "
            "base case and has no reduction step"
        )
    a = complete_to_rank(basis, sys.n - 1)
    f = tuple(_rewrite_in_basis_rows(p, basis, sys.n - 1) for p in sys.p)
    sub_p = []
    for j in range(sys.n - 1):
        acc = LaurentPoly.zero(sys.n - 1)
        for i in range(sys.n):
            coeff = a.entries[j][i]
            if coeff:
                acc = acc + f[i].scalar_mul(coeff)
        sub_p.append(acc)
    subsystem = OdeSystem(sys.n - 1, tuple(sub_p))
    return ReductionStep(level=sys.n, basis=basis, a=a, f=f, subsystem=subsystem)


def _run(sys: OdeSystem):
    """Iterate reduce_step; returns (steps, fullrank-or-None, last system)."""
    steps = []
    current = sys
    while True:
        if current.n == 1 and all(p.is_constant() for p in current.p):
            return steps, None, current
        outcome = reduce_step(current)
        if isinstance(outcome, FullRank):
            return steps, outcome, current
        steps.append(outcome)
        current = outcome.subsystem


def decide(sys: OdeSystem) -> Verdict:
    """Decide whether every solution of the system is entire.

    Entire verdicts carry a normal-form certificate built from the reduction
    trace; NotEntire verdicts carry the chain of reduction matrices and the
    full-rank spanning exponents at the failing level.
    """
    steps, fullrank, last = _run(sys)
    if fullrank is None:
        base_u0 = (last.p[0].constant_coefficient(),)
        cert = _certificate.build(steps, base_u0)
        return Entire(cert)
    witness = Witness(
        chain=tuple(step.a for step in steps),
        failing_level=last.n,
        spanning_exponents=fullrank.spanning_exponents,
    )
    return NotEntire(witness)


def decision_trace(sys: OdeSystem) -> list:
    """The ordered reduction steps decide takes (empty on immediate full rank)."""
    steps, _, _ = _run(sys)
    return steps
