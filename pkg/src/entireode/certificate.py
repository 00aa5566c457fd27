"""Normal-form certificates for systems whose solutions are all entire.

A certificate for an n-variable system consists of a chain of integer
matrices A[k] (shape (k-1) x k, for k = 2..n) defining nested monomial
vectors M(n) = Z, M(k-1)_i = prod_j M(k)_j ^ A[k][i][j], together with
coefficient vectors u[k], Laurent polynomials theta[k] in k variables, and a
constant vector u0, such that

    p = sum_k u[k] * theta[k](M(k)) + u0.

Such a right-hand side forces every solution component to be the exponential
of an entire function; conversely the reduction trace of any system decided
entire lifts to a certificate of this shape.  Verification is an independent
code path from the decision procedure: it rechecks shapes, the kernel
conditions on the u[k], and the exact reconstruction of the system.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .lattice import (
    IntMatrix,
    kernel_rational,
    matrix_chain_product,
    rational_rank,
    solve_preimage,
)
from .laurent import LaurentPoly, OdeSystem, log_divergence, substitute_monomials
from .rationals import GaussianRational, as_gaussian


class ProportionalityError(RuntimeError):
    """A residual coefficient vector left the kernel line during lifting.

    Impossible for traces produced by the decision procedure; raised only to
    surface internal inconsistencies instead of emitting a bad certificate.
    """


@dataclass(frozen=True)
class Certificate:
    """Normal-form data; for n = 1 only the constant vector u0 is populated."""

    n: int
    A: dict
    u: dict
    theta: dict
    u0: tuple


@dataclass(frozen=True)
class VerifyReport:
    shapes_ok: bool
    kernel_ok: bool
    reconstruction_ok: bool
    messages: tuple

    @property
    def all_ok(self) -> bool:
        return self.shapes_ok and self.kernel_ok and self.reconstruction_ok


def monomial_level_exponents(cert: Certificate) -> dict:
    """Exponent matrices of the monomial vectors: level k is k x n over Z.

    Level n is the identity; level k-1 is A[k] times level k.
    """
    exps = {cert.n: IntMatrix.identity(cert.n)}
    for k in range(cert.n, 1, -1):
        exps[k - 1] = cert.A[k].mul(exps[k])
    return exps


def _shape_errors(cert: Certificate) -> list:
    errors = []
    n = cert.n
    if n < 1:
        return [f"n = {n} must be positive"]
    if sorted(cert.A) != list(range(2, n + 1)):
        errors.append(f"A levels {sorted(cert.A)} != 2..{n}")
    else:
        for k, mat in cert.A.items():
            if (mat.nrows, mat.ncols) != (k - 1, k):
                errors.append(f"A[{k}] has shape {mat.nrows}x{mat.ncols}, expected {k - 1}x{k}")
    if sorted(cert.u) != list(range(1, n)):
        errors.append(f"u levels {sorted(cert.u)} != 1..{n - 1}")
    else:
        for k, vec in cert.u.items():
            if len(vec) != n:
                errors.append(f"u[{k}] has length {len(vec)}, expected {n}")
    if sorted(cert.theta) != list(range(1, n)):
        errors.append(f"theta levels {sorted(cert.theta)} != 1..{n - 1}")
    else:
        for k, poly in cert.theta.items():
            if poly.nvars != k:
                errors.append(f"theta[{k}] has {poly.nvars} variables, expected {k}")
    if len(cert.u0) != n:
        errors.append(f"u0 has length {len(cert.u0)}, expected {n}")
    return errors


def _kernel_condition_errors(cert: Certificate) -> list:
    """Check the chain products annihilate each u[k].

    The product for level k runs over the defined matrices A[max(k,2)]..A[n];
    certificates produced by build satisfy the stronger condition starting at
    A[k+1] as well.
    """
    errors = []
    for k in range(1, cert.n):
        mats = [cert.A[j] for j in range(max(k, 2), cert.n + 1)]
        try:
            product = matrix_chain_product(mats, size=cert.n)
            image = product.apply(cert.u[k])
        except (KeyError, ValueError) as exc:
            errors.append(f"kernel condition at level {k} unverifiable: {exc}")
            continue
        if any(as_gaussian(x) for x in image):
            errors.append(f"chain product applied to u[{k}] is nonzero")
    return errors


def _expand_unchecked(cert: Certificate) -> OdeSystem:
    exps = monomial_level_exponents(cert)
    components = [LaurentPoly.constant(cert.n, cert.u0[i]) if cert.u0[i] else LaurentPoly.zero(cert.n)
                  for i in range(cert.n)]
    for k in range(1, cert.n):
        theta_z = substitute_monomials(cert.theta[k], exps[k])
        if theta_z.is_zero():
            continue
        for i in range(cert.n):
            coeff = cert.u[k][i]
            if coeff:
                components[i] = components[i] + theta_z.scalar_mul(coeff)
    return OdeSystem(cert.n, tuple(components))


def expand(cert: Certificate) -> OdeSystem:
    """Reconstruct the system a certificate describes, validating it first."""
    errors = _shape_errors(cert)
    if errors:
        raise ValueError("certificate shape violation: " + "; ".join(errors))
    errors = _kernel_condition_errors(cert)
    if errors:
        raise ValueError("certificate kernel-condition violation: " + "; ".join(errors))
    return _expand_unchecked(cert)


def build(trace, base_u0) -> Certificate:
    """Assemble a certificate from a reduction trace ending in a constant level.

    Works outward: the innermost certificate is the constant vector; each
    step lifts the inner vectors through its completion matrix (canonical
    preimage, free coordinates zero), and the residual f minus the lifted
    expansion must lie on the kernel line of the step matrix, yielding the
    new top-level theta.  Constant terms of the fresh theta are folded into
    u0 so constants always live in the constant slot.
    """
    cert = Certificate(
        n=1, A={}, u={}, theta={}, u0=tuple(as_gaussian(x) for x in base_u0)
    )
    for step in reversed(trace):
        cert = _lift_through_step(step, cert)
    if trace:
        outer = trace[0]
        expected = OdeSystem(
            outer.level,
            tuple(substitute_monomials(f_i, outer.a) for f_i in outer.f),
        )
        if _expand_unchecked(cert) != expected:
            raise RuntimeError("internal error: certificate does not reconstruct its system")
    return cert


def _lift_through_step(step, inner: Certificate) -> Certificate:
    level = step.level
    a = step.a
    if inner.n != level - 1:
        raise ValueError(f"inner certificate has n={inner.n}, step expects {level - 1}")

    kernel = kernel_rational(a)
    if len(kernel) != 1:
        raise ProportionalityError(
            f"completion matrix at level {level} has kernel dimension {len(kernel)}, expected 1"
        )
    w = kernel[0]

    lifted_u = {k: solve_preimage(a, inner.u[k]) for k in inner.u}
    u0_lift = list(solve_preimage(a, inner.u0))

    inner_exps = monomial_level_exponents(inner)
    residual = list(step.f)
    for k, vec in lifted_u.items():
        theta_term = substitute_monomials(inner.theta[k], inner_exps[k])
        if theta_term.is_zero():
            continue
        for i in range(level):
            if vec[i]:
                residual[i] = residual[i] - theta_term.scalar_mul(vec[i])
    zero_exp = (0,) * (level - 1)
    for i in range(level):
        if u0_lift[i]:
            residual[i] = residual[i] - LaurentPoly.constant(level - 1, u0_lift[i])

    pivot = next(i for i, x in enumerate(w) if x != 0)
    exponents = set()
    for g in residual:
        exponents.update(g.terms.keys())
    theta_terms = {}
    for exp in sorted(exponents):
        column = [g.coefficient(exp) for g in residual]
        scalar = column[pivot] / GaussianRational(w[pivot])
        for i in range(level):
            if column[i] != scalar * GaussianRational(w[i]):
                raise ProportionalityError(
                    f"residual coefficient vector at exponent {exp} is not on the kernel line"
                )
        if scalar:
            theta_terms[exp] = scalar
    # fold theta's constant term into u0
    const = theta_terms.pop(zero_exp, None)
    if const is not None:
        for i in range(level):
            u0_lift[i] = u0_lift[i] + const * GaussianRational(w[i])
    theta_new = LaurentPoly(level - 1, theta_terms)
    u_new = tuple(GaussianRational(x) for x in w)

    return Certificate(
        n=level,
        A={**inner.A, level: a},
        u={**lifted_u, level - 1: u_new},
        theta={**inner.theta, level - 1: theta_new},
        u0=tuple(u0_lift),
    )


def verify(cert: Certificate, sys: OdeSystem) -> VerifyReport:
    """Independently check a certificate against a system.

    Three separate checks, none of which calls the decision procedure:
    shapes, kernel conditions via exact chain products, and exact
    reconstruction of the right-hand side.
    """
    messages = []
    shape_errors = _shape_errors(cert)
    shapes_ok = not shape_errors
    messages.extend(shape_errors)

    kernel_errors = _kernel_condition_errors(cert)
    kernel_ok = not kernel_errors
    messages.extend(kernel_errors)

    try:
        reconstruction_ok = _expand_unchecked(cert) == sys
        if not reconstruction_ok:
            messages.append("expansion does not reproduce the system")
    except (KeyError, ValueError, TypeError) as exc:
        reconstruction_ok = False
        messages.append(f"expansion failed: {exc}")

    return VerifyReport(shapes_ok, kernel_ok, reconstruction_ok, tuple(messages))


def is_volume_preserving(sys: OdeSystem) -> bool:
    """True iff the logarithmic divergence vanishes identically."""
    return log_divergence(sys).is_zero()


def _random_coeff(rng: random.Random, bound: int = 3) -> GaussianRational:
    return GaussianRational(
        Fraction(rng.randint(-bound, bound), rng.choice((1, 1, 2))),
        Fraction(rng.randint(-bound, bound), rng.choice((1, 1, 2))),
    )


def _random_nonzero_coeff(rng: random.Random) -> GaussianRational:
    while True:
        c = _random_coeff(rng)
        if c:
            return c


def random_certificate(
    seed: int, n: int, exponent_bound: int = 3, theta_term_bound: int = 3
) -> Certificate:
    """Sample a valid certificate, deterministic per seed.

    Chain matrices get entries in [-exponent_bound, exponent_bound] and full
    row rank (bounded resampling); each u[k] is a random Gaussian-rational
    combination of the exact kernel of the chain product A[k+1]*...*A[n], so
    the kernel conditions hold by construction.
    """
    if n < 1:
        raise ValueError("n must be positive")
    if exponent_bound < 1 or theta_term_bound < 1:
        raise ValueError("bounds must be positive")
    rng = random.Random(seed)

    chain = {}
    for k in range(2, n + 1):
        for _ in range(256):
            rows = [
                [rng.randint(-exponent_bound, exponent_bound) for _ in range(k)]
                for _ in range(k - 1)
            ]
            if rational_rank(rows, k) == k - 1:
                chain[k] = IntMatrix.from_rows(rows, k)
                break
        else:
            raise RuntimeError(f"resampling cap exceeded for the level-{k} chain matrix")

    u = {}
    theta = {}
    for k in range(1, n):
        product = matrix_chain_product([chain[j] for j in range(k + 1, n + 1)], size=n)
        kernel = kernel_rational(product)
        vec = [GaussianRational.ZERO] * n
        for w in kernel:
            c = _random_coeff(rng)
            if c:
                vec = [v + c * GaussianRational(x) for v, x in zip(vec, w)]
        u[k] = tuple(vec)
        terms = {}
        for _ in range(rng.randint(0, theta_term_bound)):
            exp = tuple(rng.randint(-exponent_bound, exponent_bound) for _ in range(k))
            terms[exp] = _random_nonzero_coeff(rng)
        theta[k] = LaurentPoly(k, terms)

    u0 = tuple(_random_coeff(rng) for _ in range(n))
    return Certificate(n=n, A=chain, u=u, theta=theta, u0=u0)
