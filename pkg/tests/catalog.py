"""The committed catalog of hand-analysed systems.

Each entry records the system file text, the expected verdict, and the
closed-form reasoning that produced it.  Entire entries are numerically tame
(single-exponential growth) so the disc-scan acceptance band [1e-6, 1e6]
holds on radius 5 with unit initial data; NotEntire entries all develop a
singularity from some initial point in {1, 2, 1+i}^n within radius 10.
"""

from dataclasses import dataclass


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    text: str
    entire: bool
    analysis: str


CATALOG = (
    CatalogEntry(
        name="scalar_linear",
        text="vars 1\n1: 2\n",
        entire=True,
        analysis="z' = 2z has solution c*exp(2t), entire and zero-free.",
    ),
    CatalogEntry(
        name="scalar_zero",
        text="vars 1\n1: 0\n",
        entire=True,
        analysis="z' = 0, constant solutions.",
    ),
    CatalogEntry(
        name="scalar_riccati",
        text="vars 1\n1: z1\n",
        entire=False,
        analysis="z' = z^2 separates to z = c/(1-ct), a pole at t = 1/c.",
    ),
    CatalogEntry(
        name="swap",
        text="vars 2\n1: z2\n2: z1\n",
        entire=False,
        analysis=(
            "Support {(0,1),(1,0)} spans Z^2.  From c=(1,1) both components "
            "equal the z' = z^2 solution 1/(1-t)."
        ),
    ),
    CatalogEntry(
        name="conserved_product",
        text="vars 2\n1: z1*z2\n2: -z1*z2\n",
        entire=True,
        analysis=(
            "m = z1*z2 satisfies m'/m = p1 + p2 = 0, so m is constant and "
            "z1, z2 are exponentials exp(+-m0*t)."
        ),
    ),
    CatalogEntry(
        name="doubling_product",
        text="vars 2\n1: z1*z2\n2: z1*z2\n",
        entire=False,
        analysis=(
            "m = z1*z2 satisfies m' = 2m^2, blowing up at t = 1/(2 m0); the "
            "failure appears at depth 2 of the reduction."
        ),
    ),
    CatalogEntry(
        name="triangular",
        text="vars 2\n1: z2\n2: 0\n",
        entire=True,
        analysis="z2 is constant, so z1' = c2*z1 is a plain exponential.",
    ),
    CatalogEntry(
        name="zero_system",
        text="vars 2\n1: 0\n2: 0\n",
        entire=True,
        analysis="Both components constant.",
    ),
    CatalogEntry(
        name="imaginary_rotation",
        text="vars 2\n1: (0+1i)*z1*z2\n2: (0-1i)*z1*z2\n",
        entire=True,
        analysis=(
            "Same conserved product as conserved_product with coefficient i: "
            "m = z1*z2 constant, components exp(+-i*m0*t)."
        ),
    ),
    CatalogEntry(
        name="laurent_ratio",
        text="vars 2\n1: z1^-1*z2\n2: z1^-1*z2\n",
        entire=True,
        analysis=(
            "m = z1/z2 satisfies m'/m = p1 - p2 = 0, so m is constant and "
            "p_i = 1/m0 is constant: both components are exponentials."
        ),
    ),
    CatalogEntry(
        name="power_tower",
        text="vars 2\n1: z1^2*z2^2\n2: z1*z2\n",
        entire=False,
        analysis=(
            "Exponents (2,2) and (1,1) span the rank-1 lattice Z*(1,1); the "
            "reduced system m' = m*(m^2 + m) blows up.  Depth 2."
        ),
    ),
    CatalogEntry(
        name="three_cycle",
        text="vars 3\n1: z2\n2: z3\n3: z1\n",
        entire=False,
        analysis=(
            "Support spans Z^3.  From c=(1,1,1) all components equal the "
            "z' = z^2 solution."
        ),
    ),
    CatalogEntry(
        name="three_var_kernel",
        text="vars 3\n1: z1*z3\n2: z1*z3\n3: -z1*z3\n",
        entire=True,
        analysis=(
            "p = u*theta(z1*z3) with u = (1,1,-1) killing the monomial's "
            "logarithmic derivative: (z1*z3)'/(z1*z3) = p1 + p3 = 0, so the "
            "driving monomial is constant and all components are exponentials."
        ),
    ),
    CatalogEntry(
        name="independent_riccati",
        text="vars 2\n1: z1\n2: z2\n",
        entire=False,
        analysis="Two uncoupled z' = z^2 equations; support spans Z^2.",
    ),
)

ENTIRE = tuple(e for e in CATALOG if e.entire)
NOT_ENTIRE = tuple(e for e in CATALOG if not e.entire)

# Initial-condition grid used by the numeric falsification criterion.
FALSIFICATION_GRID = (1 + 0j, 2 + 0j, 1 + 1j)
