"""Text formats and the command-line interface.

System files are line oriented:

    # comment
    vars <n>
    1: <expr>
    ...
    n: <expr>

with expr := ['+'|'-'] term (('+'|'-') term)*, term := coeff ('*' factor)* |
factor ('*' factor)*, factor := z<idx> ['^' <signed int>], coeff := a rational
``p/q`` or a parenthesised complex rational ``(a/b+c/di)``.  Whitespace is
insignificant and '#' starts a comment.

JSON documents serialise every integer and rational as a string (Gaussian
rationals as {"re": "a/b", "im": "c/d"}) so round trips are exact, and order
terms and levels deterministically.

Exit codes: 0 success (check: Entire; verify: all checks pass), 1 parse or
I/O error, 2 internal invariant violation, 3 domain-negative outcome
(check: NotEntire; verify: some check failed).
"""

from __future__ import annotations

import argparse
import hashlib
import json
import math
import re
import sys as _sys
from fractions import Fraction

from . import __version__
from . import certificate as _certificate
from . import numeric as _numeric
from . import reduction as _reduction
from .lattice import IntMatrix
from .laurent import (
    LaurentPoly,
    OdeSystem,
    ParseError,
    format_laurent,
    log_divergence,
    parse_laurent,
)
from .rationals import GaussianRational


# -- system files -------------------------------------------------------------


def parse_system(text: str) -> OdeSystem:
    """Parse a system file; errors carry 1-based line numbers."""
    n = None
    components: dict = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if n is None:
            m = re.fullmatch(r"vars\s+(\d+)", line)
            if not m:
                raise ParseError(f"line {lineno}: expected 'vars <n>' header", 0)
            n = int(m.group(1))
            if n < 1:
                raise ParseError(f"line {lineno}: variable count must be positive", 0)
            continue
        m = re.match(r"(\d+)\s*:\s*(.*)", line)
        if not m:
            raise ParseError(f"line {lineno}: expected '<i>: <expr>'", 0)
        idx = int(m.group(1))
        if not 1 <= idx <= n:
            raise ParseError(f"line {lineno}: component index {idx} out of range 1..{n}", 0)
        if idx in components:
            raise ParseError(f"line {lineno}: duplicate definition of component {idx}", 0)
        try:
            components[idx] = parse_laurent(m.group(2), n)
        except ParseError as exc:
            raise ParseError(f"line {lineno}: {exc.message}", exc.position) from None
    if n is None:
        raise ParseError("missing 'vars <n>' header", 0)
    missing = [i for i in range(1, n + 1) if i not in components]
    if missing:
        raise ParseError(f"missing component definitions: {missing}", 0)
    return OdeSystem(n, tuple(components[i] for i in range(1, n + 1)))


def format_system(sys_: OdeSystem) -> str:
    lines = [f"vars {sys_.n}"]
    for i, p in enumerate(sys_.p, start=1):
        lines.append(f"{i}: {format_laurent(p)}")
    return "\n".join(lines) + "\n"


# -- JSON encoding of exact values --------------------------------------------


def _frac_str(x: Fraction) -> str:
    return str(x)


def _frac_from_str(s: str) -> Fraction:
    return Fraction(s)


def _gauss_to_json(c: GaussianRational) -> dict:
    return {"re": _frac_str(c.re), "im": _frac_str(c.im)}


def _gauss_from_json(obj) -> GaussianRational:
    return GaussianRational(_frac_from_str(obj["re"]), _frac_from_str(obj["im"]))


def _matrix_to_json(mat: IntMatrix) -> list:
    return [[str(x) for x in row] for row in mat.entries]


def _matrix_from_json(rows, ncols: int | None = None) -> IntMatrix:
    return IntMatrix.from_rows(
        [[int(x) for x in row] for row in rows], ncols=ncols
    )


def _poly_to_json(p: LaurentPoly) -> dict:
    return {
        "nvars": str(p.nvars),
        "terms": [
            {"exp": [str(e) for e in exp], "coeff": _gauss_to_json(p.terms[exp])}
            for exp in sorted(p.terms)
        ],
    }


def _poly_from_json(obj) -> LaurentPoly:
    nvars = int(obj["nvars"])
    return LaurentPoly(
        nvars,
        {
            tuple(int(e) for e in term["exp"]): _gauss_from_json(term["coeff"])
            for term in obj["terms"]
        },
    )


def certificate_to_json(cert: _certificate.Certificate) -> dict:
    return {
        "n": str(cert.n),
        "A": {str(k): _matrix_to_json(cert.A[k]) for k in sorted(cert.A)},
        "u": {
            str(k): [_gauss_to_json(x) for x in cert.u[k]] for k in sorted(cert.u)
        },
        "theta": {str(k): _poly_to_json(cert.theta[k]) for k in sorted(cert.theta)},
        "u0": [_gauss_to_json(x) for x in cert.u0],
    }


def certificate_from_json(obj) -> _certificate.Certificate:
    n = int(obj["n"])
    return _certificate.Certificate(
        n=n,
        A={int(k): _matrix_from_json(rows, ncols=int(k)) for k, rows in obj["A"].items()},
        u={int(k): tuple(_gauss_from_json(x) for x in vec) for k, vec in obj["u"].items()},
        theta={int(k): _poly_from_json(p) for k, p in obj["theta"].items()},
        u0=tuple(_gauss_from_json(x) for x in obj["u0"]),
    )


def witness_to_json(witness: _reduction.Witness) -> dict:
    return {
        "failing_level": str(witness.failing_level),
        "chain": [_matrix_to_json(mat) for mat in witness.chain],
        "spanning_exponents": [
            [str(e) for e in exp] for exp in sorted(witness.spanning_exponents)
        ],
    }


def witness_from_json(obj) -> _reduction.Witness:
    failing_level = int(obj["failing_level"])
    return _reduction.Witness(
        chain=tuple(_matrix_from_json(rows) for rows in obj["chain"]),
        failing_level=failing_level,
        spanning_exponents=tuple(
            tuple(int(e) for e in exp) for exp in obj["spanning_exponents"]
        ),
    )


def verdict_document(verdict, input_bytes: bytes) -> dict:
    doc = {
        "tool_version": __version__,
        "input_sha256": hashlib.sha256(input_bytes).hexdigest(),
    }
    if isinstance(verdict, _reduction.Entire):
        doc["verdict"] = "entire"
        doc["certificate"] = certificate_to_json(verdict.certificate)
    else:
        doc["verdict"] = "not_entire"
        doc["witness"] = witness_to_json(verdict.witness)
    return doc


def _load_certificate_json(obj) -> _certificate.Certificate:
    """Accept either a bare certificate object or a verdict document."""
    if "certificate" in obj:
        obj = obj["certificate"]
    return certificate_from_json(obj)


# -- command implementations ---------------------------------------------------


def _print_json(doc) -> None:
    print(json.dumps(doc, indent=2))


def _read_file(path: str) -> bytes:
    with open(path, "rb") as handle:
        return handle.read()


def _parse_complex(token: str) -> complex:
    text = token.strip().replace(" ", "").replace("i", "j")
    text = re.sub(r"(?<![0-9.])j", "1j", text)
    try:
        return complex(text)
    except ValueError:
        raise ValueError(f"cannot parse complex number {token!r}") from None


def _parse_initial(spec: str | None, n: int) -> tuple:
    if spec is None:
        return (1 + 0j,) * n
    values = tuple(_parse_complex(tok) for tok in spec.split(","))
    if len(values) != n:
        raise ValueError(f"--init needs {n} comma-separated values, got {len(values)}")
    return values


def _complex_str(z: complex) -> str:
    return f"{z.real:.17g}{z.imag:+.17g}i"


def _outcome_json(angle: float, outcome) -> dict:
    doc = {"angle": angle}
    if isinstance(outcome, _numeric.Completed):
        doc["status"] = "completed"
    elif isinstance(outcome, _numeric.Blowup):
        doc["status"] = "blowup"
        doc["t_star"] = outcome.t_star
        doc["component"] = outcome.component + 1
        doc["suspected"] = outcome.suspected
    else:
        doc["status"] = "near_zero"
        doc["t_star"] = outcome.t_star
        doc["component"] = outcome.component + 1
    doc["final"] = [_complex_str(z) for z in outcome.samples[-1][1]]
    return doc


def cmd_check(args) -> int:
    data = _read_file(args.file)
    system = parse_system(data.decode("utf-8"))
    verdict = _reduction.decide(system)
    _print_json(verdict_document(verdict, data))
    return 0 if isinstance(verdict, _reduction.Entire) else 3


def cmd_expand(args) -> int:
    obj = json.loads(_read_file(args.certificate).decode("utf-8"))
    cert = _load_certificate_json(obj)
    system = _certificate.expand(cert)
    _sys.stdout.write(format_system(system))
    return 0


def cmd_verify(args) -> int:
    obj = json.loads(_read_file(args.certificate).decode("utf-8"))
    cert = _load_certificate_json(obj)
    system = parse_system(_read_file(args.file).decode("utf-8"))
    report = _certificate.verify(cert, system)
    _print_json(
        {
            "shapes_ok": report.shapes_ok,
            "kernel_ok": report.kernel_ok,
            "reconstruction_ok": report.reconstruction_ok,
            "all_ok": report.all_ok,
            "messages": list(report.messages),
        }
    )
    return 0 if report.all_ok else 3


def cmd_diverge(args) -> int:
    system = parse_system(_read_file(args.file).decode("utf-8"))
    divergence = log_divergence(system)
    _print_json(
        {
            "divergence": format_laurent(divergence),
            "volume_preserving": divergence.is_zero(),
        }
    )
    return 0


def cmd_simulate(args) -> int:
    system = parse_system(_read_file(args.file).decode("utf-8"))
    initial = _parse_initial(args.init, system.n)
    scan = _numeric.disc_scan(
        system, initial, args.radius, args.rays, args.rel_tol, args.abs_tol
    )
    _print_json(
        {
            "radius": args.radius,
            "rays": args.rays,
            "initial": [_complex_str(z) for z in initial],
            "outcomes": [
                _outcome_json(angle, outcome)
                for angle, outcome in zip(scan.angles, scan.outcomes)
            ],
            "min_modulus": list(scan.min_modulus),
            "max_modulus": list(scan.max_modulus),
        }
    )
    return 0


def cmd_nevanlinna(args) -> int:
    system = parse_system(_read_file(args.file).decode("utf-8"))
    initial = _parse_initial(args.init, system.n)
    radii = [float(tok) for tok in args.r.split(",")]
    results = []
    for r in radii:
        angles = [2 * math.pi * j / args.samples for j in range(args.samples)]
        endpoints = []
        event = None
        for angle in angles:
            outcome = _numeric.integrate_ray(
                system,
                _numeric.RaySpec(initial, angle, r, args.rel_tol, args.abs_tol),
            )
            if not isinstance(outcome, _numeric.Completed):
                event = _outcome_json(angle, outcome)
                break
            endpoints.append(outcome.samples[-1][1])
        if event is not None:
            results.append({"r": r, "event": event})
            continue
        per_component = [
            _numeric.estimate_m([z[i] for z in endpoints], r)
            for i in range(system.n)
        ]
        results.append({"r": r, "m": per_component})
    _print_json({"samples": args.samples, "results": results})
    return 0


# -- argument parsing ----------------------------------------------------------


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


def _build_parser() -> _Parser:
    parser = _Parser(
        prog="entireode",
        description=(
            "Decide whether every solution of dz_i/dt = z_i*p_i(z) is entire; "
            "emit machine-checkable certificates or witnesses, with numeric "
            "cross-validation."
        ),
    )
    parser.add_argument("--seed", type=int, default=0,
                        help="seed reserved for randomized test tooling")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="decide a system file (exit 0 entire, 3 not)")
    p.add_argument("file")
    p.set_defaults(handler=cmd_check)

    p = sub.add_parser("expand", help="print the system a certificate describes")
    p.add_argument("certificate")
    p.set_defaults(handler=cmd_expand)

    p = sub.add_parser("verify", help="check a certificate against a system file")
    p.add_argument("certificate")
    p.add_argument("file")
    p.set_defaults(handler=cmd_verify)

    p = sub.add_parser("diverge", help="logarithmic divergence and volume preservation")
    p.add_argument("file")
    p.set_defaults(handler=cmd_diverge)

    p = sub.add_parser("simulate", help="integrate over a disc of rays, report events")
    p.add_argument("file")
    p.add_argument("--radius", type=float, default=5.0)
    p.add_argument("--rays", type=int, default=16)
    p.add_argument("--init", default=None, help="comma-separated complex values, e.g. 1,1+1i")
    p.add_argument("--rel-tol", type=float, default=1e-9)
    p.add_argument("--abs-tol", type=float, default=1e-12)
    p.set_defaults(handler=cmd_simulate)

    p = sub.add_parser("nevanlinna", help="estimate the proximity function on circles")
    p.add_argument("file")
    p.add_argument("--r", default="1,2,5", help="comma-separated circle radii")
    p.add_argument("--samples", type=int, default=256, help="circle samples (= rays)")
    p.add_argument("--init", default=None)
    p.add_argument("--rel-tol", type=float, default=1e-9)
    p.add_argument("--abs-tol", type=float, default=1e-12)
    p.set_defaults(handler=cmd_nevanlinna)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as exc:
        print(f"error: {exc}", file=_sys.stderr)
        return 1
    try:
        return args.handler(args)
    except (ParseError, OSError, ValueError, json.JSONDecodeError, KeyError) as exc:
        print(f"error: {exc}", file=_sys.stderr)
        return 1
    except Exception as exc:  # internal invariant violation
        print(f"internal error: {exc}", file=_sys.stderr)
        return 2


def entry_point() -> None:
    raise SystemExit(main())
