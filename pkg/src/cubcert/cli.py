"""Command-line front end: ``cubcert <subcommand> ...``.

Exit codes: 0 success (all certificates nonexistence, candidate passes),
1 a negative result (inconclusive certificate, failing candidate, replay
mismatch), 2 bad input.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass
from fractions import Fraction

from . import __version__
from .certify import (
    DEFAULT_N_MAX,
    PI_HI,
    PI_LO,
    certify_range,
    replay,
    validate_pi_bracket,
)
from .exact import FieldElement, NumberField, Poly
from .kernels import build_kernel, xu_kernel
from .orthopoly import ScaledQuantity, minimal_poly_cos
from .quadrature import cos_field, gauss_layers, xu_moments
from .verifier import (
    CandidateFormula,
    FormulaError,
    direct_failures,
    exact_json,
    layer_analysis,
    max_design_strength,
    verify_mysovskikh,
)


class InputError(ValueError):
    pass


# -- candidate formula files ---------------------------------------------------


def _rational(x, where: str) -> Fraction:
    if isinstance(x, bool) or not isinstance(x, (str, int)):
        raise InputError(f"{where}: expected a rational string \"p/q\", got {json.dumps(x)}")
    try:
        return Fraction(x)
    except (ValueError, ZeroDivisionError):
        raise InputError(f"{where}: not a rational number: {x!r}") from None


def _entry(x, field: NumberField | None, where: str):
    if isinstance(x, list):
        if field is None:
            raise InputError(f"{where}: residue array given but no \"field\" declared")
        if len(x) > field.degree:
            raise InputError(f"{where}: {len(x)} residue coefficients for a degree-{field.degree} field")
        coeffs = [_rational(c, f"{where}[{i}]") for i, c in enumerate(x)]
        return field(Poly(coeffs, field.generator))
    return _rational(x, where)


def parse_candidate(text: str, source: str = "<input>") -> CandidateFormula:
    """Parse a candidate formula document; errors name the line or JSON path."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise InputError(f"{source}:{e.lineno}:{e.colno}: {e.msg}") from None
    if not isinstance(doc, dict):
        raise InputError(f"{source}: top level must be an object")
    for key in ("dimension", "degree", "points", "weights"):
        if key not in doc:
            raise InputError(f"{source}: missing field \"{key}\"")
    d, t = doc["dimension"], doc["degree"]
    if not isinstance(d, int) or d < 1:
        raise InputError(f"{source}: \"dimension\" must be a positive integer")
    if not isinstance(t, int) or t < 0:
        raise InputError(f"{source}: \"degree\" must be a nonnegative integer")
    field = None
    if doc.get("field") is not None:
        fd = doc["field"]
        if not isinstance(fd, dict) or "modulus" not in fd:
            raise InputError(f"{source}: \"field\" needs a \"modulus\" array")
        gen = fd.get("generator", "c")
        mod = Poly([_rational(c, f"field.modulus[{i}]") for i, c in enumerate(fd["modulus"])], gen)
        try:
            field = NumberField(mod, gen, fd.get("embedding"))
        except (ValueError, TypeError) as e:
            raise InputError(f"{source}: field: {e}") from None
    if not isinstance(doc["points"], list):
        raise InputError(f"{source}: \"points\" must be an array")
    points = []
    for i, pt in enumerate(doc["points"]):
        if not isinstance(pt, list):
            raise InputError(f"{source}: points[{i}] must be an array")
        points.append(tuple(_entry(c, field, f"{source}: points[{i}][{j}]") for j, c in enumerate(pt)))
    weights = []
    for i, w in enumerate(doc["weights"]):
        where = f"{source}: weights[{i}]"
        if not isinstance(w, dict) or "value" not in w:
            raise InputError(f"{where}: expected {{\"value\": ..., \"unitExp\": int}}")
        unit = w.get("unitExp", 1)
        if not isinstance(unit, int):
            raise InputError(f"{where}.unitExp: must be an integer")
        weights.append(ScaledQuantity(_entry(w["value"], field, f"{where}.value"), unit))
    try:
        return CandidateFormula(d, t, points, weights, doc.get("integral", "xu-4k1"), field)
    except FormulaError as e:
        raise InputError(f"{source}: {e}") from None


def _entry_json(x):
    if isinstance(x, FieldElement):
        return [str(c) for c in x.coefficients()]
    return str(x)


def serialize_candidate(F: CandidateFormula) -> dict:
    out = {
        "dimension": F.dimension,
        "degree": F.degree,
        "integral": F.integral,
        "points": [[_entry_json(c) for c in pt] for pt in F.points],
        "weights": [{"value": _entry_json(w.value), "unitExp": w.unit_exp} for w in F.weights],
    }
    if F.field is not None:
        out["field"] = F.field.to_json()
    return out


# -- configuration ---------------------------------------------------------------


@dataclass
class RunConfig:
    """Validated options for ``certify``; defaults: one worker, 60-digit pi, n up to 40."""

    k: int
    dmin: int
    dmax: int
    n: int | None = None
    n_max: int = DEFAULT_N_MAX
    pi_lo: Fraction = PI_LO
    pi_hi: Fraction = PI_HI
    workers: int = 1
    fmt: str = "json"
    output: str | None = None
    stamp: bool = False

    @classmethod
    def from_args(cls, args) -> "RunConfig":
        if args.d is not None:
            dmin = dmax = args.d
        elif args.dmin is not None and args.dmax is not None:
            dmin, dmax = args.dmin, args.dmax
        else:
            raise InputError("give --d or both --dmin and --dmax")
        if dmin > dmax:
            raise InputError("--dmin exceeds --dmax")
        workers = args.workers
        if workers is None:
            try:
                workers = int(os.environ.get("CUBCERT_WORKERS", "1"))
            except ValueError:
                raise InputError("CUBCERT_WORKERS must be an integer") from None
        if workers < 1:
            raise InputError("worker count must be >= 1")
        if args.n is not None and args.n < 1:
            raise InputError("--n must be >= 1")
        pi_lo = _rational(args.pi_lo, "--pi-lo") if args.pi_lo else PI_LO
        pi_hi = _rational(args.pi_hi, "--pi-hi") if args.pi_hi else PI_HI
        try:
            validate_pi_bracket(pi_lo, pi_hi)
        except ValueError as e:
            raise InputError(str(e)) from None
        return cls(
            args.k, dmin, dmax, args.n, args.n_max, pi_lo, pi_hi, workers, args.format, args.output, args.timestamp
        )


# -- subcommands -------------------------------------------------------------------


def _dump(obj, out=None):
    text = json.dumps(obj, sort_keys=True, indent=2)
    (out or sys.stdout).write(text + "\n")


def cmd_minpoly(args) -> int:
    try:
        f = minimal_poly_cos(args.p, args.var)
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    print(f)
    return 0


def cmd_radii(args) -> int:
    try:
        layers = gauss_layers(args.k)
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    _dump(
        {
            "k": args.k,
            "field": cos_field(2 * args.k + 1).to_json(),
            "layers": [L.to_json(args.dps) for L in layers],
        }
    )
    return 0


def cmd_kernel(args) -> int:
    d = args.d if args.d == "d" else None
    if d is None:
        try:
            d = int(args.d)
        except ValueError:
            print("error: --d must be an integer or the symbol d", file=sys.stderr)
            return 2
    try:
        if args.builder == "moments":
            if d == "d":
                raise ValueError("the moment builder needs a numeric dimension")
            K = build_kernel(xu_moments(args.k), d, args.k)
        else:
            K = xu_kernel(d, args.k)
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    _dump(K.to_json())
    return 0


def _load_candidate(path: str) -> CandidateFormula:
    try:
        with open(path) as fh:
            text = fh.read()
    except OSError as e:
        raise InputError(f"{path}: {e.strerror}") from None
    return parse_candidate(text, path)


def cmd_verify(args) -> int:
    try:
        F = _load_candidate(args.path)
        report = verify_mysovskikh(F)
    except (InputError, FormulaError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    out = report.to_json()
    maxdeg = F.degree if args.maxdeg is None else args.maxdeg
    bad = direct_failures(F, maxdeg)
    out["direct"] = {"maxdeg": maxdeg, "pass": not bad, "failingMonomials": [list(a) for a in bad[:20]]}
    _dump(out)
    return 0 if report.passed else 1


def cmd_design_check(args) -> int:
    try:
        F = _load_candidate(args.path)
    except (InputError, FormulaError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    rows = []
    ok = True
    for L in layer_analysis(F):
        pts = [F.points[i] for i in L.members]
        t = max_design_strength(pts, args.cap, F.dimension)
        row = {"radiusSq": exact_json(L.radius_sq), "size": len(pts), "strength": t}
        if args.t is not None:
            row["atLeast"] = t >= args.t
            ok = ok and t >= args.t
        rows.append(row)
    _dump({"dimension": F.dimension, "layers": rows})
    return 0 if ok else 1


def _table(certs) -> str:
    lines = [f"{'k':>3} {'d':>4}  {'route':<22} {'verdict':<13} n"]
    for c in certs:
        n = c.params.get("n")
        lines.append(f"{c.k:>3} {c.d:>4}  {c.route:<22} {c.verdict:<13} {'' if n is None else n}")
    return "\n".join(lines)


def _read_certificates(path: str) -> list[dict]:
    try:
        with open(path) as fh:
            text = fh.read()
    except OSError as e:
        raise InputError(f"{path}: {e.strerror}") from None
    text = text.strip()
    try:
        if text.startswith("["):
            return json.loads(text)
        return [json.loads(line) for line in text.splitlines() if line.strip()]
    except json.JSONDecodeError as e:
        raise InputError(f"{path}:{e.lineno}:{e.colno}: {e.msg}") from None


def cmd_certify(args) -> int:
    if args.replay:
        try:
            certs = _read_certificates(args.replay)
            results = [(c.get("k"), c.get("d"), replay(c)) for c in certs]
        except (InputError, KeyError, TypeError, ValueError) as e:
            print(f"error: {e}", file=sys.stderr)
            return 2
        for k, d, ok in results:
            print(f"k={k} d={d} replay {'ok' if ok else 'MISMATCH'}")
        return 0 if all(ok for *_, ok in results) else 1
    try:
        cfg = RunConfig.from_args(args)
    except InputError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    certs = certify_range(
        cfg.k,
        cfg.dmin,
        cfg.dmax,
        workers=cfg.workers,
        n=cfg.n,
        pi_lo=cfg.pi_lo,
        pi_hi=cfg.pi_hi,
        n_max=cfg.n_max,
        stamp=cfg.stamp,
    )
    if cfg.fmt == "table":
        text = _table(certs) + "\n"
    else:
        text = "".join(c.dumps() + "\n" for c in certs)
    if cfg.output:
        with open(cfg.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0 if all(c.verdict == "nonexistence" for c in certs) else 1


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="cubcert", description="Exact kernels and nonexistence certificates for minimal cubature")
    ap.add_argument("--version", action="version", version=f"cubcert {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("minpoly", help="minimal polynomial of cos(2 pi/p)")
    p.add_argument("p", type=int)
    p.add_argument("--var", default="x")
    p.set_defaults(func=cmd_minpoly)

    p = sub.add_parser("radii", help="layer radii and weight sums for degree 4k+1")
    p.add_argument("k", type=int)
    p.add_argument("--dps", type=int, default=50, help="digits in approx fields")
    p.set_defaults(func=cmd_radii)

    p = sub.add_parser("kernel", help="dump the reproducing kernel")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--d", required=True, help="integer dimension or the symbol d")
    p.add_argument("--builder", choices=["xu", "moments"], default="xu")
    p.set_defaults(func=cmd_kernel)

    p = sub.add_parser("verify", help="check a candidate formula file")
    p.add_argument("path")
    p.add_argument("--maxdeg", type=int, default=None, help="degree for the direct check (default: formula degree)")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("certify", help="nonexistence certificates")
    p.add_argument("--k", type=int)
    p.add_argument("--d", type=int)
    p.add_argument("--dmin", type=int)
    p.add_argument("--dmax", type=int)
    p.add_argument("--n", type=int, help="starting number of Taylor term pairs")
    p.add_argument("--n-max", type=int, default=DEFAULT_N_MAX, help="refinement cap")
    p.add_argument("--pi-lo")
    p.add_argument("--pi-hi")
    p.add_argument("--workers", type=int, default=None, help="defaults to $CUBCERT_WORKERS or 1")
    p.add_argument("--format", choices=["json", "table"], default="json")
    p.add_argument("--output", "-o")
    p.add_argument("--timestamp", action="store_true", help="stamp certificates (breaks byte-identity)")
    p.add_argument("--replay", metavar="FILE", help="re-verify stored certificates")
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("design-check", help="spherical design strength of each layer")
    p.add_argument("path")
    p.add_argument("--t", type=int, default=None, help="required strength")
    p.add_argument("--cap", type=int, default=20)
    p.set_defaults(func=cmd_design_check)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return 2 if e.code else 0
    if args.command == "certify" and not args.replay and args.k is None:
        print("error: --k is required", file=sys.stderr)
        return 2
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
