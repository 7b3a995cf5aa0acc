"""Command-line front end: ``cuntzli verify`` and ``cuntzli explore``."""
from __future__ import annotations

import argparse
import json
import sys

from .clopen import parse_clopen
from .dynamics import domain_classify, orbit_translation, parse_cylinder, theta_apply
from .errors import CuntzLiError, ParseError
from .group import parse_group
from .relations import check_CE_intertwine, eval_word, expectation_E, expectation_Theta, parse_monomial
from .rings import RINGS, get_ring
from .suites import DEFAULT_DEPTHS, SUITES, Context, run

EXIT_PASS, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

DOMAIN_REASONS = {
    "Empty": "u ∉ R+(w)",
    "Full": "R ⊆ u+(w)",
    "Proper": "u ∈ R+(w), R ⊄ u+(w)",
}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="cuntzli", description="Exact checks for Cuntz-Li algebras of Euclidean domains.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    v = sub.add_parser("verify", help="run verification suites")
    v.add_argument("--ring", default="Z", help=f"one of {', '.join(RINGS)}")
    v.add_argument("--depth", help="modulus literal for the profinite truncation (ring syntax)")
    v.add_argument("--samples", type=int, help="override every per-suite sample count")
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--suite", default="all", choices=SUITES + ("all",))
    v.add_argument("--output", default="json", choices=("json", "text"))
    v.add_argument("--no-timing", action="store_true", help="zero all elapsed_ms fields")

    e = sub.add_parser("explore", help="inspect a single computation")
    e.add_argument("what", choices=("orbit", "theta", "expect", "domain"))
    e.add_argument("--ring", default="Z")
    e.add_argument("--g", help='group element "(p/q, a/b)"')
    e.add_argument("--x", help='cylinder "r mod N"')
    e.add_argument("--target", help='clopen set "{a,b} mod N"')
    e.add_argument("--monomial", help='"m\'\',n,m,n\',m\'"')
    return p


def _ring(token: str):
    try:
        return get_ring(token)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _need(args, *names):
    missing = [f"--{n}" for n in names if getattr(args, n) is None]
    if missing:
        raise UsageError(f"{args.what} needs {' and '.join(missing)}")


def cmd_verify(args, out) -> int:
    ring = _ring(args.ring)
    depth_text = args.depth if args.depth is not None else DEFAULT_DEPTHS[ring.token]
    depth = ring.parse(depth_text)
    if depth == ring.zero:
        raise UsageError("depth must be nonzero")
    if args.samples is not None and args.samples <= 0:
        raise UsageError("--samples must be positive")
    ctx = Context(ring, ring.modulus(depth), args.seed, args.samples)
    try:
        report = run(ctx, args.suite, timing=not args.no_timing)
    except ValueError as exc:
        if isinstance(exc, CuntzLiError):
            raise
        raise UsageError(str(exc)) from None
    if args.output == "json":
        out.write(json.dumps(report, indent=2, ensure_ascii=False) + "\n")
    else:
        out.write(render_text(report))
    return EXIT_PASS if report["pass"] else EXIT_FAIL


def render_text(report: dict) -> str:
    lines = [f"ring {report['ring']}  depth {report['depth']}  seed {report['seed']}"]
    for block in report["suites"]:
        for c in block["checks"]:
            status = "PASS" if c["pass"] else "FAIL"
            lines.append(f"{status}  {block['suite']:<12} {c['anchor']:<40} checked={c['checked_count']}")
            for k, v in (c.get("notes") or {}).items():
                lines.append(f"      {k}: {v}")
            if c.get("witness"):
                lines.append(f"      witness: {json.dumps(c['witness'], ensure_ascii=False)}")
    lines.append("PASS" if report["pass"] else "FAIL")
    return "\n".join(lines) + "\n"


def cmd_explore(args, out) -> int:
    ring = _ring(args.ring)
    what = args.what
    if what == "domain":
        _need(args, "g")
        g = parse_group(ring, args.g)
        dc = domain_classify(g)
        out.write(f"{dc} ({DOMAIN_REASONS[dc.kind]})\n")
        return EXIT_PASS
    if what == "theta":
        _need(args, "g", "x")
        g, x = parse_group(ring, args.g), parse_cylinder(ring, args.x)
        y = theta_apply(g, x)
        nf = g.normal_form()
        fmt = ring.format
        out.write(f"{y}\n")
        out.write(
            f"precision: {fmt(x.precision)} -> {fmt(y.precision)}"
            f" (= {fmt(nf.m)}·{fmt(x.precision)}/{fmt(nf.m_prime)})\n"
        )
        return EXIT_PASS
    if what == "orbit":
        _need(args, "x", "target")
        x, target = parse_cylinder(ring, args.x), parse_clopen(ring, args.target)
        g = orbit_translation(x, target)
        y = theta_apply(g, x)
        out.write(f"g = {g}\n{x} -> {y}\n")
        return EXIT_PASS if y.as_clopen().issubset(target) else EXIT_FAIL
    # expect
    _need(args, "monomial")
    mono = parse_monomial(ring, args.monomial)
    rep = check_CE_intertwine(mono)
    left = expectation_E(mono.psi())
    theta = expectation_Theta(mono)
    out.write(f"Psi(x) = {mono.psi()}\n")
    out.write(f"E(Psi(x)) = {left if left is not None else 0}\n")
    out.write(f"Theta(x) = {theta if theta is not None else 0}\n")
    value = "0" if theta is None else str(eval_word(theta.word()))
    out.write(f"E∘Ψ = Ψ∘Θ = {value}; {'pass' if rep.passed else 'fail'}\n")
    if not rep.passed:
        out.write(json.dumps(rep.witness, ensure_ascii=False) + "\n")
    return EXIT_PASS if rep.passed else EXIT_FAIL


def main(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        if args.command == "verify":
            return cmd_verify(args, out)
        return cmd_explore(args, out)
    except UsageError as exc:
        err.write(f"usage error: {exc}\n")
        return EXIT_USAGE
    except ParseError as exc:
        err.write(f"ParseError: {exc}\n")
        return EXIT_USAGE
    except CuntzLiError as exc:
        err.write(f"{exc.name}: {exc}\n")
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
