"""Command-line entry point.

Every command prints one JSON document on stdout (sorted keys, so identical
configurations give identical bytes).  Errors go to stderr as
``{"error": {"code": ..., "message": ...}}``.

Exit codes: 0 success, 1 verification failure, 2 usage error,
3 precision exhaustion.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from fractions import Fraction

from . import linalg as la
from .conformal import SIGN_CONVENTION
from .padic import (
    DEFAULT_PREC,
    PAdic,
    PrecisionError,
    SquareClass,
    hilbert_symbol,
    is_prime,
    square_class_reps,
)
from .poincare import (
    ISOTROPY_MESSAGE,
    InconsistentStepsError,
    classify_dual,
    conformal_verdict,
    orbit_census,
    reduction_chain,
)
from .quadform import (
    AnisotropicError,
    DegenerateFormError,
    QuadSpace,
    classification_report,
    parse_diag,
    vector_of_norm,
)
from .suites import SuiteConfig, run_all, run_suite

EXIT_OK, EXIT_VERIFY, EXIT_USAGE, EXIT_PRECISION = 0, 1, 2, 3

THETA_CONVENTION = "theta_tau(v,W) = (2 tau v, -tau (v,v)); m = psi(-2 tau (v,W u') - tau eta' (v,v))"


class CliError(Exception):
    def __init__(self, code: str, message: str, exit_code: int = EXIT_USAGE):
        super().__init__(message)
        self.code = code
        self.message = message
        self.exit_code = exit_code


@dataclass(frozen=True)
class RunConfig:
    prime: int = 5
    precision: int = DEFAULT_PREC
    seed: int = 0
    iterations: int = 20
    output: str = "json"

    def __post_init__(self):
        if self.prime < 2 or not is_prime(self.prime):
            raise CliError("INVALID_PRIME", f"{self.prime} is not a prime")
        if self.precision < 1:
            raise CliError("INVALID_PRECISION", "precision must be positive")
        if self.prime == 2 and self.precision < 4:
            raise CliError("INVALID_PRECISION", "precision must be at least 4 when p = 2")
        if self.iterations < 1:
            raise CliError("INVALID_ITERATIONS", "iterations must be positive")

    def suite_config(self) -> SuiteConfig:
        return SuiteConfig(self.prime, self.precision, self.seed, self.iterations)


# -- argument parsing -----------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise CliError("USAGE", message)


def _rational(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise CliError("PARSE_ERROR", f"not a rational number: {text!r}") from None


def _rationals(text: str) -> list:
    parts = [s for s in text.split(",") if s.strip()]
    if not parts:
        raise CliError("PARSE_ERROR", "empty list")
    return [_rational(s) for s in parts]


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--p", type=int, default=5, help="the prime (default 5)")
    common.add_argument("--prec", type=int, default=DEFAULT_PREC, help="p-adic digits")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--iters", type=int, default=20, help="samples per property")
    out = common.add_mutually_exclusive_group()
    out.add_argument("--json", dest="output", action="store_const", const="json", default="json")
    out.add_argument("--pretty", dest="output", action="store_const", const="pretty")

    parser = _Parser(prog="padic-particles", description="p-adic particle classification toolkit")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    sub.add_parser("square-classes", parents=[common], help="square classes of Q_p")
    h = sub.add_parser("hilbert", parents=[common], help="Hilbert symbols")
    h.add_argument("a", nargs="?", help="rational a (omit both for the full table)")
    h.add_argument("b", nargs="?")
    fc = sub.add_parser("form-classify", parents=[common], help="invariants and Witt decomposition")
    fc.add_argument("--diag", required=True, help="diagonal coefficients a/b,c/d,...")
    pa = sub.add_parser("particles", parents=[common], help="orbit census and particle type")
    pa.add_argument("--diag", required=True)
    pa.add_argument("--point", help="dual point x1,x2,... to classify")
    pa.add_argument("--mass", help="classify a point of this mass")
    rd = sub.add_parser("reduce", parents=[common], help="reduction chain and conformal verdict")
    rd.add_argument("--diag", required=True)
    rd.add_argument("--steps", help="comma-separated massless/massive decisions")
    gd = sub.add_parser("galilean-demo", parents=[common], help="Galilean multiplier checks")
    gd.add_argument("--diag", default="1,1,1", help="space form V0 (default 1,1,1)")
    gd.add_argument("--tau", default="1", help="Schrodinger mass tau (default 1)")
    cc = sub.add_parser("conformal-check", parents=[common], help="conformal embedding checks")
    cc.add_argument("--diag", default="1,-1,1", help="spacetime form V (default 1,-1,1)")
    sub.add_parser("selftest", parents=[common], help="run every property suite")
    return parser


def _config(args) -> RunConfig:
    return RunConfig(args.p, args.prec, args.seed, args.iters, args.output)


def _space(cfg: RunConfig, text: str) -> QuadSpace:
    try:
        return parse_diag(cfg.prime, text, cfg.precision)
    except DegenerateFormError as exc:
        raise CliError("DEGENERATE_FORM", str(exc)) from None
    except (ValueError, ZeroDivisionError):
        raise CliError("PARSE_ERROR", f"cannot parse diagonal {text!r}") from None


def _padic(cfg: RunConfig, x: Fraction) -> PAdic:
    return PAdic.from_rational(cfg.prime, x, 1, cfg.precision)


# -- commands -----------------------------------------------------------------------


def cmd_square_classes(cfg: RunConfig) -> tuple[dict, int]:
    p = cfg.prime
    reps = square_class_reps(p)
    table = [[(SquareClass(p, a) * SquareClass(p, b)).representative for b in reps] for a in reps]
    elementary = all(table[i][i] == 1 for i in range(len(reps)))
    return {
        "p": p,
        "order": len(reps),
        "representatives": reps,
        "table": table,
        "elementary_abelian_2_group": elementary,
    }, EXIT_OK


def cmd_hilbert(cfg: RunConfig, a: str | None, b: str | None) -> tuple[dict, int]:
    p = cfg.prime
    if (a is None) != (b is None):
        raise CliError("USAGE", "give both a and b, or neither")
    if a is not None:
        x, y = _rational(a), _rational(b)
        if x == 0 or y == 0:
            raise CliError("PARSE_ERROR", "Hilbert symbol needs nonzero arguments")
        s = hilbert_symbol(_padic(cfg, x), _padic(cfg, y))
        return {"p": p, "a": str(x), "b": str(y), "symbol": s}, EXIT_OK
    reps = square_class_reps(p)
    table = [[hilbert_symbol(_padic(cfg, Fraction(r)), _padic(cfg, Fraction(s))) for s in reps] for r in reps]
    return {"p": p, "representatives": reps, "table": table}, EXIT_OK


def cmd_form_classify(cfg: RunConfig, diag: str) -> tuple[dict, int]:
    V = _space(cfg, diag)
    out = classification_report(V)
    out["p"] = cfg.prime
    return out, EXIT_OK


def cmd_classify(cfg: RunConfig, diag: str, point: str | None = None, mass: str | None = None) -> tuple[dict, int]:
    V = _space(cfg, diag)
    try:
        out = {"p": cfg.prime, "form": classification_report(V), "census": orbit_census(V)}
        if point is not None:
            xs = _rationals(point)
            if len(xs) != V.dim:
                raise CliError("USAGE", f"point has {len(xs)} coordinates, form has {V.dim}")
            chi = la.vector(cfg.prime, xs, cfg.precision)
            out["point"] = [str(x) for x in xs]
            out["particle"] = classify_dual(V, chi).to_json()
        if mass is not None:
            m = _rational(mass)
            if m == 0:
                raise CliError("USAGE", "use --point for massless particles; --mass must be nonzero")
            x = vector_of_norm(V, _padic(cfg, m))
            out["mass_witness"] = [c.to_json() for c in x]
            out["particle"] = classify_dual(V, x).to_json()
    except AnisotropicError:
        raise CliError("ANISOTROPIC_FORM", ISOTROPY_MESSAGE) from None
    return out, EXIT_OK


def cmd_reduce(cfg: RunConfig, diag: str, steps: str | None) -> tuple[dict, int]:
    V = _space(cfg, diag)
    chain = reduction_chain(V)
    out = {"p": cfg.prime, "chain": chain.to_json()}
    if steps is not None:
        kinds = [s.strip() for s in steps.split(",") if s.strip()]
        try:
            v = conformal_verdict(chain, kinds)
        except InconsistentStepsError as exc:
            raise CliError("INCONSISTENT_STEPS", str(exc)) from None
        out["steps"] = kinds
        out["verdict"] = v.conformal
        out["reason"] = v.reason
        out["stopped_chain"] = v.chain.to_json()
    return out, EXIT_OK


def _identity_counts(checks: dict, names) -> dict:
    return {
        "samples": sum(checks[n]["samples"] for n in names if n in checks),
        "failures": sum(checks[n]["failures"] for n in names if n in checks),
    }


def cmd_galilean_demo(cfg: RunConfig, diag: str, tau: str) -> tuple[dict, int]:
    V0 = _space(cfg, diag)
    t = _rational(tau)
    if t == 0:
        raise CliError("USAGE", "tau must be nonzero")
    coeffs = [a.to_fraction() for a in V0.diag]
    rep = run_suite("galilean", cfg.suite_config(), space=coeffs, tau=t)
    checks = rep["checks"]
    groups = {
        "cocycle": ["theta_cocycle", "affine_action_axiom", "affine_formula_matches_theta", "theta_additive_in_tau"],
        "multiplier": ["multiplier_2cocycle", "multiplier_normalized", "multiplier_tau0_trivial"],
        "invariance": ["M_invariant", "M_base_point", "chart_on_level_set", "chart_conjugated_action"],
        "factorization": ["phase_factorization"],
        "stabilizer": ["stabilizer_iff_no_boost", "stabilizer_R0", "transport_to_chart_point"],
        "group": ["group_identity", "group_inverse", "group_associative", "spacetime_action_axiom", "contragredience"],
    }
    out = {
        "p": cfg.prime,
        "tau": str(t),
        "space": [str(c) for c in coeffs],
        "convention": THETA_CONVENTION,
        "identities": {k: _identity_counts(checks, v) for k, v in groups.items()},
        "precision_used": rep["precision_used"],
        "checks": checks,
        "passed": rep["passed"],
    }
    return out, EXIT_OK if rep["passed"] else EXIT_VERIFY


def cmd_conformal_check(cfg: RunConfig, diag: str) -> tuple[dict, int]:
    V = _space(cfg, diag)
    coeffs = [a.to_fraction() for a in V.diag]
    rep = run_suite("conformal", cfg.suite_config(), space=coeffs)
    checks = rep["checks"]
    groups = {
        "embedding_homomorphism": ["embedding_homomorphism", "fixes_p"],
        "form_preservation": ["form_preservation", "partial_form_preservation", "extended_witt_index"],
        "intertwining": ["intertwining", "chart_on_cone", "chart_bijection", "action_associative"],
        "dilation": ["dilation", "semidirect_relation"],
        "stabilizer": ["stabilizes_p_line", "identity_fixes", "poincare_keeps_chart"],
        "transitivity": ["transitivity_witness", "conformal_escape_found", "integral_normal_form"],
    }
    out = {
        "p": cfg.prime,
        "space": [str(c) for c in coeffs],
        "sign_convention": SIGN_CONVENTION,
        "checks_by_identity": {k: _identity_counts(checks, v) for k, v in groups.items()},
        "precision_used": rep["precision_used"],
        "checks": checks,
        "passed": rep["passed"],
    }
    return out, EXIT_OK if rep["passed"] else EXIT_VERIFY


def cmd_selftest(cfg: RunConfig) -> tuple[dict, int]:
    rep = run_all(cfg.suite_config())
    return rep, EXIT_OK if rep["passed"] else EXIT_VERIFY


# -- rendering -----------------------------------------------------------------------


def render(report: dict, output: str) -> str:
    if output == "json":
        return json.dumps(report, sort_keys=True, separators=(",", ":"))
    lines = []
    _pretty(report, "", lines)
    return "\n".join(lines)


def _pretty(x, prefix, lines):
    if isinstance(x, dict):
        for k in sorted(x):
            v = x[k]
            key = f"{prefix}.{k}" if prefix else str(k)
            if isinstance(v, (dict, list)) and not _flat_list(v):
                _pretty(v, key, lines)
            else:
                lines.append(f"{key:<48} {_scalar(v)}")
    elif isinstance(x, list):
        for i, v in enumerate(x):
            key = f"{prefix}[{i}]"
            if isinstance(v, (dict, list)) and not _flat_list(v):
                _pretty(v, key, lines)
            else:
                lines.append(f"{key:<48} {_scalar(v)}")


def _flat_list(v) -> bool:
    return isinstance(v, list) and all(not isinstance(e, (dict, list)) for e in v)


def _scalar(v) -> str:
    if isinstance(v, list):
        return " ".join(str(e) for e in v)
    if v is None:
        return "-"
    return str(v)


def _emit_error(code: str, message: str):
    sys.stderr.write(json.dumps({"error": {"code": code, "message": message}}, sort_keys=True) + "\n")


def dispatch(args) -> tuple[dict, int]:
    cfg = _config(args)
    c = args.command
    if c == "square-classes":
        return cmd_square_classes(cfg)
    if c == "hilbert":
        return cmd_hilbert(cfg, args.a, args.b)
    if c == "form-classify":
        return cmd_form_classify(cfg, args.diag)
    if c == "particles":
        return cmd_classify(cfg, args.diag, args.point, args.mass)
    if c == "reduce":
        return cmd_reduce(cfg, args.diag, args.steps)
    if c == "galilean-demo":
        return cmd_galilean_demo(cfg, args.diag, args.tau)
    if c == "conformal-check":
        return cmd_conformal_check(cfg, args.diag)
    if c == "selftest":
        return cmd_selftest(cfg)
    raise CliError("USAGE", f"unknown command {c!r}")


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        report, code = dispatch(args)
    except CliError as exc:
        _emit_error(exc.code, exc.message)
        return exc.exit_code
    except PrecisionError as exc:
        _emit_error("PRECISION_EXHAUSTED", str(exc))
        return EXIT_PRECISION
    sys.stdout.write(render(report, args.output) + "\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
