"""Command-line front end: ``genpos VERB [options] ...``.

Exit status is 0 on success, 1 when the data are mathematically infeasible
(or a numerical certificate cannot be produced), and 2 on bad input.
"""
from __future__ import annotations

import argparse
import dataclasses
import json
import sys
from typing import Any

import numpy as np

from . import bounded, classify, evenodd, factor, interpolate
from .config import DEFAULT, Tolerances
from .errors import GenPosError, InfeasibleError, InputError, PickIndefinite
from .expr import complex_from_json, complex_json, format_complex, parse_expression, to_text
from .polynomial import Polynomial
from .ratfun import RationalFunction

VERBS = ("classify", "factor", "evenodd", "spectral", "interpolate", "cayley", "blaschke", "demo-gbg")

CLASS_TAGS = {
    "p": "P",
    "po": "PO",
    "gpg": "GP_g",
    "oddg": "Odd_g",
    "gpe": "GPE_symmetric",
    "gp-onesided": "GP_onesided_real",
}

# ---------------------------------------------------------------------------
# serialization


def func_json(f: RationalFunction) -> dict:
    return {
        "text": to_text(f),
        "num": [complex_json(c) for c in f.num.coeffs],
        "den": [complex_json(c) for c in f.den.coeffs],
    }


def _finite(x: float) -> float | None:
    return float(x) if np.isfinite(x) else None


def witness_json(w: classify.Witness | None) -> dict | None:
    if w is None:
        return None
    s = w.s if np.isfinite(w.s.imag) else None
    return {
        "kind": w.kind,
        "s": complex_json(s) if s is not None else None,
        "value": complex_json(w.value) if w.value is not None else None,
        "residue": complex_json(w.residue) if w.residue is not None else None,
    }


def report_json(r: classify.ClassReport) -> dict:
    return {"verdict": bool(r.verdict), "margin": _finite(r.margin), "witness": witness_json(r.witness)}


def foster_json(form: factor.FosterForm) -> dict:
    return {"r_o": form.r_o, "a_o": form.a_o, "terms": [{"a": a, "r": r} for a, r in form.terms]}


def pick_json(pm: interpolate.PickMatrix) -> dict:
    pos, neg, zero = pm.inertia
    return {
        "entries": [[complex_json(c) for c in row] for row in pm.entries],
        "min_eig": pm.min_eig,
        "det_sign": pm.det_sign,
        "inertia": {"positive": pos, "negative": neg, "zero": zero},
    }


# ---------------------------------------------------------------------------
# verbs


def _classify(args, tol) -> dict:
    f = parse_expression(args.expr, tol)
    tests = {
        "P": classify.is_p,
        "GP": classify.is_gp,
        "para_positive": classify.is_para_positive,
        "Even": classify.is_even,
        "Odd": classify.is_odd,
        "PO": classify.is_po,
        "GPE": classify.is_gpe,
        "B": classify.is_bounded,
        "GB": classify.is_gb,
    }
    out = {name: report_json(fn(f, tol)) for name, fn in tests.items()}
    if args.g:
        g = parse_expression(args.g, tol)
        out["GP_g"] = report_json(classify.in_gp_g(f, g, tol))
    return {"function": func_json(f), "classes": out}


def _factor(args, tol) -> dict:
    psi = parse_expression(args.expr, tol)
    s_o = None if args.s0 is None else complex(0.0, args.s0)
    fac = factor.factor_gp(psi, s_o, tol)
    out = {"g": func_json(fac.g), "p": func_json(fac.p), "s_o": complex_json(fac.s_o)}
    if classify.is_odd(psi, tol):
        _, form = factor.odd_canonical(psi, tol)
        out["foster"] = foster_json(form)
    if args.minimal:
        out["minimal"] = func_json(factor.minimal_degree_in_gp_g(fac.g, tol))
    return out


def _evenodd(args, tol) -> dict:
    f = parse_expression(args.expr, tol)
    return {"even": func_json(evenodd.even_part(f, tol)), "odd": func_json(evenodd.odd_part(f, tol))}


def _spectral(args, tol) -> dict:
    psi = parse_expression(args.expr, tol)
    g = factor.spectral_factor_gpe(psi, tol)
    form = factor.gpe_product_form(psi, tol)
    return {
        "g": func_json(g),
        "product_form": {
            "c": form.c,
            "numerator": [{"alpha": a, "beta": b} for a, b in form.numerator],
            "denominator": [{"gamma": a, "delta": b} for a, b in form.denominator],
        },
    }


def _parse_pair(text: str, tol) -> tuple[complex, complex]:
    if "=" not in text:
        raise InputError(f"interpolation pair {text!r} must look like node=value")
    lhs, rhs = text.split("=", 1)
    vals = []
    for part in (lhs, rhs):
        f = parse_expression(part, tol)
        if not f.is_constant():
            raise InputError(f"{part!r} is not a constant")
        vals.append(complex(f.num.coeffs[0] / f.den.coeffs[0]))
    return vals[0], vals[1]


def _interpolate(args, tol) -> dict:
    pairs = [_parse_pair(t, tol) for t in args.pairs]
    g = parse_expression(args.g, tol) if args.g else None
    constraint = CLASS_TAGS[args.cls]
    problem = interpolate.InterpProblem(tuple(z for z, _ in pairs), tuple(w for _, w in pairs), constraint, g)
    mu = None if args.mu is None else [float(m) for m in args.mu.split(",")]
    if constraint == "GPE_symmetric":
        sol = interpolate.solve_gpe_symmetric(problem, tol, mu)
    elif constraint == "GP_onesided_real":
        sol = interpolate.solve_gp_onesided_real(problem, tol, mu)
    else:
        sol = interpolate.solve(problem, tol)
    out = {
        "psi": func_json(sol.psi),
        "constraint": constraint,
        "certificate": report_json(sol.certificate),
        "node_residuals": list(sol.node_residuals),
    }
    if "pick" in sol.detail:
        out["pick"] = pick_json(sol.detail["pick"])
    elif "inner" in sol.detail and "pick" in sol.detail["inner"].detail:
        out["pick"] = pick_json(sol.detail["inner"].detail["pick"])
    return out


def _cayley(args, tol) -> dict:
    f = parse_expression(args.expr, tol)
    out = bounded.cayley_inv(f) if args.inverse else bounded.cayley(f)
    return {"result": func_json(out)}


def _blaschke(args, tol) -> dict:
    f = parse_expression(args.expr, tol)
    f_b, beta = bounded.blaschke_extract(f, tol)
    return {"f_b": func_json(f_b), "blaschke": [complex_json(w) for w in beta.factors]}


def _demo_gbg(args, tol) -> dict:
    g = parse_expression(args.g, tol)
    d = bounded.gb_g_instability_demo(g, args.eps, args.delta, args.literal, tol)
    cl = lambda zs: [complex_json(z) for z in zs]  # noqa: E731
    return {
        "p1": func_json(d.p1),
        "p2": func_json(d.p2),
        "f1": func_json(d.f1),
        "f2": func_json(d.f2),
        "p_positive": list(d.p_positive),
        "zeros1": cl(d.zeros1),
        "zeros2": cl(d.zeros2),
        "poles1": cl(d.poles1),
        "poles2": cl(d.poles2),
        "distinct_zeros": d.distinct_zeros,
        "distinct_poles": d.distinct_poles,
    }


HANDLERS = {
    "classify": _classify,
    "factor": _factor,
    "evenodd": _evenodd,
    "spectral": _spectral,
    "interpolate": _interpolate,
    "cayley": _cayley,
    "blaschke": _blaschke,
    "demo-gbg": _demo_gbg,
}

# ---------------------------------------------------------------------------
# argument parsing


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--config", help="JSON file of tolerance overrides")
    for f in dataclasses.fields(Tolerances):
        common.add_argument(f"--{f.name.replace('_', '-')}", dest=f"tol_{f.name}", type=type(f.default), default=None,
                            help=f"tolerance (default {f.default})")

    parser = argparse.ArgumentParser(prog="genpos", description="Generalized positive rational functions.")
    sub = parser.add_subparsers(dest="verb", required=True)

    p = sub.add_parser("classify", parents=[common], help="class memberships with witnesses")
    p.add_argument("expr")
    p.add_argument("--g", help="also test membership in GP_g")

    p = sub.add_parser("factor", parents=[common], help="psi = g p g#")
    p.add_argument("expr")
    p.add_argument("--s0", type=float, help="normalization frequency (s_o = i*s0)")
    p.add_argument("--minimal", action="store_true", help="also report the minimal-degree member of GP_g")

    p = sub.add_parser("evenodd", parents=[common], help="even and odd parts")
    p.add_argument("expr")

    p = sub.add_parser("spectral", parents=[common], help="spectral factor and product form of an even GP function")
    p.add_argument("expr")

    p = sub.add_parser("interpolate", parents=[common], help="Nevanlinna-Pick interpolation")
    p.add_argument("pairs", nargs="+", help="node=value pairs")
    p.add_argument("--class", dest="cls", choices=tuple(CLASS_TAGS), default="p")
    p.add_argument("--g", help="fixed g for gpg / oddg")
    p.add_argument("--mu", help="comma-separated basis parameters for gpe / gp-onesided")

    p = sub.add_parser("cayley", parents=[common], help="Cayley transform (1-f)/(1+f)")
    p.add_argument("expr")
    p.add_argument("--inverse", action="store_true")

    p = sub.add_parser("blaschke", parents=[common], help="f_gb = f_b / beta")
    p.add_argument("expr")

    p = sub.add_parser("demo-gbg", parents=[common], help="two GB_g members with different poles and zeros")
    p.add_argument("g")
    p.add_argument("--eps", type=float, default=0.01)
    p.add_argument("--delta", type=float, default=0.01)
    p.add_argument("--literal", action="store_true", help="use the unreflected p1 = n/n~, p2 = d~/d")
    return parser


def tolerances_from_args(args) -> Tolerances:
    tol = Tolerances.from_file(args.config) if args.config else DEFAULT
    overrides = {
        f.name: getattr(args, f"tol_{f.name}")
        for f in dataclasses.fields(Tolerances)
        if getattr(args, f"tol_{f.name}") is not None
    }
    return tol.replace(**overrides)


def _error_json(exc: Exception) -> dict:
    detail: dict[str, Any] = {}
    if isinstance(exc, PickIndefinite) and exc.pick is not None:
        detail["pick"] = pick_json(exc.pick)
    pos = getattr(exc, "pos", None)
    if pos is not None:
        detail["position"] = pos
        detail["expected"] = getattr(exc, "expected", None)
    return {"type": type(exc).__name__, "message": str(exc), "detail": detail}


def run(argv: list[str] | None = None) -> tuple[int, dict]:
    """Parse ``argv``, dispatch, and return ``(exit_status, report)``."""
    return execute(build_parser().parse_args(argv))


def execute(args: argparse.Namespace) -> tuple[int, dict]:
    report: dict[str, Any] = {"verb": args.verb, "status": "ok", "exit_code": 0, "result": None, "error": None}
    try:
        tol = tolerances_from_args(args)
        report["tolerances"] = tol.as_dict()
        report["result"] = HANDLERS[args.verb](args, tol)
    except (InputError, ValueError, OSError) as exc:
        report.update(status="input_error", exit_code=2, error=_error_json(exc))
    except InfeasibleError as exc:
        report.update(status="infeasible", exit_code=1, error=_error_json(exc))
    except (GenPosError, ArithmeticError) as exc:
        report.update(status="numerical_failure", exit_code=1, error=_error_json(exc))
    return report["exit_code"], report


def _text(obj, indent: int = 0) -> list[str]:
    pad = "  " * indent
    lines = []
    if isinstance(obj, dict):
        if set(obj) == {"re", "im"}:
            return [pad + _complex_text(obj)]
        if "text" in obj and "num" in obj:
            return [pad + _func_text(obj)]
        for k, v in obj.items():
            if v is None:
                continue
            if isinstance(v, (dict, list)) and not _is_leaf(v):
                lines.append(f"{pad}{k}:")
                lines.extend(_text(v, indent + 1))
            else:
                lines.append(f"{pad}{k}: {_text(v)[0].strip()}")
    elif isinstance(obj, list):
        if all(_is_leaf(v) for v in obj):
            return [pad + "[" + ", ".join(_text(v)[0].strip() for v in obj) + "]"]
        for v in obj:
            lines.extend(_text(v, indent))
    else:
        lines.append(pad + str(obj))
    return lines


def _is_leaf(v) -> bool:
    if isinstance(v, dict):
        return set(v) == {"re", "im"} or ("text" in v and "num" in v)
    if isinstance(v, list):
        return all(not isinstance(x, (list, dict)) or _is_leaf(x) for x in v) and len(v) <= 8
    return True


def _complex_text(d: dict) -> str:
    c = complex(d["re"], d["im"])
    floor = 1e-12 * abs(c)
    return format_complex(complex(c.real if abs(c.real) > floor else 0.0, c.imag if abs(c.imag) > floor else 0.0), 10)


def _func_text(d: dict) -> str:
    num = Polynomial([complex_from_json(c) for c in d["num"]])
    den = Polynomial([complex_from_json(c) for c in d["den"]])
    return to_text(RationalFunction._coprime(num, den), digits=10)


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    code, report = execute(args)
    if args.format == "json":
        print(json.dumps(report, indent=2))
    else:
        body = {k: v for k, v in report.items() if k != "tolerances"}
        print("\n".join(_text(body)))
    return code


if __name__ == "__main__":
    sys.exit(main())
