"""Command-line interface.

Data goes to stdout as canonical JSON (sorted keys, rationals as strings);
diagnostics go to stderr as ``afinv: <ErrorName>: <message>``.  Exit codes:
0 success (or "conjugate"), 1 distinct, 2 undetermined, 64 bad input,
65 input outside the mathematical domain.
"""

from __future__ import annotations

import argparse
import json
import os
import re
import sys
import tempfile
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .bratteli import dimension_vector, dot_export, stationary_diagram
from .errors import AfinvError, DimensionError, ParseError, UsageError
from .exactnum import IntMatrix, charpoly, det_exact
from .jacobiperron import DEFAULT_MAX_STEPS, jp_expand, jp_factorize, ratio_vector
from .numberfield import NumberField, QuadraticSurd
from .pfdata import coefficient_ring, jacobian_from_periods, module_similar, perron_data
from .torusbundle import alexander_polynomial, bundle_invariants, conjugacy_test
from .traceform import form_invariants, gram, order_form_closed, order_form_direct

EXIT_PARSE = 64
EXIT_DOMAIN = 65


# -- parsing -------------------------------------------------------------------


def parse_matrix(text: str, as_json: bool = False) -> IntMatrix:
    """Row-major whitespace/comma separated integers, or ``{"rows": n, "entries": [...]}``."""
    text = text.strip()
    try:
        if as_json or text.startswith("{"):
            obj = json.loads(text)
            entries = [int(x) for x in obj["entries"]]
            if any(not isinstance(x, int) or isinstance(x, bool) for x in obj["entries"]):
                raise ParseError("matrix entries must be integers")
            return IntMatrix.from_flat(entries, int(obj["rows"]))
        tokens = [t for t in re.split(r"[\s,;]+", text) if t]
        return IntMatrix.from_flat([int(t) for t in tokens])
    except ParseError:
        raise
    except (ValueError, KeyError, TypeError, DimensionError) as exc:
        raise ParseError(f"cannot read matrix from {text!r}: {exc}") from None


_RATIONAL = r"\d+(?:/\d+)?"
_SURD = re.compile(rf"(?P<a>.*?)(?P<sign>[+-]?)\s*(?:(?P<b>{_RATIONAL})\s*\*\s*)?sqrt\(\s*(?P<d>\d+)\s*\)")


def _parse_rational(text: str) -> Fraction:
    text = text.strip()
    if not re.fullmatch(rf"[+-]?{_RATIONAL}", text):
        raise ParseError(f"not a rational number: {text!r}")
    try:
        return Fraction(text)
    except ZeroDivisionError:
        raise ParseError(f"zero denominator in {text!r}") from None


def parse_surd(text: str):
    """``p``, ``p/q`` or ``p+q*sqrt(d)``; returns a Fraction or a QuadraticSurd."""
    text = text.strip()
    m = _SURD.fullmatch(text)
    if m is None:
        return _parse_rational(text)
    a_text = m["a"].strip()
    if a_text and not m["sign"]:
        raise ParseError(f"cannot read surd {text!r}")
    a = _parse_rational(a_text) if a_text else Fraction(0)
    b = Fraction(m["b"]) if m["b"] else Fraction(1)
    if m["sign"] == "-":
        b = -b
    return QuadraticSurd.from_sqrt(a, b, int(m["d"]))


def parse_surd_list(text: str) -> list:
    items = [t for t in re.split(r"[,\s]+", text.strip()) if t]
    if not items:
        raise ParseError("empty list")
    return [parse_surd(t) for t in items]


def _field_of(values: Sequence) -> NumberField:
    ds = {v.d for v in values if isinstance(v, QuadraticSurd)}
    if len(ds) > 1:
        raise UsageError(f"values lie in different quadratic fields {sorted(ds)}")
    if not ds:
        raise UsageError("at least one irrational value is required")
    return NumberField.quadratic(ds.pop())


# -- reports -------------------------------------------------------------------


def _jsonable(x):
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, IntMatrix):
        return x.tolist()
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    return x


def dumps(obj) -> str:
    return json.dumps(_jsonable(obj), sort_keys=True, separators=(",", ":"))


@dataclass(frozen=True)
class InvariantReport:
    matrix: tuple  # rows
    field: dict  # {"d": d} for quadratic fields, else {"minpoly": [...]}
    delta: Fraction
    sigma: int
    alexander: tuple
    conductor: int | None = None
    cf_period: tuple | None = None
    jp_period: tuple | None = None
    warnings: tuple = ()
    extra: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "input": [list(r) for r in self.matrix],
            "field": dict(self.field),
            "delta": str(self.delta),
            "sigma": self.sigma,
            "alexander": list(self.alexander),
            "conductor": self.conductor,
            "cf_period": None if self.cf_period is None else list(self.cf_period),
            "jp_period": None if self.jp_period is None else [list(b) for b in self.jp_period],
            "warnings": list(self.warnings),
            **_jsonable(self.extra),
        }

    def to_json(self) -> str:
        return dumps(self.to_dict())

    @classmethod
    def from_dict(cls, d: dict) -> "InvariantReport":
        known = {"input", "field", "delta", "sigma", "alexander", "conductor", "cf_period", "jp_period", "warnings"}
        return cls(
            matrix=tuple(tuple(r) for r in d["input"]),
            field=dict(d["field"]),
            delta=Fraction(d["delta"]),
            sigma=int(d["sigma"]),
            alexander=tuple(d["alexander"]),
            conductor=d.get("conductor"),
            cf_period=None if d.get("cf_period") is None else tuple(d["cf_period"]),
            jp_period=None if d.get("jp_period") is None else tuple(tuple(b) for b in d["jp_period"]),
            warnings=tuple(d.get("warnings", ())),
            extra={k: v for k, v in d.items() if k not in known},
        )

    @classmethod
    def from_json(cls, text: str) -> "InvariantReport":
        return cls.from_dict(json.loads(text))


def _jp_period_of(ratio, steps: int):
    e = jp_expand(ratio, steps)
    return e.period if e.periodic else None


def invariant_report(a: IntMatrix, steps: int = DEFAULT_MAX_STEPS) -> InvariantReport:
    if a.shape == (2, 2) and det_exact(a) == 1:
        r = bundle_invariants(a)
        rep_pd = perron_data(r.representative)
        return InvariantReport(
            matrix=tuple(a.rows),
            field={"d": r.d},
            delta=r.delta,
            sigma=r.sigma,
            alexander=r.alexander,
            conductor=r.conductor,
            cf_period=r.cf_period,
            jp_period=_jp_period_of(ratio_vector(rep_pd.eigenvector), steps),
            warnings=r.warnings,
            extra={
                "order_basis": list(r.order_basis),
                "representative": r.representative.tolist(),
                "exponent": r.exponent,
                "negated": r.negated,
            },
        )
    pd = perron_data(a)
    m = jacobian_from_periods(pd.field, pd.eigenvector)
    inv = form_invariants(gram(m))
    conductor = None
    fld: dict = {"minpoly": list(pd.field.minpoly)}
    if pd.field.degree == 2:
        order = coefficient_ring(m)
        conductor = order.conductor
        fld = {"d": order.d}
    return InvariantReport(
        matrix=tuple(a.rows),
        field=fld,
        delta=inv.delta,
        sigma=inv.sigma,
        alexander=tuple(charpoly(a)),
        conductor=conductor,
        jp_period=_jp_period_of(ratio_vector(pd.eigenvector), steps),
        warnings=pd.warnings,
    )


# -- commands ------------------------------------------------------------------


def _default_steps() -> int:
    raw = os.environ.get("AFINV_MAX_STEPS")
    if raw is None:
        return DEFAULT_MAX_STEPS
    try:
        value = int(raw)
    except ValueError:
        raise ParseError(f"AFINV_MAX_STEPS must be an integer, got {raw!r}") from None
    if value < 1:
        raise ParseError("AFINV_MAX_STEPS must be positive")
    return value


def _matrix_arg(args, name: str) -> IntMatrix:
    return parse_matrix(getattr(args, name), args.json)


def cmd_invariants(args, out) -> int:
    steps = args.steps or _default_steps()
    out.write(invariant_report(_matrix_arg(args, "matrix"), steps).to_json() + "\n")
    return 0


def cmd_conjugate(args, out) -> int:
    v = conjugacy_test(_matrix_arg(args, "a"), _matrix_arg(args, "b"), args.bound)
    out.write(
        dumps(
            {
                "verdict": "conjugate" if v.verdict == "conjugate" else ("undetermined" if v.exit_code == 2 else "distinct"),
                "reason": v.verdict,
                "certificate": v.certificate,
                "periods": [list(p) for p in v.periods],
            }
        )
        + "\n"
    )
    return v.exit_code


def cmd_alexander(args, out) -> int:
    m = _matrix_arg(args, "matrix")
    poly = alexander_polynomial(m) if m.shape == (2, 2) and det_exact(m) == 1 else charpoly(m)
    out.write(dumps(poly) + "\n")
    return 0


def _expansion_dict(e) -> dict:
    return {
        "dimension": e.dimension,
        "digits": [list(b) for b in e.digits],
        "periodic": None if e.periodic is None else {"preperiod": e.periodic[0], "period": e.periodic[1]},
        "terminating": e.terminating,
    }


def cmd_jp_expand(args, out) -> int:
    theta = parse_surd_list(args.theta)
    steps = args.steps or _default_steps()
    out.write(dumps(_expansion_dict(jp_expand(theta, steps))) + "\n")
    return 0


def cmd_jp_factor(args, out) -> int:
    digits = jp_factorize(_matrix_arg(args, "matrix"))
    out.write(dumps({"digits": [list(b) for b in digits]}) + "\n")
    return 0


def write_atomic(path: str, text: str) -> None:
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".afinv-", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def cmd_bratteli(args, out) -> int:
    d = stationary_diagram(_matrix_arg(args, "matrix"), args.depth)
    summary = {
        "depth": d.depth,
        "sizes": d.sizes(),
        "levels": [m.tolist() for m in d.levels],
        "dimension_vectors": [dimension_vector(d, k) for k in range(d.depth + 2)],
    }
    if args.dot:
        write_atomic(args.dot, dot_export(d))
        summary["dot"] = args.dot
    out.write(dumps(summary) + "\n")
    return 0


def cmd_order(args, out) -> int:
    closed = order_form_closed(args.d, args.f)
    direct = order_form_direct(args.d, args.f)
    report = {
        "d": args.d,
        "f": args.f,
        "delta": closed.invariants.delta,
        "sigma": closed.invariants.sigma,
        "form": closed.form_text(),
        "direct_delta": direct.delta,
        "direct_sigma": direct.sigma,
        "agrees": closed.invariants.delta == direct.delta and closed.invariants.sigma == direct.sigma,
    }
    out.write(dumps(report) + "\n")
    return 0


def cmd_module_similar(args, out) -> int:
    g1, g2 = parse_surd_list(args.m1), parse_surd_list(args.m2)
    K = _field_of(g1 + g2)
    m1 = jacobian_from_periods(K, [K(x) for x in g1])
    m2 = jacobian_from_periods(K, [K(x) for x in g2])
    out.write(dumps({"d": K.quadratic_data()[0], "verdict": module_similar(m1, m2)}) + "\n")
    return 0


_VALUE_FLAGS = {"--matrix", "--a", "--b", "--theta", "--m1", "--m2"}


def _glue_values(argv: list[str]) -> list[str]:
    # values such as "-1+sqrt(2)" or "-5 -2 -2 -1" would otherwise look like options
    out = []
    i = 0
    while i < len(argv):
        if argv[i] in _VALUE_FLAGS and i + 1 < len(argv):
            out.append(f"{argv[i]}={argv[i + 1]}")
            i += 2
        else:
            out.append(argv[i])
            i += 1
    return out


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ParseError(message)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="afinv", description="Exact invariants of hyperbolic integer matrices and their AF-algebras.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def matrix_cmd(name, help_text, *flags):
        sp = sub.add_parser(name, help=help_text)
        for flag in flags:
            sp.add_argument(f"--{flag}", required=True, help="row-major integers, or JSON with --json")
        sp.add_argument("--json", action="store_true", help="read matrices as {\"rows\": n, \"entries\": [...]}")
        return sp

    sp = matrix_cmd("invariants", "field, order, trace-form and period invariants", "matrix")
    sp.add_argument("--steps", type=int, default=None)
    sp.set_defaults(func=cmd_invariants)

    sp = matrix_cmd("conjugate", "SL(2,Z) conjugacy test", "a", "b")
    sp.add_argument("--bound", type=int, default=50, help="coefficient bound for the certificate search")
    sp.set_defaults(func=cmd_conjugate)

    matrix_cmd("alexander", "characteristic (Alexander) polynomial", "matrix").set_defaults(func=cmd_alexander)

    jp = sub.add_parser("jp", help="Jacobi-Perron continued fractions")
    jsub = jp.add_subparsers(dest="jp_command", required=True, parser_class=_Parser)
    sp = jsub.add_parser("expand", help="expand a vector of rationals or quadratic surds")
    sp.add_argument("--theta", required=True)
    sp.add_argument("--steps", type=int, default=None)
    sp.set_defaults(func=cmd_jp_expand)
    sp = jsub.add_parser("factor", help="factor a nonnegative unimodular matrix into blocks")
    sp.add_argument("--matrix", required=True)
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=cmd_jp_factor)

    sp = matrix_cmd("bratteli", "stationary Bratteli diagram", "matrix")
    sp.add_argument("--depth", type=int, required=True)
    sp.add_argument("--dot", default=None, help="write Graphviz DOT to this path")
    sp.set_defaults(func=cmd_bratteli)

    sp = sub.add_parser("order", help="trace form of the order Z + f*omega*Z")
    sp.add_argument("--d", type=int, required=True)
    sp.add_argument("--f", type=int, required=True)
    sp.set_defaults(func=cmd_order)

    mod = sub.add_parser("module", help="quadratic module comparisons")
    msub = mod.add_subparsers(dest="module_command", required=True, parser_class=_Parser)
    sp = msub.add_parser("similar", help="are two modules proportional?")
    sp.add_argument("--m1", required=True)
    sp.add_argument("--m2", required=True)
    sp.set_defaults(func=cmd_module_similar)
    return p


def run_command(argv: Sequence[str] | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = build_parser().parse_args(_glue_values(sys.argv[1:] if argv is None else list(argv)))
        return args.func(args, out)
    except (ParseError, UsageError) as exc:
        err.write(f"afinv: {exc.name}: {exc}\n")
        return EXIT_PARSE
    except AfinvError as exc:
        err.write(f"afinv: {exc.name}: {exc}\n")
        return EXIT_DOMAIN


def main() -> None:
    sys.exit(run_command())


if __name__ == "__main__":
    main()
