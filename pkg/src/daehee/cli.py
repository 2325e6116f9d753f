"""Command-line frontend: ``daehee gen``, ``daehee check`` and ``daehee limit``.

Exit codes: 0 success, 1 identity failure (or a limit mismatch), 2 usage error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import re
import sys
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Sequence

from . import identities
from . import sequences as seq
from .exactnum import format_rational, parse_rational
from .polyring import BiPoly
from .sequences import Family, SeqFamily

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2

# which flag carries the family parameter, if any
_PARAM_FLAG = {
    Family.BERNOULLI: None,
    Family.BERNOULLI_HIGHER: "r",
    Family.DAEHEE: None,
    Family.DAEHEE_HIGHER: "r",
    Family.DEGEN_BERNOULLI: None,
    Family.DEGEN_BERNOULLI_HIGHER: "r",
    Family.DEGEN_DAEHEE: None,
    Family.DEGEN_DAEHEE_HIGHER: "r",
    Family.MULTIPLE_DEGEN_DAEHEE: "k",
    Family.NORLUND_SECOND: None,
}

_CLASSICAL = {
    Family.DEGEN_DAEHEE: Family.DAEHEE,
    Family.DEGEN_BERNOULLI: Family.BERNOULLI,
    Family.DEGEN_DAEHEE_HIGHER: Family.DAEHEE_HIGHER,
    Family.DEGEN_BERNOULLI_HIGHER: Family.BERNOULLI_HIGHER,
    # the k = 1 reduction; at lambda = 0 every k lands on the classical numbers
    Family.MULTIPLE_DEGEN_DAEHEE: Family.DEGEN_DAEHEE,
}


class UsageError(Exception):
    pass


def _rational(text: str) -> Fraction:
    try:
        return parse_rational(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _integer(text: str) -> int:
    q = _rational(text)
    if q.denominator != 1:
        raise argparse.ArgumentTypeError(f"{text!r} is not an integer")
    return q.numerator


def _family(text: str) -> Family:
    try:
        return Family(text.replace("-", "_"))
    except ValueError:
        names = ", ".join(f.value.replace("_", "-") for f in Family)
        raise argparse.ArgumentTypeError(f"unknown family {text!r}; choose from {names}") from None


@dataclass
class CliConfig:
    command: str
    family: Family | None = None
    nmax: int | None = None
    order_r: int | None = None
    index_k: int | None = None
    lambda_value: Fraction | None = None
    x_value: Fraction | None = None
    format: str = "json"
    output_path: Path | None = None
    series_order: int | None = None
    ids: tuple[str, ...] = ()
    all: bool = False

    @classmethod
    def from_args(cls, ns: argparse.Namespace) -> CliConfig:
        return cls(
            command=ns.command,
            family=getattr(ns, "family", None),
            nmax=ns.nmax,
            order_r=ns.r,
            index_k=ns.k,
            lambda_value=getattr(ns, "lambda_value", None),
            x_value=getattr(ns, "x", None),
            format=ns.format,
            output_path=ns.out,
            series_order=getattr(ns, "series_order", None),
            ids=tuple(getattr(ns, "id", None) or ()),
            all=getattr(ns, "all", False),
        )

    def family_spec(self) -> SeqFamily:
        """Resolve family + parameter flags into a :class:`SeqFamily`."""
        fam = self.family
        flag = _PARAM_FLAG[fam]
        if flag != "r" and self.order_r is not None:
            raise UsageError(f"--r does not apply to family {fam.value.replace('_', '-')}")
        if flag != "k" and self.index_k is not None:
            raise UsageError(f"--k does not apply to family {fam.value.replace('_', '-')}")
        order = {"r": self.order_r, "k": self.index_k}.get(flag)
        if order is None:
            order = 1
        if order < 1:
            raise UsageError(f"--{flag} must be >= 1")
        if fam is Family.MULTIPLE_DEGEN_DAEHEE:
            argument = "number"
        else:
            argument = "number" if self.x_value == 0 else "polynomial"
        exponent = None
        if fam is Family.NORLUND_SECOND:
            exponent, argument = self.x_value, "polynomial" if self.x_value is None else "number"
        return SeqFamily(fam, order, argument, exponent)


def _emit(text: str, path: Path | None) -> None:
    if path is None:
        sys.stdout.write(text)
    else:
        path.write_text(text, encoding="utf-8")


def _dump_json(obj) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False) + "\n"


def _dump_csv(header: Sequence[str], rows: Sequence[Sequence]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


def _require_numeric(values: Sequence[BiPoly]) -> None:
    if not all(v.is_constant() for v in values):
        raise UsageError("csv output needs fully specialized values; pass --lambda and/or --x, or use --format json")


def _specialize(values: list[BiPoly], cfg: CliConfig, spec: SeqFamily) -> list[BiPoly]:
    if cfg.lambda_value is not None:
        values = [v.eval_lambda(cfg.lambda_value) for v in values]
    # Norlund consumes --x as its exponent; number families are already at x = 0
    if cfg.x_value is not None and spec.family is not Family.NORLUND_SECOND:
        values = [v.eval_x(cfg.x_value) for v in values]
    return values


def _family_label(f: Family) -> str:
    return f.value.replace("_", "-")


def _order_field(spec: SeqFamily) -> int | None:
    return spec.order if _PARAM_FLAG[spec.family] else None


def cmd_gen(cfg: CliConfig) -> int:
    spec = cfg.family_spec()
    shift = cfg.order_r or 1
    series_order = cfg.series_order if cfg.series_order is not None else cfg.nmax + shift + 1
    if series_order < cfg.nmax + shift + 1:
        raise UsageError(f"--series-order must be at least nmax + r + 1 = {cfg.nmax + shift + 1}")
    order = None if spec.family is Family.NORLUND_SECOND else series_order
    values = _specialize(seq.generate(spec, cfg.nmax, order), cfg, spec)
    if cfg.format == "csv":
        _require_numeric(values)
        _emit(_dump_csv(["n", "value"], [[n, v.to_text()] for n, v in enumerate(values)]), cfg.output_path)
        return EXIT_OK
    doc: dict = {
        "family": _family_label(spec.family),
        "order": _order_field(spec),
        "argument": spec.argument,
        "convention": spec.convention.value,
    }
    if cfg.lambda_value is not None:
        doc["lambda"] = format_rational(cfg.lambda_value)
    if cfg.x_value is not None:
        doc["x"] = format_rational(cfg.x_value)
    doc["terms"] = [{"n": n, "value": v.to_text()} for n, v in enumerate(values)]
    _emit(_dump_json(doc), cfg.output_path)
    return EXIT_OK


def cmd_check(cfg: CliConfig) -> int:
    if cfg.lambda_value is not None or cfg.x_value is not None:
        raise UsageError("--lambda/--x are not valid with check")
    if cfg.all == bool(cfg.ids):
        raise UsageError("check needs exactly one of --all or --id")
    overrides: dict = {}
    if cfg.nmax is not None:
        overrides.update(nmax=cfg.nmax, nmax_higher=cfg.nmax, e6_mmax=cfg.nmax)
    if cfg.order_r is not None:
        overrides["rmax"] = cfg.order_r
    if cfg.index_k is not None:
        overrides.update(kmax=cfg.index_k, e6_kmax=cfg.index_k)
    try:
        ids = None if cfg.all else tuple(identities.resolve_id(i) for i in cfg.ids)
        config = identities.RunConfig(ids=ids, **overrides)
    except (KeyError, ValueError) as exc:
        raise UsageError(str(exc.args[0])) from None
    reports = identities.run_all(config)
    if cfg.format == "csv":
        rows = [[r.identity_id, r.status, r.variant or ""] for r in reports]
        _emit(_dump_csv(["id", "status", "variant"], rows), cfg.output_path)
    else:
        _emit(_dump_json([r.to_json() for r in reports]), cfg.output_path)
    return EXIT_OK if identities.all_ok(reports) else EXIT_FAILURE


def cmd_limit(cfg: CliConfig) -> int:
    spec = cfg.family_spec()
    if spec.family not in _CLASSICAL:
        raise UsageError(f"family {_family_label(spec.family)} has no classical counterpart")
    lam = cfg.lambda_value if cfg.lambda_value is not None else Fraction(0)
    target = _CLASSICAL[spec.family]
    classical_spec = SeqFamily(target, spec.order if _PARAM_FLAG[target] else 1, spec.argument)
    degenerate = [v.eval_lambda(lam) for v in seq.generate(spec, cfg.nmax)]
    classical = [v.eval_lambda(lam) for v in seq.generate(classical_spec, cfg.nmax)]
    if cfg.x_value is not None:
        degenerate = [v.eval_x(cfg.x_value) for v in degenerate]
        classical = [v.eval_x(cfg.x_value) for v in classical]
    equal = [a == b for a, b in zip(degenerate, classical)]
    if cfg.format == "csv":
        _require_numeric(degenerate + classical)
        rows = [[n, a.to_text(), b.to_text(), str(e).lower()] for n, (a, b, e) in enumerate(zip(degenerate, classical, equal))]
        _emit(_dump_csv(["n", "degenerate", "classical", "equal"], rows), cfg.output_path)
    else:
        doc = {
            "family": _family_label(spec.family),
            "order": _order_field(spec),
            "counterpart": _family_label(target),
            "lambda": format_rational(lam),
            "rows": [
                {"n": n, "degenerate": a.to_text(), "classical": b.to_text(), "equal": e}
                for n, (a, b, e) in enumerate(zip(degenerate, classical, equal))
            ],
            "all_equal": all(equal),
        }
        if cfg.x_value is not None:
            doc["x"] = format_rational(cfg.x_value)
        _emit(_dump_json(doc), cfg.output_path)
    return EXIT_OK if all(equal) else EXIT_FAILURE


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="daehee",
        description="Exact generating-function tables and identity checks for degenerate Daehee families.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser, nmax_default: int | None) -> None:
        p.add_argument("--nmax", type=_integer, default=nmax_default, help="largest index n")
        p.add_argument("--r", type=_integer, default=None, help="order r (higher families; rmax for check)")
        p.add_argument("--k", type=_integer, default=None, help="index k (multiple family; kmax for check)")
        p.add_argument("--format", choices=("json", "csv"), default="json")
        p.add_argument("--out", type=Path, default=None, help="write here instead of stdout")

    def specializing(p: argparse.ArgumentParser) -> None:
        p.add_argument("--family", type=_family, required=True)
        p.add_argument("--x", type=_rational, default=None, help="specialize x (Norlund: the exponent)")
        p.add_argument("--lambda", dest="lambda_value", type=_rational, default=None, help="specialize lambda")

    gen = sub.add_parser("gen", help="emit a sequence table")
    common(gen, 10)
    specializing(gen)
    gen.add_argument("--series-order", dest="series_order", type=_integer, default=None)

    check = sub.add_parser("check", help="run identity checks")
    common(check, None)
    check.add_argument("--id", action="append", help="identity id (T1..T11, C2', E6); repeatable")
    check.add_argument("--all", action="store_true", help="run every registered check")
    # accepted so the parser can report them as misuse instead of as unknown flags
    check.add_argument("--x", type=_rational, default=None, help=argparse.SUPPRESS)
    check.add_argument("--lambda", dest="lambda_value", type=_rational, default=None, help=argparse.SUPPRESS)

    limit = sub.add_parser("limit", help="compare a degenerate family at lambda=0 with its classical counterpart")
    common(limit, 10)
    specializing(limit)
    return parser


_NEGATIVE_RATIONAL = re.compile(r"-\d+(?:/\d+)?")


def _join_negative_values(argv: Sequence[str]) -> list[str]:
    """Rewrite ``--x -1/2`` as ``--x=-1/2``; argparse would read ``-1/2`` as a flag."""
    out: list[str] = []
    it = iter(argv)
    for tok in it:
        if tok.startswith("--") and "=" not in tok and tok != "--all":
            out.append(tok)
            nxt = next(it, None)
            if nxt is None:
                break
            if _NEGATIVE_RATIONAL.fullmatch(nxt):
                out[-1] = f"{tok}={nxt}"
            else:
                out.append(nxt)
        else:
            out.append(tok)
    return out


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    ns = parser.parse_args(_join_negative_values(sys.argv[1:] if argv is None else argv))
    cfg = CliConfig.from_args(ns)
    if cfg.nmax is not None and cfg.nmax < 0:
        parser.error("--nmax must be nonnegative")
    handler = {"gen": cmd_gen, "check": cmd_check, "limit": cmd_limit}[cfg.command]
    try:
        return handler(cfg)
    except (UsageError, ValueError) as exc:
        print(f"daehee: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
