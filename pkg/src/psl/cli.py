"""Command line interface: ``psl <group> <command> [options]``.

Exit status is 0 when every check passes, 1 when any check fails and 2 for
configuration or usage errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .elliptic import CurveModel, analyze
from .errors import ConfigParse, PSLError
from .filtration import basis_csv, basis_levels, dimension, working_field
from .hilbert import image_order_table, pairing_matrix
from .mackey import dims_grid, make_symbol, replay_witness, zero_witness
from .padic import PadicField
from .reports import SessionConfig, chow_rank, run_report


def _config(args) -> SessionConfig:
    return SessionConfig.load(getattr(args, "config", None))


def resolve_field(ref: str, cfg: SessionConfig) -> PadicField:
    """A field name from the config, an inline JSON descriptor or a JSON file."""
    if ref in cfg.fields:
        return cfg.fields[ref]
    try:
        text = Path(ref).read_text() if Path(ref).is_file() else ref
        doc = json.loads(text)
    except (OSError, json.JSONDecodeError) as exc:
        known = ", ".join(cfg.fields)
        raise ConfigParse(f"unknown field {ref!r} (known: {known})") from exc
    try:
        return PadicField.from_json(doc)
    except (PSLError, KeyError, TypeError) as exc:
        raise ConfigParse(f"field {ref!r}: {exc}") from exc


def resolve_curve(ref: str, cfg: SessionConfig) -> CurveModel:
    if ref in cfg.curves:
        return cfg.curves[ref]
    try:
        doc = json.loads(Path(ref).read_text() if Path(ref).is_file() else ref)
        return CurveModel.from_json(doc, cfg.fields)
    except (OSError, json.JSONDecodeError, KeyError, PSLError, ValueError) as exc:
        raise ConfigParse(f"unknown curve {ref!r}: {exc}") from exc


def parse_element(text: str, K: PadicField):
    """'1,0,2' is 1 + 2 pi^2; a bare integer is that integer."""
    try:
        parts = [int(x) for x in text.split(",")]
    except ValueError as exc:
        raise ConfigParse(f"cannot parse element {text!r}") from exc
    return working_field(K)(parts) if len(parts) > 1 else working_field(K)(parts[0])


def _table(rows: list[list], header: list[str], fmt: str) -> str:
    if fmt == "csv":
        return "\n".join(",".join(str(x) for x in r) for r in [header] + rows) + "\n"
    out = ["| " + " | ".join(header) + " |", "|" + "---|" * len(header)]
    out += ["| " + " | ".join(str(x) for x in r) + " |" for r in rows]
    return "\n".join(out) + "\n"


# -- commands ---------------------------------------------------------------------------
def cmd_field_describe(args) -> int:
    K = resolve_field(args.field, _config(args))
    info = {
        "p": K.p, "f": K.f, "e": K.e, "degree": K.degree, "precision": K.N,
        "eisenstein": list(K.eisenstein), "residue_modulus": list(K.residue.modulus),
        "e0": str(K.e0), "mu_p": K.has_integral_e0,
    }
    if K.has_integral_e0:
        info["pe0"] = K.pe0
        info["kstar_mod_p_dimension"] = dimension(K)
        info["basis_levels"] = [str(x) for x in basis_levels(K)]
    print(json.dumps(info, indent=2))
    return 0


def cmd_units_basis(args) -> int:
    K = resolve_field(args.field, _config(args))
    sys.stdout.write(basis_csv(K))
    return 0


def cmd_hilbert_table(args) -> int:
    K = resolve_field(args.field, _config(args))
    tab = image_order_table(K)
    rows = [[c["m"], c["n"], c["order"], c["predicted"], "MATCH" if c["match"] else "FAIL"] for c in tab]
    sys.stdout.write(_table(rows, ["m", "n", "order", "predicted", "flag"], args.format))
    if args.matrix:
        for r in pairing_matrix(K).rows():
            print(" ".join(map(str, r)))
    return 0 if all(c["match"] for c in tab) else 1


def cmd_curve_analyze(args) -> int:
    cfg = _config(args)
    if args.curve:
        E = resolve_curve(args.curve, cfg)
    else:
        if not args.field or not args.a:
            raise ConfigParse("give --curve, or --field with --a a1 a2 a3 a4 a6")
        E = CurveModel(resolve_field(args.field, cfg), tuple(args.a))
    print(json.dumps(analyze(E), indent=2, default=str))
    return 0


def cmd_mackey_dims(args) -> int:
    K = resolve_field(args.field, _config(args))
    grid = dims_grid(K, args.max_level, samples=args.samples, witnesses=args.witnesses, seed=args.seed)
    rows = []
    for c in grid:
        dim = "?" if c.dimension is None else c.dimension
        flag = "PASS" if c.ok else "FAIL"
        if c.dimension is None:
            flag = f"UNCLASSIFIED (lower bound {c.lower_bound})"
        rows.append([c.blocks[0], c.blocks[1], dim, c.rule, c.evidence, flag])
    sys.stdout.write(_table(rows, ["m", "n", "dim", "rule", "evidence", "flag"], args.format))
    return 0 if all(c.ok for c in grid) else 1


def cmd_mackey_witness(args) -> int:
    K = resolve_field(args.field, _config(args))
    W = working_field(K)
    a, b = parse_element(args.level0, K), parse_element(args.entry, K)
    t = make_symbol(W, a, b)
    trace = zero_witness(t)
    print(trace.render())
    final = replay_witness(trace)
    print("replay: " + ("empty sum (verified)" if not final else f"{len(final)} term(s) left"))
    return 0 if not final else 1


def cmd_chow_rank(args) -> int:
    cfg = _config(args)
    E1, E2 = resolve_curve(args.curve1, cfg), resolve_curve(args.curve2, cfg)
    rep = chow_rank(E1, E2, args.n, torsion_asserted=not args.no_torsion, seed=args.seed)
    out = {
        "total": rep.total, "expected": rep.expected, "match": rep.match,
        "breakdown": rep.breakdown, "labels": rep.labels, "interpretation": rep.interpretation,
        "blocks": rep.blocks,
    }
    print(json.dumps(out, indent=2, default=str))
    return 0 if rep.match else 1


def cmd_report(args) -> int:
    cfg = _config(args)
    fmt = args.format or cfg.format
    report = run_report(cfg, seed=args.seed, timing=args.timing)
    text = report.render(fmt)
    if args.output:
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)
    return 1 if report.failed else 0


# -- parser -------------------------------------------------------------------------------
def _leaf(sub, name: str, **kw) -> argparse.ArgumentParser:
    p = sub.add_parser(name, **kw)
    # accepted after the command too; SUPPRESS keeps a global --config intact
    p.add_argument("--config", default=argparse.SUPPRESS, help="session config JSON")
    return p


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="psl", description="p-adic symbols, Hilbert pairings and Mackey products")
    parser.add_argument("--config", help="session config JSON (default: bundled config)")
    sub = parser.add_subparsers(dest="group", required=True)

    def group(name: str, help: str):
        g = sub.add_parser(name, help=help)
        return g.add_subparsers(dest="command", required=True)

    fg = group("field", "field descriptors")
    p = _leaf(fg, "describe")
    p.add_argument("--field", required=True)
    p.set_defaults(func=cmd_field_describe)

    ug = group("units", "unit filtration")
    p = _leaf(ug, "basis")
    p.add_argument("--field", required=True)
    p.set_defaults(func=cmd_units_basis)

    hg = group("hilbert", "Hilbert pairing")
    p = _leaf(hg, "table")
    p.add_argument("--field", required=True)
    p.add_argument("--format", choices=["md", "csv"], default="md")
    p.add_argument("--matrix", action="store_true", help="also print the pairing matrix")
    p.set_defaults(func=cmd_hilbert_table)

    cg = group("curve", "elliptic curves")
    p = _leaf(cg, "analyze")
    p.add_argument("--curve")
    p.add_argument("--field")
    p.add_argument("--a", nargs=5, type=int, metavar="A")
    p.set_defaults(func=cmd_curve_analyze)

    mg = group("mackey", "Mackey products")
    p = _leaf(mg, "dims")
    p.add_argument("--field", required=True)
    p.add_argument("--max-level", type=int, default=None)
    p.add_argument("--samples", type=int, default=200)
    p.add_argument("--witnesses", type=int, default=5)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--format", choices=["md", "csv"], default="md")
    p.set_defaults(func=cmd_mackey_dims)
    p = _leaf(mg, "witness")
    p.add_argument("--field", required=True)
    p.add_argument("--level0", required=True, help="first entry as pi-adic digits, e.g. 1,1 for 1+pi")
    p.add_argument("--entry", required=True, help="second entry as pi-adic digits")
    p.set_defaults(func=cmd_mackey_witness)

    chg = group("chow", "Chow group ranks")
    p = _leaf(chg, "rank")
    p.add_argument("--curve1", required=True)
    p.add_argument("--curve2", required=True)
    p.add_argument("--n", type=int, default=1)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--no-torsion", action="store_true", help="do not assert E[p^n] in E(K)")
    p.set_defaults(func=cmd_chow_rank)

    p = _leaf(sub, "report", help="run the verification suites")
    p.add_argument("--format", choices=["md", "csv", "json"], default=None)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--output")
    p.add_argument("--timing", action="store_true", help="print suite timings to stderr")
    p.set_defaults(func=cmd_report)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ConfigParse as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except PSLError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
