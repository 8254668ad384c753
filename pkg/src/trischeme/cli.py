"""Command-line interface: ``trischeme <command> --family ... [options]``.

Exit codes: 0 success, 1 a check failed, 2 usage error, 3 unknown family,
4 constraint violation, 5 size cap exceeded, 6 file error.  Errors go to
stderr as a single JSON line.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from typing import Any, Sequence

import numpy as np

from . import closedform as cf
from .actions import (
    Action,
    ActionSpec,
    ConstraintError,
    Family,
    GroupFileError,
    load_sporadic,
)
from .scheme import (
    CapExceeded,
    NotTwoTransitive,
    TripleScheme,
    build_scheme,
    build_scheme_from_stabilizer,
    intersection_tensor,
    is_commutative,
    label_cube,
    same_partition,
    scheme_to_dict,
    triple_orbit_oracle,
    valencies,
    verify_axioms,
)
from .ternalg import verify_structure_constants

SCHEMA = "trischeme/1"

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2
EXIT_UNKNOWN_FAMILY = 3
EXIT_CONSTRAINT = 4
EXIT_CAP = 5
EXIT_FILE = 6


class CliError(Exception):
    def __init__(self, code: int, kind: str, message: str):
        super().__init__(message)
        self.code, self.kind = code, kind


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        raise CliError(EXIT_USAGE, "usage", message)


@dataclass
class Output:
    payload: dict[str, Any]
    header: list[str] = field(default_factory=list)
    rows: list[list[Any]] = field(default_factory=list)
    ok: bool = True


# ---------------------------------------------------------------------------
# argument handling


def _family_args(p: argparse.ArgumentParser) -> None:
    g = p.add_argument_group("action")
    g.add_argument("--family", required=True, help=", ".join(f.value for f in Family))
    g.add_argument("--k", type=int)
    g.add_argument("--n", type=int)
    g.add_argument("--p", type=int)
    g.add_argument("--alpha", type=int, default=1)
    g.add_argument("--frak-a", type=int, help="Galois subgroup exponent (AGL_H); default alpha")
    g.add_argument("--q", type=int)
    g.add_argument("--epsilon", choices=["+", "-"])
    g.add_argument("--path", help="group file (family 'file')")
    g.add_argument("--name", help="sporadic group name (family 'sporadic')")
    g.add_argument("--route", choices=["group", "stabilizer"], default="group")


def _common_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--format", choices=["json", "tsv", "text"], default="text")
    p.add_argument("--data-dir", help="sporadic data directory (or env TRISCHEME_DATA)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-points", type=int, default=300, help="cap for tensor computation")
    p.add_argument("--exhaustive-cap", type=int, default=40, help="cap for exhaustive axiom checks")
    p.add_argument("--hypermatrix-cap", type=int, default=64, help="cap for dense hypermatrix checks")
    p.add_argument("--oracle-cap", type=int, default=30, help="cap for the brute-force orbit oracle")
    p.add_argument("--samples", type=int, default=200, help="sample count for non-exhaustive checks")


def make_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="trischeme", description="Association schemes on triples from two-transitive groups.")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)
    helps = {
        "build": "build a scheme and dump it",
        "params": "relation count and valencies",
        "tensor": "intersection numbers",
        "verify": "axiom, structure-constant and oracle checks",
        "compare": "compare with closed-form predictions",
    }
    for name, h in helps.items():
        p = sub.add_parser(name, help=h)
        _family_args(p)
        _common_args(p)
    p = sub.add_parser("table", help="reproduce a sporadic table (1-5) next to embedded values")
    p.add_argument("--name", type=int, required=True, choices=range(1, 6), metavar="{1..5}")
    _common_args(p)
    return ap


def spec_from_args(args: argparse.Namespace) -> ActionSpec:
    try:
        fam = Family(args.family)
    except ValueError:
        raise CliError(EXIT_UNKNOWN_FAMILY, "unknown-family", f"unknown family {args.family!r}") from None
    return ActionSpec(
        family=fam, k=args.k, n=args.n, p=args.p, alpha=args.alpha, frak_a=args.frak_a,
        q=args.q, epsilon=args.epsilon, path=args.path, name=args.name, route=args.route,
        data_dir=args.data_dir,
    )


def _build(spec: ActionSpec) -> tuple[Action, TripleScheme]:
    action = spec.build()
    if action.group is not None:
        return action, build_scheme(action.group)
    return action, build_scheme_from_stabilizer(action.stabilizer)


def prediction(spec: ActionSpec) -> tuple[cf.PredictedScheme, cf.PredictedTensor | None] | None:
    """Closed-form prediction for a family, or ``None`` when none applies."""
    fam = spec.family
    if fam in (Family.SYM, Family.ALT):
        ps = cf.predict_sym_alt(spec.n, fam is Family.ALT)
        return ps, cf.predict_single_relation_tensor(spec.n, "R4") if ps.size == 5 else None
    if fam is Family.AGL:
        args = (spec.k, spec.p, spec.alpha, spec.frak_a)
        return cf.predict_agl_h(*args), cf.predict_agl_h_tensor(*args)
    if fam in (Family.PGL, Family.PSL, Family.PGAMMAL, Family.PSIGMAL):
        odd_line = spec.k == 2 and spec.n % 2 == 1
        flavor = {Family.PGL: "PGL", Family.PSL: "PSL", Family.PGAMMAL: "PGammaL", Family.PSIGMAL: "PSigmaL"}[fam]
        if fam is Family.PSIGMAL and odd_line:
            return None
        ps = cf.predict_projective(spec.k, spec.n, flavor)
        if fam is Family.PSL and odd_line:
            return ps, cf.predict_psl2_tensor(spec.n)
        return ps, cf.predict_pgl_tensor(spec.k, spec.n)
    if fam is Family.PGU or (fam is Family.PSU and (spec.q + 1) % 3):
        return cf.predict_pgu3(spec.q), None
    if fam is Family.PSU:
        return cf.predict_psu3(spec.q), None
    if fam is Family.SP:
        return cf.predict_sp(spec.k, spec.epsilon), None
    if fam is Family.SUZUKI:
        return cf.predict_suzuki(spec.q), None
    if fam is Family.REE:
        return cf.predict_ree(spec.q), None
    if fam is Family.SPORADIC:
        row = cf.sporadic_row(spec.name)
        return row.scheme, row.tensor
    return None


# ---------------------------------------------------------------------------
# commands


def _header(action: Action, s: TripleScheme) -> dict[str, Any]:
    return {"action": action.name, "points": s.degree, "size": s.size}


def _valency_rows(s: TripleScheme) -> list[list[Any]]:
    rows = []
    for i, (n1, n2, n3) in enumerate(valencies(s)):
        rep = s.representatives[i]
        rows.append([i, "-" if n1 is None else n1, "-" if n2 is None else n2, n3, " ".join(map(str, rep))])
    return rows


def cmd_build(args, spec) -> Output:
    action, s = _build(spec)
    payload = _header(action, s) | {"scheme": scheme_to_dict(s)}
    return Output(payload, ["label", "n1", "n2", "n3", "representative"], _valency_rows(s))


def cmd_params(args, spec) -> Output:
    action, s = _build(spec)
    vals = sorted(s.third_valency[i] for i in s.nontrivial)
    payload = _header(action, s) | {
        "third_valencies": vals,
        "valencies": [list(v) for v in valencies(s)],
    }
    return Output(payload, ["label", "n1", "n2", "n3", "representative"], _valency_rows(s))


def cmd_tensor(args, spec) -> Output:
    action, s = _build(spec)
    if not s.full:
        raise ConstraintError("the intersection tensor needs the full group (use --route group)")
    t = intersection_tensor(s, max_points=args.max_points)
    payload = _header(action, s) | {
        "commutative": is_commutative(t),
        "tensor": t.values.tolist(),
    }
    rows = [[i, j, k, l, v] for (i, j, k, l), v in t.nonzero()]
    return Output(payload, ["i", "j", "k", "l", "value"], rows)


def cmd_verify(args, spec) -> Output:
    action, s = _build(spec)
    checks: dict[str, Any] = {}
    ok = True

    def record(name: str, passed: bool | None, detail: str = "") -> None:
        nonlocal ok
        checks[name] = {"status": "skipped" if passed is None else ("pass" if passed else "fail")}
        if detail:
            checks[name]["detail"] = detail
        ok = ok and passed is not False

    if not s.full:
        record("stabilizer_closed", action.stabilizer.is_closed())
        record("valency_sum", sum(s.third_valency[i] for i in s.nontrivial) == s.degree - 2)
    else:
        exhaustive = s.degree <= args.exhaustive_cap
        rep = verify_axioms(s, action.group, exhaustive=exhaustive, cap=args.exhaustive_cap,
                            samples=args.samples, seed=args.seed)
        for name, passed in rep.checks.items():
            record(name, passed, rep.details.get(name, ""))
        checks["axiom_mode"] = {"status": "exhaustive" if exhaustive else f"sampled seed={args.seed}"}
        if s.degree <= args.hypermatrix_cap:
            t = intersection_tensor(s, max_points=max(args.max_points, s.degree))
            sc = verify_structure_constants(s, t, cap=args.hypermatrix_cap)
            record("structure_constants", sc.passed,
                   f"violations at {sc.failures[:3]}" if sc.failures else "")
        else:
            record("structure_constants", None, f"{s.degree} points above cap {args.hypermatrix_cap}")
        if s.degree <= args.oracle_cap:
            same = same_partition(label_cube(s, cap=s.degree), triple_orbit_oracle(action.group, cap=args.oracle_cap))
            record("orbit_oracle", same)
        else:
            record("orbit_oracle", None, f"{s.degree} points above cap {args.oracle_cap}")
    payload = _header(action, s) | {"seed": args.seed, "passed": ok, "checks": checks}
    rows = [[name, c["status"], c.get("detail", "")] for name, c in checks.items()]
    return Output(payload, ["check", "status", "detail"], rows, ok)


def cmd_compare(args, spec) -> Output:
    pred = prediction(spec)
    if pred is None:
        raise ConstraintError(f"no closed-form prediction for family {spec.family.value}")
    ps, pt = pred
    action, s = _build(spec)
    t = None
    if pt is not None and s.full:
        t = intersection_tensor(s, max_points=args.max_points)
    anchors = cf.anchor_labels(s, action, pt) if (pt is not None and s.full) else {}
    rep = cf.match_predicted(s, t, ps, pt if t is not None else None, anchors)
    payload = _header(action, s) | {
        "passed": rep.passed,
        "predicted": {"size": ps.size, "third_valencies": list(ps.valencies)},
        "computed": {"size": s.size, "third_valencies": sorted(s.third_valency[i] for i in s.nontrivial)},
        "tensor_checked": rep.tensor_checked,
        "mapping": rep.mapping,
        "entries_compared": rep.entries_compared,
        "discrepancy": rep.discrepancy,
    }
    rows = [
        ["size", ps.size, s.size],
        ["third_valencies", ",".join(map(str, ps.valencies)),
         ",".join(map(str, payload["computed"]["third_valencies"]))],
        ["tensor", "checked" if rep.tensor_checked else "-",
         ("match" if rep.tensor_ok else "mismatch") if rep.tensor_checked else "-"],
    ]
    rows += [[f"label {nm}", nm, lab] for nm, lab in rep.mapping.items()]
    return Output(payload, ["quantity", "predicted", "computed"], rows, rep.passed)


def _sporadic_scheme(name: str, data_dir: str | None) -> TripleScheme:
    return build_scheme(load_sporadic(name, data_dir).group)


def cmd_table(args) -> Output:
    number = args.name
    ok = True
    if number == 1:
        rows, out_rows = [], []
        for row in cf.table_rows(1):
            s = _sporadic_scheme(row.name, args.data_dir)
            vals = sorted(s.third_valency[i] for i in s.nontrivial)
            same = s.size == row.scheme.size and vals == list(row.scheme.valencies)
            ok &= same
            rows.append({
                "group": row.name, "computed_size": s.size, "embedded_size": row.scheme.size,
                "computed_valencies": vals, "embedded_valencies": list(row.scheme.valencies), "match": same,
            })
            out_rows.append([row.name, s.size, row.scheme.size, ",".join(map(str, vals)),
                             ",".join(map(str, row.scheme.valencies)), "yes" if same else "no"])
        payload = {"table": 1, "passed": ok, "rows": rows}
        header = ["group", "computed_size", "embedded_size", "computed_valencies", "embedded_valencies", "match"]
        return Output(payload, header, out_rows, ok)

    (row,) = cf.table_rows(number)
    s = _sporadic_scheme(row.name, args.data_dir)
    t = intersection_tensor(s, max_points=args.max_points)
    rep = cf.match_predicted(s, t, row.scheme, row.tensor)
    names = row.tensor.all_names
    label_of = {nm: i for i, nm in enumerate(cf.TRIVIAL_NAMES)} | rep.mapping
    entries = []
    for key in _scope_keys(names):
        emb = row.tensor.value(*key)
        comp = int(t.values[tuple(label_of[nm] for nm in key)])
        if emb or comp:
            entries.append((key, comp, emb))
    ok = rep.passed
    out_rows = [[_table_key(k), c, e, "yes" if c == e else "no"] for k, c, e in entries]
    payload = {
        "table": number, "group": row.name, "passed": ok, "mapping": rep.mapping,
        "entries": [{"entry": _table_key(k), "computed": c, "embedded": e} for k, c, e in entries],
    }
    return Output(payload, ["entry", "computed", "embedded", "match"], out_rows, ok)


def _scope_keys(names: Sequence[str]):
    for i in names:
        for j in names:
            for k in names:
                if not cf.in_scope((i, j, k, "")):
                    continue
                for l in names:
                    yield (i, j, k, l)


def _table_key(key: Sequence[str]) -> str:
    digits = [nm[1:] for nm in key]
    return f"p_{digits[0]}{digits[1]}{digits[2]}^{digits[3]}"


# ---------------------------------------------------------------------------
# rendering and entry point


def render(out: Output, fmt: str, command: str) -> str:
    if fmt == "json":
        doc = {"schema": SCHEMA, "command": command} | out.payload
        return json.dumps(doc, indent=2, default=_json_default) + "\n"
    lines = []
    if fmt == "tsv":
        lines.append("\t".join(out.header))
        lines += ["\t".join(str(c) for c in r) for r in out.rows]
        return "\n".join(lines) + "\n"
    for key, val in out.payload.items():
        if isinstance(val, (str, int, bool)) or val is None:
            lines.append(f"{key}: {val}")
    if out.rows:
        table = [out.header] + [[str(c) for c in r] for r in out.rows]
        widths = [max(len(r[i]) for r in table) for i in range(len(out.header))]
        lines += ["  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip() for r in table]
    return "\n".join(lines) + "\n"


def _json_default(obj):
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, np.bool_):
        return bool(obj)
    raise TypeError(f"not serializable: {type(obj).__name__}")


COMMANDS = {
    "build": cmd_build,
    "params": cmd_params,
    "tensor": cmd_tensor,
    "verify": cmd_verify,
    "compare": cmd_compare,
}


def run(argv: Sequence[str] | None = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        args = make_parser().parse_args(argv)
        if args.command == "table":
            out = cmd_table(args)
        else:
            out = COMMANDS[args.command](args, spec_from_args(args))
        stdout.write(render(out, args.format, args.command))
        return EXIT_OK if out.ok else EXIT_CHECK_FAILED
    except CliError as e:
        return _fail(stderr, e.code, e.kind, str(e))
    except CapExceeded as e:
        return _fail(stderr, EXIT_CAP, "cap", str(e))
    except (GroupFileError, OSError) as e:
        return _fail(stderr, EXIT_FILE, "file", str(e))
    except (ConstraintError, NotTwoTransitive, KeyError) as e:
        msg = e.args[0] if isinstance(e, KeyError) and e.args else str(e)
        return _fail(stderr, EXIT_CONSTRAINT, "constraint", str(msg))


def _fail(stderr, code: int, kind: str, message: str) -> int:
    stderr.write(json.dumps({"error": kind, "exit": code, "message": message}) + "\n")
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
