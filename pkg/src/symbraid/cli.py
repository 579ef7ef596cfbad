"""Command line front end.

Subcommands
-----------
invariants    det / Jones / Khovanov report for a braid closure
obstruct      symmetric-index obstructions for a knot or braid closure
search        enumerate symmetric-union braids hitting a target knot
verify-table  recompute the bundled reference rows and report matches
montesinos    closed-form Khovanov table for K[q/p, 1/n, -q/p]
classify3     alternating-form and linear-dual report for 3-braid data

Exit codes: 0 success, 1 negative verdict (obstructed, mismatch, no hit),
2 usage or parse errors.  Default output is aligned text; --json switches
to one JSON object per line with stable key order.  Options fall back to
SYMBRAID_<NAME> environment variables; explicit flags win.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass

from .algebra import KhPolynomial, LaurentPoly
from .braid import BraidWord, parse_braid
from .config import get_limit
from .jones import breadth, connected_sum, determinant, jones_closure
from .khovanov import kh_ranks_closure
from .rational import MontesinosSpec, kh_formula, twobridge_jones
from .su import (
    fingerprint_of_braid,
    chiral_det1_obstruction,
    load_knot_table,
    load_su_table,
    obstruct_bs3,
    qsum_obstruction,
    search_su_braids,
    verify_table,
)
from .threebraid import (
    AlternatingForm,
    IntString,
    associated_string,
    is_family_B,
    linear_dual,
)

_ENV_PREFIX = "SYMBRAID_"


class CliError(Exception):
    """Usage-level failure; main() maps it to exit code 2."""


# ------------------------------------------------------------- options


def _env(name: str) -> str | None:
    raw = os.environ.get(_ENV_PREFIX + name)
    if raw is None or not raw.strip():
        return None
    return raw.strip()


def _env_int(name: str) -> int | None:
    raw = _env(name)
    if raw is None:
        return None
    try:
        return int(raw)
    except ValueError:
        raise CliError(f"{_ENV_PREFIX}{name} must be an integer, got {raw!r}")


@dataclass(frozen=True)
class CliConfig:
    """Resolved per-invocation options (flag > environment > default)."""

    n_range: tuple[int, ...]
    gamma_max_len: int
    kh_cap: int
    workers: int
    table: str | None
    json_out: bool


def _resolve_config(args: argparse.Namespace) -> CliConfig:
    n = getattr(args, "n", None)
    if n is None:
        n = _env_int("N")
    n_range = (n,) if n is not None else (2, 3, 4)

    gamma_max = getattr(args, "gamma_max", None)
    if gamma_max is None:
        gamma_max = _env_int("GAMMA_MAX")
    if gamma_max is None:
        gamma_max = 6

    kh_cap = getattr(args, "kh_cap", None)
    if kh_cap is None:
        kh_cap = _env_int("KH_CAP")
    if kh_cap is None:
        kh_cap = get_limit("khovanov_cap")

    workers = getattr(args, "workers", None)
    if workers is None:
        workers = _env_int("WORKERS")
    if workers is None:
        workers = get_limit("search_workers")

    table = getattr(args, "table", None)
    if table is None:
        table = _env("TABLE")

    json_out = getattr(args, "json", None)
    if json_out is None:
        raw = _env("JSON")
        json_out = raw is not None and raw.lower() in ("1", "true", "yes", "on")

    return CliConfig(n_range, gamma_max, kh_cap, workers, table, bool(json_out))


# ------------------------------------------------------------- reports


def _json_value(v):
    if isinstance(v, LaurentPoly):
        return [[e, c] for e, c in v.items()]
    if isinstance(v, KhPolynomial):
        return [[i, j, r] for (i, j), r in v.items()]
    if isinstance(v, dict):
        return {k: _json_value(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_json_value(x) for x in v]
    return v


def _text_value(v) -> str:
    if isinstance(v, LaurentPoly):
        return v.to_text()
    if isinstance(v, bool):
        return "yes" if v else "no"
    if v is None:
        return "-"
    if isinstance(v, (list, tuple)):
        return " ".join(_text_value(x) for x in v)
    return str(v)


def emit_report(payload: dict, json_out: bool, stream=None) -> None:
    """One report: a single JSON line, or aligned key/value text.

    KhPolynomial values become an indented i/j/rank block in text mode;
    lists of dicts become one indented line per entry.
    """
    stream = stream or sys.stdout
    if json_out:
        print(json.dumps(_json_value(payload)), file=stream)
        return
    width = max(len(k) for k in payload)
    for key, value in payload.items():
        if isinstance(value, KhPolynomial):
            print(f"{key}:", file=stream)
            for (i, j), r in value.items():
                print(f"  {i:>4} {j:>4} {r:>6}", file=stream)
        elif isinstance(value, list) and value and isinstance(value[0], dict):
            print(f"{key}:", file=stream)
            for row in value:
                cells = "  ".join(f"{k}={_text_value(v)}"
                                  for k, v in row.items())
                print(f"  {cells}", file=stream)
        else:
            print(f"{key:<{width}}  {_text_value(value)}", file=stream)


# ------------------------------------------------------- input parsing


def _parse_word(text: str, what: str = "braid word") -> BraidWord:
    try:
        return parse_braid(text)
    except ValueError as exc:
        raise CliError(f"bad {what}: {exc}")


def _looks_like_word(text: str) -> bool:
    tokens = text.split()
    if not tokens:
        return True
    # int() would accept "6_1" as 61, so insist on plain digit tokens
    return all(t.lstrip("-").isdigit() and t.lstrip("-") != "0"
               for t in tokens)


def _resolve_target_word(text: str, table: str | None) -> tuple[str, BraidWord]:
    """A knot name from the reference table, 'unknot', or a literal word."""
    text = text.strip()
    if text == "unknot":
        return "unknot", BraidWord(1, [])
    if _looks_like_word(text):
        return text or "unknot", _parse_word(text)
    records = load_knot_table(table)
    rec = records.get(text)
    if rec is None:
        raise CliError(f"unknown knot name {text!r}")
    if rec.braid is None:
        raise CliError(f"reference table has no braid word for {text!r}")
    return text, rec.braid


# ------------------------------------------------------------ commands


def cmd_invariants(args: argparse.Namespace, cfg: CliConfig) -> int:
    word = _parse_word(args.braid)
    simplified = word.simplified()
    crossings = len(simplified.letters)
    payload: dict = {
        "command": "invariants",
        "input": word.to_text(),
        "strands": word.n_strands,
        "writhe": word.writhe(),
        "crossings": crossings,
    }
    components = word.closure_components()
    if components != 1:
        payload["components"] = components
        payload["warning"] = (f"closure has {components} components; "
                              "knot invariants skipped")
        emit_report(payload, cfg.json_out)
        return 0
    v = jones_closure(word)
    payload["det"] = determinant(v)
    payload["jones"] = v
    payload["breadth"] = breadth(v)
    if crossings <= cfg.kh_cap:
        kh = kh_ranks_closure(simplified)
        payload["kh_qmax"] = kh.q_max
        payload["kh_qmin"] = kh.q_min
        payload["kh_total_rank"] = kh.total_rank()
        payload["kh"] = kh
    else:
        payload["warning"] = (f"khovanov skipped: {crossings} crossings "
                              f"over cap {cfg.kh_cap}")
    emit_report(payload, cfg.json_out)
    return 0


def cmd_obstruct(args: argparse.Namespace, cfg: CliConfig) -> int:
    name, word = _resolve_target_word(args.target, cfg.table)
    fp = fingerprint_of_braid(word, kh=True, kh_cap=cfg.kh_cap)
    payload: dict = {
        "command": "obstruct",
        "target": name,
        "det": fp.det,
    }
    try:
        bs3 = obstruct_bs3(fp)
    except ValueError as exc:
        raise CliError(f"{exc}; raise --kh-cap to compute them")
    payload["bs3_verdict"] = bs3.verdict
    payload["bs3_reason"] = bs3.reason
    if bs3.comparisons:
        payload["bs3_candidates"] = [
            {"p": p, "q": q, "n": n, "q_max": qm, "match": hit}
            for p, q, n, qm, hit in bs3.comparisons]
    obstructed = bs3.verdict == "obstructed"
    if fp.kh is not None:
        qs = qsum_obstruction(fp)
        payload["qsum"] = qs.total
        payload["qsum_verdict"] = qs.verdict
        if qs.verdict == "none":
            obstructed = True
    else:
        payload["qsum_verdict"] = "unavailable"

    # proven chiral iff the Jones polynomial is not mirror symmetric
    chiral = fp.jones != fp.jones.mirror()
    ch = chiral_det1_obstruction(fp.det, chiral)
    payload["chiral_det1_applies"] = ch.applies
    payload["chiral_det1"] = ch.statement
    if ch.applies:
        obstructed = True
    payload["overall"] = "obstructed" if obstructed else "possible"
    emit_report(payload, cfg.json_out)
    return 1 if obstructed else 0


def cmd_search(args: argparse.Namespace, cfg: CliConfig) -> int:
    text = args.target.strip()
    if _looks_like_word(text) or text == "unknot":
        name, word = _resolve_target_word(text, cfg.table)
        target = fingerprint_of_braid(word, kh=True, kh_cap=cfg.kh_cap)
    else:
        records = load_knot_table(cfg.table)
        rec = records.get(text)
        if rec is None:
            raise CliError(f"unknown knot name {text!r}")
        name, target = text, rec
    hits = search_su_braids(target,
                            n_range=cfg.n_range,
                            gamma_max_len=cfg.gamma_max_len,
                            cf_seed=args.cf_seed,
                            workers=cfg.workers)
    if cfg.json_out:
        payload = {
            "command": "search",
            "target": name,
            "n_range": list(cfg.n_range),
            "gamma_max_len": cfg.gamma_max_len,
            "hits": [{"n": h.n,
                      "gamma": list(h.gamma.letters),
                      "c1": list(h.c1.letters),
                      "c2": list(h.c2.letters)} for h in hits],
        }
        emit_report(payload, True)
    else:
        for h in hits:
            print(f"n={h.n} {h}")
        print(f"{len(hits)} hit(s) for {name} with "
              f"n in {list(cfg.n_range)}, |gamma| <= {cfg.gamma_max_len}")
    return 0 if hits else 1


def cmd_verify_table(args: argparse.Namespace, cfg: CliConfig) -> int:
    table_path = args.knots_csv if args.knots_csv else cfg.table
    records = load_knot_table(table_path)
    rows = load_su_table()
    selector = args.rows
    if selector == "all":
        chosen = list(rows)
    elif selector == "small":
        chosen = [r for r in rows
                  if len(r.su.word.simplified().letters) <= cfg.kh_cap]
    else:
        wanted = [s.strip() for s in selector.split(",") if s.strip()]
        by_name = {r.name: r for r in rows}
        missing = [w for w in wanted if w not in by_name]
        if missing:
            raise CliError(f"names not in the bundled rows: {missing}")
        chosen = [by_name[w] for w in wanted]
    pairs = []
    for row in chosen:
        rec = records.get(row.name)
        if rec is None or rec.braid is None:
            raise CliError(f"no reference braid for {row.name!r}")
        pairs.append((rec, row.su))
    reports = verify_table(pairs, kh=True)
    matches = sum(1 for r in reports if r["match"])
    if cfg.json_out:
        for r in reports:
            emit_report(r, True)
        emit_report({"command": "verify-table", "rows": len(reports),
                     "matches": matches,
                     "all_match": matches == len(reports)}, True)
    else:
        for r in reports:
            flag = "match" if r["match"] else "MISMATCH"
            kh_note = "kh" if r["kh_compared"] else "jones-only"
            print(f"{r['name']:<8} {flag:<8} det {r['det']:<4} {kh_note}")
        print(f"{matches}/{len(reports)} rows match")
    return 0 if matches == len(reports) else 1


def cmd_montesinos(args: argparse.Namespace, cfg: CliConfig) -> int:
    try:
        spec = MontesinosSpec.parse(args.slopes)
    except ValueError as exc:
        raise CliError(f"bad tangle slopes: {exc}")
    tb = spec.two_bridge()
    if tb.is_unknot:
        v = LaurentPoly.one()
    else:
        j = twobridge_jones(tb)
        v = connected_sum(j, j.mirror())
    table = kh_formula(spec, v)
    payload = {
        "command": "montesinos",
        "slopes": str(spec),
        "p": spec.p,
        "q": spec.q,
        "n": spec.n,
        "q_max": table.q_max,
        "q_min": table.q_min,
        "total_rank": table.total_rank(),
        "kh": table,
    }
    emit_report(payload, cfg.json_out)
    return 0


def cmd_classify3(args: argparse.Namespace, cfg: CliConfig) -> int:
    text = args.input.strip()
    payload: dict = {"command": "classify3", "input": text}
    if "," in text:
        try:
            s = IntString.parse(text)
        except ValueError as exc:
            raise CliError(f"bad integer string: {exc}")
    else:
        try:
            word = parse_braid(text, 3)
            form = AlternatingForm.from_braid_word(word)
        except ValueError as exc:
            raise CliError(f"not an alternating-form 3-braid: {exc}")
        payload["t"] = form.t
        payload["x"] = list(form.x)
        payload["y"] = list(form.y)
        s = associated_string(form)
    payload["string"] = str(s)
    payload["dual"] = str(linear_dual(s))
    verdict = is_family_B(s)
    payload["family_b"] = verdict.verdict
    if verdict.witness is not None:
        payload["witness"] = [str(w) for w in verdict.witness]
    emit_report(payload, cfg.json_out)
    return 0 if verdict.verdict in ("yes", "ambiguous") else 1


# ---------------------------------------------------------------- main


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--kh-cap", type=int, default=None, dest="kh_cap",
                        help="max crossings for Khovanov computations")
    common.add_argument("--workers", type=int, default=None,
                        help="worker processes for the search")
    common.add_argument("--table", default=None,
                        help="path to a knots csv overriding the bundled one")
    common.add_argument("--json", action="store_true", default=None,
                        help="machine output, one JSON object per line")

    parser = argparse.ArgumentParser(
        prog="symbraid",
        description="symmetric-union braid toolkit")
    sub = parser.add_subparsers(dest="subcommand", required=True)

    p = sub.add_parser("invariants", parents=[common],
                       help="det / Jones / Khovanov of a braid closure")
    p.add_argument("braid", help="braid word, e.g. '1 1 1'")
    p.set_defaults(func=cmd_invariants)

    p = sub.add_parser("obstruct", parents=[common],
                       help="symmetric-index obstructions")
    p.add_argument("target", help="knot name, 'unknot', or a braid word")
    p.set_defaults(func=cmd_obstruct)

    p = sub.add_parser("search", parents=[common],
                       help="enumerate symmetric-union braids for a target")
    p.add_argument("target", help="knot name, 'unknot', or a braid word")
    p.add_argument("--n", type=int, default=None,
                   help="strand count (default: try 2, 3, 4)")
    p.add_argument("--gamma-max", type=int, default=None, dest="gamma_max",
                   help="max letters in gamma (default 6)")
    p.add_argument("--cf-seed", action="store_true", dest="cf_seed",
                   help="add continued-fraction seeded gamma candidates")
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("verify-table", parents=[common],
                       help="recompute the bundled reference rows")
    p.add_argument("knots_csv", nargs="?", default=None,
                   help="knots csv path (default: bundled)")
    p.add_argument("--rows", default="small",
                   help="'small', 'all', or comma-separated names")
    p.set_defaults(func=cmd_verify_table)

    p = sub.add_parser("montesinos", parents=[common],
                       help="closed-form Khovanov table for K[q/p,1/n,-q/p]")
    p.add_argument("slopes", help="e.g. '1/9,1/2,-1/9'")
    p.set_defaults(func=cmd_montesinos)

    p = sub.add_parser("classify3", parents=[common],
                       help="alternating-form report for 3-braid data")
    p.add_argument("input",
                   help="comma string like '3,2,2' or a 3-braid word")
    p.set_defaults(func=cmd_classify3)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        cfg = _resolve_config(args)
        return args.func(args, cfg)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
