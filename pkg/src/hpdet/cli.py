"""hpdet command line.

    hpdet classify 4 4 2 8
    hpdet sweep --m 2:4 --n 2:4 --filter cy --format md
    hpdet degree 5 7 3 --side Y
    hpdet verify rank-locus --m 2 --n 2 --c 4 --p 7
    hpdet sod ledger 5 7 3

Positional parameters are always in the order m n r c; the long flags
--m --n --r --c may be used instead. Exit codes: 0 ok, 1 a verification
failed, 2 invalid parameters, 3 enumeration budget exceeded.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass, field
from typing import Optional

from . import __version__
from .classify import FILTERS, SectionReport, classify, residual_counts, sweep
from .ffverify import (
    HARD_BUDGET,
    BudgetExceededError,
    check_duality_DL,
    rank_locus_report,
    smoothness_check,
    springer_sample,
)
from .invariants import (
    HPDParams,
    InvalidParamsError,
    canonical_class,
    curve_genus,
    degree_section,
    euler_char_top,
    euler_pairing,
)
from .sod import (
    GramMatrix,
    MutationError,
    gram_matrix,
    hh_additivity_check,
    hpd_section_ledger,
    lefschetz_ledger,
    mutate,
)

SCHEMA_VERSION = 1
EXIT_OK, EXIT_FAIL, EXIT_INVALID, EXIT_BUDGET = 0, 1, 2, 3
DEFAULT_BUDGET = 10**7
DEFAULT_PRIMES = (3, 5, 7, 11)


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    params: dict = field(default_factory=dict)
    primes: tuple = DEFAULT_PRIMES
    seed: int = 0
    trials: int = 20
    format: str = "json"
    threads: Optional[int] = None
    budget: int = DEFAULT_BUDGET

    def __post_init__(self):
        if self.format not in ("json", "csv", "md"):
            raise UsageError(f"unknown format {self.format!r}")
        if not 0 < self.budget <= HARD_BUDGET:
            raise UsageError(f"budget must lie in [1, {HARD_BUDGET}]")


# --- rendering ---------------------------------------------------------------


def report_to_json_dict(rep: SectionReport) -> dict:
    d = {"schema_version": SCHEMA_VERSION}
    d.update(rep.to_dict())
    d["cy"] = rep.cy
    return d


def report_from_json_dict(d: dict) -> SectionReport:
    d = dict(d)
    d.pop("cy", None)
    return SectionReport.from_dict(d)


def _flatten(d: dict, prefix: str = "") -> dict:
    out = {}
    for k, v in d.items():
        key = f"{prefix}{k}"
        if isinstance(v, dict):
            out.update(_flatten(v, key + "_"))
        elif isinstance(v, list):
            out[key] = json.dumps(v)
        else:
            out[key] = "" if v is None else v
    return out


def render_csv(rows: list, header: Optional[list] = None) -> str:
    flat = [_flatten(r) for r in rows]
    if header is None:
        header = []
        for r in flat:
            for k in r:
                if k not in header:
                    header.append(k)
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=header, lineterminator="\r\n", extrasaction="ignore")
    w.writeheader()
    for r in flat:
        w.writerow(r)
    return buf.getvalue()


SECTION_CSV_HEADER = [
    "m", "n", "r", "c", "dim_xl", "dim_yl", "canonical_x_h", "canonical_x_p",
    "canonical_y_h", "canonical_y_p", "functor_direction", "complement_blocks",
    "complement_count", "cy", "rational_x", "rational_y",
]


def _functor_text(direction: str) -> str:
    return {
        "Y_to_X": "D(Y_L) -> D(X_L)",
        "equivalence": "equivalence",
        "X_to_Y": "D(X_L) -> D(Y_L)",
    }[direction]


def _side_text(rep: SectionReport, side: str) -> str:
    x = side == "X"
    if rep.empty_x if x else rep.empty_y:
        return "empty"
    bits = []
    if rep.cy_x:
        bits.append("CY")
    if rep.rational_x if x else rep.rational_y:
        bits.append("rational")
    if rep.fano_candidate_x if x else rep.fano_candidate_y:
        unverified = rep.fano_precondition_unverified_x if x else rep.fano_precondition_unverified_y
        bits.append("Fano*" if unverified else "Fano")
    if rep.weakly_fano_visitor_x if x else rep.weakly_fano_visitor_y:
        bits.append("Fano visitor")
    elif rep.segre is not None and (rep.segre.fano_visitor_X if x else rep.segre.fano_visitor_Y):
        bits.append("Fano visitor")
    if (rep.nef_canonical_x if x else rep.nef_canonical_y) and not rep.cy_x:
        bits.append("nef K")
    return ", ".join(bits) or "-"


def render_sections_md(reports: list) -> str:
    head = "| m | n | r | c | dim X_L | dim Y_L | HPD functor | complement | X_L | Y_L |"
    lines = [head, "|" + "---|" * 10]
    for rep in reports:
        comp = "-" if rep.complement_side is None else f"{rep.complement_blocks} x D(G) on {rep.complement_side}_L"
        lines.append(
            f"| {rep.m} | {rep.n} | {rep.r} | {rep.c} | {rep.dim_xl} | {rep.dim_yl} | "
            f"{_functor_text(rep.functor_direction)} | {comp} | {_side_text(rep, 'X')} | {_side_text(rep, 'Y')} |"
        )
    if any(rep.fano_precondition_unverified_x or rep.fano_precondition_unverified_y for rep in reports):
        lines.append("")
        lines.append("Fano*: needs the rank r-1 section to be empty, not checked")
    return "\n".join(lines) + "\n"


def render_sections(reports: list, fmt: str, single: bool) -> str:
    if fmt == "json":
        body = [report_to_json_dict(r) for r in reports]
        return json.dumps(body[0] if single else body) + "\n"
    if fmt == "csv":
        return render_csv([report_to_json_dict(r) for r in reports], SECTION_CSV_HEADER)
    return render_sections_md(reports)


def render_generic(payload: dict, fmt: str, rows: Optional[list] = None, text: Optional[str] = None) -> str:
    payload = {"schema_version": SCHEMA_VERSION, **payload}
    if fmt == "json":
        return json.dumps(payload) + "\n"
    if fmt == "csv":
        return render_csv(rows if rows is not None else [payload])
    if text is not None:
        return text if text.endswith("\n") else text + "\n"
    flat = _flatten(payload)
    lines = ["| key | value |", "|---|---|"] + [f"| {k} | {v} |" for k, v in flat.items()]
    return "\n".join(lines) + "\n"


# --- argument handling -------------------------------------------------------


def _parse_range(text: str) -> tuple:
    text = str(text)
    if ":" in text:
        lo, hi = text.split(":", 1)
        return int(lo), int(hi)
    if "," in text:
        return tuple(int(x) for x in text.split(","))
    v = int(text)
    return v, v


def _parse_primes(text) -> tuple:
    if isinstance(text, (tuple, list)):
        return tuple(int(x) for x in text)
    return tuple(int(x) for x in str(text).split(",") if x.strip())


def _parse_twists(text: str) -> list:
    out = []
    for chunk in text.split(";"):
        chunk = chunk.strip()
        if chunk:
            a, b = chunk.split(",")
            out.append((int(a), int(b)))
    return out


def read_config(path: str) -> dict:
    conf = {}
    with open(path) as fh:
        for line in fh:
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise UsageError(f"bad config line {line!r}")
            k, v = line.split("=", 1)
            conf[k.strip().replace("-", "_")] = v.strip()
    return conf


def _add_common(p: argparse.ArgumentParser):
    p.add_argument("--format", choices=["json", "csv", "md"], default=None)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--primes", default=None, help="comma separated, e.g. 3,5,7")
    p.add_argument("--budget", type=int, default=None)
    p.add_argument("--config", default=None, help="file of key=value lines; flags win")


def _add_params(p: argparse.ArgumentParser, names=("m", "n", "r", "c")):
    for name in names:
        p.add_argument(f"pos_{name}", nargs="?", type=int, default=None, metavar=name)
    for name in names:
        p.add_argument(f"--{name}", dest=f"flag_{name}", type=int, default=None)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hpdet", description="HPD bookkeeping for determinantal varieties")
    parser.add_argument("--version", action="version", version=f"hpdet {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", help="classify one (m, n, r, c)")
    _add_params(p)
    p.add_argument("--with-degrees", action="store_true", default=None)
    _add_common(p)

    p = sub.add_parser("sweep", help="classify a box of parameters")
    for name in ("m", "n", "r", "c"):
        p.add_argument(f"--{name}", dest=f"range_{name}", default=None, help="lo:hi")
    p.add_argument("--filter", choices=sorted(FILTERS), default=None)
    p.add_argument("--with-degrees", action="store_true", default=None)
    _add_common(p)

    p = sub.add_parser("degree", help="degree of X_L or Y_L")
    _add_params(p)
    p.add_argument("--side", choices=["X", "Y"], default=None)
    _add_common(p)

    p = sub.add_parser("invariants", help="numerical invariants of X_L or Y_L")
    _add_params(p)
    p.add_argument("--side", choices=["X", "Y"], default=None)
    _add_common(p)

    p = sub.add_parser("residual", help="exceptional counts for a determinantal hypersurface")
    p.add_argument("pos_d", nargs="?", type=int, default=None, metavar="d")
    p.add_argument("pos_k", nargs="?", type=int, default=None, metavar="k")
    p.add_argument("--d", dest="flag_d", type=int, default=None)
    p.add_argument("--k", dest="flag_k", type=int, default=None)
    _add_common(p)

    p = sub.add_parser("verify", help="finite-field experiments")
    p.add_argument("sub", choices=["rank-locus", "duality", "springer", "smoothness"])
    _add_params(p)
    p.add_argument("--p", dest="single_p", type=int, default=None)
    p.add_argument("--side", choices=["X", "Y"], default=None)
    p.add_argument("--trials", type=int, default=None)
    p.add_argument("--seeds", type=int, default=None, help="number of seeds (duality)")
    _add_common(p)

    p = sub.add_parser("sod", help="ledgers, Gram matrices, mutations")
    p.add_argument("sub", choices=["ledger", "gram", "mutate", "additivity"])
    _add_params(p)
    p.add_argument("--side", choices=["X", "Y"], default=None)
    p.add_argument("--twists", default=None, help="a,b;a,b;... in (H, P) coordinates")
    p.add_argument("--index", type=int, default=None)
    p.add_argument("--direction", choices=["left", "right"], default=None)
    _add_common(p)
    return parser


def _merged(args, conf: dict, name: str, default=None, cast=None):
    """Flag beats positional beats config file beats default."""
    for attr in (f"flag_{name}", f"pos_{name}", f"range_{name}", name):
        val = getattr(args, attr, None)
        if val is not None:
            return val
    if name in conf:
        val = conf[name]
        return cast(val) if cast else val
    return default


def _need(value, name):
    if value is None:
        raise UsageError(f"missing parameter {name}")
    return value


def _run_config(args, conf) -> RunConfig:
    primes = _merged(args, conf, "primes", None)
    single = getattr(args, "single_p", None)
    if single is None and "p" in conf:
        single = int(conf["p"])
    if single is not None:
        primes = (single,)
    primes = _parse_primes(primes) if primes is not None else DEFAULT_PRIMES
    return RunConfig(
        command=args.command,
        primes=primes,
        seed=_merged(args, conf, "seed", 0, int),
        trials=_merged(args, conf, "trials", 20, int),
        format=_merged(args, conf, "format", "json"),
        budget=_merged(args, conf, "budget", DEFAULT_BUDGET, int),
    )


# --- commands ----------------------------------------------------------------


def _params4(args, conf, need_c=True):
    m = _need(_merged(args, conf, "m", None, int), "m")
    n = _need(_merged(args, conf, "n", None, int), "n")
    r = _need(_merged(args, conf, "r", None, int), "r")
    c = _merged(args, conf, "c", None, int)
    if need_c:
        _need(c, "c")
    return m, n, r, c


def cmd_classify(args, conf, cfg):
    m, n, r, c = _params4(args, conf)
    degrees = bool(_merged(args, conf, "with_degrees", False, lambda s: s.lower() in ("1", "true", "yes")))
    rep = classify(m, n, r, c, with_degrees=degrees)
    return render_sections([rep], cfg.format, single=True), EXIT_OK


def cmd_sweep(args, conf, cfg):
    ranges = {}
    for name in ("m", "n", "r", "c"):
        val = _merged(args, conf, name, None)
        ranges[name] = None if val is None else _parse_range(val)
    m_range = _need(ranges["m"], "m")
    n_range = ranges["n"] or m_range
    flt = _merged(args, conf, "filter", "all")
    degrees = bool(_merged(args, conf, "with_degrees", False, lambda s: s.lower() in ("1", "true", "yes")))
    reps = sweep(m_range, n_range, ranges["r"], ranges["c"], filter=flt, with_degrees=degrees)
    return render_sections(reps, cfg.format, single=False), EXIT_OK


def _side(args, conf, default="X"):
    return _merged(args, conf, "side", default)


def cmd_degree(args, conf, cfg):
    m, n, r, c = _params4(args, conf, need_c=False)
    side = _side(args, conf)
    if c is None:
        c = 0 if side == "X" else m * n
    params = HPDParams(m, n, r, c, side)
    deg = degree_section(params)
    payload = {"m": m, "n": n, "r": r, "c": c, "side": side, "degree": deg}
    return render_generic(payload, cfg.format, text=f"deg = {deg}"), EXIT_OK


def cmd_invariants(args, conf, cfg):
    m, n, r, c = _params4(args, conf)
    side = _side(args, conf)
    params = HPDParams(m, n, r, c, side)
    dim = params.dim_section
    if dim < 0:
        raise InvalidParamsError(f"the {side} section is empty (expected dimension {dim})")
    K = canonical_class(params)
    payload = {
        "m": m, "n": n, "r": r, "c": c, "side": side,
        "dim": dim,
        "degree": degree_section(params),
        "canonical": K.to_dict(),
        "chi_O": euler_pairing(params, 0, 0, 0, 0),
        "chi_top": euler_char_top(params),
        "genus": curve_genus(params) if dim == 1 else None,
    }
    return render_generic(payload, cfg.format), EXIT_OK


def cmd_residual(args, conf, cfg):
    d = _need(_merged(args, conf, "d", None, int), "d")
    k = _need(_merged(args, conf, "k", None, int), "k")
    rep = residual_counts(d, k)
    return render_generic(rep.to_dict(), cfg.format), EXIT_OK


def cmd_verify(args, conf, cfg):
    sub = args.sub
    failures = []
    if sub == "duality":
        m = _need(_merged(args, conf, "m", None, int), "m")
        n = _need(_merged(args, conf, "n", None, int), "n")
        seeds = _merged(args, conf, "seeds", 1, int)
        runs = []
        for p in cfg.primes:
            for s in range(cfg.seed, cfg.seed + seeds):
                rep = check_duality_DL(m, n, p, s)
                runs.append({"p": p, "seed": s, "agree": rep.agree, "degree_check": rep.degree_check,
                             "degenerate": rep.degenerate, "locus_size": rep.locus_size, "points": rep.points})
                if not rep.passed:
                    failures.append(f"p={p} seed={s}")
        payload = {"check": "duality", "m": m, "n": n, "runs": runs}
    elif sub == "springer":
        m, n, r, c = _params4(args, conf, need_c=False)
        c = c or 0
        runs = []
        for p in cfg.primes:
            rep = springer_sample(m, n, r, c, p, cfg.seed, cfg.trials)
            runs.append({"p": p, "produced": rep.produced, "success_ratio": rep.success_ratio, "redraws": rep.redraws})
            if rep.produced == 0 or rep.success_ratio != 1.0:
                failures.append(f"p={p}")
        payload = {"check": "springer", "m": m, "n": n, "r": r, "c": c, "seed": cfg.seed, "runs": runs}
    elif sub == "smoothness":
        m = _need(_merged(args, conf, "m", None, int), "m")
        n = _need(_merged(args, conf, "n", None, int), "n")
        c = _need(_merged(args, conf, "c", None, int), "c")
        runs = []
        for p in cfg.primes:
            rep = smoothness_check(m, n, c, p, cfg.seed, budget=cfg.budget)
            runs.append(rep.to_dict())
            if rep.found_singular:
                failures.append(f"p={p}: {rep.status}")
        payload = {"check": "smoothness", "m": m, "n": n, "c": c, "threshold": 2 * n - 2 * m + 5, "runs": runs}
    else:
        m = _need(_merged(args, conf, "m", None, int), "m")
        n = _need(_merged(args, conf, "n", None, int), "n")
        r = _merged(args, conf, "r", 1, int)
        c = _need(_merged(args, conf, "c", None, int), "c")
        side = _side(args, conf, "Y")
        rep = rank_locus_report(m, n, r, c, side, cfg.primes, cfg.seed, cfg.budget)
        bound = m - r if side == "Y" else r
        v = c if side == "Y" else m * n - c
        for p in cfg.primes:
            if sum(rep.counts[p].values()) != (p**v - 1) // (p - 1):
                failures.append(f"p={p}: strata do not sum to the number of points")
        if len(cfg.primes) >= 2 and rep.dimension_estimate != rep.expected_dim:
            if not (rep.dimension_estimate == "empty" and rep.expected_dim < 0):
                failures.append(f"dimension estimate {rep.dimension_estimate} != expected {rep.expected_dim}")
        payload = {"check": "rank-locus", "rank_bound": bound, **rep.to_dict()}
        if cfg.format == "csv":
            text = rep.strata_csv()
            return text, EXIT_FAIL if failures else EXIT_OK
    payload["passed"] = not failures
    payload["failures"] = failures
    payload["label"] = "experimental evidence"
    return render_generic(payload, cfg.format), EXIT_FAIL if failures else EXIT_OK


def cmd_sod(args, conf, cfg):
    sub = args.sub
    if sub == "ledger":
        m, n, r, c = _params4(args, conf, need_c=False)
        if c is None:
            lx, ly = lefschetz_ledger(m, n, r, "X"), lefschetz_ledger(m, n, r, "Y")
        else:
            lx, ly = hpd_section_ledger(m, n, r, c)
        payload = {"x": lx.to_dict(), "y": ly.to_dict()}
        rows = [{"ledger": L.name, **b.to_dict()} for L in (lx, ly) for b in L.blocks]
        return render_generic(payload, cfg.format, rows=rows, text=lx.to_text() + "\n\n" + ly.to_text()), EXIT_OK
    if sub == "additivity":
        m, n, r, c = _params4(args, conf)
        rep = hh_additivity_check(m, n, r, c)
        return render_generic(rep.to_dict(), cfg.format), EXIT_OK if rep.passed else EXIT_FAIL
    # gram / mutate
    m = _merged(args, conf, "m", 2, int)
    n = _merged(args, conf, "n", 2, int)
    r = _merged(args, conf, "r", 1, int)
    c = _merged(args, conf, "c", 0, int)
    side = _side(args, conf)
    twists = _parse_twists(_merged(args, conf, "twists", "0,0;1,-1;0,1;1,0"))
    g = gram_matrix(HPDParams(m, n, r, c, side), twists)
    payload = {"m": m, "n": n, "r": r, "c": c, "side": side, "gram": g.to_dict(), "unitriangular": g.is_unitriangular()}
    code = EXIT_OK
    if sub == "mutate":
        i = _merged(args, conf, "index", 0, int)
        direction = _merged(args, conf, "direction", "left")
        try:
            g2 = mutate(g, i, direction)
        except MutationError as exc:
            raise InvalidParamsError(str(exc))
        payload.update({"index": i, "direction": direction, "mutated": g2.to_dict()})
        text = g.to_text() + f"\n\n{direction} mutation at {i}:\n" + g2.to_text()
    else:
        text = g.to_text()
        if not g.is_unitriangular():
            code = EXIT_FAIL
    rows = [{"row": i, "label": json.dumps(lab), "entries": json.dumps(row)} for i, (lab, row) in enumerate(zip(payload["gram"]["labels"], g.entries))]
    return render_generic(payload, cfg.format, rows=rows, text=text), code


COMMANDS = {
    "classify": cmd_classify,
    "sweep": cmd_sweep,
    "degree": cmd_degree,
    "invariants": cmd_invariants,
    "residual": cmd_residual,
    "verify": cmd_verify,
    "sod": cmd_sod,
}


def run(argv=None) -> tuple:
    """Return (output text, exit code) without touching sys.stdout."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return "", EXIT_INVALID if exc.code else EXIT_OK
    try:
        conf = read_config(args.config) if getattr(args, "config", None) else {}
        cfg = _run_config(args, conf)
        return COMMANDS[args.command](args, conf, cfg)
    except BudgetExceededError as exc:
        return json.dumps({"schema_version": SCHEMA_VERSION, "error": "budget", "message": str(exc)}) + "\n", EXIT_BUDGET
    except (UsageError, InvalidParamsError, ValueError, OSError) as exc:
        return json.dumps({"schema_version": SCHEMA_VERSION, "error": "invalid", "message": str(exc)}) + "\n", EXIT_INVALID


def main(argv=None) -> int:
    out, code = run(argv)
    if out:
        stream = sys.stdout if code in (EXIT_OK, EXIT_FAIL) else sys.stderr
        stream.write(out)
    return code


if __name__ == "__main__":
    sys.exit(main())
