"""Command-line front end; every command prints a JSON document."""

from __future__ import annotations

import argparse
import json
import re
import sys
from dataclasses import asdict, dataclass, field
from typing import Any

from ifrob.errors import NonExactDivision, ParityUnsupported, UnsupportedCase
from ifrob.exactring import (
    GENERIC,
    CyclotomicRing,
    LaurentPoly,
    cyclo_poly,
    qbinom,
    qbinom_reduction_check,
    qint,
    reduce_mod,
)
from ifrob import frobenius, iotagroup, rootdata, smallq


# ---------------------------------------------------------------------------
# polynomial literals
# ---------------------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+)|(v)|(\[)|(\])|(\^)|(\+)|(-)|(\*)|(\()|(\)))")


class PolyParseError(ValueError):
    pass


def _tokenize(text: str) -> list[str]:
    pos = 0
    out = []
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise PolyParseError(f"unexpected character at {pos} in {text!r}")
        out.append(m.group(0).strip())
        pos = m.end()
    return out


def parse_poly(text: str) -> LaurentPoly:
    """Parse integers, ``v``, ``^``, ``+``, ``-``, ``*``, parentheses and ``[n]``."""
    toks = _tokenize(text)
    pos = 0

    def peek():
        return toks[pos] if pos < len(toks) else None

    def take(expected=None):
        nonlocal pos
        tok = peek()
        if tok is None or (expected is not None and tok != expected):
            raise PolyParseError(f"expected {expected or 'a token'} in {text!r}")
        pos += 1
        return tok

    def signed_int():
        sign = 1
        if peek() == "-":
            take()
            sign = -1
        tok = take()
        if not tok.isdigit():
            raise PolyParseError(f"expected an integer in {text!r}")
        return sign * int(tok)

    def atom():
        tok = peek()
        if tok is None:
            raise PolyParseError(f"unexpected end of {text!r}")
        if tok.isdigit():
            return LaurentPoly.const(int(take()))
        if tok == "v":
            take()
            return LaurentPoly.monomial(1)
        if tok == "[":
            take()
            n = signed_int()
            take("]")
            return qint(n)
        if tok == "(":
            take()
            val = expr()
            take(")")
            return val
        raise PolyParseError(f"unexpected {tok!r} in {text!r}")

    def power():
        base = atom()
        if peek() == "^":
            take()
            k = signed_int()
            if k < 0 and not (len(base.terms) == 1 and abs(next(iter(base.terms.values()))) == 1):
                raise PolyParseError("negative powers only of signed monomials")
            base = base ** k
        return base

    def factor():
        if peek() == "-":
            take()
            return -factor()
        return power()

    def term():
        val = factor()
        while peek() == "*":
            take()
            val = val * factor()
        return val

    def expr():
        val = term()
        while peek() in ("+", "-"):
            op = take()
            rhs = term()
            val = val + rhs if op == "+" else val - rhs
        return val

    result = expr()
    if pos != len(toks):
        raise PolyParseError(f"trailing input in {text!r}")
    return result


# ---------------------------------------------------------------------------
# run configuration
# ---------------------------------------------------------------------------

@dataclass
class RunConfig:
    command: str
    action: str
    l: Any = None
    d: int = 1
    n: int | None = None
    top: int | None = None
    bottom: int | None = None
    m: int | None = None
    b: int | None = None
    poly: str | None = None
    case: str | None = None
    type: str | None = None
    node: int = 0
    parity: str | None = None
    weight: list | None = None
    method: str = "auto"
    nmax: int | None = None
    kmax: int = 3
    radius: int = 4
    budget: int = 4
    jobs: int = 1
    seed: int = 0
    extra: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        out = asdict(self)
        return {k: v for k, v in out.items() if v is not None and v != {}}


class CliError(Exception):
    def __init__(self, message: str, status: int = 2):
        super().__init__(message)
        self.status = status


def _ring(l) -> Any:
    if l in (None, "generic"):
        return GENERIC
    return CyclotomicRing(int(l))


def _weight(cfg: RunConfig, default):
    return tuple(int(x) for x in cfg.weight) if cfg.weight is not None else default


# ---------------------------------------------------------------------------
# ring
# ---------------------------------------------------------------------------

def cmd_ring(cfg: RunConfig) -> dict:
    a = cfg.action
    if a == "qint":
        _need(cfg, "n")
        p = qint(cfg.n, cfg.d)
        return {"result": p.to_json(), "text": str(p)}
    if a == "qbinom":
        _need(cfg, "top", "bottom")
        p = qbinom(cfg.top, cfg.bottom, cfg.d)
        return {"result": p.to_json(), "text": str(p)}
    if a == "cyclo":
        _need(cfg, "l")
        p = cyclo_poly(int(cfg.l))
        return {"result": p.to_json(), "text": str(p)}
    if a == "reduce":
        _need(cfg, "l", "poly")
        x = reduce_mod(int(cfg.l), parse_poly(cfg.poly))
        return {"result": x.to_json(), "text": str(x), "is_zero": x.is_zero()}
    if a == "binom-reduction":
        return _binom_reduction([int(cfg.l)] if cfg.l not in (None, "generic") else [3, 5, 7], cfg)
    raise CliError(f"unknown ring command {a!r}")


def _need(cfg: RunConfig, *names):
    missing = [n for n in names if getattr(cfg, n) is None]
    if missing:
        raise CliError("missing option(s): " + ", ".join("--" + m for m in missing))


def _binom_reduction(levels, cfg: RunConfig) -> dict:
    failures = []
    checked = 0
    ms = [cfg.m] if cfg.m is not None else range(4)
    ns = [cfg.n] if cfg.n is not None else range(4)
    for l in levels:
        for m in ms:
            for n in ns:
                for b in range(l):
                    for dexp in range(l):
                        checked += 1
                        if not qbinom_reduction_check(l, m, n, b, dexp):
                            failures.append({"l": l, "m": m, "n": n, "b": b, "d": dexp})
    return {"ok": not failures, "checked": checked, "failures": failures}


# ---------------------------------------------------------------------------
# expand
# ---------------------------------------------------------------------------

def cmd_expand(cfg: RunConfig) -> dict:
    if cfg.action != "idiv":
        raise CliError(f"unknown expand target {cfg.action!r}")
    _need(cfg, "n")
    case = cfg.case or "AI1"
    if case not in iotagroup.CASES:
        raise CliError(f"unknown case {case!r}")
    r = iotagroup.make_case(case, cfg.node, cfg.d)
    default = (0,) if case == "AI1" else (0, 0)
    lam = _weight(cfg, default)
    parity = iotagroup.parity_of(r, lam)
    if cfg.parity is not None and cfg.parity != parity:
        raise CliError(f"weight {list(lam)} has {parity} parity, not {cfg.parity}")
    ring = _ring(cfg.l)
    if cfg.method == "closed":
        dp = iotagroup.idiv_closed(r, cfg.n, lam, ring)
    elif cfg.method == "recursive":
        dp = iotagroup.idiv_recursive(r, cfg.n, lam, ring)
    else:
        dp = iotagroup.idiv(r, cfg.n, lam, ring)
    return dp.to_json()


# ---------------------------------------------------------------------------
# verify
# ---------------------------------------------------------------------------

def _fr_suite(case: str, cfg: RunConfig, l_default: int, nmax_factor: int, nodes) -> dict:
    l = int(cfg.l) if cfg.l not in (None, "generic") else l_default
    nmax = cfg.nmax if cfg.nmax is not None else nmax_factor * l
    bound = int(cfg.extra.get("weight_bound", 4 * l))
    pts = frobenius.fr_grid_points(case, l, nmax, bound, nodes, cfg.d)
    reports = frobenius.run_fr_grid(pts, cfg.jobs)
    failed = [r.to_json() for r in reports if not r.passed]
    kinds: dict = {}
    for r in reports:
        kinds[r.expected.kind] = kinds.get(r.expected.kind, 0) + 1
    return {"ok": not failed, "case": case, "l": l, "nmax": nmax, "weight_bound": bound,
            "points": len(reports), "expectations": dict(sorted(kinds.items())),
            "failures": failed}


def _suite_frobenius_qplane(cfg):
    return _fr_suite("QPlane", cfg, 3, 3, (0, 1))


def _suite_frobenius_aiii11(cfg):
    return _fr_suite("AIII11", cfg, 3, 3, (0, 1))


def _suite_frobenius_ai1(cfg):
    return _fr_suite("AI1", cfg, 3, 4, (0,))


def _levels(cfg, default):
    return [int(cfg.l)] if cfg.l not in (None, "generic") else default


def _suite_z_ledger(cfg):
    out = [frobenius.z_vanishing_ledger(l, cfg.kmax, None, cfg.d) for l in _levels(cfg, [3, 5])]
    return {"ok": all(x["ok"] for x in out), "ledgers": out}


def _suite_binom_reduction(cfg):
    return _binom_reduction(_levels(cfg, [3, 5, 7]), cfg)


def _suite_star_datum(cfg):
    rows = []
    ok = True
    if cfg.type:
        data = [rootdata.parse_type(cfg.type)]
    else:
        data = rootdata.finite_types(4)
    for l in _levels(cfg, [3, 5]):
        for cartan in data:
            star = rootdata.build_star_datum(rootdata.simply_connected(cartan), l, check=False)
            rep = star.type_report()
            expected_same = rootdata.same_type_expected(cartan, l)
            passed = (rep["same_type"] and rep["uniform_l"]) if expected_same else True
            ok &= passed
            rows.append({"type": cartan.name, "l": l, "hypothesis": expected_same,
                         "same_type": rep["same_type"], "uniform_l": rep["uniform_l"],
                         "circ_type": rep["circ_type"], "pass": passed})
    return {"ok": ok, "rows": rows}


def _pair_from_cfg(cfg) -> rootdata.SatakePair:
    name = cfg.type or "AI1"
    if name.upper() in ("B2-REMARK", "B2REMARK"):
        return rootdata.b2_remark_pair()
    return rootdata.satake(name, cfg.n)


def _suite_admissible(cfg):
    pair = _pair_from_cfg(cfg)
    if cfg.l not in (None, "generic"):
        star = rootdata.build_star_datum(pair.datum, int(cfg.l), check=False)
        rep = rootdata.admissible_check(pair, star)
        out = rep.to_json()
        out["star"] = star.type_report()
    else:
        out = rootdata.admissible_check(pair).to_json()
    out["pair"] = pair.to_json()
    # an admissibility verdict is data, not a failure
    out["ok"] = True
    return out


def _suite_breve(cfg):
    names = [cfg.type] if cfg.type else ["AI1", "AIII11"]
    rows = []
    ok = True
    for name in names:
        pair = rootdata.satake(name, cfg.n)
        for l in _levels(cfg, [3]):
            star = rootdata.StarDatum(pair.datum, l)
            be = rootdata.breve_equality_check(pair, star, cfg.radius)
            th = rootdata.theta_stability_check(star, pair, cfg.radius)
            ok &= be.ok and th.ok
            rows.append({"type": pair.name, "l": l, "radius": cfg.radius,
                         "breve_equality": be.to_json(), "theta_stability": th.to_json()})
    return {"ok": ok, "rows": rows}


def _suite_smallrank(cfg):
    cases = [cfg.case] if cfg.case else ["AI1", "AIII11"]
    rows = []
    ok = True
    for case in cases:
        levels = _levels(cfg, [3, 5] if case == "AI1" else [3])
        for l in levels:
            lam = _weight(cfg, (0,) if case == "AI1" else (0, 0))
            rep = smallq.small_span_rank(case, l, lam, cfg.budget)
            clo = smallq.closure_check(case, l, lam, cfg.budget)
            passed = rep.stabilized and rep.rank == rep.predicted and clo["ok"]
            ok &= passed
            rows.append({"span": rep.to_json(), "closure_ok": clo["ok"], "pass": passed})
    return {"ok": ok, "rows": rows}


def _suite_dims(cfg):
    if cfg.type:
        l = int(cfg.l) if cfg.l not in (None, "generic") else 3
        pred = smallq.dim_formula(cfg.type, cfg.n, l)
        out = pred.to_json()
        out["ok"] = True
        return out
    rows = []
    for name, n in [("AI1", None), ("AII3", None), ("AIII11", None), ("AIV", 3), ("BII", 2),
                    ("CII", 3), ("DII", 4), ("FII", None)]:
        for l in _levels(cfg, [3, 5]):
            rows.append(smallq.dim_formula(name, n, l).to_json())
    return {"ok": True, "rows": rows}


SUITES = {
    "frobenius-qplane": _suite_frobenius_qplane,
    "frobenius-aiii11": _suite_frobenius_aiii11,
    "frobenius-ai1": _suite_frobenius_ai1,
    "z-ledger": _suite_z_ledger,
    "binom-reduction": _suite_binom_reduction,
    "star-datum": _suite_star_datum,
    "admissible": _suite_admissible,
    "breve": _suite_breve,
    "smallrank": _suite_smallrank,
    "dims": _suite_dims,
}


def cmd_verify(cfg: RunConfig) -> dict:
    if cfg.action == "all":
        results = {}
        for name, fn in SUITES.items():
            sub = RunConfig(command="verify", action=name, jobs=cfg.jobs, d=cfg.d)
            if name == "admissible":
                sub.type = "B2-remark"
                sub.l = 4
            results[name] = fn(sub)
        return {"ok": all(r["ok"] for r in results.values()), "suites": results}
    fn = SUITES.get(cfg.action)
    if fn is None:
        raise CliError(f"unknown suite {cfg.action!r}")
    return fn(cfg)


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------

def _common(p: argparse.ArgumentParser):
    p.add_argument("--config", help="JSON file with RunConfig fields")
    p.add_argument("--out", help="write the report here instead of stdout")
    p.add_argument("--jobs", type=int, default=None)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ifrob", description="Quantum Frobenius for iquantum groups")
    sub = parser.add_subparsers(dest="command", required=True)

    ring = sub.add_parser("ring", help="Laurent polynomial and cyclotomic arithmetic")
    ring.add_argument("action", choices=["qint", "qbinom", "cyclo", "reduce", "binom-reduction"])
    ring.add_argument("--n", type=int)
    ring.add_argument("--d", type=int, default=None)
    ring.add_argument("--top", type=int)
    ring.add_argument("--bottom", type=int)
    ring.add_argument("--l")
    ring.add_argument("--m", type=int)
    ring.add_argument("--poly")
    _common(ring)

    ex = sub.add_parser("expand", help="expand iota-divided powers")
    ex.add_argument("action", choices=["idiv"])
    ex.add_argument("--case", choices=list(iotagroup.CASES))
    ex.add_argument("--parity", choices=["even", "odd"])
    ex.add_argument("--n", type=int)
    ex.add_argument("--weight", help="comma separated weight coordinates")
    ex.add_argument("--l", help="'generic' or an odd level")
    ex.add_argument("--node", type=int, default=None)
    ex.add_argument("--d", type=int, default=None)
    ex.add_argument("--method", choices=["auto", "closed", "recursive"], default=None)
    _common(ex)

    ve = sub.add_parser("verify", help="run a verification suite")
    ve.add_argument("action", choices=list(SUITES) + ["all"])
    ve.add_argument("--l")
    ve.add_argument("--n", type=int)
    ve.add_argument("--nmax", type=int)
    ve.add_argument("--kmax", type=int, default=None)
    ve.add_argument("--type")
    ve.add_argument("--case")
    ve.add_argument("--weight")
    ve.add_argument("--radius", type=int, default=None)
    ve.add_argument("--budget", type=int, default=None)
    ve.add_argument("--d", type=int, default=None)
    _common(ve)
    return parser


def config_from_args(ns: argparse.Namespace) -> RunConfig:
    cfg = RunConfig(command=ns.command, action=ns.action)
    if getattr(ns, "config", None):
        with open(ns.config) as fh:
            data = json.load(fh)
        for k, v in data.items():
            if not hasattr(cfg, k):
                raise CliError(f"unknown config field {k!r}")
            setattr(cfg, k, v)
    for k, v in vars(ns).items():
        if k in ("config", "out", "command", "action") or v is None:
            continue
        if k == "weight":
            v = [int(x) for x in str(v).split(",") if x.strip()]
        setattr(cfg, k, v)
    return cfg


COMMANDS = {"ring": cmd_ring, "expand": cmd_expand, "verify": cmd_verify}


def run(cfg: RunConfig) -> tuple[dict, int]:
    body = COMMANDS[cfg.command](cfg)
    status = 0 if body.get("ok", True) else 1
    return {"config": cfg.to_json(), "report": body}, status


def main(argv=None) -> int:
    parser = build_parser()
    ns = parser.parse_args(argv)
    try:
        cfg = config_from_args(ns)
        doc, status = run(cfg)
    except (CliError, ParityUnsupported, UnsupportedCase, NonExactDivision, ValueError) as exc:
        status = getattr(exc, "status", 2)
        doc = {"error": type(exc).__name__, "message": str(exc)}
    text = json.dumps(doc, sort_keys=True, indent=2)
    if getattr(ns, "out", None):
        with open(ns.out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return status


if __name__ == "__main__":
    sys.exit(main())
