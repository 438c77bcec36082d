"""Command line front end: group summaries, verification suites, tables and measures."""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field, replace
from fractions import Fraction

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

from . import coleman, distributions as dist
from .errors import ConfigError, LubinTateError
from .formal_group import build_formal_group
from .operators import OperatorContext
from .padic import base_field_make, rational_field
from .suites import ALIASES, SUITES, Workspace, run_suite

SCHEMA = "lubintate-report/1"
MAX_TOWER_DEPTH = 3


@dataclass
class RunConfig:
    prime: int = 3
    base_polynomial: list = field(default_factory=list)
    uniformizer: list = None
    preset: str = None
    frobenius: list = None
    digits: int = 30
    z_order: int = 60
    t_order: int = 8
    tower_depth: int = 2
    suites: list = field(default_factory=list)
    out: str = None
    seed: int = 0
    jobs: int = 0

    def validate(self):
        if self.prime < 2 or any(self.prime % d == 0 for d in range(2, int(self.prime ** 0.5) + 1)):
            raise ConfigError(f"{self.prime} is not prime")
        for name in ("digits", "z_order", "t_order", "tower_depth"):
            if getattr(self, name) < 1:
                raise ConfigError(f"{name} must be positive")
        if self.tower_depth > MAX_TOWER_DEPTH:
            raise ConfigError(f"tower depth is capped at {MAX_TOWER_DEPTH}")
        self.suites = [ALIASES.get(s, s) for s in self.suites]
        bad = [s for s in self.suites if s not in SUITES]
        if bad:
            raise ConfigError(f"unknown suites {bad}; choose from {list(SUITES)}")
        if self.frobenius is None and self.preset not in (None, "gm_hat", "basic"):
            raise ConfigError(f"unknown preset {self.preset!r}")
        return self

    def field(self):
        if not self.base_polynomial or len(self.base_polynomial) == 2:
            if self.base_polynomial and self.base_polynomial[1] != 1:
                raise ConfigError("base polynomial must be monic")
            return rational_field(self.prime, self.digits)
        return base_field_make(self.prime, self.base_polynomial, self.uniformizer, digits=self.digits)

    def group(self, z_order=None):
        frob = self.frobenius if self.frobenius is not None else (self.preset or "gm_hat")
        return build_formal_group(self.field(), frob, z_order=z_order or self.z_order)


_KEYS = {f.name for f in RunConfig.__dataclass_fields__.values()}


def load_config(path=None, overrides=None):
    data = {}
    if path:
        try:
            with open(path, "rb") as fh:
                data = tomllib.load(fh)
        except (OSError, tomllib.TOMLDecodeError) as exc:
            raise ConfigError(f"cannot read config {path}: {exc}") from exc
    data = {k.replace("-", "_"): v for k, v in data.items()}
    unknown = set(data) - _KEYS
    if unknown:
        raise ConfigError(f"unknown config keys {sorted(unknown)}")
    cfg = RunConfig(**data)
    for k, v in (overrides or {}).items():
        if v is not None:
            cfg = replace(cfg, **{k: v})
    return cfg.validate()


# output helpers ------------------------------------------------------------------


def _elt(x):
    """JSON form of a p-adic element: rational value when the field is Q_p."""
    if x is None:
        return None
    if isinstance(x, (int, Fraction)):
        return str(x)
    out = {"value": str(x)}
    prec = x.precision()
    out["precision"] = None if prec is None else str(prec)
    if getattr(x.field, "degree", 1) == 1:
        try:
            out["rational"] = str(x.to_fraction())
        except LubinTateError:
            pass
    return out


def _digits(d):
    return "exact" if d is None else str(d)


def _digest(coeffs):
    text = ",".join(str(c) for c in coeffs)
    return hashlib.sha256(text.encode()).hexdigest()[:16]


def _poly_text(coeffs):
    terms = []
    for k in range(len(coeffs) - 1, -1, -1):
        c = coeffs[k]
        if c.is_zero():
            continue
        s = str(c.to_fraction()) if getattr(c.field, "degree", 1) == 1 else f"({c})"
        if k == 0:
            terms.append(s)
        else:
            mono = "X" if k == 1 else f"X^{k}"
            terms.append(mono if s == "1" else f"{s}*{mono}")
    return " + ".join(terms) or "0"


def _config_json(cfg):
    d = asdict(cfg)
    d.pop("jobs", None)
    return d


# commands ------------------------------------------------------------------------


def cmd_group(cfg):
    G = cfg.group(z_order=min(cfg.z_order, 20))
    levels = []
    for n in range(1, cfg.tower_depth + 1):
        fn = G.division_polynomial(n)
        levels.append({"level": n, "degree": len(fn) - 1, "division_polynomial": _poly_text(fn),
                       "digest": _digest([str(c) for c in fn])})
    return {"field": G.field.name, "q": G.q, "frobenius": _poly_text(G.frobenius),
            "cyclotomic": G.is_cyclotomic, "degrees": [r["degree"] for r in levels], "levels": levels}, 0


def _suite_worker(args):
    name, prime, digits, z_order, seed, preset = args
    ws = Workspace(prime, digits, z_order, seed, preset)
    return [r.to_json() for r in run_suite(name, ws)]


def cmd_suite(cfg):
    if not cfg.suites:
        raise ConfigError("no suites selected")
    if cfg.frobenius is not None:
        raise ConfigError("suites run on the named presets only")
    # no preset selected: every suite covers both presets
    tasks = [(s, cfg.prime, cfg.digits, cfg.z_order, cfg.seed, cfg.preset) for s in cfg.suites]
    jobs = cfg.jobs or min(len(tasks), os.cpu_count() or 1)
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_suite_worker, tasks))
    else:
        results = [_suite_worker(t) for t in tasks]
    checks = [c for rs in results for c in rs]
    failed = [c for c in checks if not c["ok"]]
    code = 0
    if failed:
        code = 3 if all(c["detail"].get("exit_code") == 3 for c in failed) else 1
    return {"suites": list(cfg.suites), "passed": len(checks) - len(failed), "failed": len(failed),
            "checks": checks}, code


def table_ell(k_max=4, j_max=6):
    rows = []
    for k in range(k_max + 1):
        for j in range(-j_max, j_max + 1):
            a = dist.ell_factor(k, j)
            b = dist.ell_factor(k, j, "product")
            rows.append({"k": k, "j": j, "closed_form": str(a), "product": str(b), "agree": a == b})
    return rows


def table_gauss(p, m_max, digits=20):
    G = build_formal_group(rational_field(p, digits), "gm_hat", z_order=12)
    rows = []
    for m in range(1, m_max + 1):
        T = dist.CharacterTable(G, m)
        for rho in dist.characters(p, m):
            if rho.is_trivial:
                continue
            lhs, rhs = dist.gauss_identity(T, rho)
            d = lhs.agreement(rhs)
            rows.append({"level": m, "character": str(rho), "conductor": rho.conductor,
                         "tau_tau_inv_rho_minus_one": _elt(lhs), "q_power": _elt(rhs),
                         "identity": d is None or d >= 8, "digits": _digits(d)})
    return rows


def table_cw(cfg, series="Z", m_max=2, j_max=3):
    ctx = OperatorContext(cfg.group())
    fx = coleman.fixture_series(ctx)
    if series not in fx:
        raise ConfigError(f"unknown fixture {series!r}; choose from {sorted(fx)}")
    rows = coleman.cw_table(ctx, fx[series], m_max, j_max, series)
    return [{"m": r["m"], "j": r["j"], "coates_wiles": _elt(r["cw"]), "chain": _elt(r["lambda"]),
             "certified_digits": _digits(r["digits"])} for r in rows]


def cmd_table(cfg, kind, series="Z"):
    if kind == "ell":
        rows = table_ell()
    elif kind == "gauss":
        rows = table_gauss(cfg.prime, min(cfg.tower_depth, 2), min(cfg.digits, 20))
    elif kind == "cw":
        rows = table_cw(cfg, series, min(cfg.tower_depth, 2))
    else:
        raise ConfigError(f"unknown table {kind!r}")
    ok = all(r.get("agree", True) and r.get("identity", True) for r in rows)
    return {"kind": kind, "rows": rows}, 0 if ok else 1


def parse_character(text, p, level):
    """'triv' or 's,e,t' for rho(r) = omega^s zeta_{p^e}^t."""
    if text in ("triv", "trivial"):
        return dist.CharacterData(p, level, 0, 0, 0)
    try:
        s, e, t = (int(x) for x in text.split(","))
    except ValueError as exc:
        raise ConfigError(f"bad character {text!r}; use 'triv' or 's,e,t'") from exc
    if e >= level or (e and t % p == 0):
        raise ConfigError(f"character {text!r} does not live on (Z/{p}^{level})^x")
    return dist.CharacterData(p, level, s % (p - 1), e, t % p ** e if e else 0)


def cmd_measure(cfg, path, character="triv", j=0):
    try:
        with open(path) as fh:
            data = json.load(fh) if path != "-" else json.load(sys.stdin)
    except (OSError, ValueError) as exc:
        raise ConfigError(f"cannot read measure {path}: {exc}") from exc
    data.setdefault("p", cfg.prime)
    mu = dist.FiniteMeasure.from_json(data)
    rho = parse_character(character, mu.p, mu.level)
    if rho.is_trivial:
        val = sum((Fraction(v) * a ** j for a, v in mu.values.items() if a % mu.p), Fraction(0))
        value = str(val)
    else:
        G = build_formal_group(rational_field(mu.p, cfg.digits), "gm_hat", z_order=8)
        value = _elt(dist.eval_character(dist.CharacterTable(G, mu.level), mu, rho, j))
    return {"measure": mu.to_json(), "character": str(rho), "j": j, "value": value}, 0


# argument parsing ------------------------------------------------------------------


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="TOML configuration file")
    common.add_argument("--prime", type=int)
    common.add_argument("--preset", choices=("gm_hat", "basic"))
    common.add_argument("--precision-digits", dest="digits", type=int)
    common.add_argument("--z-order", dest="z_order", type=int)
    common.add_argument("--t-order", dest="t_order", type=int)
    common.add_argument("--tower-depth", dest="tower_depth", type=int)
    common.add_argument("--seed", type=int)
    common.add_argument("--out", help="write the JSON report here instead of stdout")
    parser = argparse.ArgumentParser(prog="lubintate", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("group", parents=[common], help="summarize the group and its torsion tower")
    s = sub.add_parser("suite", parents=[common], help="run verification suites")
    s.add_argument("--suite", dest="suites", action="append", choices=SUITES + tuple(ALIASES))
    s.add_argument("--jobs", type=int, help="worker processes (default: one per suite)")
    t = sub.add_parser("table", parents=[common], help="emit a table")
    t.add_argument("kind", choices=("cw", "gauss", "ell"))
    t.add_argument("--series", default="Z", help="fixture series for the cw table")
    m = sub.add_parser("measure", parents=[common], help="evaluate a finite measure at a character")
    m.add_argument("measure", help="JSON file with {level, values} ('-' for stdin)")
    m.add_argument("--character", default="triv")
    m.add_argument("--j", type=int, default=0)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    keys = ("prime", "preset", "digits", "z_order", "t_order", "tower_depth", "seed", "out",
            "suites", "jobs")
    overrides = {k: getattr(args, k, None) for k in keys}
    try:
        cfg = load_config(args.config, overrides)
        if args.command == "group":
            body, code = cmd_group(cfg)
        elif args.command == "suite":
            body, code = cmd_suite(cfg)
        elif args.command == "table":
            body, code = cmd_table(cfg, args.kind, args.series)
        else:
            body, code = cmd_measure(cfg, args.measure, args.character, args.j)
    except LubinTateError as exc:
        print(json.dumps({"schema": SCHEMA, "error": type(exc).__name__, "message": str(exc)}),
              file=sys.stderr)
        return exc.exit_code
    report = {"schema": SCHEMA, "command": args.command, "config": _config_json(cfg), **body,
              "exit_code": code}
    text = json.dumps(report, indent=2, sort_keys=False)
    if cfg.out:
        with open(cfg.out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
