"""Command-line interface: ``trienum compute | verify | asymptotics | eliminate``.

Exit status: 0 success, 1 a verification check failed, 2 configuration error,
3 an internal structural or identity check failed while computing.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
import warnings
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from decimal import Decimal
from pathlib import Path

import mpmath

from . import __version__
from .algebraic import (
    ResidualNonzero,
    load_equation,
    load_polynomial,
    series_from_equation,
    singular_candidates,
    verify_algebraic,
)
from .asymptotics import growth_constant, isolate_smallest_positive_root, smallest_positive_root, star_ratio_check
from .census import CensusTag, census, derive_gstar, derive_hstar, hstar_derivation_check, z_order_for
from .elimination import eliminate_quadratic, substitute_census
from .equations import (
    IdentityViolation,
    degree_bound_violation,
    first_negative,
    identity_suite,
    residual,
    solve,
)
from .lagrange import check_parametrization
from .series import BadSupport, NonIntegral, NotDivisible

ALL_FAMILIES = ("S", "T", "U", "V", "F", "G", "H", "K", "Gstar", "Hstar")
ALIASES = {"G*": "Gstar", "H*": "Hstar", "GSTAR": "Gstar", "HSTAR": "Hstar"}
BIVARIATE = {"S", "T", "U", "V"}
SOURCE_OF = {"F": "S", "G": "T", "H": "U", "K": "V", "Gstar": "T", "Hstar": "U"}
CENSUS_OF = {"S": "F", "T": "G", "U": "H"}
REFERENCE_W0 = {"S": "eq_S0", "T": "eq_T0"}

DEFAULT_FAMILIES = {
    "compute": ("F", "G", "H", "K", "Gstar", "Hstar"),
    "verify": ("F", "G", "H", "K", "Gstar", "Hstar"),
    "asymptotics": ("F", "G", "H", "K"),
    "eliminate": ("S", "T", "U"),
}
DEFAULT_ORDER = {"compute": 20, "verify": 40, "asymptotics": 120, "eliminate": 40}
CONFIG_KEYS = {"family", "order", "format", "digits", "threads", "data_dir", "depth", "identity_order"}
THREADS_ENV = "TRIENUM_THREADS"


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class RunConfig:
    command: str
    families: tuple[str, ...]
    order: int
    format: str = "json"
    digits: int = 6
    threads: int = 1
    data_dir: str | None = None
    depth: int = 3
    identity_order: int = 122
    eliminate: bool = False
    extra: dict = field(default_factory=dict)


# -- configuration ---------------------------------------------------------------


def _parse_families(values) -> tuple[str, ...]:
    out: list[str] = []
    for v in values:
        for name in str(v).split(","):
            name = name.strip()
            if not name:
                continue
            name = ALIASES.get(name.upper(), ALIASES.get(name, name))
            if name not in ALL_FAMILIES:
                raise ConfigError(f"unknown family {name!r}; choose from {', '.join(ALL_FAMILIES)}")
            if name not in out:
                out.append(name)
    return tuple(out)


def read_config_file(path: str) -> dict[str, str]:
    """``key = value`` lines; ``#`` comments; unknown keys are an error."""
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read config file: {exc}") from None
    out = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{path}:{lineno}: expected 'key = value'")
        key, value = (s.strip() for s in line.split("=", 1))
        key = key.replace("-", "_")
        if key not in CONFIG_KEYS:
            raise ConfigError(f"{path}:{lineno}: unknown key {key!r}")
        out[key] = value
    return out


def _as_int(name: str, value) -> int:
    try:
        return int(value)
    except (TypeError, ValueError):
        raise ConfigError(f"{name} must be an integer, got {value!r}") from None


def build_config(args: argparse.Namespace) -> RunConfig:
    file_cfg = read_config_file(args.config) if args.config else {}
    cmd = args.command

    def pick(name, default=None):
        flag = getattr(args, name, None)
        if flag is not None and flag != []:
            return flag
        if name in file_cfg:
            return file_cfg[name]
        return default

    fam_raw = pick("family")
    if fam_raw is None:
        families = DEFAULT_FAMILIES[cmd]
    else:
        families = _parse_families(fam_raw if isinstance(fam_raw, list) else [fam_raw])
    if not families:
        raise ConfigError("no family selected")
    order = _as_int("order", pick("order", DEFAULT_ORDER[cmd]))
    if order < 1:
        raise ConfigError("order must be ≥ 1")
    fmt = str(pick("format", "json"))
    if fmt not in ("json", "csv", "text"):
        raise ConfigError(f"format must be json, csv or text, got {fmt!r}")
    digits = _as_int("digits", pick("digits", 6))
    if not 6 <= digits <= 200:
        raise ConfigError("digits must be in [6, 200]")
    threads = args.threads
    if threads is None and os.environ.get(THREADS_ENV):
        threads = os.environ[THREADS_ENV]
    if threads is None:
        threads = file_cfg.get("threads", 1)
    threads = _as_int("threads", threads)
    if threads < 1:
        raise ConfigError("threads must be ≥ 1")
    data_dir = pick("data_dir")
    if data_dir is not None and not Path(data_dir).is_dir():
        raise ConfigError(f"data directory {data_dir!r} does not exist")
    depth = _as_int("depth", pick("depth", 3))
    if not 1 <= depth <= 8:
        raise ConfigError("depth must be in [1, 8]")
    identity_order = _as_int("identity_order", file_cfg.get("identity_order", 122))
    if cmd == "asymptotics":
        bad = [f for f in families if f not in ("F", "G", "H", "K")]
        if bad:
            raise ConfigError(f"asymptotics supports F, G, H, K (got {', '.join(bad)})")
    if cmd == "eliminate":
        families = tuple(dict.fromkeys(SOURCE_OF.get(f, f) for f in families))
        bad = [f for f in families if f not in ("S", "T", "U")]
        if bad:
            raise ConfigError(f"elimination is implemented for S, T, U (got {', '.join(bad)})")
    return RunConfig(
        command=cmd,
        families=families,
        order=order,
        format=fmt,
        digits=digits,
        threads=threads,
        data_dir=data_dir,
        depth=depth,
        identity_order=identity_order,
        eliminate=bool(getattr(args, "eliminate", False)),
    )


# -- per-family work (top level so it can run in worker processes) -----------------


class StructuralError(RuntimeError):
    pass


def _compute_one(cfg: RunConfig, fam: str) -> dict:
    if fam in BIVARIATE:
        z_order = cfg.order + 1
        sol = solve(fam, z_order)
        _identity_warnings(sol, cfg)
        rows = [[str(c) for c in p.coeffs] for p in sol.series.coeffs]
        return {"family": fam, "order": cfg.order, "coefficients": rows}
    series = census(fam, cfg.order)
    if fam in ("F", "G", "H", "K"):
        src = solve(SOURCE_OF[fam], z_order_for(cfg.order))
        _identity_warnings(src, cfg)
    return {"family": fam, "order": cfg.order, "coefficients": [str(c) for c in series.coefficients]}


def _identity_warnings(sol, cfg: RunConfig) -> None:
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        identity_suite(sol, order=min(sol.order, cfg.identity_order), strict=False)
    for w in caught:
        print(f"warning: {w.message}", file=sys.stderr)


def _check(checks: list, family: str, name: str, bad, detail: str = "") -> None:
    checks.append(
        {
            "family": family,
            "check": name,
            "status": "pass" if bad is None else "fail",
            "first_failing_order": bad,
            "detail": detail,
        }
    )


def _verify_one(cfg: RunConfig, fam: str) -> list[dict]:
    checks: list[dict] = []
    order = cfg.order
    if fam in BIVARIATE:
        sol = solve(fam, order + 1)
        _check(checks, fam, "residual of defining equation", residual(sol))
        neg = first_negative(sol.series)
        _check(checks, fam, "nonnegative coefficients", None if neg is None else neg[0])
        _check(checks, fam, "x-degree at most 2n", degree_bound_violation(sol.series))
        report = identity_suite(sol, order=min(sol.order, cfg.identity_order), strict=False)
        for name, bad in report.checks.items():
            _check(checks, fam, f"identity: {name}", bad)
        if cfg.eliminate and fam in CENSUS_OF:
            checks += _elimination_checks(cfg, fam)
        return checks

    data = cfg.data_dir
    if fam in ("F", "G", "H", "K"):
        c = census(fam, order)
        neg = next((k for k, v in enumerate(c.coefficients) if v < 0), None)
        _check(checks, fam, "nonnegative coefficients", neg)
        try:
            q = load_equation(fam, data)
            rep = verify_algebraic(q, c.series, strict=False)
            _check(checks, fam, f"algebraic residual mod t^{c.series.order}", rep.first_nonzero, rep.hint)
        except (OSError, ValueError) as exc:
            _check(checks, fam, "algebraic residual", -1, f"cannot load equation: {exc}")
        if fam in ("F", "G"):
            rep = check_parametrization(fam, c, min(order, 30), strict=False)
            _check(checks, fam, "Lagrangean parametrization", rep.first_mismatch)
        if fam == "H":
            try:
                hstar_derivation_check(c)
                _check(checks, fam, "H* derivation chain", None)
            except IdentityViolation as exc:
                _check(checks, fam, "H* derivation chain", exc.order, str(exc))
        if cfg.eliminate and fam != "K":
            checks += _elimination_checks(cfg, SOURCE_OF[fam])
        return checks

    # Gstar / Hstar
    c = census(fam, order)
    neg = next((k for k, v in enumerate(c.coefficients) if v < 0), None)
    _check(checks, fam, "nonnegative coefficients", neg)
    base = census("G" if fam == "Gstar" else "H", order)
    excess = next((k for k, (a, b) in enumerate(zip(c.coefficients, base.coefficients)) if a > b), None)
    _check(checks, fam, f"{fam} <= {base.tag.value} coefficientwise", excess)
    if fam == "Gstar":
        rep = check_parametrization(fam, c, min(order, 30), strict=False)
        _check(checks, fam, "Lagrangean parametrization", rep.first_mismatch)
    return checks


def _elimination_checks(cfg: RunConfig, fam: str) -> list[dict]:
    checks: list[dict] = []
    eq = eliminate_quadratic(fam)
    if fam in REFERENCE_W0:
        ref = load_equation(REFERENCE_W0[fam], cfg.data_dir)
        _check(checks, fam, f"eliminant equals {REFERENCE_W0[fam]}", None if eq == ref else 0)
    target = CENSUS_OF[fam]
    cen = census(target, 40).series
    sub = substitute_census(eq, cen)
    ref = load_equation(target, cfg.data_dir).normalized()
    _check(checks, fam, f"eliminant after substitution equals equation of {target}", None if sub == ref else 0)
    return checks


def _fmt(x, digits: int) -> str:
    with mpmath.workdps(digits + 30):
        text = mpmath.nstr(x, digits + 25, strip_zeros=False)
    return format(Decimal(text), f".{digits}f")


def _asymptotics_one(cfg: RunConfig, fam: str) -> dict:
    q = load_equation(fam, cfg.data_dir)
    series = series_from_equation(q, cfg.order + 1)
    # the algebraic series must agree with the one from the functional equation
    probe = min(cfg.order, 40)
    solved = census(fam, probe)
    if series.truncate(probe + 1) != solved.series:
        raise StructuralError(f"{fam}: algebraic series disagrees with the functional equation")
    rho = smallest_positive_root(singular_candidates(q))
    fit = growth_constant(fam, series, rho, depth=cfg.depth, min_order=min(60, cfg.order - 1))
    row = {
        "family": fam,
        "order": cfg.order,
        "rho_low": _fmt(mpmath.mpf(rho.low.numerator) / rho.low.denominator, cfg.digits + 6),
        "rho_high": _fmt(mpmath.mpf(rho.high.numerator) / rho.high.denominator, cfg.digits + 6),
        "inv_rho": _fmt(fit.inv_rho, cfg.digits),
        "inv_rho_ratio_estimate": _fmt(fit.inv_rho_estimate, cfg.digits),
        "exponent": _fmt(fit.exponent_estimate, cfg.digits),
        "lambda": _fmt(fit.lambda_estimate, cfg.digits + 4),
        "lambda_error": _fmt(fit.lambda_error, cfg.digits + 4),
        "lambda_drift": _fmt(fit.lambda_drift, cfg.digits + 4),
        "orders_used": f"{fit.orders_used.start}-{fit.orders_used.stop - 1}",
    }
    if rho.exact is not None:
        row["rho_exact"] = f"{rho.exact.numerator}/{rho.exact.denominator}"
    if fam in ("H", "K"):
        ref = isolate_smallest_positive_root(load_polynomial(fam, cfg.data_dir))
        row["rho_reference_match"] = abs(ref.value(40) - rho.value(40)) < mpmath.mpf(10) ** -12
    if fam in ("G", "H"):
        star = derive_gstar if fam == "G" else derive_hstar
        from .census import CensusSeries

        base = CensusSeries(CensusTag(fam), series, cfg.order, 0)
        rep = star_ratio_check(base, star(base), rho, kind=fam, strict=False)
        row["star_ratio"] = _fmt(rep.extrapolated, cfg.digits)
        row["star_ratio_expected"] = _fmt(rep.expected, cfg.digits)
    return row


def _eliminate_one(cfg: RunConfig, fam: str) -> dict:
    eq = eliminate_quadratic(fam, order=max(cfg.order, 30))
    target = CENSUS_OF[fam]
    sub = substitute_census(eq, census(target, 40).series)
    out = {
        "family": fam,
        "equation_w0": [[i, j, str(c)] for (i, j), c in sorted(eq.terms().items())],
        "equation_census": [[i, j, str(c)] for (i, j), c in sorted(sub.terms().items())],
        "census": target,
    }
    if fam in REFERENCE_W0:
        out["matches_reference_w0"] = eq == load_equation(REFERENCE_W0[fam], cfg.data_dir)
    out["matches_reference_census"] = sub == load_equation(target, cfg.data_dir).normalized()
    return out


WORKERS = {
    "compute": _compute_one,
    "verify": _verify_one,
    "asymptotics": _asymptotics_one,
    "eliminate": _eliminate_one,
}


def _run_family(cfg: RunConfig, fam: str):
    return WORKERS[cfg.command](cfg, fam)


def run_families(cfg: RunConfig) -> list:
    """Results in family order, whatever the thread count."""
    if cfg.threads > 1 and len(cfg.families) > 1:
        with ProcessPoolExecutor(max_workers=min(cfg.threads, len(cfg.families))) as pool:
            futures = [pool.submit(_run_family, cfg, f) for f in cfg.families]
            return [fut.result() for fut in futures]
    return [_run_family(cfg, f) for f in cfg.families]


# -- emitters ------------------------------------------------------------------------


def emit_compute(results: list[dict], fmt: str) -> str:
    if fmt == "json":
        return "".join(json.dumps(r) + "\n" for r in results)
    buf = io.StringIO()
    if fmt == "csv":
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["family", "order", "index", "coefficients"])
        for r in results:
            if r["family"] in BIVARIATE:
                for n, row in enumerate(r["coefficients"]):
                    w.writerow([r["family"], r["order"], f"z^{n}", *row])
            else:
                w.writerow([r["family"], r["order"], "t", *r["coefficients"]])
        return buf.getvalue()
    for r in results:
        buf.write(f"{r['family']} (order {r['order']})\n")
        if r["family"] in BIVARIATE:
            for n, row in enumerate(r["coefficients"]):
                buf.write(f"  z^{n}: {' '.join(row) if row else '0'}\n")
        else:
            for n, c in enumerate(r["coefficients"]):
                buf.write(f"  t^{n}: {c}\n")
    return buf.getvalue()


def emit_rows(rows: list[dict], fmt: str) -> str:
    if fmt == "json":
        return "".join(json.dumps(r) + "\n" for r in rows)
    keys: list[str] = []
    for r in rows:
        for k in r:
            if k not in keys:
                keys.append(k)
    buf = io.StringIO()
    if fmt == "csv":
        w = csv.DictWriter(buf, fieldnames=keys, lineterminator="\n")
        w.writeheader()
        for r in rows:
            w.writerow({k: _cell(r.get(k)) for k in keys})
        return buf.getvalue()
    widths = {k: max(len(k), *(len(_cell(r.get(k))) for r in rows)) for k in keys}
    buf.write("  ".join(k.ljust(widths[k]) for k in keys).rstrip() + "\n")
    for r in rows:
        buf.write("  ".join(_cell(r.get(k)).ljust(widths[k]) for k in keys).rstrip() + "\n")
    return buf.getvalue()


def _cell(v) -> str:
    if v is None:
        return ""
    if isinstance(v, list):
        return ";".join(" ".join(str(x) for x in item) if isinstance(item, list) else str(item) for item in v)
    return str(v)


# -- entry point -----------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--family", "-f", action="append", help="family tag(s); repeat or comma-separate")
    common.add_argument("--order", "-n", help="highest exponent to compute (t for census series, z for S/T/U/V)")
    common.add_argument("--format", choices=("json", "csv", "text"), default=None)
    common.add_argument("--digits", help="decimals shown for asymptotic constants, 6..200")
    common.add_argument("--threads", help=f"worker processes (env {THREADS_ENV})")
    common.add_argument("--data-dir", dest="data_dir", help="directory with equation data files")
    common.add_argument("--depth", help="Richardson extrapolation depth (asymptotics)")
    common.add_argument("--config", help="plain-text 'key = value' config file")

    parser = argparse.ArgumentParser(prog="trienum", description="Exact enumeration of triangulations with degree constraints.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("compute", parents=[common], help="coefficient tables")
    v = sub.add_parser("verify", parents=[common], help="run every applicable check")
    v.add_argument("--eliminate", action="store_true", help="also re-derive equations by elimination")
    sub.add_parser("asymptotics", parents=[common], help="singularities and growth constants")
    sub.add_parser("eliminate", parents=[common], help="quadratic-method elimination for S, T, U")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = build_config(args)
    except ConfigError as exc:
        print(f"trienum: error: {exc}", file=sys.stderr)
        return 2
    try:
        results = run_families(cfg)
    except (IdentityViolation, NotDivisible, BadSupport, NonIntegral, StructuralError, ResidualNonzero) as exc:
        print(f"trienum: internal check failed: {exc}", file=sys.stderr)
        return 3
    except (OSError, ValueError) as exc:
        print(f"trienum: error: {exc}", file=sys.stderr)
        return 2

    if cfg.command == "compute":
        sys.stdout.write(emit_compute(results, cfg.format))
        return 0
    if cfg.command == "verify":
        checks = [c for group in results for c in group]
        sys.stdout.write(emit_rows(checks, cfg.format))
        return 0 if all(c["status"] == "pass" for c in checks) else 1
    if cfg.command == "eliminate":
        sys.stdout.write(emit_rows(results, cfg.format))
        ok = all(r.get("matches_reference_census", True) and r.get("matches_reference_w0", True) for r in results)
        return 0 if ok else 1
    sys.stdout.write(emit_rows(results, cfg.format))
    return 0


if __name__ == "__main__":  # pragma: no cover
    raise SystemExit(main())
