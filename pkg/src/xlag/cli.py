"""``xlag`` command-line front end.

Every subcommand builds a report document

    {"command": ..., "params": {...}, "results": [...], "diagnostics": {...}, "version": ...}

and writes it to stdout as JSON (default) or as CSV rows.  Exit codes: 0 on
success, 1 on numerical failure, 2 on invalid arguments or configuration.
"""

from __future__ import annotations

import argparse
import csv
import datetime
import io
import json
import math
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, fields

import numpy as np

from . import __version__
from .bvp import ShootingConfig, bc_limit, shoot_eigenvalues
from .classify import Endpoint, EndpointClass, classify_endpoint, k_grid, threshold_sweep
from .coefficients import Variant, as_k, check_equivalence
from .errors import ConfigError, DomainError, NumericalError
from .frobenius import phi1, wronskian_check
from .polynomial import Polynomial
from .quadrature import expand_function, gram_matrix
from .xpoly import (
    MAX_INDEX,
    assert_no_constant_eigenpolynomial,
    eigen_residual,
    family,
    sample_points,
)


@dataclass(frozen=True)
class RunConfig:
    quad_tol: float = 1e-13
    eigen_tol: float = 1e-9
    bisect_tol: float = 1e-9
    ode_rtol: float = 1e-10
    nodes: int = 200
    engine: str = "gauss"
    format: str = "json"
    svg: str | None = None
    jobs: int = 1

    def __post_init__(self):
        for name in ("quad_tol", "eigen_tol", "bisect_tol", "ode_rtol"):
            v = getattr(self, name)
            if not (isinstance(v, float) and math.isfinite(v) and v > 0):
                raise ConfigError(f"{name} must be a positive number")
        if self.nodes < 2:
            raise ConfigError("nodes must be at least 2")
        if self.jobs < 1:
            raise ConfigError("jobs must be at least 1")
        if self.engine not in ("gauss", "adaptive"):
            raise ConfigError(f"engine must be gauss or adaptive, got {self.engine!r}")
        if self.format not in ("json", "csv"):
            raise ConfigError(f"format must be json or csv, got {self.format!r}")

    def shooting(self) -> ShootingConfig:
        return ShootingConfig(rtol=self.ode_rtol, bisect_tol=self.bisect_tol)


_CONFIG_TYPES = {f.name: f.type for f in fields(RunConfig)}


def _coerce(key, raw):
    kind = _CONFIG_TYPES[key]
    try:
        if kind == "float":
            return float(raw)
        if kind == "int":
            return int(raw)
    except ValueError:
        raise ConfigError(f"bad value for {key}: {raw!r}") from None
    return raw


def parse_config(text) -> dict:
    """Flat ``key = value`` lines; ``#`` starts a comment; unknown keys are rejected."""
    out = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"config line {lineno}: expected key = value")
        key, raw = (s.strip() for s in line.split("=", 1))
        key = key.replace("-", "_")
        if key not in _CONFIG_TYPES:
            raise ConfigError(f"config line {lineno}: unknown key {key!r}")
        out[key] = _coerce(key, raw)
    return out


def load_config(path, overrides) -> RunConfig:
    values = {}
    if path:
        try:
            with open(path, encoding="utf-8") as fh:
                values = parse_config(fh.read())
        except OSError as exc:
            raise ConfigError(f"cannot read config file: {exc}") from None
    values.update({k: v for k, v in overrides.items() if v is not None})
    return RunConfig(**values)


def _clean(obj):
    # JSON-safe, deterministic: numpy scalars/arrays to Python, non-finite floats to strings
    if isinstance(obj, dict):
        return {str(k): _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple, np.ndarray)):
        return [_clean(v) for v in obj]
    if isinstance(obj, (np.bool_, bool)):
        return bool(obj)
    if isinstance(obj, (np.integer, int)):
        return int(obj)
    if isinstance(obj, (np.floating, float)):
        v = float(obj)
        return v if math.isfinite(v) else str(v)
    if hasattr(obj, "value") and isinstance(obj.value, str):
        return obj.value
    return obj


def make_document(command, params, results, diagnostics, reproducible):
    diag = dict(diagnostics)
    if not reproducible:
        diag["generated_at"] = datetime.datetime.now(datetime.timezone.utc).isoformat()
    return _clean({
        "command": command,
        "params": params,
        "results": results,
        "diagnostics": diag,
        "version": __version__,
    })


COLUMNS = {
    "poly": ["index", "eigenvalue", "degree", "coefficients", "polynomial", "residual"],
    "gram": ["i", "j", "value", "relative"],
    "classify": ["k", "verdict", "phi1", "phi2", "phi2_exponent", "phi2_partial_last", "oscillatory"],
    "spectrum": ["index", "lambda", "bracket_lo", "bracket_hi", "nearest_integer", "deviation"],
    "bracket": ["x", "bracket"],
    "equiv": ["variant", "label", "passed", "relative_discrepancy"],
    "report": ["suite", "k", "variant", "status", "value", "detail"],
}


def render(doc, fmt) -> str:
    if fmt == "json":
        return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"
    rows = doc["results"]
    header = list(COLUMNS.get(doc["command"], []))
    for r in rows:
        for key in r:
            if key not in header:
                header.append(key)
    buf = io.StringIO()
    w = csv.writer(buf)
    w.writerow(header)
    for r in rows:
        w.writerow([_cell(r.get(h, "")) for h in header])
    return buf.getvalue()


def _cell(v):
    if isinstance(v, (list, dict)):
        return json.dumps(v)
    return v


def _polynomial_text(P: Polynomial) -> str:
    terms = []
    for j, c in enumerate(P.coeffs):
        if c:
            terms.append(f"{c:.17g}" + ("" if j == 0 else "*x" if j == 1 else f"*x^{j}"))
    return " + ".join(terms) if terms else "0"


def cmd_poly(k, n_max, cfg):
    k = as_k(k)
    if int(n_max) != n_max or n_max < 0:
        raise DomainError("n-max must be a nonnegative integer")
    if n_max > MAX_INDEX:
        raise DomainError(f"n-max={n_max} exceeds the configured cap {MAX_INDEX}")
    fam = family(k)
    rows = []
    worst = 0.0
    for n in range(int(n_max) + 1):
        P = fam.member(n)
        res = eigen_residual(k, n, P)
        worst = max(worst, res)
        rows.append({
            "index": n + 1,
            "eigenvalue": float(n),
            "degree": P.degree,
            "coefficients": P.coeffs.tolist(),
            "polynomial": _polynomial_text(P),
            "residual": res,
        })
    diag = {
        "max_residual": worst,
        "residual_tol": cfg.eigen_tol,
        "all_within_tol": worst <= cfg.eigen_tol,
        "first_member_exact": fam.member(0) == phi1(k),
    }
    if cfg.svg:
        _plot_poly(cfg.svg, k, [fam.member(n) for n in range(int(n_max) + 1)])
    return {"k": k, "n_max": int(n_max)}, rows, diag


def cmd_gram(k, size, cfg):
    k = as_k(k)
    other = "adaptive" if cfg.engine == "gauss" else "gauss"
    G = gram_matrix(k, size, cfg.engine, nodes=cfg.nodes, tol=cfg.quad_tol)
    H = gram_matrix(k, size, other, nodes=cfg.nodes, tol=cfg.quad_tol)
    rel = G.relative()
    d = np.sqrt(np.diag(G.entries))
    gap = float(np.max(np.abs(G.entries - H.entries) / np.outer(d, d)))
    rows = [
        {"i": i + 1, "j": j + 1, "value": float(G.entries[i, j]), "relative": float(rel[i, j])}
        for i in range(G.size)
        for j in range(G.size)
    ]
    diag = {
        "engine": cfg.engine,
        "max_relative_offdiag": G.max_relative_offdiag,
        "positive_definite": G.is_positive_definite(),
        "engine_gap": gap,
        "cross_engine": other,
    }
    return {"k": k, "size": int(size), "engine": cfg.engine, "nodes": cfg.nodes}, rows, diag


def cmd_classify(variant, grid, endpoint, cfg):
    variant = Variant.parse(variant)
    ep = Endpoint.parse(endpoint)
    rep = threshold_sweep(variant, grid, ep, workers=cfg.jobs)
    rows = []
    evidence = []
    for k, verdict in zip(rep.ks, rep.verdicts):
        c = classify_endpoint(k, variant, ep)
        evidence.append(c)
        rows.append({
            "k": k,
            "verdict": verdict,
            "phi1": c.phi1.verdict,
            "phi2": c.phi2.verdict,
            "phi2_exponent": c.phi2.exponent,
            "phi2_partial_last": float(c.phi2.partial_integrals[-1]),
            "oscillatory": c.oscillation.oscillatory,
        })
    diag = {
        "k_star": rep.k_star,
        "monotone": rep.monotone,
        "degenerate": rep.degenerate,
        "borderline_k": [k for k, v in zip(rep.ks, rep.verdicts) if v is EndpointClass.BORDERLINE],
    }
    if cfg.svg:
        _plot_classify(cfg.svg, evidence)
    return {"variant": variant, "k_grid": list(rep.ks), "endpoint": ep}, rows, diag


def cmd_spectrum(k, lam_min, lam_max, cfg):
    k = as_k(k)
    if not lam_max > lam_min:
        raise DomainError("lambda-max must exceed lambda-min")
    res = shoot_eigenvalues(k, (lam_min, lam_max), cfg.shooting())
    rows = []
    for i, e in enumerate(res.eigenvalues):
        nearest = round(e.value)
        rows.append({
            "index": i,
            "lambda": e.value,
            "bracket_lo": e.interval[0],
            "bracket_hi": e.interval[1],
            "nearest_integer": nearest,
            "deviation": abs(e.value - nearest),
        })
    diag = {
        "count": len(rows),
        "no_sign_change": res.no_sign_change,
        "x_max": res.x_max,
        "delta": res.delta,
        "max_deviation": max((r["deviation"] for r in rows), default=0.0),
    }
    if cfg.svg:
        _plot_spectrum(cfg.svg, res)
    return {"k": k, "lambda_min": float(lam_min), "lambda_max": float(lam_max)}, rows, diag


def _expected_bc_exponent(k, variant):
    return k if variant is Variant.NOTE else k + 1.0


def cmd_bracket(k, variant, n, cfg):
    k = as_k(k)
    variant = Variant.parse(variant)
    if int(n) != n or n < 0:
        raise DomainError("n must be a nonnegative integer")
    P = family(k).member(int(n))
    b = bc_limit(k, variant, P)
    rows = [{"x": float(x), "bracket": float(v)} for x, v in zip(b.points, b.values)]
    diag = {
        "verdict": b.verdict,
        "exponent": b.exponent,
        "expected_exponent": _expected_bc_exponent(k, variant),
        "identically_zero": b.identically_zero,
    }
    if cfg.svg:
        _plot_bracket(cfg.svg, b)
    return {"k": k, "variant": variant, "n": int(n)}, rows, diag


def _equivalence_samples(k):
    fam = family(k)
    return [fam.member(n) for n in range(4)] + [Polynomial([1.0, -2.0, 0.5, 0.25])]


def cmd_equiv(k, cfg):
    k = as_k(k)
    pts = np.geomspace(0.05, 30.0, 40)
    rows = []
    for v in Variant:
        r = check_equivalence(k, v, _equivalence_samples(k), pts)
        rows.append({
            "variant": v,
            "label": v.label,
            "passed": r.passed,
            "relative_discrepancy": r.relative_discrepancy,
        })
    diag = {"equivalent_variants": [r["variant"] for r in rows if r["passed"]]}
    return {"k": k}, rows, diag


DENSITY_K, DENSITY_N = 1.0, 40
REPORT_GRID = (0.25, 6.0, 0.25)


def _row(suite, k, variant, status, value, detail):
    return {"suite": suite, "k": k, "variant": variant, "status": status, "value": value, "detail": detail}


def _status(ok):
    return "pass" if ok else "fail"


def _report_for_k(k, cfg):
    rows = []
    res = max(eigen_residual(k, n) for n in range(21))
    exact = family(k).member(0) == phi1(k)
    rows.append(_row("poly", k, "", _status(res <= cfg.eigen_tol and exact), res,
                     "max scaled residual n<=20; n=0 equals x+k+1" if exact else "n=0 differs from x+k+1"))
    lam_grid = np.arange(-2.0, 6.0 + 1e-9, 0.5)
    nc = assert_no_constant_eigenpolynomial(k, lam_grid)
    rows.append(_row("no_constant_member", k, "", _status(nc.confirmed), len(nc.rows), "lambda in [-2, 6] step 0.5"))
    G = gram_matrix(k, 12, "gauss", nodes=cfg.nodes)
    H = gram_matrix(k, 12, "adaptive", tol=cfg.quad_tol)
    d = np.sqrt(np.diag(G.entries))
    gap = float(np.max(np.abs(G.entries - H.entries) / np.outer(d, d)))
    rows.append(_row("gram", k, "", _status(G.max_relative_offdiag <= 1e-8 and gap <= 1e-10),
                     G.max_relative_offdiag, f"12x12; engine gap {gap:.3e}"))
    sp = shoot_eigenvalues(k, (-0.5, 5.5), cfg.shooting())
    dev = float(np.max(np.abs(sp.values - np.arange(6)))) if len(sp.values) == 6 else math.inf
    stray = [v for v in sp.values if 0.2 < v < 0.8]
    rows.append(_row("spectrum", k, "", _status(dev <= 1e-5 and not stray), dev,
                     f"{len(sp.values)} eigenvalues in [-0.5, 5.5]"))
    verdicts0 = {}
    for v in Variant:
        ci = classify_endpoint(k, v, Endpoint.INF)
        rows.append(_row("endpoint_inf", k, v, _status(ci.verdict is EndpointClass.LP), ci.verdict.value,
                         f"phi2 partial integral on [1,200] = {ci.phi2.partial_integrals[-1]:.3e}"))
        c0 = classify_endpoint(k, v, Endpoint.ZERO)
        verdicts0[v] = c0.verdict
        expected_lc = k < 3 if v is Variant.NOTE else k < 1
        status = "borderline" if c0.verdict is EndpointClass.BORDERLINE else _status(
            (c0.verdict is EndpointClass.LCNO) == expected_lc)
        rows.append(_row("endpoint_0", k, v, status, c0.verdict.value,
                         f"phi2 integrand exponent {c0.phi2.exponent:.4f}"))
    agree = verdicts0[Variant.NOTE] is verdicts0[Variant.DERIVED]
    rows.append(_row("variant_discrepancy", k, "", "agree" if agree else "discrepancy",
                     f"{verdicts0[Variant.NOTE].value} / {verdicts0[Variant.DERIVED].value}",
                     "endpoint-0 verdict under note p / derived p"))
    for v in Variant:
        exps = [bc_limit(k, v, family(k).member(n)) for n in range(6)]
        fitted = [b.exponent for b in exps if not b.identically_zero]
        target = _expected_bc_exponent(k, v)
        worst = max(abs(e - target) for e in fitted)
        ok = all(b.satisfied for b in exps) and worst <= 0.05
        rows.append(_row("bc_limit", k, v, _status(ok), worst, f"|exponent - {target:g}| over n<=5"))
        wr = wronskian_check(k, v, np.linspace(0.05, 20.0, 40))
        rows.append(_row("wronskian", k, v, _status(wr.max_deviation <= 1e-8), wr.max_deviation,
                         "max |p W(phi1, phi2) - 1| on [0.05, 20]"))
    eq = {v: check_equivalence(k, v, _equivalence_samples(k), np.geomspace(0.05, 30.0, 40)) for v in Variant}
    passing = [v.value for v in Variant if eq[v].passed]
    rows.append(_row("equivalence", k, "", _status(len(passing) == 1), ",".join(passing) or "none",
                     "variants whose SL form matches the original equation"))
    return rows


def cmd_report(k_list, cfg):
    ks = [as_k(k) for k in k_list]
    if not ks:
        raise DomainError("report needs at least one k")
    if cfg.jobs > 1 and len(ks) > 1:
        with ThreadPoolExecutor(max_workers=cfg.jobs) as pool:
            per_k = list(pool.map(lambda k: _report_for_k(k, cfg), ks))
    else:
        per_k = [_report_for_k(k, cfg) for k in ks]
    rows = [r for block in per_k for r in block]
    grid = k_grid(*REPORT_GRID)
    sweeps = {v: threshold_sweep(v, grid, Endpoint.ZERO) for v in Variant}
    for v, target in ((Variant.NOTE, 3.0), (Variant.DERIVED, 1.0)):
        s = sweeps[v]
        ok = s.k_star is not None and abs(s.k_star - target) <= REPORT_GRID[2] and s.monotone
        rows.append(_row("threshold_sweep", "", v, _status(ok), s.k_star, f"expected k* = {target:g}"))
    rows.append(_row("variant_discrepancy", "", "", "discrepancy",
                     f"{sweeps[Variant.NOTE].k_star} / {sweeps[Variant.DERIVED].k_star}",
                     "endpoint-0 limit-circle threshold under note p / derived p"))
    ex = expand_function(DENSITY_K, lambda x: np.ones_like(x), DENSITY_N)
    ok = ex.strictly_decreasing and ex.residuals[-1] < 0.25 * ex.residuals[0]
    rows.append(_row("density", DENSITY_K, "", _status(ok), float(ex.residuals[-1]),
                     f"target 1, N={DENSITY_N}; initial {ex.residuals[0]:.6e}"))
    counts = {}
    for r in rows:
        counts[r["status"]] = counts.get(r["status"], 0) + 1
    diag = {
        "status_counts": dict(sorted(counts.items())),
        "failures": [f"{r['suite']}@{r['k']}{'/' + str(r['variant'].value) if r['variant'] else ''}"
                     for r in rows if r["status"] == "fail"],
        "borderline": [f"{r['suite']}@{r['k']}/{r['variant'].value}" for r in rows if r["status"] == "borderline"],
    }
    return {"k_list": ks}, rows, diag


def _pyplot():
    try:
        import matplotlib

        matplotlib.use("Agg")
        import matplotlib.pyplot as plt
    except ImportError:
        raise ConfigError("--svg needs matplotlib (pip install artifact[plot])") from None
    matplotlib.rcParams["svg.hashsalt"] = "xlag"
    return plt


def _save(fig, path):
    try:
        fig.savefig(path, format="svg", metadata={"Date": None})
    except OSError as exc:
        raise ConfigError(f"cannot write SVG: {exc}") from None
    finally:
        fig.clf()


def _plot_poly(path, k, members):
    plt = _pyplot()
    fig, ax = plt.subplots()
    x = np.linspace(0.0, sample_points(k, len(members) - 1)[-1], 400)
    for n, P in enumerate(members):
        y = P(x)
        ax.plot(x, y / np.max(np.abs(y)), label=f"n={n}")
    ax.set_xlabel("x")
    ax.set_ylabel("member / max |member|")
    ax.legend(fontsize="small")
    _save(fig, path)


def _plot_classify(path, evidence):
    plt = _pyplot()
    fig, ax = plt.subplots()
    for c in evidence:
        e = c.phi2
        ax.loglog(e.cutoffs, e.partial_integrals, marker="o", label=f"k={c.k:g}")
    ax.set_xlabel("cutoff")
    ax.set_ylabel("partial integral of phi2^2 w")
    ax.legend(fontsize="x-small", ncol=2)
    _save(fig, path)


def _plot_spectrum(path, res):
    plt = _pyplot()
    fig, ax = plt.subplots()
    ax.plot(res.scan_lambdas, res.scan_miss, marker=".")
    for e in res.eigenvalues:
        ax.axvline(e.value, color="grey", lw=0.5)
    ax.set_xlabel("lambda")
    ax.set_ylabel("miss function")
    _save(fig, path)


def _plot_bracket(path, b):
    plt = _pyplot()
    fig, ax = plt.subplots()
    ax.loglog(b.points, np.abs(b.values) + 1e-300, marker="o")
    ax.set_xlabel("x")
    ax.set_ylabel("|[f, phi1](x)|")
    _save(fig, path)


def _parse_grid(text):
    try:
        a, b, step = (float(s) for s in text.split(":"))
    except ValueError:
        raise DomainError("k-grid must look like start:stop:step") from None
    return k_grid(a, b, step)


def _parse_k_list(values):
    out = []
    for item in values or []:
        for s in str(item).split(","):
            s = s.strip()
            if s:
                try:
                    out.append(float(s))
                except ValueError:
                    raise DomainError(f"bad k value {s!r}") from None
    return out


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise ConfigError(message)


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["json", "csv"], default=None)
    common.add_argument("--svg", metavar="PATH", default=None)
    common.add_argument("--config", metavar="PATH", default=None)
    common.add_argument("--engine", choices=["gauss", "adaptive"], default=None)
    common.add_argument("--jobs", type=int, default=None, help="parallel work items")
    common.add_argument("--reproducible", action="store_true", help="omit the timestamp")

    p = _Parser(prog="xlag", description="X1-Laguerre polynomials: construction and checks.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("poly", parents=[common], help="coefficients and residuals")
    s.add_argument("--k", type=float, required=True)
    s.add_argument("--n-max", type=int, default=5)

    s = sub.add_parser("gram", parents=[common], help="Gram matrix of the first members")
    s.add_argument("--k", type=float, required=True)
    s.add_argument("--size", type=int, default=12)

    s = sub.add_parser("classify", parents=[common], help="endpoint classification sweep")
    s.add_argument("--variant", choices=["note", "derived"], default="note")
    s.add_argument("--k-grid", default="0.25:6:0.25")
    s.add_argument("--endpoint", choices=["0", "inf"], default="0")

    s = sub.add_parser("spectrum", parents=[common], help="eigenvalues by shooting")
    s.add_argument("--k", type=float, required=True)
    s.add_argument("--lambda-min", type=float, default=-0.5)
    s.add_argument("--lambda-max", type=float, default=5.5)

    s = sub.add_parser("bracket", parents=[common], help="boundary bracket decay at 0")
    s.add_argument("--k", type=float, required=True)
    s.add_argument("--variant", choices=["note", "derived"], default="note")
    s.add_argument("--n", type=int, default=1)

    s = sub.add_parser("equiv", parents=[common], help="SL form vs the original equation")
    s.add_argument("--k", type=float, required=True)

    s = sub.add_parser("report", parents=[common], help="consolidated check report")
    s.add_argument("--k", action="append", default=None, help="k values (repeat or comma-separate)")
    return p


PLOTTED = ("poly", "classify", "spectrum", "bracket")


def run(argv=None):
    """Parse, execute and render; returns the rendered text or raises."""
    args = build_parser().parse_args(argv)
    cfg = load_config(args.config, {"format": args.format, "svg": args.svg,
                                    "engine": args.engine, "jobs": args.jobs})
    cmd = args.command
    if cfg.svg and cmd not in PLOTTED:
        raise ConfigError(f"--svg is not available for {cmd}")
    if cmd == "poly":
        params, rows, diag = cmd_poly(args.k, args.n_max, cfg)
    elif cmd == "gram":
        params, rows, diag = cmd_gram(args.k, args.size, cfg)
    elif cmd == "classify":
        params, rows, diag = cmd_classify(args.variant, _parse_grid(args.k_grid), args.endpoint, cfg)
    elif cmd == "spectrum":
        params, rows, diag = cmd_spectrum(args.k, args.lambda_min, args.lambda_max, cfg)
    elif cmd == "bracket":
        params, rows, diag = cmd_bracket(args.k, args.variant, args.n, cfg)
    elif cmd == "equiv":
        params, rows, diag = cmd_equiv(args.k, cfg)
    else:
        ks = _parse_k_list(args.k) if args.k is not None else [0.5, 1.0, 2.0, 5.0]
        params, rows, diag = cmd_report(ks, cfg)
    doc = make_document(cmd, params, rows, diag, args.reproducible)
    return render(doc, cfg.format)


def main(argv=None) -> int:
    try:
        text = run(argv)
    except (DomainError, ConfigError) as exc:
        print(f"xlag: error: {exc}", file=sys.stderr)
        return 2
    except NumericalError as exc:
        print(f"xlag: numerical failure: {exc}", file=sys.stderr)
        return 1
    sys.stdout.write(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
