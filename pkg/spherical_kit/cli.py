#!/usr/bin/env python3
"""
Command-line front end.

    python -m spherical_kit.cli bottom --n 2 --m 3 --mu wedge:1,0
    python -m spherical_kit.cli spherical --n 2 --m 2 --mu rankone:1,0 --degree-bound 1
    python -m spherical_kit.cli casimir-check --n 1 --m 1 --mu wedge:0,0
    python -m spherical_kit.cli selftest

Exit status: 0 ok, 2 invalid job, 3 a check failed, 4 computation error.
"""
import argparse
import itertools
import json
import logging
import pathlib
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

import numpy as np
import pandas as pd
import yaml
from cerberus import Validator
from dotenv import load_dotenv

from .bottoms import Family, MuSpec, bottom_elements, enumerate_pg_mu, find_label, in_spectrum, su9_counterexample
from .cache import cache_key, open_cache
from .casimir import (
    DiagFunc,
    apply_radial,
    build_krep,
    expand_in_basis,
    krep_homomorphism_check,
    omega_m_bootstrap,
    omega_m_direct,
    omega_m_scalar,
)
from .errors import JobValidationError, NotInSpan, SphericalKitError
from .oracle import branch_multiplicity, m_type_check, spectrum_agrees, tensor_check_gdec
from .orthogonality import (
    det_S_check,
    det_q_check,
    exact_inner,
    expected_norm,
    float_inner,
    indecomposable_check,
    psd_samples,
    weight_closed_forms,
)
from .rootdata import RankPair, Weight, casimir_eigenvalue, dominance_leq, spherical_generator
from .spherical import (
    SphericalFunction,
    braid_check,
    build_f_basis,
    closure,
    ladder_recurrence_check,
    r_matrix,
    radial_check,
    solve_in_basis,
    zonal_phi,
)
from .trigring import CosPoly, TrigPoly

log = logging.getLogger("cli")

CFG_PATH = pathlib.Path(__file__).parents[1] / "config.yaml"
CFG = yaml.safe_load(CFG_PATH.read_text())
CLI_CFG = CFG["cli"]

EXIT_OK, EXIT_USAGE, EXIT_CHECK, EXIT_INTERNAL = 0, 2, 3, 4

# ---------- schemas ----------
_RANK = {
    "n": {"type": "integer", "required": True, "min": 1},
    "m": {"type": "integer", "required": True, "min": 1},
}
_MU = {
    "family": {"type": "string", "required": True, "allowed": ["wedge", "rankone"]},
    "p1": {"type": "integer", "required": True, "min": 0},
    "p2": {"type": "integer", "required": True, "min": 0},
}
_OUTPUT = {
    "format": {"type": "string", "allowed": ["json", "table"]},
    "float": {"type": "boolean"},
    "cache_dir": {"type": "string", "nullable": True},
    "emit_samples": {"type": "string", "nullable": True},
    "workers": {"type": "integer", "min": 1},
}
_INTS = {"type": "list", "schema": {"type": "integer"}, "nullable": True}

SCHEMAS = {
    "BOTTOM": {**_RANK, **_MU, **_OUTPUT, "degree_bound": {"type": "integer", "min": 0}},
    "SPHERICAL": {
        **_RANK, **_MU, **_OUTPUT,
        "degree_bound": {"type": "integer", "min": 0},
        "bottom": {"type": "integer", "min": 0, "nullable": True},
        "degrees": {**_INTS, "schema": {"type": "integer", "min": 0}},
    },
    "ZONAL": {**_RANK, **_OUTPUT, "i": {"type": "integer", "required": True, "min": 0}},
    "CASIMIR_CHECK": {**_RANK, **_MU, **_OUTPUT, "degree_bound": {"type": "integer", "min": 0}},
    "ORTHOGONALITY": {**_RANK, **_MU, **_OUTPUT, "degree_bound": {"type": "integer", "min": 0}},
    "BRANCH": {
        **_RANK, **_MU, **_OUTPUT,
        "degree_bound": {"type": "integer", "min": 0},
        "lam": {**_INTS, "schema": {"type": "integer", "min": 0}},
    },
    "SELFTEST": {**_OUTPUT},
}


def _schema_name(cmd: str) -> str:
    return cmd.upper().replace("-", "_")


def validate(cmd: str, job: dict) -> Tuple[Optional[RankPair], Optional[MuSpec]]:
    """Schema validation followed by the cross-field invariants."""
    v = Validator(SCHEMAS[_schema_name(cmd)])
    if not v.validate(job):
        log.error("Validation failed: %s", v.errors)
        raise JobValidationError(v.errors)
    if "n" not in job:
        return None, None
    try:
        ctx = RankPair(job["n"], job["m"])
        mu = MuSpec(ctx, Family(job["family"]), job["p1"], job["p2"]) if "family" in job else None
    except ValueError as e:
        raise JobValidationError({"rank": [str(e)]}) from e
    if job.get("degrees") is not None and len(job["degrees"]) != ctx.n:
        raise JobValidationError({"degrees": [f"need {ctx.n} entries"]})
    if job.get("lam") is not None and len(job["lam"]) != ctx.rank:
        raise JobValidationError({"lam": [f"need {ctx.rank} entries"]})
    if job.get("i") is not None and job["i"] > ctx.n:
        raise JobValidationError({"i": [f"must be at most n={ctx.n}"]})
    return ctx, mu


# ---------- shared pieces ----------
def _frac(x) -> str:
    return str(Fraction(x))


def _solve_task(task):
    mu, label, basis, R = task
    return solve_in_basis(mu, label, basis, R)


def solve_labels(mu: MuSpec, labels, workers: int = 1) -> List[SphericalFunction]:
    """Solve several labels over one shared F-basis and R-matrix."""
    ctx = mu.ctx
    needed = set()
    for label in labels:
        needed.update(closure(mu, label))
    # enumerate_pg_mu order is a linear extension of dominance
    top = max(l.sph_degree for l in needed)
    wanted = [l for l in enumerate_pg_mu(mu, top) if l in needed]
    basis = build_f_basis(mu, 0, labels=wanted)
    R = r_matrix(mu, basis)
    tasks = []
    for label in labels:
        idx = [k for k, b in enumerate(basis) if dominance_leq(ctx, b.label.weight, label.weight)]
        tasks.append((mu, label, [basis[k] for k in idx], [[R[a][b] for b in idx] for a in idx]))
    if workers > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(_solve_task, tasks))
    return [_solve_task(t) for t in tasks]


def _entries_from_json(n: int, entries: list) -> Dict[tuple, TrigPoly]:
    out = {}
    for e in entries:
        if "cos" in e:
            out[tuple(e["mtype"])] = CosPoly.from_json(n, e["cos"]).to_trig()
        else:
            out[tuple(e["mtype"])] = TrigPoly.from_json(n, e["trig"])
    return out


def emit_samples(path: str, n: int, results: List[dict]):
    """Evaluation grid of every entry on [0, pi/2]^n, written as CSV."""
    axis = np.linspace(0.0, np.pi / 2, int(CLI_CFG["sample_points"]))
    grid = np.array(list(itertools.product(axis, repeat=n)))
    frames = []
    for res in results:
        for mtype, p in _entries_from_json(n, res["entries"]).items():
            df = pd.DataFrame(grid, columns=[f"t{j}" for j in range(1, n + 1)])
            df["label"] = json.dumps(res["label"], sort_keys=True)
            df["mtype"] = json.dumps(list(mtype))
            df["value"] = p.evaluate(grid).real
            frames.append(df)
    pd.concat(frames, ignore_index=True).to_csv(path, index=False)
    log.info("wrote %d samples to %s", sum(len(f) for f in frames), path)


# ---------- subcommands ----------
def _label_row(ctx, label) -> dict:
    return {
        "label": label.to_json(),
        "weight": label.weight.to_json(),
        "eigenvalue": _frac(casimir_eigenvalue(ctx, label.weight)),
    }


def cmd_bottom(job, ctx, mu, cache) -> Tuple[dict, bool]:
    """Bottom of the spectrum, plus every label up to the degree bound (0 by default)."""
    bottoms = [{"source": list(e.source), **_label_row(ctx, find_label(mu, e.source, (0,) * ctx.n))}
               for e in bottom_elements(mu)]
    spectrum = [_label_row(ctx, l) for l in enumerate_pg_mu(mu, job.get("degree_bound", 0))]
    return {"mu": mu.tag, "n": ctx.n, "m": ctx.m, "bottoms": bottoms, "spectrum": spectrum}, True


def cmd_spherical(job, ctx, mu, cache) -> Tuple[dict, bool]:
    elements = bottom_elements(mu)
    if job.get("bottom") is not None and job["bottom"] >= len(elements):
        raise JobValidationError({"bottom": [f"only {len(elements)} bottoms"]})
    if job.get("degrees") is not None:
        source = elements[job.get("bottom") or 0].source
        labels = [find_label(mu, source, tuple(job["degrees"]))]
    else:
        labels = enumerate_pg_mu(mu, job.get("degree_bound", CLI_CFG["degree_bound"]))
        if job.get("bottom") is not None:
            labels = [l for l in labels if l.source == elements[job["bottom"]].source]
    results: Dict[int, dict] = {}
    missing = []
    for k, label in enumerate(labels):
        key = cache_key({"cmd": "spherical", "n": ctx.n, "m": ctx.m, "mu": mu.tag,
                         "label": label.to_json(), "source": list(label.source)})
        hit = cache.get(key)
        if hit is not None:
            results[k] = hit
        else:
            missing.append((k, key, label))
    if missing:
        solved = solve_labels(mu, [l for _, _, l in missing], int(job.get("workers", CLI_CFG["workers"])))
        for (k, key, _), phi in zip(missing, solved):
            payload = phi.to_json()
            payload["radial_ok"] = radial_check(mu, phi)
            cache.put(key, payload)
            results[k] = payload
    ordered = [results[k] for k in range(len(labels))]
    if job.get("emit_samples"):
        emit_samples(job["emit_samples"], ctx.n, ordered)
    meta = {"omega_m_source": build_krep(mu).omega_source}
    return {"mu": mu.tag, "n": ctx.n, "m": ctx.m, "meta": meta, "functions": ordered}, \
        all(r["radial_ok"] for r in ordered)


def cmd_zonal(job, ctx, mu, cache) -> Tuple[dict, bool]:
    i = job["i"]
    phi, coefs = zonal_phi(ctx, i)
    zero = MuSpec.wedge(ctx, 0, 0)
    d_i = 2 * i * (ctx.m + ctx.n - i + 1)
    lam = spherical_generator(ctx, i) if i else None
    F = DiagFunc({(): phi})
    checks = {
        "value_at_zero": phi.eval_at_zero() == 1,
        "eigen": apply_radial(zero, F) == F.scale(d_i),
        "eigenvalue_matches": lam is None or casimir_eigenvalue(ctx, lam) == d_i,
    }
    payload = {
        "n": ctx.n, "m": ctx.m, "i": i, "eigenvalue": d_i,
        "psi_coefficients": [_frac(c) for c in coefs],
        "checks": checks,
    }
    return payload, all(checks.values())


def cmd_casimir_check(job, ctx, mu, cache) -> Tuple[dict, bool]:
    checks = {"homomorphism": krep_homomorphism_check(mu)}
    direct = omega_m_direct(mu)
    if mu.family is Family.WEDGE:
        checks["omega_m_closed_form"] = all(v == omega_m_scalar(mu) for v in direct.values())
    stable = True
    for e in bottom_elements(mu):
        label = find_label(mu, e.source, (0,) * ctx.n)
        lower = closure(mu, label)
        basis = build_f_basis(mu, 0, labels=lower)
        F = next(b.func for b in basis if b.label == label)
        try:
            expand_in_basis(apply_radial(mu, F), [b.func for b in basis])
        except NotInSpan as err:
            log.error("R(Q) leaves the span at %s: %s", label.to_json(), err)
            stable = False
        if len(lower) == 1 and "omega_m_bootstrap" not in checks:
            boot = omega_m_bootstrap(mu, F, casimir_eigenvalue(ctx, label.weight))
            checks["omega_m_bootstrap"] = boot == direct[mu.labels()[0]]
    checks["stable_span"] = stable
    if mu.family is Family.WEDGE or mu.a == 1:
        s = mu.s if mu.family is Family.WEDGE else 1
        checks["ladder_recurrence"] = all(ladder_recurrence_check(mu, i) for i in range(ctx.n - s + 1))
    payload = {"mu": mu.tag, "n": ctx.n, "m": ctx.m, "checks": checks,
               "omega_m": {json.dumps(list(k)): _frac(v) for k, v in direct.items()},
               "omega_m_source": build_krep(mu).omega_source}
    return payload, all(checks.values())


def cmd_orthogonality(job, ctx, mu, cache) -> Tuple[dict, bool]:
    labels = enumerate_pg_mu(mu, job.get("degree_bound", CLI_CFG["degree_bound"]))
    funcs = solve_labels(mu, labels, int(job.get("workers", CLI_CFG["workers"])))
    q_cfg = CFG["quadrature"]
    ok = True
    gram, expected, floats = [], [], []
    for a in funcs:
        row, frow = [], []
        for b in funcs:
            value = exact_inner(mu, a, b)
            target = expected_norm(mu, a) if a is b else Fraction(0)
            ok &= value == target
            row.append(_frac(value))
            if job.get("float"):
                x = float_inner(mu, a, b)
                ok &= abs(x - float(value)) <= max(q_cfg["abs_tol"], q_cfg["rel_tol"] * abs(float(value)))
                frow.append(x)
        gram.append(row)
        floats.append(frow)
        expected.append(_frac(expected_norm(mu, a)))
    payload = {"mu": mu.tag, "n": ctx.n, "m": ctx.m,
               "labels": [f.label.to_json() for f in funcs],
               "gram": gram, "expected_diagonal": expected}
    if job.get("float"):
        payload["gram_float"] = floats
    if mu.family is Family.WEDGE and mu.s == 1:
        weight = {
            "closed_forms": not weight_closed_forms(mu),
            "det_Q": det_q_check(mu),
            "det_S": det_S_check(mu),
            "indecomposable": indecomposable_check(mu),
        }
        weight["psd"] = psd_samples(mu, int(CLI_CFG["sample_points"]))[0]
        payload["weight_checks"] = weight
        ok &= all(weight.values())
    return payload, bool(ok)


def cmd_branch(job, ctx, mu, cache) -> Tuple[dict, bool]:
    checks = {"m_types_distinct": m_type_check(mu)}
    payload = {"mu": mu.tag, "n": ctx.n, "m": ctx.m}
    if job.get("lam") is not None:
        lam = Weight(ctx, tuple(job["lam"]))
        mult = branch_multiplicity(ctx, lam, mu)
        listed = in_spectrum(mu, lam) is not None
        payload.update({"lam": lam.to_json(), "multiplicity": mult, "in_spectrum": listed})
        checks["agrees"] = mult <= 1 and (mult == 1) == listed
    else:
        bad = spectrum_agrees(mu, job.get("degree_bound", CLI_CFG["degree_bound"]))
        payload["disagreements"] = [w.to_json() for w in bad]
        checks["agrees"] = not bad
    payload["checks"] = checks
    return payload, all(checks.values())


def cmd_selftest(job, ctx, mu, cache) -> Tuple[dict, bool]:
    report = []
    ok = True
    for case in CFG["selftest"]["cases"]:
        sub = dict(case)
        cmd = sub.pop("cmd")
        sub.setdefault("format", "json")
        try:
            _, passed = execute(cmd, sub, cache)
        except (SphericalKitError, ValueError, ArithmeticError) as e:
            log.error("selftest case %s failed: %s", case, e)
            passed = False
        report.append({"case": case, "passed": passed})
        ok &= passed
    extra = {
        "braid_2_2": braid_check(RankPair(2, 2)),
        "braid_2_3": braid_check(RankPair(2, 3)),
        "gdec_su3": tensor_check_gdec(RankPair(1, 2), 1, 1),
        "gdec_su4": tensor_check_gdec(RankPair(2, 2), 2, 1),
        "su9_counterexample": all(su9_counterexample().values()),
    }
    ok &= all(extra.values())
    return {"cases": report, "checks": extra}, bool(ok)


HANDLERS = {
    "bottom": cmd_bottom,
    "spherical": cmd_spherical,
    "zonal": cmd_zonal,
    "casimir-check": cmd_casimir_check,
    "orthogonality": cmd_orthogonality,
    "branch": cmd_branch,
    "selftest": cmd_selftest,
}


def execute(cmd: str, job: dict, cache=None) -> Tuple[dict, bool]:
    if "mu" in job:
        family, _, params = str(job.pop("mu")).partition(":")
        try:
            p1, p2 = (int(x) for x in params.split(","))
        except ValueError:
            raise JobValidationError({"mu": ["expected wedge:s,b or rankone:a,b"]})
        job.update(family=family.strip().lower(), p1=p1, p2=p2)
    ctx, mu = validate(cmd, job)
    cache = cache or open_cache(job.get("cache_dir"))
    return HANDLERS[cmd](job, ctx, mu, cache)


# ---------- output ----------
def render_table(cmd: str, payload: dict) -> str:
    if cmd == "bottom":
        df = pd.DataFrame([{"label": json.dumps(r["label"]), "weight": r["weight"], "eigenvalue": r["eigenvalue"]}
                           for r in payload["spectrum"]])
    elif cmd == "spherical":
        df = pd.DataFrame([{"label": json.dumps(f["label"]), "eigenvalue": f["eigenvalue"],
                            "radial_ok": f["radial_ok"]} for f in payload["functions"]])
    elif cmd == "orthogonality":
        names = [json.dumps(l) for l in payload["labels"]]
        df = pd.DataFrame(payload["gram"], index=names, columns=names)
        df["expected"] = payload["expected_diagonal"]
        return df.to_string()
    elif cmd == "zonal":
        df = pd.DataFrame({"j": range(len(payload["psi_coefficients"])),
                           "coefficient": payload["psi_coefficients"]})
    elif cmd == "selftest":
        df = pd.DataFrame([{"case": json.dumps(r["case"]), "passed": r["passed"]} for r in payload["cases"]])
    else:
        df = pd.DataFrame([{"check": k, "passed": v} for k, v in payload.get("checks", {}).items()])
    return df.to_string(index=False)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(description="Matrix spherical functions for (SU(n+m), S(U(n)xU(m)))")
    sub = parser.add_subparsers(dest="command", required=True)

    def ints(text: str) -> List[int]:
        return [int(x) for x in text.split(",") if x.strip()]

    for name in HANDLERS:
        p = sub.add_parser(name)
        if name != "selftest":
            p.add_argument("--n", type=int, required=True)
            p.add_argument("--m", type=int, required=True)
        if name not in ("selftest", "zonal"):
            p.add_argument("--mu", required=True, help="wedge:s,b or rankone:a,b")
        if name in ("bottom", "spherical", "casimir-check", "orthogonality", "branch"):
            p.add_argument("--degree-bound", type=int, default=None)
        if name == "spherical":
            p.add_argument("--bottom", type=int, default=None, help="index into the bottom list")
            p.add_argument("--degrees", type=ints, default=None, help="e.g. 1,0")
            p.add_argument("--emit-samples", default=None, metavar="PATH")
        if name == "zonal":
            p.add_argument("--i", type=int, required=True)
        if name == "branch":
            p.add_argument("--lam", type=ints, default=None, help="omega coordinates, e.g. 1,0,0,1")
        p.add_argument("--format", choices=["json", "table"], default="json")
        p.add_argument("--float", action="store_true")
        p.add_argument("--cache-dir", default=None)
        p.add_argument("--workers", type=int, default=int(CLI_CFG["workers"]))
    return parser


def job_from_args(args: argparse.Namespace) -> dict:
    job = {k: v for k, v in vars(args).items() if k != "command" and v is not None}
    job.setdefault("float", False)
    return job


def run(cmd: str, job: dict) -> int:
    fmt = job.get("format", "json")
    try:
        payload, ok = execute(cmd, job)
    except JobValidationError as e:
        log.error("✗ Invalid job: %s", e.errors)
        return EXIT_USAGE
    except SphericalKitError as e:
        log.error("✗ %s: %s", type(e).__name__, e)
        return EXIT_INTERNAL
    except (ValueError, ArithmeticError) as e:
        log.exception("✗ computation failed: %s", e)
        return EXIT_INTERNAL
    payload["ok"] = ok
    if fmt == "table":
        print(render_table(cmd, payload))
    else:
        print(json.dumps(payload, sort_keys=True, indent=2))
    if ok:
        log.info("✓ %s passed", cmd)
        return EXIT_OK
    log.error("✗ %s: a check failed", cmd)
    return EXIT_CHECK


def main(argv: Optional[List[str]] = None) -> int:
    logging.basicConfig(
        level=logging.INFO,
        format="%(asctime)s [%(levelname)s] %(name)s: %(message)s",
    )
    load_dotenv()
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_OK
    return run(args.command, job_from_args(args))


if __name__ == "__main__":
    sys.exit(main())
