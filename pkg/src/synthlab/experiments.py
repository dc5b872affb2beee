"""Configuration-driven experiments with JSON/CSV reports.

A config is a JSON object ``{"kind": ..., "parameters": {...}, "seed": N,
"output_path": "report.json"}``.  Unknown keys anywhere are rejected and
numeric parameters are range-checked at parse time, so a malformed config
never reaches the numerics.  Every random draw flows through a
counter-based generator keyed by the config seed and an explicit stream
index, which keeps reruns (and parallel suites) byte-identical.

Reports: ``output_path`` receives the JSON report (sorted keys); the
plot-ready CSV data lands next to it with the ``.csv`` suffix.
"""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import ascent as asc
from .dimension import metric_order
from .errors import SynthlabError
from .fourier import WeightAlpha, bp_decay_experiment
from .generators import GeneratorSpec, generate
from .mollifier import Mollifier, build_table, coeff_bessel, coeff_quadrature
from .pointcloud import TWO_PI
from .schur import (
    DiscreteSpace,
    distance_power_symbol,
    hs_bound_experiment,
    neighborhood_relation,
)

KINDS = ("dimension", "mollifier", "bp_decay", "schur_hs", "ascent_suite")

DEFAULT_TRIADIC_SCALES = [3.0**-j for j in range(1, 7)]


@dataclass(frozen=True)
class ExperimentConfig:
    """Parsed and validated experiment description."""

    kind: str
    parameters: dict
    seed: int
    output_path: str

    def __post_init__(self) -> None:
        if self.kind not in KINDS:
            raise ValueError(f"unknown experiment kind {self.kind!r}; known: {list(KINDS)}")
        if not isinstance(self.seed, int) or not 0 <= self.seed < 2**64:
            raise ValueError(f"seed must be a 64-bit unsigned integer, got {self.seed!r}")
        if not isinstance(self.output_path, str) or not self.output_path:
            raise ValueError("output_path must be a nonempty string")
        _validate_parameters(self.kind, self.parameters)


def _require_number(params: dict, key: str, lo=None, hi=None, integer=False):
    if key not in params:
        raise ValueError(f"missing parameter {key!r}")
    v = params[key]
    if isinstance(v, bool) or not isinstance(v, (int, float)):
        raise ValueError(f"parameter {key!r} must be a number, got {v!r}")
    if integer and not isinstance(v, int):
        raise ValueError(f"parameter {key!r} must be an integer, got {v!r}")
    if lo is not None and v < lo:
        raise ValueError(f"parameter {key!r} must be >= {lo}, got {v}")
    if hi is not None and v > hi:
        raise ValueError(f"parameter {key!r} must be <= {hi}, got {v}")
    return v


def _check_keys(params: dict, allowed: set, required: set, kind: str) -> None:
    if not isinstance(params, dict):
        raise ValueError("parameters must be a JSON object")
    extra = set(params) - allowed
    if extra:
        raise ValueError(f"unknown parameters for kind {kind!r}: {sorted(extra)}")
    missing = required - set(params)
    if missing:
        raise ValueError(f"missing parameters for kind {kind!r}: {sorted(missing)}")


def _positive_decreasing(values, name: str) -> list:
    arr = [float(v) for v in values]
    if len(arr) < 3:
        raise ValueError(f"{name} needs at least 3 entries")
    if any(v <= 0 for v in arr) or any(b >= a for a, b in zip(arr, arr[1:])):
        raise ValueError(f"{name} must be positive and strictly decreasing")
    return arr


def _validate_parameters(kind: str, params: dict) -> None:
    if kind == "dimension":
        _check_keys(params, {"generator", "scales", "expected_order"}, {"generator"}, kind)
        GeneratorSpec.from_dict(params["generator"])
        if "scales" in params:
            scales = _positive_decreasing(params["scales"], "scales")
            if len(scales) < 4:
                raise ValueError("scales needs at least 4 entries")
        if "expected_order" in params:
            rng = params["expected_order"]
            if len(rng) != 2 or not rng[0] <= rng[1]:
                raise ValueError("expected_order must be [lo, hi] with lo <= hi")
    elif kind == "mollifier":
        _check_keys(params, {"dim_n", "beta", "eps_list", "k_max", "tol"}, {"dim_n", "beta", "eps_list", "k_max"}, kind)
        _require_number(params, "dim_n", lo=1, hi=2, integer=True)
        _require_number(params, "beta", lo=1e-9)
        _require_number(params, "k_max", lo=1, integer=True)
        if "tol" in params:
            _require_number(params, "tol", lo=1e-15)
        eps = [float(v) for v in params["eps_list"]]
        if not eps or any(not 0 < v <= 1 for v in eps):
            raise ValueError("eps_list entries must lie in (0, 1]")
    elif kind == "bp_decay":
        _check_keys(
            params,
            {"generator", "m_exp", "alpha", "eps_grid", "degree", "beta", "margin", "dimension_scales"},
            {"generator", "m_exp", "alpha", "eps_grid", "degree"},
            kind,
        )
        GeneratorSpec.from_dict(params["generator"])
        if _require_number(params, "m_exp") <= 0:
            raise ValueError(f"parameter 'm_exp' must be positive, got {params['m_exp']}")
        _require_number(params, "alpha", lo=0.0)
        _require_number(params, "degree", lo=1, integer=True)
        if "beta" in params:
            _require_number(params, "beta", lo=1e-9)
        if "margin" in params:
            _require_number(params, "margin", lo=0.0)
        _positive_decreasing(params["eps_grid"], "eps_grid")
    elif kind == "schur_hs":
        _check_keys(
            params,
            {
                "x_generator",
                "y_size",
                "rho",
                "n_relations",
                "trials_per_relation",
                "p_constant",
                "radius_factor",
                "dimension_scales",
            },
            {"x_generator", "y_size", "n_relations", "trials_per_relation"},
            kind,
        )
        GeneratorSpec.from_dict(params["x_generator"])
        _require_number(params, "y_size", lo=1, integer=True)
        _require_number(params, "n_relations", lo=1, integer=True)
        _require_number(params, "trials_per_relation", lo=1, integer=True)
        if "rho" in params and params["rho"] is not None:
            _require_number(params, "rho", lo=1e-9)
        if "p_constant" in params:
            _require_number(params, "p_constant", lo=1.0 + 1e-9)
        if "radius_factor" in params:
            _require_number(params, "radius_factor", lo=1e-9)
    elif kind == "ascent_suite":
        _check_keys(
            params,
            {"n_normal_instances", "dim_range", "order_checks", "k_bound", "smoothing"},
            set(),
            kind,
        )
        if "n_normal_instances" in params:
            _require_number(params, "n_normal_instances", lo=0, integer=True)
        if "dim_range" in params:
            rng = params["dim_range"]
            if len(rng) != 2 or not (isinstance(rng[0], int) and isinstance(rng[1], int)):
                raise ValueError("dim_range must be [lo, hi] integers")
            if not 2 <= rng[0] <= rng[1]:
                raise ValueError("dim_range must satisfy 2 <= lo <= hi")
        if "order_checks" in params:
            for m in params["order_checks"]:
                if not (isinstance(m, int) and m >= 1):
                    raise ValueError("order_checks must be positive integers")
        if "k_bound" in params:
            _require_number(params, "k_bound", lo=1e-6, hi=float(np.pi) - 1e-6)
        if "smoothing" in params:
            _require_number(params, "smoothing", lo=0, integer=True)


def parse_config(data: dict, default_output: str = "report.json") -> ExperimentConfig:
    """Validate a config dict (as loaded from JSON)."""
    if not isinstance(data, dict):
        raise ValueError("config must be a JSON object")
    extra = set(data) - {"kind", "parameters", "seed", "output_path"}
    if extra:
        raise ValueError(f"unknown config keys: {sorted(extra)}")
    if "kind" not in data:
        raise ValueError("config needs a 'kind'")
    return ExperimentConfig(
        kind=data["kind"],
        parameters=dict(data.get("parameters", {})),
        seed=data.get("seed", 0),
        output_path=data.get("output_path", default_output),
    )


def load_config(path) -> ExperimentConfig:
    """Read and validate a config file; errors carry the offending field."""
    p = Path(path)
    try:
        text = p.read_text()
    except OSError as exc:
        raise ValueError(f"cannot read config {p}: {exc}") from exc
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValueError(f"config {p} is not valid JSON: {exc}") from exc
    return parse_config(data, default_output=p.stem + ".report.json")


@dataclass(frozen=True)
class ExperimentResult:
    """Outcome of one experiment run."""

    kind: str
    passed: bool
    detail: str
    report: dict
    json_path: str
    csv_path: str


def _stream(seed: int, *key: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(np.random.SeedSequence(entropy=seed, spawn_key=key)))


def _run_dimension(params: dict, seed: int):
    cloud = generate(GeneratorSpec.from_dict(params["generator"]))
    scales = params.get("scales")
    if scales is None:
        top = max(cloud.diameter() / 2.0, 1e-6)
        scales = [top * 3.0**-j for j in range(6)]
    report = metric_order(cloud, scales)
    passed = True
    detail = f"fitted_order {report.fitted_order:.4f}"
    if "expected_order" in params:
        lo, hi = params["expected_order"]
        passed = lo <= report.fitted_order <= hi
        if not passed:
            detail = f"fitted_order {report.fitted_order:.4f} outside [{lo}, {hi}]"
    data = report.to_dict()
    data["point_count"] = cloud.count
    rows = [
        {"scale": s, "count": c, "covering_sum": v}
        for s, c, v in zip(report.scales, report.counts, report.covering_sums)
    ]
    return passed, detail, data, rows, ["scale", "count", "covering_sum"]


def _run_mollifier(params: dict, seed: int):
    dim_n = params["dim_n"]
    beta = float(params["beta"])
    k_max = params["k_max"]
    tol = float(params.get("tol", 1e-8))
    rows = []
    worst = 0.0
    origin_err = 0.0
    for eps in [float(v) for v in params["eps_list"]]:
        moll = Mollifier(eps, beta, dim_n)
        table = build_table(moll, k_max, method="quadrature")
        origin_err = max(origin_err, abs(table.value((0,) * dim_n) - 1.0))
        for coord in table.coords:
            key = tuple(int(v) for v in coord)
            q = table.value(key)
            if any(key):
                b = coeff_bessel(moll, key)
            else:
                b = 1.0
            diff = abs(q - b)
            worst = max(worst, diff)
            row = {"eps": eps}
            row.update({f"k_{i+1}": key[i] for i in range(dim_n)})
            row.update({"quadrature": q, "bessel": b, "abs_diff": diff})
            rows.append(row)
    passed = worst <= tol and origin_err <= tol
    detail = f"max route difference {worst:.3g} (tolerance {tol:.3g})"
    if not passed:
        detail = "cross-validation failed: " + detail
    data = {
        "dim_n": dim_n,
        "beta": beta,
        "k_max": k_max,
        "tol": tol,
        "max_route_difference": worst,
        "origin_error": origin_err,
        "checked": len(rows),
    }
    fields = ["eps"] + [f"k_{i+1}" for i in range(dim_n)] + ["quadrature", "bessel", "abs_diff"]
    return passed, detail, data, rows, fields


def _run_bp_decay(params: dict, seed: int):
    cloud = generate(GeneratorSpec.from_dict(params["generator"]))
    report = bp_decay_experiment(
        cloud,
        m_exp=float(params["m_exp"]),
        weight=WeightAlpha(float(params["alpha"])),
        eps_grid=[float(v) for v in params["eps_grid"]],
        degree=int(params["degree"]),
        beta=float(params.get("beta", 2.0)),
        margin=float(params.get("margin", 0.1)),
        dimension_scales=params.get("dimension_scales"),
    )
    if not report.hypothesis_met:
        detail = (
            f"hypothesis unmet: m_exp {report.m_exp} <= c/2 + alpha "
            f"= {report.metric_order_c / 2 + report.alpha:.4f}"
        )
    elif report.passed:
        detail = f"slope {report.slope:.4f} >= threshold {report.threshold:.4f}"
    else:
        detail = f"slope {report.slope:.4f} below threshold {report.threshold:.4f}"
    rows = [
        {"eps": e, "pairing_abs": p, "truncation_tail": t}
        for e, p, t in zip(report.eps, report.pairing_abs, report.truncation_tails)
    ]
    return report.passed, detail, report.to_dict(), rows, ["eps", "pairing_abs", "truncation_tail"]


def _run_schur_hs(params: dict, seed: int):
    cloud = generate(GeneratorSpec.from_dict(params["x_generator"]))
    x_space = DiscreteSpace.from_cloud(cloud)
    y_size = int(params["y_size"])
    y_space = DiscreteSpace.uniform(y_size)
    scales = params.get("dimension_scales")
    if scales is None:
        # calibrate to the ambient period so small scales do not saturate
        period = TWO_PI if cloud.geometry == "torus" else 1.0
        scales = [period * s for s in DEFAULT_TRIADIC_SCALES]
    w = metric_order(cloud, scales).fitted_order
    rho = params.get("rho")
    rho = w / 2.0 if rho is None else float(rho)
    radius = float(params.get("radius_factor", 2.0)) * cloud.min_positive_distance()
    p_constant = float(params.get("p_constant", 3.0))

    rows = []
    all_passed = True
    detail = ""
    for rel in range(int(params["n_relations"])):
        gen_rel = _stream(seed, 1, rel)
        anchors = cloud.points[gen_rel.choice(cloud.count, size=y_size, replace=False)]
        E = neighborhood_relation(x_space, anchors, radius)
        F = distance_power_symbol(E, x_space, rho)
        rep = hs_bound_experiment(
            F,
            E,
            x_space,
            y_space,
            rho=rho,
            trials=int(params["trials_per_relation"]),
            seed=seed + 7919 * rel,
            p_constant=p_constant,
        )
        for r in rep.rows:
            row = {"relation": rel}
            row.update(r)
            rows.append(row)
        if not rep.all_passed:
            all_passed = False
            detail = f"bound violated in relation {rel}"
    if all_passed:
        detail = f"{len(rows)} trials within sqrt(C K) bound (rho {rho:.4f}, w {w:.4f})"
    data = {
        "rho": rho,
        "w_fitted": w,
        "radius": radius,
        "p_constant": p_constant,
        "n_relations": int(params["n_relations"]),
        "trials_per_relation": int(params["trials_per_relation"]),
        "rows": rows,
    }
    fields = ["relation", "trial", "lhs", "rhs", "C", "K", "pass", "lhs_smeared", "pass_smeared"]
    return all_passed, detail, data, rows, fields


def random_normal_commuting_pair(dim: int, rng: np.random.Generator):
    """Two commuting normal matrices with a planted joint coincidence.

    Both are conjugations of real diagonals by one Haar-ish unitary; at
    least one diagonal position is shared so difference-type calculus
    operators become singular.
    """
    Z = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    Q, _ = np.linalg.qr(Z)
    d1 = rng.uniform(-1.0, 1.0, size=dim)
    d2 = rng.uniform(-1.0, 1.0, size=dim)
    planted = int(rng.integers(1, dim))
    d2[:planted] = d1[:planted]
    A = Q @ np.diag(d1) @ Q.conj().T
    B = Q @ np.diag(d2) @ Q.conj().T
    return A, B


def _run_ascent_suite(params: dict, seed: int):
    n_normal = int(params.get("n_normal_instances", 100))
    dim_lo, dim_hi = params.get("dim_range", [4, 8])
    order_checks = params.get("order_checks", [2, 3, 4])
    k_bound = float(params.get("k_bound", 1.0))
    smoothing = int(params.get("smoothing", 3))

    phi = asc.periodic_cutoff(k_bound, smoothing)
    g = asc.coordinate_sum_poly(phi, [1.0, -1.0])
    rows = []
    all_passed = True
    detail_parts = []

    # Jordan commutator: the sharp case for the floor reading of the bound.
    J = asc.jordan_block(2)
    eye = np.eye(2, dtype=complex)
    op = asc.build_elementary([J, -eye], [eye, J])
    chain = asc.kernel_chain(op)
    fam = asc.CommutingFamily((np.kron(eye, J), np.kron(J.T, eye)))
    bound_rep = asc.ascent_bound_check(fam, g, alpha_order=2.0)
    ok = (
        chain.kernel_dims == (2, 3, 4)
        and chain.ascent == 3
        and chain.root_space_dim == 4
        and bound_rep.ascent == 3
        and bound_rep.bound == 3
        and bound_rep.passed
    )
    all_passed = all_passed and ok
    if not ok:
        detail_parts.append("jordan commutator case failed")
    rows.append(
        {
            "case": 0,
            "label": "jordan_commutator",
            "ascent": chain.ascent,
            "bound": bound_rep.bound,
            "metric_order_c": bound_rep.metric_order_c,
            "alpha": 2.0,
            "s_fit": "",
            "s_target": "",
            "pass": bool(ok),
        }
    )

    for i in range(n_normal):
        rng = _stream(seed, 2, i)
        dim = int(rng.integers(dim_lo, dim_hi + 1))
        A, B = random_normal_commuting_pair(dim, rng)
        fam = asc.CommutingFamily((A, B))
        rep = asc.ascent_bound_check(fam, g, alpha_order=0.0)
        ok = rep.ascent == 1 and rep.passed
        all_passed = all_passed and ok
        if not ok:
            detail_parts.append(f"normal instance {i} ascent {rep.ascent}")
        rows.append(
            {
                "case": i + 1,
                "label": "normal_pair",
                "ascent": rep.ascent,
                "bound": rep.bound,
                "metric_order_c": rep.metric_order_c,
                "alpha": 0.0,
                "s_fit": "",
                "s_target": "",
                "pass": bool(ok),
            }
        )

    t_grid = np.logspace(1, 3, 25)
    for j, m in enumerate(order_checks):
        est = asc.order_estimate(asc.jordan_block(m), t_grid)
        ok = abs(est.s_fit - (m - 1)) <= 0.1
        all_passed = all_passed and ok
        if not ok:
            detail_parts.append(f"order fit for block size {m}: {est.s_fit:.3f}")
        rows.append(
            {
                "case": n_normal + 1 + j,
                "label": f"growth_order_{m}",
                "ascent": "",
                "bound": "",
                "metric_order_c": "",
                "alpha": "",
                "s_fit": est.s_fit,
                "s_target": m - 1,
                "pass": bool(ok),
            }
        )

    detail = "; ".join(detail_parts) if detail_parts else (
        f"{len(rows)} cases: ascent bounds and growth orders hold"
    )
    data = {
        "n_normal_instances": n_normal,
        "dim_range": [dim_lo, dim_hi],
        "order_checks": list(order_checks),
        "k_bound": k_bound,
        "smoothing": smoothing,
        "rows": rows,
    }
    fields = ["case", "label", "ascent", "bound", "metric_order_c", "alpha", "s_fit", "s_target", "pass"]
    return all_passed, detail, data, rows, fields


_RUNNERS = {
    "dimension": _run_dimension,
    "mollifier": _run_mollifier,
    "bp_decay": _run_bp_decay,
    "schur_hs": _run_schur_hs,
    "ascent_suite": _run_ascent_suite,
}


def _format_cell(v) -> str:
    if isinstance(v, bool):
        return "1" if v else "0"
    if isinstance(v, float):
        return repr(v)
    return str(v)


def write_csv(path: Path, rows, fields) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(fields)
        for row in rows:
            writer.writerow([_format_cell(row.get(f, "")) for f in fields])


def run_experiment(config: ExperimentConfig, base_dir=None) -> ExperimentResult:
    """Run one experiment and write its JSON report and CSV data.

    ``base_dir`` anchors relative output paths (defaults to the current
    directory).  Computation failures surface as ``SynthlabError``; the
    caller decides the exit code.
    """
    base = Path(base_dir) if base_dir is not None else Path.cwd()
    out_json = Path(config.output_path)
    if not out_json.is_absolute():
        out_json = base / out_json
    out_csv = out_json.with_suffix(".csv")

    passed, detail, data, rows, fields = _RUNNERS[config.kind](config.parameters, config.seed)
    report = {
        "kind": config.kind,
        "seed": config.seed,
        "pass": bool(passed),
        "detail": detail,
        "data": data,
    }
    out_json.parent.mkdir(parents=True, exist_ok=True)
    out_json.write_text(json.dumps(report, sort_keys=True, indent=2, default=float) + "\n")
    write_csv(out_csv, rows, fields)
    return ExperimentResult(
        kind=config.kind,
        passed=bool(passed),
        detail=detail,
        report=report,
        json_path=str(out_json),
        csv_path=str(out_csv),
    )
