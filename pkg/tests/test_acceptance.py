"""Acceptance gate: ten quantitative criteria, one printed verdict line each.

Run with ``pytest -s tests/test_acceptance.py`` to see the verdict lines;
each test also asserts its criterion so the gate fails loudly.
"""

from __future__ import annotations

import json
import time
from pathlib import Path

import numpy as np
import pytest

import synthlab as sl

from conftest import TWO_PI, philox


def verdict(num: int, ok: bool, detail: str) -> None:
    print(f"criterion {num:2d}: {'PASS' if ok else 'FAIL'} - {detail}")


def test_criterion_01_dimension_engine():
    t0 = time.perf_counter()
    cantor = sl.generate(
        sl.GeneratorSpec("cantor", "torus", {"depth": 12, "endpoints": "left"})
    )
    c_report = sl.metric_order(cantor, [TWO_PI * 3.0**-j for j in range(2, 11)])
    square = sl.generate(sl.GeneratorSpec("lattice", "euclidean", {"n": 2, "size": 200}))
    s_report = sl.metric_order(square, [2.0**-j for j in range(1, 6)])
    elapsed = time.perf_counter() - t0

    ok_c = 0.58 <= c_report.fitted_order <= 0.68
    ok_s = 1.9 <= s_report.fitted_order <= 2.1
    ok_t = elapsed < 10.0
    ok = ok_c and ok_s and ok_t
    verdict(
        1,
        ok,
        f"cantor order {c_report.fitted_order:.4f} in [0.58, 0.68], "
        f"square {s_report.fitted_order:.4f} in [1.9, 2.1], {elapsed:.2f}s < 10s",
    )
    assert ok_c and ok_s and ok_t


def test_criterion_02_neighborhood_measure():
    cantor = sl.generate(
        sl.GeneratorSpec("cantor", "torus", {"depth": 12, "endpoints": "left"})
    )
    eps_grid = [TWO_PI * 3.0**-j for j in range(2, 8)]
    m_c = [sl.neighborhood_measure(cantor, e, 1_000_000) for e in eps_grid]
    slope_c = float(np.polyfit(np.log(eps_grid), np.log(m_c), 1)[0])

    point = sl.PointCloud(np.array([[0.5]]), "torus")
    m_p = [sl.neighborhood_measure(point, e, 1_000_000) for e in eps_grid]
    slope_p = float(np.polyfit(np.log(eps_grid), np.log(m_p), 1)[0])

    ok_c = 0.27 <= slope_c <= 0.47
    ok_p = abs(slope_p - 1.0) <= 0.02
    verdict(
        2,
        ok_c and ok_p,
        f"cantor measure slope {slope_c:.4f} in [0.27, 0.47], "
        f"point slope {slope_p:.4f} = 1 +- 0.02",
    )
    assert ok_c and ok_p


def test_criterion_03_mollifier_cross_validation():
    worst = 0.0
    worst_origin = 0.0
    for n in (1, 2):
        if n == 1:
            ks = [(k,) for k in range(-20, 21)]
        else:
            rng = np.arange(-20, 21)
            ks = [
                (a, b) for a in rng for b in rng if a * a + b * b <= 400
            ]
        for eps in (1.0, 0.5, 0.25):
            for beta in (1.0, 2.0):
                m = sl.Mollifier(eps, beta, n)
                for k in ks:
                    q = sl.coeff_quadrature(m, k)
                    if any(k):
                        worst = max(worst, abs(q - sl.coeff_bessel(m, k)))
                    else:
                        worst_origin = max(worst_origin, abs(q - 1.0))

    # decay envelope: measured on a fine grid, checked across sampled r in [1, 100]
    env_ok = True
    measure_grid = np.linspace(1.0, 200.0, 40_001)
    check_r = np.concatenate(
        [np.linspace(1.0, 100.0, 5000), philox(0xDECA).uniform(1.0, 100.0, 500)]
    )
    for n in (1, 2):
        for beta in (1.0, 2.0):
            ev = sl.BesselEvaluator(n / 2.0 + beta)
            c_env = 1.01 * sl.decay_constant(ev, measure_grid)
            env_ok = env_ok and bool(
                np.all(np.abs(ev.evaluate(check_r)) * np.sqrt(check_r) <= c_env)
            )

    ok = worst <= 1e-8 and worst_origin <= 1e-8 and env_ok
    verdict(
        3,
        ok,
        f"route difference {worst:.2e} <= 1e-8, origin defect {worst_origin:.2e} <= 1e-8, "
        f"decay bound sampled on [1, 100]: {'holds' if env_ok else 'violated'}",
    )
    assert worst <= 1e-8
    assert worst_origin <= 1e-8
    assert env_ok


@pytest.mark.parametrize("beta,alpha,n", [(1.0, 0.0, 1), (1.0, 1.0, 1), (2.0, 0.0, 2)])
def test_criterion_04_weighted_l2_slopes(beta, alpha, n):
    eps_grid = [2.0**-j for j in range(1, 7)]
    totals = []
    for eps in eps_grid:
        bound = int(round((40 if n == 1 else 30) / eps))
        table = sl.build_table(sl.Mollifier(eps, beta, n), bound, method="bessel")
        s = sl.weighted_l2_sum(table, alpha=alpha, split_at=bound / 2)
        totals.append(s.head + s.tail)
    slope = float(np.polyfit(np.log([1.0 / e for e in eps_grid]), np.log(totals), 1)[0])
    target = 2 * alpha + n
    ok = abs(slope - target) <= 0.2
    verdict(4, ok, f"(n={n}, alpha={alpha}): slope {slope:.4f} = {target} +- 0.2")
    assert ok


def test_criterion_05_bp_decay():
    eps_grid = [2.0**-j for j in range(1, 8)]

    t0 = time.perf_counter()
    point = sl.PointCloud(np.array([[0.0]]), "torus")
    rep_pt = sl.bp_decay_experiment(
        point, m_exp=1.0, weight=sl.WeightAlpha(0.0), eps_grid=eps_grid, degree=768, beta=1.0
    )
    t_pt = time.perf_counter() - t0

    t0 = time.perf_counter()
    cantor = sl.generate(
        sl.GeneratorSpec("cantor", "torus", {"depth": 8, "endpoints": "left"})
    )
    rep_ca = sl.bp_decay_experiment(
        cantor, m_exp=1.0, weight=sl.WeightAlpha(0.0), eps_grid=eps_grid, degree=2048, beta=1.0
    )
    t_ca = time.perf_counter() - t0

    ok_pt = rep_pt.slope >= 0.8 and t_pt < 60.0
    ok_ca = rep_ca.slope >= 0.58 and t_ca < 60.0
    verdict(
        5,
        ok_pt and ok_ca,
        f"point slope {rep_pt.slope:.4f} >= 0.8 ({t_pt:.1f}s), "
        f"cantor slope {rep_ca.slope:.4f} >= 0.58 ({t_ca:.1f}s)",
    )
    assert ok_pt and ok_ca


def test_criterion_06_schur_kernel_identity():
    checked = 0
    for trial in range(50):
        gen = philox(0x5C42, trial)
        nx = int(gen.integers(2, 41))
        ny = int(gen.integers(2, 41))
        vals = gen.normal(size=(nx, ny))
        vals[gen.random(size=(nx, ny)) < 0.3] = 0.0  # planted zero set
        F = sl.SymbolGrid(vals)
        bim = sl.kernel_of_schur(F)
        assert np.array_equal(bim.mask, vals == 0.0)
        checked += 1
    ok = checked == 50
    verdict(6, ok, f"lifted kernel equals masked bimodule exactly on {checked}/50 symbols")
    assert ok


def test_criterion_07_hs_bound():
    cloud = sl.generate(sl.GeneratorSpec("cantor", "torus", {"depth": 6, "endpoints": "both"}))
    X = sl.DiscreteSpace.from_cloud(cloud)
    w = sl.metric_order(cloud, [TWO_PI * 3.0**-j for j in range(1, 7)]).fitted_order
    rho = w / 2.0
    radius = 2.0 * cloud.min_positive_distance()

    total = 0
    violations = 0
    for rel in range(8):
        gen = philox(0x45EE, rel)
        anchors = cloud.points[gen.choice(cloud.count, size=4, replace=False)]
        E = sl.neighborhood_relation(X, anchors, radius)
        Y = sl.DiscreteSpace.uniform(E.y_size)
        F = sl.distance_power_symbol(E, X, rho)
        rep = sl.hs_bound_experiment(F, E, X, Y, rho=rho, trials=25, seed=1000 + rel)
        total += len(rep.rows)
        violations += sum(1 for r in rep.rows if not (r["pass"] and r["pass_smeared"]))
    ok = total == 200 and violations == 0
    verdict(7, ok, f"{total} trials at rho = w/2 = {rho:.4f}, {violations} violations")
    assert ok


def test_criterion_08_ascent_laboratory():
    J = sl.jordan_block(2, 0.0)
    I = np.eye(2)
    chain = sl.kernel_chain(sl.build_elementary([J, -I], [I, J]))
    ok_chain = chain.kernel_dims == (2, 3, 4) and chain.ascent == 3

    fam = sl.CommutingFamily((np.kron(I, J), np.kron(J.T, I)))
    phi = sl.periodic_cutoff(k_bound=1.0, smoothing=3)
    g = sl.coordinate_sum_poly(phi, [1, -1])
    rep = sl.ascent_bound_check(fam, g, alpha_order=2.0)
    ok_bound = rep.ascent == 3 and rep.bound == 3 and rep.passed

    ascents = []
    for i in range(100):
        gen = philox(0xA5CE, i)
        d = int(gen.integers(4, 9))
        A, B = sl.random_normal_commuting_pair(d, gen)
        ascents.append(sl.ascent_bound_check(sl.CommutingFamily((A, B)), g, 0.0).ascent)
    ok_normal = all(a == 1 for a in ascents)

    t_grid = np.logspace(1, 3, 25)
    orders = {m: sl.order_estimate(sl.jordan_block(m, 0.0), t_grid).s_fit for m in (2, 3, 4)}
    ok_orders = all(abs(orders[m] - (m - 1)) <= 0.1 for m in (2, 3, 4))

    ok = ok_chain and ok_bound and ok_normal and ok_orders
    verdict(
        8,
        ok,
        f"chain {chain.kernel_dims} ascent {chain.ascent} = bound {rep.bound}; "
        f"{sum(1 for a in ascents if a == 1)}/100 normal instances ascent 1; "
        f"orders {{2: {orders[2]:.3f}, 3: {orders[3]:.3f}, 4: {orders[4]:.3f}}}",
    )
    assert ok_chain and ok_bound and ok_normal and ok_orders


def test_criterion_09_calculus_identities(tmp_path):
    # P o M = identity, exactly
    gen = philox(0x90CA)
    ok_pm = True
    for dim_n in (1, 2):
        for _ in range(10):
            coeffs = {
                tuple(int(v) for v in gen.integers(-5, 6, size=dim_n)): complex(
                    gen.normal(), gen.normal()
                )
                for _ in range(8)
            }
            f = sl.TrigPolynomial(dim_n, coeffs)
            ok_pm = ok_pm and sl.varopoulos_p(sl.varopoulos_m(f), dim_n=dim_n).coeffs == f.coeffs

    # multiplicativity on diagonalizable commuting families
    worst = 0.0
    for i in range(20):
        g2 = philox(0x9F0, i)
        d = int(g2.integers(3, 7))
        A, B = sl.random_normal_commuting_pair(d, g2)
        fam = sl.CommutingFamily((A, B))
        f = sl.TrigPolynomial(2, {(0, 0): 0.3, (1, 0): 0.2 + 0.1j, (0, 1): -0.15, (1, -1): 0.05j})
        h = sl.TrigPolynomial(2, {(0, 0): 0.5, (-1, 0): 0.1, (2, 1): 0.02 - 0.07j})
        lhs = sl.functional_calculus(fam, sl.multiply(f, h))
        rhs = sl.functional_calculus(fam, f) @ sl.functional_calculus(fam, h)
        worst = max(worst, float(np.abs(lhs - rhs).max()))
    ok_mult = worst <= 1e-8

    # every measured ascent in the suite obeys the floor bound
    cfg = sl.parse_config(
        {
            "kind": "ascent_suite",
            "parameters": {"n_normal_instances": 100},
            "seed": 17,
            "output_path": "out/suite.json",
        }
    )
    result = sl.run_experiment(cfg, base_dir=tmp_path)
    rows = result.report["data"]["rows"]
    ascent_rows = [r for r in rows if isinstance(r["ascent"], int)]
    ok_suite = result.passed and all(r["ascent"] <= r["bound"] for r in ascent_rows)

    ok = ok_pm and ok_mult and ok_suite
    verdict(
        9,
        ok,
        f"P o M identity exact: {ok_pm}; multiplicativity defect {worst:.2e} <= 1e-8; "
        f"{len(ascent_rows)} suite ascents within floor(c/2+alpha)+1: {ok_suite}",
    )
    assert ok_pm and ok_mult and ok_suite


def test_criterion_10_full_suite_deterministic(tmp_path):
    configs = {
        "a_dimension.json": {
            "kind": "dimension",
            "parameters": {
                "generator": {
                    "kind": "cantor",
                    "geometry": "torus",
                    "params": {"depth": 10, "endpoints": "left"},
                },
                "scales": [TWO_PI * 3.0**-j for j in range(2, 9)],
                "expected_order": [0.58, 0.68],
            },
            "seed": 1,
            "output_path": "out/dimension.json",
        },
        "b_mollifier.json": {
            "kind": "mollifier",
            "parameters": {"dim_n": 2, "beta": 1.0, "eps_list": [1.0, 0.5, 0.25], "k_max": 10},
            "seed": 2,
            "output_path": "out/mollifier.json",
        },
        "c_bp_decay.json": {
            "kind": "bp_decay",
            "parameters": {
                "generator": {
                    "kind": "cantor",
                    "geometry": "torus",
                    "params": {"depth": 6, "endpoints": "left"},
                },
                "m_exp": 1.0,
                "alpha": 0.0,
                "eps_grid": [2.0**-j for j in range(1, 7)],
                "degree": 512,
                "beta": 1.0,
            },
            "seed": 3,
            "output_path": "out/bp_decay.json",
        },
        "d_schur_hs.json": {
            "kind": "schur_hs",
            "parameters": {
                "x_generator": {
                    "kind": "cantor",
                    "geometry": "torus",
                    "params": {"depth": 5, "endpoints": "both"},
                },
                "y_size": 4,
                "n_relations": 4,
                "trials_per_relation": 10,
            },
            "seed": 4,
            "output_path": "out/schur_hs.json",
        },
        "e_ascent_suite.json": {
            "kind": "ascent_suite",
            "parameters": {"n_normal_instances": 40},
            "seed": 5,
            "output_path": "out/ascent_suite.json",
        },
    }

    def run_suite(base: Path) -> dict:
        base.mkdir()
        for name, cfg in configs.items():
            (base / name).write_text(json.dumps(cfg, indent=1) + "\n")
        from synthlab.cli import main

        code = main(["suite", str(base)])
        artifacts = {
            p.relative_to(base).as_posix(): p.read_bytes()
            for p in sorted((base / "out").glob("*"))
        }
        return {"exit": code, "artifacts": artifacts}

    t0 = time.perf_counter()
    first = run_suite(tmp_path / "run1")
    second = run_suite(tmp_path / "run2")
    elapsed = time.perf_counter() - t0

    ok_exit = first["exit"] == 0 and second["exit"] == 0
    ok_bytes = first["artifacts"] == second["artifacts"] and len(first["artifacts"]) == 10
    ok_time = elapsed < 600.0
    ok = ok_exit and ok_bytes and ok_time
    verdict(
        10,
        ok,
        f"two suite runs of 5 experiments in {elapsed:.1f}s < 600s, "
        f"exit codes ({first['exit']}, {second['exit']}), "
        f"{len(first['artifacts'])} artifacts byte-identical: {ok_bytes}",
    )
    assert ok_exit and ok_bytes and ok_time
