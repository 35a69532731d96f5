"""Smoke tests for the python bindings: one end-to-end touch per subsystem."""

import math

import pytest

import netveil as nv


def triangle_bundle():
    return nv.parse_network(
        """{
          "topology": {"nodes": 3,
                       "edges": [{"u": 0, "v": 1, "distance": 1.0},
                                 {"u": 1, "v": 2, "distance": 1.0},
                                 {"u": 0, "v": 2, "distance": 3.0}]},
          "elements": [{"site": 0, "value": 0.0},
                       {"site": 1, "value": 0.0},
                       {"site": 2, "value": 0.0}],
          "problem": {"kind": "traffic", "gamma": 1.0,
                      "od_pairs": [{"origin": 0, "destination": 2}]}
        }"""
    )


def test_graph_metrics():
    edges = [nv.EdgeSpec(i, i + 1, 1.0) for i in range(3)]
    elements = [nv.Element(i, float(i + 1)) for i in range(4)]
    g = nv.CinDescription(4, edges, elements, nv.ElementKind.node_sited)
    assert nv.hop_distance(g, 0, 3) == 3
    assert nv.diameter(g) == 3


def test_loader_rejects_duplicate_sites():
    bad = """{
      "topology": {"nodes": 2, "edges": [{"u": 0, "v": 1, "distance": 1.0}]},
      "elements": [{"site": 0, "value": 1.0, "cost": 1.0},
                   {"site": 0, "value": 2.0, "cost": 1.0}],
      "problem": {"kind": "dispatch", "demand": 1.0}
    }"""
    with pytest.raises(nv.Error, match="E_DUP_SITE"):
        nv.parse_network(bad)


def test_laplace_noise_is_seed_deterministic():
    a = nv.laplace_noise(0.1, 5, seed=7)
    b = nv.laplace_noise(0.1, 5, seed=7)
    assert a == b
    assert any(abs(x) > 0 for x in a)


def test_shuffle_is_a_bijection_over_sites():
    bundle = nv.make_dispatch_benchmark()
    shuffled = nv.shuffle_locations(bundle.network, epsilon=1.0, alpha_loc=2.0, seed=3)
    original = sorted(e.site for e in bundle.network.elements)
    released = sorted(e.site for e in shuffled.elements)
    assert original == released
    assert shuffled.values() == bundle.network.values()


def test_dispatch_solver_merit_order():
    inst = nv.DispatchInstance([5.0, 3.0, 2.0], [1.0, 2.0, 5.0], 8.0)
    sol = nv.solve_dispatch(inst)
    assert sol.output == [5.0, 3.0, 0.0]
    assert math.isclose(sol.objective, 11.0)


def test_restoration_meets_the_band():
    bundle = triangle_bundle()
    inst = bundle.problem
    result = nv.restore_exact_sp(inst, [3.0, 3.0, 0.0], ostar=2.0, beta=0.1)
    assert result.converged
    assert result.gap <= 0.1 + 1e-6
    resolved = nv.solve_traffic(inst.with_values(result.values))
    assert resolved.objective >= result.witness.objective - 1e-6


def test_attack_damage_example():
    bundle = nv.parse_network(
        """{
      "topology": {"nodes": 3, "edges": [{"u": 0, "v": 1, "distance": 1.0},
                                          {"u": 1, "v": 2, "distance": 1.0}]},
      "elements": [{"site": 0, "value": 5.0, "cost": 1.0},
                   {"site": 1, "value": 3.0, "cost": 2.0},
                   {"site": 2, "value": 2.0, "cost": 5.0}],
      "problem": {"kind": "dispatch", "demand": 8.0}
    }"""
    )
    damaged = nv.apply_attack(bundle.network, [0])
    hit = nv.damage(bundle.problem, bundle.network, damaged)
    assert math.isclose(hit.damage, 35.0)


def test_pipeline_round_trip():
    bundle = triangle_bundle()
    config = nv.PipelineConfig()
    config.privacy.seed = 11
    config.privacy.alpha_val = 0.5
    config.alpha_loc_hops = 1.0
    config.restore = nv.RestoreMode.exact_sp
    config.runs = 2
    config.budgets_pct = [34.0]
    report = nv.run_pipeline(bundle, config)
    assert len(report.runs) == 2
    assert report.problem_kind == "traffic"
    again = nv.run_pipeline(bundle, config)
    assert nv.report_to_json(report) == nv.report_to_json(again)
