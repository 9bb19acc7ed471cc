import json
import math
import time
from fractions import Fraction

import numpy as np
import pytest

from errors import DomainError
from expansion.profile import phi, sse_profile
from graphs.core import Family, FamilySpec, generate
from spectral.norms import two_to_inf_norm
from spectral.operators import projector_for, random_symmetric
from theorems.battery import battery_instances, battery_specs, run_battery
from theorems.report import (
    Claim, Report, Verdict, overall_exit_code, reports_to_csv, reports_to_json, to_jsonable,
)
from theorems.verifiers import (
    verify_duality, verify_easy_direction, verify_high_expansion, verify_lemma_inner_product,
    verify_local_cheeger, verify_main, verify_one_to_two, verify_projector_orthogonal,
    verify_projector_subspace,
)

INF = math.inf


# =============================================================================
# Easy direction
# =============================================================================

def test_easy_direction_clique_union(cu23):
    report = verify_easy_direction(cu23, 0.9, 2, INF)
    assert report.verdict == Verdict.HOLDS
    assert report.evidence["norm_upper"] == pytest.approx(math.sqrt(2))
    assert report.evidence["sets_checked"] == 2 ** 6 - 1


def test_easy_direction_k4(k4):
    report = verify_easy_direction(k4, 0.5, 2, INF)
    assert report.verdict == Verdict.HOLDS
    assert report.evidence["norm_upper"] == pytest.approx(1.0)


def test_easy_direction_half_cube(q3):
    report = verify_easy_direction(q3, 0.3, 2, INF)
    assert report.verdict == Verdict.HOLDS
    assert report.evidence["norm_upper"] == pytest.approx(2.0)
    assert report.evidence["worst_slack"] >= 0


def test_easy_direction_unsupported_pair(q3):
    report = verify_easy_direction(q3, 0.3, 1.5, 3)
    assert report.verdict == Verdict.INCONCLUSIVE
    assert "unsupported" in report.evidence["reason"]


def test_easy_direction_size_cap(q3):
    report = verify_easy_direction(q3, 0.3, 2, 4, size_cap=2)
    assert report.evidence["sets_checked"] == 8 + 28


# =============================================================================
# Main theorem
# =============================================================================

def test_main_k8(k8):
    report = verify_main(k8, 1 / 16, 0.18, [(2, 4), (2, INF)], restarts=4, seed=7, threads=1)
    assert report.verdict == Verdict.HOLDS
    assert report.evidence["phi_delta"] == Fraction(6, 7)
    assert report.evidence["hypothesis_satisfied"] is True
    assert report.evidence["bound_rhs"] == pytest.approx(4.0)
    assert report.evidence["norm_upper"] == pytest.approx(1.0)
    assert report.evidence["projector_dimension"] == 1
    assert [e["verdict"] for e in report.evidence["pairs"]] == [Verdict.HOLDS, Verdict.HOLDS]


def test_main_clique_union_contrapositive(cu23):
    report = verify_main(cu23, 1 / 2, 0.01, [(2, INF)], restarts=4, seed=0, threads=1)
    assert report.verdict == Verdict.HYPOTHESIS_NOT_SATISFIED
    assert report.evidence["phi_delta"] == 0
    assert report.evidence["witness_set"].to_list() == [0, 1, 2]
    assert report.evidence["norm_lower"] == pytest.approx(math.sqrt(2), rel=1e-9)
    assert report.evidence["vacuous_flags"]["outside_stated_range"] is True


def test_main_hypercube(q3):
    report = verify_main(q3, 1 / 32, 0.2, [(2, 4)], restarts=4, seed=0, threads=1)
    assert report.verdict == Verdict.HOLDS
    assert report.evidence["phi_delta"] == 1
    assert report.evidence["norm_upper"] == pytest.approx(1.0)
    assert report.evidence["bound_rhs"] == pytest.approx(math.sqrt(32))


def test_main_rejects_low_exponents(k8):
    with pytest.raises(DomainError):
        verify_main(k8, 1 / 16, 0.1, [(4 / 3, 2)])


def test_main_budget_is_inconclusive():
    # every set of K_40 with at most 20 vertices has Φ >= 20/39 > 2√0.05
    G = generate(FamilySpec(Family.COMPLETE, n=40))
    report = verify_main(G, 1 / 8, 0.05, [(2, 4)], budget=10, restarts=2, threads=1)
    assert report.verdict == Verdict.INCONCLUSIVE
    assert "budget" in report.evidence["reason"]
    assert report.evidence["phi_delta_upper"] >= Fraction(20, 39)


def test_main_over_budget_sampled_set_refutes():
    G = generate(FamilySpec(Family.HYPERCUBE, k=4))
    report = verify_main(G, 1 / 8, 0.2, [(2, 4)], budget=10, restarts=2, seed=0, threads=1)
    assert report.verdict == Verdict.HYPOTHESIS_NOT_SATISFIED
    assert "budget" in report.evidence["reason"]
    assert report.evidence["profile_mode"] == "sampled"
    value = report.evidence["phi_delta"]
    assert float(value) < 2 * math.sqrt(0.2)
    assert phi(G, report.evidence["witness_set"]) == value
    assert len(report.evidence["witness_set"]) <= 8


def test_main_empty_set_family(k4):
    # 4δ·n < 1: no nonempty set qualifies, the hypothesis holds vacuously
    report = verify_main(k4, 1 / 32, 0.1, [(2, 4)], restarts=2, threads=1)
    assert report.evidence["vacuous_flags"]["empty_set_family"] is True
    assert report.evidence["phi_delta"] == INF
    assert report.verdict == Verdict.HOLDS


# =============================================================================
# High expansion and 1->2
# =============================================================================

def test_high_expansion_k8(k8):
    report = verify_high_expansion(k8, 1 / 8, 0.05, restarts=4, seed=0, threads=1)
    assert report.verdict == Verdict.HOLDS
    assert report.evidence["phi_delta"] == 1
    assert report.evidence["hypothesis_rhs"] == pytest.approx(0.75)
    assert report.evidence["norm_upper"] == pytest.approx(1.0)
    assert report.inputs["constant"] == 100


def test_high_expansion_cycle(c6):
    report = verify_high_expansion(c6, 1 / 6, 0.04, [(2, INF)], restarts=4, seed=0, threads=1)
    assert report.verdict == Verdict.HOLDS
    assert report.evidence["projector_dimension"] == 3
    assert report.evidence["norm_upper"] == pytest.approx(math.sqrt(3), abs=1e-9)
    assert report.evidence["bound_rhs"] == pytest.approx(math.sqrt(6))


def test_high_expansion_clique_union(cu23):
    report = verify_high_expansion(cu23, 1 / 2, 0.05, restarts=2, seed=0, threads=1)
    assert report.verdict == Verdict.HYPOTHESIS_NOT_SATISFIED


@pytest.mark.parametrize("eps,vacuous", [(0.05, False), (0.1, True), (0.2, True)])
def test_high_expansion_vacuous_flag(k8, eps, vacuous):
    report = verify_high_expansion(k8, 1 / 8, eps, [(2, 4)], restarts=2, threads=1)
    assert report.evidence["vacuous_flags"]["hypothesis_vacuous"] is vacuous


def test_one_to_two_k8(k8):
    report = verify_one_to_two(k8, 1 / 16, 0.18, [(1, 2), (4 / 3, 2)], restarts=4, threads=1)
    assert report.verdict == Verdict.HOLDS
    assert report.evidence["norm_upper"] == pytest.approx(1.0)


def test_one_to_two_clique_union_rounds(cu23):
    report = verify_one_to_two(cu23, 1 / 2, 0.01, [(1, 2)], restarts=4, threads=1)
    assert report.verdict == Verdict.HYPOTHESIS_NOT_SATISFIED
    pipeline = report.evidence["pipeline"]
    assert pipeline
    profile = sse_profile(cu23, 1.0)
    for entry in pipeline:
        if not entry["found"]:
            continue
        assert entry["mu"] <= 4 * Fraction(1, 2)
        if entry["certified"]:
            assert entry["phi"] < 2 * math.sqrt(0.01)
            assert profile.value <= entry["phi"]
    assert any(entry["certified"] for entry in pipeline)


def test_one_to_two_rejects_high_exponents(k8):
    with pytest.raises(DomainError):
        verify_one_to_two(k8, 1 / 16, 0.1, [(2, 4)])


# =============================================================================
# Duality
# =============================================================================

def test_duality_averaging():
    report = verify_duality(np.full((4, 4), 0.25), 4 / 3, 2, restarts=8, seed=0, threads=1)
    assert report.verdict == Verdict.HOLDS
    assert report.evidence["norm_lower"] == pytest.approx(1.0)
    assert report.evidence["dual_norm_lower"] == pytest.approx(1.0)


def test_duality_projector_one_to_two(q3):
    P = projector_for(q3, 0.3)
    report = verify_duality(P, 1, 2, restarts=8, seed=0, threads=1)
    assert report.verdict == Verdict.HOLDS
    assert report.evidence["norm_lower"] == pytest.approx(two_to_inf_norm(P), rel=1e-9)


DUALITY_PAIRS = [(4 / 3, 2), (1, 2), (2, 4)]


@pytest.mark.parametrize("seed", range(3))
@pytest.mark.parametrize("p,q", DUALITY_PAIRS)
def test_duality_random_symmetric(seed, p, q):
    report = verify_duality(random_symmetric(8, seed=seed), p, q, restarts=200, seed=seed)
    assert report.verdict == Verdict.HOLDS
    assert report.evidence["relative_gap"] <= 1e-4
    assert report.evidence["norm_lower"] <= report.evidence["norm_upper"] * (1 + 1e-9)


@pytest.mark.slow
def test_duality_grid_within_a_minute():
    started = time.perf_counter()
    gaps = []
    for seed in range(20):
        M = random_symmetric(8, seed=seed)
        for p, q in DUALITY_PAIRS:
            report = verify_duality(M, p, q, restarts=200, seed=seed)
            assert report.verdict == Verdict.HOLDS, (seed, p, q)
            gaps.append(report.evidence["relative_gap"])
    assert time.perf_counter() - started < 60
    assert max(gaps) <= 1e-4


# =============================================================================
# Eigenspace lemmas
# =============================================================================

def test_inner_product_lemma_boundary(q3):
    chi = np.array([1.0 - 2 * (i & 1) for i in range(8)])
    report = verify_lemma_inner_product(q3, 1 / 3, trials=1, vectors=[chi])
    assert report.verdict == Verdict.HOLDS
    assert report.evidence["min_margin"] == pytest.approx(0.0, abs=1e-9)


def test_inner_product_lemma_samples(q3, k4):
    assert verify_lemma_inner_product(q3, 1 / 3, trials=1000, seed=0).verdict == Verdict.HOLDS
    report = verify_lemma_inner_product(k4, 1.0, trials=10, vectors=[np.ones(4)])
    assert report.verdict == Verdict.HOLDS


@pytest.mark.parametrize("fixture,lam,pq", [
    ("k4", 0.9, (2, 4)),
    ("cu23", 0.9, (2, INF)),
    ("q3", 0.3, (2, INF)),
])
def test_projector_subspace(request, fixture, lam, pq):
    G = request.getfixturevalue(fixture)
    report = verify_projector_subspace(G, lam, *pq, trials=1000, seed=0, restarts=8)
    assert report.verdict == Verdict.HOLDS
    assert report.evidence["witness_range_distance"] <= 1e-8


def test_projector_subspace_q3_bound(q3):
    report = verify_projector_subspace(q3, 0.3, 2, INF, trials=1000, seed=0, restarts=8)
    assert report.evidence["sampled_max_ratio"] <= 2 + 1e-9
    assert report.evidence["norm_lower"] == pytest.approx(2.0, rel=1e-9)


@pytest.mark.parametrize("fixture,lam", [("k4", 0.9), ("q3", 0.3), ("c6", 0.2), ("cu23", 0.9)])
def test_projector_orthogonal(request, fixture, lam):
    report = verify_projector_orthogonal(request.getfixturevalue(fixture), lam)
    assert report.verdict == Verdict.HOLDS
    assert report.evidence["failing"] == []


@pytest.mark.parametrize("fixture", ["k4", "k8", "q3", "c6", "cu23"])
@pytest.mark.parametrize("epsilon", [0.1, 0.25, 0.7])
@pytest.mark.parametrize("delta", [1 / 4, 1 / 2])
def test_local_cheeger_disjunction(request, fixture, epsilon, delta):
    G = request.getfixturevalue(fixture)
    report = verify_local_cheeger(G, epsilon, delta, trials=500, seed=0)
    assert report.verdict == Verdict.HOLDS
    assert report.evidence["failures"] == 0
    assert report.evidence["trials"] == 500


# =============================================================================
# Reports
# =============================================================================

def _report(verdict):
    return Report(Claim.MAIN_THEOREM, {"graph": "g"}, verdict, {"phi_delta": Fraction(1, 3)})


def test_exit_codes():
    assert overall_exit_code([_report(Verdict.HOLDS)]) == 0
    assert overall_exit_code([_report(Verdict.HYPOTHESIS_NOT_SATISFIED)]) == 0
    assert overall_exit_code([_report(Verdict.HOLDS), _report(Verdict.INCONCLUSIVE)]) == 3
    assert overall_exit_code([_report(Verdict.INCONCLUSIVE), _report(Verdict.VIOLATED)]) == 2


def test_report_key_order():
    data = _report(Verdict.HOLDS).to_dict()
    assert list(data) == ["claim", "inputs", "verdict", "evidence", "tolerances", "runtime_ms"]
    assert list(data["inputs"])[:6] == ["graph", "delta", "epsilon", "p", "q", "seed"]
    assert data["evidence"]["phi_delta"] == "1/3"


def test_to_jsonable():
    assert to_jsonable({"a": INF, "b": np.float64(0.5), "c": np.arange(2)}) == {
        "a": "inf", "b": 0.5, "c": [0, 1],
    }
    assert to_jsonable(float("nan")) is None


def test_reports_are_reproducible(k8):
    runs = [
        reports_to_json([verify_main(k8, 1 / 16, 0.18, restarts=4, seed=7, threads=1)],
                        include_timing=False)
        for _ in range(2)
    ]
    assert runs[0] == runs[1]
    assert json.loads(runs[0])["runtime_ms"] is None


def test_json_single_and_many():
    one = json.loads(reports_to_json([_report(Verdict.HOLDS)]))
    many = json.loads(reports_to_json([_report(Verdict.HOLDS)] * 2))
    assert isinstance(one, dict) and isinstance(many, list) and len(many) == 2


def test_csv_rows_per_pair(k8):
    report = verify_main(k8, 1 / 16, 0.18, [(2, 4), (2, INF)], restarts=2, threads=1)
    lines = reports_to_csv([report]).splitlines()
    assert lines[0].startswith("claim,graph,delta,epsilon,p,q,seed,verdict")
    assert len(lines) == 3
    assert all(",holds," in line for line in lines[1:])


def test_summary_numbers_are_in_json(k8):
    report = verify_main(k8, 1 / 16, 0.18, restarts=2, threads=1)
    assert "phi_delta=6/7" in report.summary()
    assert report.to_dict()["evidence"]["phi_delta"] == "6/7"


# =============================================================================
# Battery
# =============================================================================

def test_battery_specs():
    specs = battery_specs()
    labels = {s.label() for s in specs}
    assert "complete(n=12)" in labels and "hypercube(k=5)" in labels
    assert all(s.m * s.k <= 24 for s in specs if s.family == Family.CLIQUE_UNION)
    assert len(battery_instances()) == len(specs) * 9


def test_small_battery():
    specs = [FamilySpec(Family.COMPLETE, n=8), FamilySpec(Family.CLIQUE_UNION, m=4, k=3)]
    reports = run_battery(threads=2, restarts=2, seed=0, deltas=[1 / 16], epsilons=[0.1],
                          specs=specs)
    assert [r.inputs["instance"] for r in reports] == [
        "complete(n=8)|delta=0.0625|eps=0.1",
        "clique_union(m=4,k=3)|delta=0.0625|eps=0.1",
    ]
    assert overall_exit_code(reports) != 2


@pytest.mark.slow
def test_full_battery_finds_no_violation():
    reports = run_battery()
    assert not any(r.verdict == Verdict.VIOLATED for r in reports)
