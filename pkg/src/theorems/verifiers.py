"""
Claim Verifiers

Each verifier turns one stated result into a Report. Mathematical outcomes
never raise: budget refusals and unsupported regimes become inconclusive.
Invalid arguments (exponents out of range, bad densities) still raise.
"""

import logging
import math
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Optional, Sequence

import numpy as np

from config import config
from errors import BudgetExceededError, DomainError, PreconditionError
from expansion.profile import (
    ExpansionProfile, iter_small_sets, max_set_size, sse_profile, sse_profile_heuristic,
)
from graphs.core import Graph, VertexSet
from rounding.sweep import (
    collision_ratio, lcb_bound_low, level_sets, round_witness, sweep_high,
)
from spectral.norms import (
    MatrixLike, NormEstimate, as_matrix, dual_witness, holder_dual, inner, lp_norm, pq_norm_upper,
    pq_norm_upper_dual, ratio, upper_bound_with_method,
)
from spectral.operators import (
    Projector, Spectrum, SymmetricOperator, eigendecompose, normalized_adjacency, top_eigenspace,
)
from spectral.search import ascend, pq_norm_lower
from theorems.report import Claim, Report, Verdict, timed

logger = logging.getLogger(__name__)

# Relative agreement demanded of the two sides of Hölder duality
DUALITY_AGREEMENT = 1e-4
_DUALITY_ROUNDS = 4

Pairs = Sequence[tuple[float, float]]


# a dense eigenbasis is n^2 floats; keep only the last few graphs
@lru_cache(maxsize=4)
def spectrum_of(G: Graph) -> Spectrum:
    """Eigendecomposition of G's normalized adjacency, cached per graph"""
    return eigendecompose(normalized_adjacency(G))


def _label(G: Graph, label: Optional[str]) -> str:
    return label or f"graph(n={G.n},d={G.d})"


def _exponent_exp(p: float) -> float:
    """1/p with 1/inf = 0"""
    return 0.0 if math.isinf(p) else 1.0 / p


def _combine(verdicts: Sequence[Verdict]) -> Verdict:
    if Verdict.VIOLATED in verdicts:
        return Verdict.VIOLATED
    if Verdict.INCONCLUSIVE in verdicts:
        return Verdict.INCONCLUSIVE
    return Verdict.HOLDS


# =============================================================================
# Easy direction
# =============================================================================

@timed
def verify_easy_direction(G: Graph, epsilon: float, p: float, q: float,
                          label: Optional[str] = None,
                          size_cap: Optional[int] = None) -> Report:
    """
    Check 1 - Φ(S) <= ||P_ε||_{p->q} μ(S)^(1/p - 1/q) + ε over enumerated sets

    P_ε is the projector at threshold λ = ε. All nonempty sets are checked
    when n <= SSE_EASY_FULL_N, otherwise every set with |S| <= size_cap.
    """
    if not p < q:
        raise DomainError(f"easy direction needs p < q, got p={p}, q={q}")
    if not -1 <= epsilon <= 1:
        raise DomainError(f"epsilon is used as a threshold and must lie in [-1, 1], got {epsilon}")

    inputs = {"graph": _label(G, label), "delta": None, "epsilon": epsilon, "p": p, "q": q,
              "seed": None}
    P = top_eigenspace(spectrum_of(G), epsilon)
    evidence = {"projector_threshold": epsilon, "projector_dimension": P.dimension}

    try:
        upper, method = upper_bound_with_method(P, p, q)
        if method == "one_to_inf":
            raise DomainError(f"no projector bound for p={p}, q={q}")
    except DomainError as e:
        evidence["reason"] = f"unsupported exponent pair: {e}"
        return Report(Claim.EASY_DIRECTION, inputs, Verdict.INCONCLUSIVE, evidence)

    if size_cap is None:
        size_cap = G.n if G.n <= config.easy_direction_full_n else config.easy_direction_size_cap
    size_cap = min(size_cap, G.n)
    exponent = _exponent_exp(p) - _exponent_exp(q)
    slack_tol = config.certificate_slack

    worst: Optional[tuple[float, tuple[int, ...], int]] = None
    checked = 0
    for members, cut in iter_small_sets(G, size_cap):
        checked += 1
        size = len(members)
        phibar = 1.0 - cut / (G.d * size)
        rhs = upper * (size / G.n) ** exponent + epsilon
        slack = rhs - phibar
        if worst is None or slack < worst[0]:
            worst = (slack, members, cut)

    slack, members, cut = worst
    S = VertexSet(n=G.n, members=members)
    phibar = 1 - Fraction(cut, G.d * len(members))
    rhs = upper * (len(members) / G.n) ** exponent + epsilon
    verdict = Verdict.VIOLATED if slack < -slack_tol else Verdict.HOLDS

    evidence.update({
        "witness_set": S,
        "norm_upper": upper,
        "bound_rhs": rhs,
        "upper_method": method,
        "worst_phi_bar": phibar,
        "worst_mu": Fraction(len(members), G.n),
        "worst_slack": slack,
        "sets_checked": checked,
        "size_cap": size_cap,
    })
    logger.info(f"easy_direction {inputs['graph']} eps={epsilon} p={p} q={q}: "
                f"{verdict.value} (worst slack {slack:.3g})")
    return Report(Claim.EASY_DIRECTION, inputs, verdict, evidence)


# =============================================================================
# Norm-bound theorems (main, high expansion, 1->2)
# =============================================================================

def _profile_or_none(G: Graph, delta: float, budget: Optional[int]
                     ) -> tuple[Optional[ExpansionProfile], bool]:
    """(profile, empty_family); profile is None when no nonempty set qualifies"""
    if max_set_size(G, delta) < 1:
        return None, True
    return sse_profile(G, delta, budget), False


def _certify_pairs(G: Graph, P: Projector, pairs: Pairs, bound: float, hypothesis: bool,
                   upper_of: Callable[[Projector, float, float], float],
                   rounder: Callable[[np.ndarray], dict],
                   restarts: Optional[int], seed: Optional[int],
                   threads: Optional[int]) -> tuple[list[dict], list[NormEstimate]]:
    """Per-pair upper/lower bounds against 1/sqrt(δ)"""
    entries, estimates = [], []
    slack = config.certificate_slack
    for p, q in pairs:
        upper = upper_of(P, p, q)
        est = pq_norm_lower(P, p, q, restarts=restarts, seed=seed, threads=threads)
        entry = {
            "p": p,
            "q": q,
            "norm_lower": est.lower,
            "norm_upper": upper,
            "lower_method": est.lower_method,
            "certified": upper < bound,
        }
        if not hypothesis:
            entry["verdict"] = Verdict.HYPOTHESIS_NOT_SATISFIED
        elif est.witness is not None and est.lower >= bound - slack:
            entry["verdict"] = Verdict.VIOLATED
            entry["witness_vector"] = est.witness
            entry["rounding"] = rounder(est.witness)
        elif upper < bound:
            entry["verdict"] = Verdict.HOLDS
        else:
            entry["verdict"] = Verdict.INCONCLUSIVE
        entries.append(entry)
        estimates.append(est)
    return entries, estimates


def _pipeline_rounder(G: Graph, delta: float, epsilon: float) -> Callable[[np.ndarray], dict]:
    def run(w: np.ndarray) -> dict:
        try:
            return round_witness(G, w, delta, epsilon).to_dict()
        except PreconditionError as e:
            return {"error": str(e), "collision_ratio": e.ratio}
    return run


def _norm_claim(claim: Claim, G: Graph, delta: float, epsilon: float, pairs: Pairs,
                profile_delta: float, hypothesis_of: Callable[[Fraction], bool],
                hypothesis_rhs: float, threshold: float,
                upper_of: Callable[[Projector, float, float], float],
                rounder: Callable[[np.ndarray], dict],
                restarts: Optional[int], seed: Optional[int], label: Optional[str],
                budget: Optional[int], threads: Optional[int],
                extra_flags: Optional[dict] = None) -> tuple[Report, list[NormEstimate]]:
    seed = config.default_seed if seed is None else seed
    inputs = {"graph": _label(G, label), "delta": delta, "epsilon": epsilon, "p": None,
              "q": None, "seed": seed, "pairs": [list(pq) for pq in pairs]}
    bound = 1.0 / math.sqrt(delta)
    flags = dict(extra_flags or {})
    evidence: dict = {
        "profile_delta": profile_delta,
        "hypothesis_rhs": hypothesis_rhs,
        "projector_threshold": threshold,
        "bound_rhs": bound,
        "vacuous_flags": flags,
    }

    try:
        profile, empty = _profile_or_none(G, profile_delta, budget)
    except BudgetExceededError as e:
        # a sampled set can still refute the hypothesis: Φ(δ) <= Φ(S)
        evidence["reason"] = str(e)
        profile, empty = sse_profile_heuristic(G, profile_delta, seed=seed), False
        if hypothesis_of(profile.value):
            evidence["phi_delta_upper"] = profile.value
            evidence["profile_mode"] = profile.mode.value
            logger.info(f"{claim.value} {inputs['graph']}: inconclusive (budget)")
            return Report(claim, inputs, Verdict.INCONCLUSIVE, evidence), []
        logger.info(f"{claim.value} {inputs['graph']}: exact profile over budget, "
                    f"sampled set refutes the hypothesis")

    if empty:
        # infimum over an empty family: the hypothesis holds vacuously
        flags["empty_set_family"] = True
        evidence["phi_delta"] = math.inf
        hypothesis = True
    else:
        evidence["phi_delta"] = profile.value
        evidence["witness_set"] = profile.witness
        evidence["profile_mode"] = profile.mode.value
        hypothesis = hypothesis_of(profile.value)
    evidence["hypothesis_satisfied"] = hypothesis

    P = top_eigenspace(spectrum_of(G), threshold)
    evidence["projector_dimension"] = P.dimension

    entries, estimates = _certify_pairs(G, P, pairs, bound, hypothesis, upper_of, rounder,
                                        restarts, seed, threads)
    evidence["pairs"] = entries
    evidence["norm_lower"] = max(e["norm_lower"] for e in entries)
    evidence["norm_upper"] = max(e["norm_upper"] for e in entries)

    if not hypothesis:
        verdict = Verdict.HYPOTHESIS_NOT_SATISFIED
    else:
        verdict = _combine([e["verdict"] for e in entries])

    logger.info(f"{claim.value} {inputs['graph']} delta={delta} eps={epsilon}: {verdict.value}")
    return Report(claim, inputs, verdict, evidence), estimates


def _check_pairs(pairs: Pairs, ok: Callable[[float, float], bool], rule: str) -> None:
    if not pairs:
        raise DomainError("at least one (p, q) pair is required")
    for p, q in pairs:
        if not ok(p, q):
            raise DomainError(f"pair (p={p}, q={q}) violates {rule}")


@timed
def verify_main(G: Graph, delta: float, epsilon: float, pairs: Optional[Pairs] = None,
                restarts: Optional[int] = None, seed: Optional[int] = None,
                label: Optional[str] = None, budget: Optional[int] = None,
                threads: Optional[int] = None) -> Report:
    """
    Φ(4δ) >= 2√ε implies ||P_{1-ε}||_{p->q} < 1/√δ for 2 <= p < q <= inf

    δ and ε outside (0, 1/4) are accepted and flagged in the evidence.
    """
    pairs = list(pairs or config.default_pairs)
    _check_pairs(pairs, lambda p, q: 2 <= p < q, "2 <= p < q <= inf")
    if not (delta > 0 and 0 < epsilon <= 2):
        raise DomainError(f"need delta > 0 and 0 < epsilon <= 2, got {delta}, {epsilon}")

    eps_exact = Fraction(epsilon)
    report, _ = _norm_claim(
        Claim.MAIN_THEOREM, G, delta, epsilon, pairs,
        profile_delta=min(4 * delta, 1.0),
        hypothesis_of=lambda value: value * value >= 4 * eps_exact,
        hypothesis_rhs=2 * math.sqrt(epsilon),
        threshold=1.0 - epsilon,
        upper_of=pq_norm_upper,
        rounder=_pipeline_rounder(G, delta, epsilon),
        restarts=restarts, seed=seed, label=label, budget=budget, threads=threads,
        extra_flags={"outside_stated_range": not (0 < delta < 0.25 and 0 < epsilon < 0.25)},
    )
    return report


@timed
def verify_high_expansion(G: Graph, delta: float, epsilon: float,
                          pairs: Optional[Pairs] = None, constant: Optional[float] = None,
                          restarts: Optional[int] = None, seed: Optional[int] = None,
                          label: Optional[str] = None, budget: Optional[int] = None,
                          threads: Optional[int] = None) -> Report:
    """Φ(δ) > 1 - Cε^2 implies ||P_{√ε}||_{p->q} < 1/√δ for 2 <= p <= q <= inf"""
    pairs = list(pairs or config.default_pairs)
    _check_pairs(pairs, lambda p, q: 2 <= p <= q, "2 <= p <= q <= inf")
    if not (0 < delta <= 1 and 0 < epsilon <= 1):
        raise DomainError(f"need 0 < delta <= 1 and 0 < epsilon <= 1, got {delta}, {epsilon}")
    constant = config.high_expansion_constant if constant is None else constant

    rhs_exact = 1 - Fraction(constant) * Fraction(epsilon) ** 2
    rhs = float(rhs_exact)

    def rounder(w: np.ndarray) -> dict:
        return sweep_high(G, w, delta, constant).to_dict()

    report, _ = _norm_claim(
        Claim.HIGH_EXPANSION, G, delta, epsilon, pairs,
        profile_delta=delta,
        hypothesis_of=lambda value: value > rhs_exact,
        hypothesis_rhs=rhs,
        threshold=math.sqrt(epsilon),
        upper_of=pq_norm_upper,
        rounder=rounder,
        restarts=restarts, seed=seed, label=label, budget=budget, threads=threads,
        extra_flags={"hypothesis_vacuous": rhs <= 0},
    )
    report.inputs["constant"] = constant
    return report


@timed
def verify_one_to_two(G: Graph, delta: float, epsilon: float, pairs: Pairs,
                      restarts: Optional[int] = None, seed: Optional[int] = None,
                      label: Optional[str] = None, budget: Optional[int] = None,
                      threads: Optional[int] = None) -> Report:
    """
    Φ(4δ) >= 2√ε implies ||P_{1-ε}||_{p->q} < 1/√δ for 1 <= p <= q <= 2

    Upper bounds come through duality. Every lower-bound witness that meets
    the collision condition is also rounded; a certified set would contradict
    the exact profile and is reported as a violation.
    """
    pairs = list(pairs)
    _check_pairs(pairs, lambda p, q: 1 <= p <= q <= 2, "1 <= p <= q <= 2")
    if not (delta > 0 and 0 < epsilon <= 2):
        raise DomainError(f"need delta > 0 and 0 < epsilon <= 2, got {delta}, {epsilon}")

    eps_exact = Fraction(epsilon)
    report, estimates = _norm_claim(
        Claim.ONE_TO_TWO, G, delta, epsilon, pairs,
        profile_delta=min(4 * delta, 1.0),
        hypothesis_of=lambda value: value * value >= 4 * eps_exact,
        hypothesis_rhs=2 * math.sqrt(epsilon),
        threshold=1.0 - epsilon,
        upper_of=pq_norm_upper_dual,
        rounder=_pipeline_rounder(G, delta, epsilon),
        restarts=restarts, seed=seed, label=label, budget=budget, threads=threads,
    )

    if estimates:
        pipeline = []
        for est in estimates:
            if est.witness is None or collision_ratio(est.witness, delta) > 1 + config.certificate_slack:
                continue
            rounded = round_witness(G, est.witness, delta, epsilon)
            pipeline.append({"p": est.p, "q": est.q, **rounded.to_dict()})
            if rounded.certified and report.evidence["hypothesis_satisfied"]:
                report.verdict = Verdict.VIOLATED
                report.evidence["witness_set"] = rounded.vertex_set
        report.evidence["pipeline"] = pipeline
    return report


# =============================================================================
# Hölder duality
# =============================================================================

@timed
def verify_duality(M: MatrixLike, p: float, q: float, restarts: Optional[int] = None,
                   seed: Optional[int] = None, label: Optional[str] = None,
                   threads: Optional[int] = None) -> Report:
    """
    Compare witness estimates of ||M||_{p->q} and ||M^T||_{q*->p*}

    Each side's best witness is mapped through its norming functional and
    polished on the other side, for a few rounds. Disagreement is only ever
    inconclusive: lower bounds cannot refute an equality of suprema.
    """
    seed = config.default_seed if seed is None else seed
    ps, qs = holder_dual(p), holder_dual(q)
    A = M
    B = M if isinstance(M, (Projector, SymmetricOperator)) else as_matrix(M).T
    Am, Bm = as_matrix(A), as_matrix(B)

    est_a = pq_norm_lower(A, p, q, restarts=restarts, seed=seed, threads=threads)
    est_b = pq_norm_lower(B, qs, ps, restarts=restarts, seed=seed, threads=threads)
    a, wa = est_a.lower, est_a.witness
    b, wb = est_b.lower, est_b.witness

    rounds = 0
    while wa is not None and wb is not None and rounds < _DUALITY_ROUNDS:
        if abs(a - b) <= DUALITY_AGREEMENT * max(a, b):
            break
        rounds += 1
        vb = ascend(Bm, dual_witness(Am, wa, q), qs, ps)
        if ratio(Bm, vb, qs, ps) > b:
            b, wb = ratio(Bm, vb, qs, ps), vb
        va = ascend(Am, dual_witness(Bm, wb, ps), p, q)
        if ratio(Am, va, p, q) > a:
            a, wa = ratio(Am, va, p, q), va

    scale = max(a, b)
    gap = 0.0 if scale == 0 else abs(a - b) / scale
    verdict = Verdict.HOLDS if gap <= DUALITY_AGREEMENT else Verdict.INCONCLUSIVE
    upper, upper_method = upper_bound_with_method(M, p, q)

    inputs = {"graph": label, "delta": None, "epsilon": None, "p": p, "q": q, "seed": seed,
              "restarts": restarts if restarts is not None else config.default_restarts,
              "dimension": Am.shape[0]}
    evidence = {
        "norm_lower": a,
        "norm_upper": upper,
        "upper_method": upper_method,
        "dual_exponents": [qs, ps],
        "dual_norm_lower": b,
        "relative_gap": gap,
        "cross_seed_rounds": rounds,
        "witness_vector": wa,
        "dual_witness_vector": wb,
    }
    logger.info(f"holder_duality p={p} q={q}: {a:.6g} vs {b:.6g} -> {verdict.value}")
    return Report(Claim.HOLDER_DUALITY, inputs, verdict, evidence)


# =============================================================================
# Eigenspace lemmas
# =============================================================================

@timed
def verify_lemma_inner_product(G: Graph, lam: float, trials: int, seed: Optional[int] = None,
                               label: Optional[str] = None,
                               vectors: Sequence[np.ndarray] = ()) -> Report:
    """<v, Av> >= λ ||v||_2^2 for seeded random v projected into V_λ"""
    if trials < 1:
        raise DomainError(f"trials must be >= 1, got {trials}")
    seed = config.default_seed if seed is None else seed
    inputs = {"graph": _label(G, label), "delta": None, "epsilon": None, "p": None, "q": None,
              "seed": seed, "lambda": lam, "trials": trials}
    P = top_eigenspace(spectrum_of(G), lam)
    if P.dimension == 0:
        return Report(Claim.INNER_PRODUCT_LEMMA, inputs, Verdict.HOLDS,
                      {"projector_dimension": 0, "vacuous_flags": {"empty_eigenspace": True}})

    rng = np.random.default_rng(seed)
    samples = rng.standard_normal((trials, G.n)) @ P.matrix
    candidates = [P.apply(np.asarray(v, dtype=float)) for v in vectors] + list(samples)

    # eigenvalues up to the tie tolerance below λ belong to V_λ
    slack = config.certificate_slack + config.threshold_tolerance
    worst_margin, worst_vector, checked = math.inf, None, 0
    for v in candidates:
        norm_sq = lp_norm(v, 2) ** 2
        if norm_sq == 0:
            continue
        checked += 1
        margin = inner(v, G.apply_adjacency(v)) / norm_sq - lam
        if margin < worst_margin:
            worst_margin, worst_vector = margin, v

    verdict = Verdict.VIOLATED if worst_margin < -slack else Verdict.HOLDS
    evidence = {
        "projector_dimension": P.dimension,
        "vectors_checked": checked,
        "min_margin": worst_margin,
    }
    if verdict == Verdict.VIOLATED:
        evidence["witness_vector"] = worst_vector
    return Report(Claim.INNER_PRODUCT_LEMMA, inputs, verdict, evidence)


@timed
def verify_projector_subspace(G: Graph, lam: float, p: float, q: float, trials: int,
                              seed: Optional[int] = None, restarts: Optional[int] = None,
                              label: Optional[str] = None) -> Report:
    """
    ||P_λ||_{p->q} = ||V_λ||_{p->q}, checked from both sides

    (a) no sampled v in V_λ beats the projector lower bound, and (b) the
    projector witness keeps its ratio after projection into V_λ.
    """
    if trials < 1:
        raise DomainError(f"trials must be >= 1, got {trials}")
    seed = config.default_seed if seed is None else seed
    inputs = {"graph": _label(G, label), "delta": None, "epsilon": None, "p": p, "q": q,
              "seed": seed, "lambda": lam, "trials": trials}
    P = top_eigenspace(spectrum_of(G), lam)
    if P.dimension == 0:
        return Report(Claim.PROJECTOR_SUBSPACE, inputs, Verdict.HOLDS,
                      {"projector_dimension": 0, "vacuous_flags": {"empty_eigenspace": True}})

    slack = config.certificate_slack
    est = pq_norm_lower(P, p, q, restarts=restarts, seed=seed)

    samples = P.sample_range(np.random.default_rng([seed, 1]), trials)
    ratios = np.array([lp_norm(v, q) / lp_norm(v, p) for v in samples])
    best = int(np.argmax(ratios))
    sampled_max = float(ratios[best])

    reseeded = False
    if sampled_max > est.lower + slack:
        # the search missed a direction the sampler found; restart from it
        est = pq_norm_lower(P, p, q, restarts=restarts, seed=seed, starts=[samples[best]])
        reseeded = True

    projected = P.apply(est.witness)
    distance = lp_norm(projected - est.witness, 2) / lp_norm(est.witness, 2)
    projected_ratio = lp_norm(projected, q) / lp_norm(projected, p) if np.any(projected) else 0.0

    part_a = sampled_max <= est.lower + slack
    part_b = distance <= config.projector_tolerance and abs(projected_ratio - est.lower) <= slack * max(1.0, est.lower)
    verdict = Verdict.HOLDS if part_a and part_b else Verdict.INCONCLUSIVE

    evidence = {
        "norm_lower": est.lower,
        "norm_upper": est.upper,
        "projector_dimension": P.dimension,
        "sampled_max_ratio": sampled_max,
        "witness_range_distance": distance,
        "projected_witness_ratio": projected_ratio,
        "search_reseeded": reseeded,
        "witness_vector": est.witness,
    }
    return Report(Claim.PROJECTOR_SUBSPACE, inputs, verdict, evidence)


@timed
def verify_projector_orthogonal(G: Graph, lam: float, label: Optional[str] = None) -> Report:
    """P_λ is symmetric and idempotent; the spectrum reconstructs A"""
    inputs = {"graph": _label(G, label), "delta": None, "epsilon": None, "p": None, "q": None,
              "seed": None, "lambda": lam}
    spec = spectrum_of(G)
    P = top_eigenspace(spec, lam)
    A = normalized_adjacency(G).entries

    deviations = P.deviations()
    deviations["reconstruction_frobenius"] = float(np.linalg.norm(spec.reconstruct() - A))
    gram = spec.eigenvectors.T @ spec.eigenvectors / G.n
    deviations["orthonormality_max"] = float(np.max(np.abs(gram - np.eye(G.n))))

    limits = {key: config.projector_tolerance for key in deviations}
    limits["orthonormality_max"] = config.eigen_tolerance
    failing = sorted(k for k, v in deviations.items() if v > limits[k])

    # a tolerance miss is a numerical failure, not a counterexample
    verdict = Verdict.INCONCLUSIVE if failing else Verdict.HOLDS
    evidence = {"projector_dimension": P.dimension, "deviations": deviations, "failing": failing}
    return Report(Claim.PROJECTOR_ORTHOGONAL, inputs, verdict, evidence)


@timed
def verify_local_cheeger(G: Graph, epsilon: float, delta: float, trials: int,
                         seed: Optional[int] = None, label: Optional[str] = None) -> Report:
    """
    Some level set of v^2 has μ(S) > δ or Φ(S) <= the Local Cheeger bound

    Checked for seeded random v in V_{1-ε}.
    """
    if trials < 1:
        raise DomainError(f"trials must be >= 1, got {trials}")
    seed = config.default_seed if seed is None else seed
    inputs = {"graph": _label(G, label), "delta": delta, "epsilon": epsilon, "p": None,
              "q": None, "seed": seed, "trials": trials}
    P = top_eigenspace(spectrum_of(G), 1.0 - epsilon)
    if P.dimension == 0:
        return Report(Claim.LOCAL_CHEEGER, inputs, Verdict.HOLDS,
                      {"projector_dimension": 0, "vacuous_flags": {"empty_eigenspace": True}})

    slack = config.certificate_slack
    samples = P.sample_range(np.random.default_rng(seed), trials)
    failures = 0
    first_failure: Optional[np.ndarray] = None
    max_rhs = -math.inf
    for v in samples:
        if not np.any(v):
            continue
        v = v / lp_norm(v, 2)
        rhs = lcb_bound_low(G, v, delta)
        max_rhs = max(max_rhs, rhs)
        ok = any(
            len(s.members) > delta * G.n + 1e-12
            or s.cut / (G.d * len(s.members)) <= rhs + slack
            for s in level_sets(G, v * v)
        )
        if not ok:
            failures += 1
            if first_failure is None:
                first_failure = v

    verdict = Verdict.VIOLATED if failures else Verdict.HOLDS
    evidence = {
        "projector_dimension": P.dimension,
        "trials": trials,
        "failures": failures,
        "max_bound_rhs": max_rhs,
    }
    if first_failure is not None:
        evidence["witness_vector"] = first_failure
    return Report(Claim.LOCAL_CHEEGER, inputs, verdict, evidence)
