"""
Family Battery

Runs the main-theorem verifier over the built-in graph families on a grid
of (δ, ε). Instances run in parallel; reports come back in instance order.
"""

import logging
from dataclasses import dataclass
from typing import Optional, Sequence

from config import config
from graphs.core import Family, FamilySpec, generate
from theorems.report import Report
from theorems.verifiers import verify_main
from utils.workers import map_ordered

logger = logging.getLogger(__name__)

BATTERY_DELTAS = (1 / 32, 1 / 16, 1 / 8)
BATTERY_EPSILONS = (0.05, 0.1, 0.2)
BATTERY_SEEDS = range(10)


@dataclass(frozen=True)
class BatteryInstance:
    spec: FamilySpec
    delta: float
    epsilon: float

    @property
    def instance_id(self) -> str:
        return f"{self.spec.label()}|delta={self.delta}|eps={self.epsilon}"


def battery_specs() -> list[FamilySpec]:
    """K_n (n <= 12), Q_k (k <= 5), random 3-regular on 24 vertices, clique unions (mk <= 24)"""
    specs = [FamilySpec(Family.COMPLETE, n=n) for n in range(3, 13)]
    specs += [FamilySpec(Family.HYPERCUBE, k=k) for k in range(1, 6)]
    specs += [FamilySpec(Family.RANDOM_REGULAR, n=24, d=3, seed=s) for s in BATTERY_SEEDS]
    specs += [
        FamilySpec(Family.CLIQUE_UNION, m=m, k=k)
        for m in range(2, 13)
        for k in range(2, 24 // m + 1)
    ]
    return specs


def battery_instances(deltas: Sequence[float] = BATTERY_DELTAS,
                      epsilons: Sequence[float] = BATTERY_EPSILONS,
                      specs: Optional[Sequence[FamilySpec]] = None) -> list[BatteryInstance]:
    specs = battery_specs() if specs is None else specs
    return [
        BatteryInstance(spec=spec, delta=delta, epsilon=eps)
        for spec in specs
        for delta in deltas
        for eps in epsilons
    ]


def run_battery(threads: Optional[int] = None, restarts: Optional[int] = None,
                seed: Optional[int] = None,
                pairs: Optional[Sequence[tuple[float, float]]] = None,
                deltas: Sequence[float] = BATTERY_DELTAS,
                epsilons: Sequence[float] = BATTERY_EPSILONS,
                specs: Optional[Sequence[FamilySpec]] = None) -> list[Report]:
    """verify_main on every battery instance, ordered by instance"""
    restarts = config.battery_restarts if restarts is None else restarts
    pairs = list(pairs or config.default_pairs)
    instances = battery_instances(deltas, epsilons, specs)
    graphs = {spec: generate(spec) for spec in {i.spec for i in instances}}

    logger.info(f"Battery: {len(instances)} instances over {len(graphs)} graphs")

    def run_one(instance: BatteryInstance) -> Report:
        report = verify_main(
            graphs[instance.spec], instance.delta, instance.epsilon, pairs,
            restarts=restarts, seed=seed, label=instance.spec.label(), threads=1,
        )
        report.inputs["instance"] = instance.instance_id
        return report

    reports = map_ordered(run_one, instances, threads)
    counts: dict[str, int] = {}
    for r in reports:
        counts[r.verdict.value] = counts.get(r.verdict.value, 0) + 1
    logger.info(f"Battery finished: {counts}")
    return reports
