"""
Theorem Verifiers

Per-claim numerical checks that assemble graphs, spectra, expansion
profiles and rounding into verdict reports.
"""

from .report import (
    Claim, Verdict, Report, to_jsonable, timed,
    reports_to_json, reports_to_csv, overall_exit_code,
)
from .verifiers import (
    spectrum_of,
    verify_easy_direction, verify_main, verify_high_expansion, verify_one_to_two,
    verify_duality, verify_lemma_inner_product, verify_projector_subspace,
    verify_projector_orthogonal, verify_local_cheeger,
)
from .battery import BatteryInstance, battery_specs, battery_instances, run_battery

__all__ = [
    "Claim", "Verdict", "Report", "to_jsonable", "timed",
    "reports_to_json", "reports_to_csv", "overall_exit_code",
    "spectrum_of",
    "verify_easy_direction", "verify_main", "verify_high_expansion", "verify_one_to_two",
    "verify_duality", "verify_lemma_inner_product", "verify_projector_subspace",
    "verify_projector_orthogonal", "verify_local_cheeger",
    "BatteryInstance", "battery_specs", "battery_instances", "run_battery",
]
