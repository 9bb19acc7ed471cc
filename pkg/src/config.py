"""
sse-certify - Configuration Management

Loads settings from environment variables.
Local overrides belong in a .env file (not committed to git).
"""

import os
from dataclasses import dataclass, field
from pathlib import Path
from dotenv import load_dotenv

# Load environment variables from .env file
# First try project directory, then home directory
env_paths = [
    Path(__file__).parent.parent / ".env",  # Project root
    Path.home() / ".env",                    # Home directory
]

for env_path in env_paths:
    if env_path.exists():
        load_dotenv(env_path)
        break


def _env_bool(name: str, default: str = "false") -> bool:
    return os.getenv(name, default).strip().lower() in ("1", "true", "yes", "on")


@dataclass
class SSEConfig:
    """Run-wide settings loaded from environment variables"""

    # Workers (0 = pick from physical core count)
    threads: int = 0

    # Logging
    log_level: str = "INFO"
    log_dir: str = ""       # Set in from_env()
    log_to_file: bool = False

    # Numerical tolerances
    eigen_tolerance: float = 1e-9       # eigen residual / orthonormality
    projector_tolerance: float = 1e-8   # idempotence, reconstruction
    threshold_tolerance: float = 1e-9   # eigenvalues this far below λ count as ≥ λ
    certificate_slack: float = 1e-9     # slack on every checked inequality

    # Exact enumeration
    enumeration_budget: int = 10**8     # set-membership checks before refusing
    easy_direction_full_n: int = 16     # enumerate all subsets up to this n
    easy_direction_size_cap: int = 6    # otherwise only |S| <= cap

    # Random regular graphs
    pairing_retries: int = 1000

    # p->q norm search
    ascent_max_steps: int = 10000
    ascent_tolerance: float = 1e-10
    default_restarts: int = 32
    default_seed: int = 0

    # Sampled expansion profile
    heuristic_budget: int = 1000

    # High-expansion Local Cheeger constant
    high_expansion_constant: float = 100.0

    # Family battery
    battery_restarts: int = 8

    # Default exponent pairs for theorem sweeps
    default_pairs: list[tuple[float, float]] = field(default_factory=lambda: [
        (2.0, 4.0),
        (2.0, float("inf")),
    ])

    @classmethod
    def from_env(cls) -> "SSEConfig":
        """Load configuration from environment variables"""

        project_dir = Path(__file__).parent.parent

        return cls(
            # Workers
            threads=int(os.getenv("SSE_THREADS", "0")),

            # Logging
            log_level=os.getenv("SSE_LOG_LEVEL", "INFO").upper(),
            log_dir=os.getenv("SSE_LOG_DIR", str(project_dir / "logs")),
            log_to_file=_env_bool("SSE_LOG_TO_FILE"),

            # Enumeration
            enumeration_budget=int(os.getenv("SSE_ENUMERATION_BUDGET", str(10**8))),
            easy_direction_full_n=int(os.getenv("SSE_EASY_FULL_N", "16")),
            easy_direction_size_cap=int(os.getenv("SSE_EASY_SIZE_CAP", "6")),

            # Generation
            pairing_retries=int(os.getenv("SSE_PAIRING_RETRIES", "1000")),

            # Norm search
            ascent_max_steps=int(os.getenv("SSE_ASCENT_MAX_STEPS", "10000")),
            ascent_tolerance=float(os.getenv("SSE_ASCENT_TOLERANCE", "1e-10")),
            default_restarts=int(os.getenv("SSE_RESTARTS", "32")),
            default_seed=int(os.getenv("SSE_SEED", "0")),

            # Heuristic profile
            heuristic_budget=int(os.getenv("SSE_HEURISTIC_BUDGET", "1000")),

            # Rounding
            high_expansion_constant=float(os.getenv("SSE_HIGH_EXPANSION_C", "100")),

            # Battery
            battery_restarts=int(os.getenv("SSE_BATTERY_RESTARTS", "8")),
        )

    def validate(self) -> list[str]:
        """Validate configuration and return list of errors"""
        errors = []

        if self.threads < 0:
            errors.append("SSE_THREADS must be >= 0")

        if self.enumeration_budget < 1:
            errors.append("SSE_ENUMERATION_BUDGET must be positive")

        if self.pairing_retries < 1:
            errors.append("SSE_PAIRING_RETRIES must be positive")

        if self.ascent_max_steps < 1:
            errors.append("SSE_ASCENT_MAX_STEPS must be positive")

        if self.default_restarts < 1:
            errors.append("SSE_RESTARTS must be positive")

        if self.default_seed < 0:
            errors.append("SSE_SEED must be a non-negative integer")

        if self.high_expansion_constant <= 0:
            errors.append("SSE_HIGH_EXPANSION_C must be positive")

        # Not an error, but the high-expansion bound is vacuous for most ε
        if self.high_expansion_constant > 100:
            errors.append(
                "WARNING: SSE_HIGH_EXPANSION_C > 100 makes 1 - C*eps^2 <= 0 for eps >= 0.1"
            )

        return errors


# Global config instance
config = SSEConfig.from_env()


# Graph families accepted by generate() and their integer parameters
GRAPH_FAMILIES = {
    "complete": ("n",),
    "cycle": ("n",),
    "hypercube": ("k",),
    "clique_union": ("m", "k"),
    "random_regular": ("n", "d"),
}

# CLI exit codes
EXIT_OK = 0
EXIT_INPUT_ERROR = 1
EXIT_VIOLATED = 2
EXIT_INCONCLUSIVE = 3
