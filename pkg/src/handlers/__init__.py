"""
Handlers Module

Exports the subcommand handlers of the sse CLI.
"""

from .commands import (
    RunConfig, Handler, load_graph,
    cmd_gen, cmd_analyze, cmd_norm, cmd_profile, cmd_round,
    cmd_verify, cmd_sweep,
    VERIFY_CLAIMS,
)

__all__ = [
    # Run configuration
    'RunConfig', 'Handler', 'load_graph',

    # Command handlers
    'cmd_gen', 'cmd_analyze', 'cmd_norm', 'cmd_profile', 'cmd_round',
    'cmd_verify', 'cmd_sweep',

    # Verify subcommands
    'VERIFY_CLAIMS',
]
