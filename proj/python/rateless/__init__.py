"""Rateless coding over discrete memoryless and Gaussian channels.

Sequential threshold decoders for known and unknown channels, joint
source-channel and Slepian-Wolf variants, closed-form achievable-rate and
converse bounds, and a reproducible Monte Carlo experiment engine.
"""

import json as _json

from ._core import *  # noqa: F401,F403
from . import _core as _c


def run_experiment(config):
    """Run a Monte Carlo experiment from a config dict; returns the report dict."""
    return _json.loads(_c.run_experiment_json(_json.dumps(config)))


def sweep_table(spec):
    """Evaluate a bound/simulation sweep spec dict; returns the CSV text."""
    return _c.sweep_table_csv(_json.dumps(spec))
