"""Basis-path timing analysis, oracle-guided synthesis and switching-logic synthesis."""

import json
import os
from pathlib import Path

_bundled = Path(__file__).with_name("benchmarks")
if _bundled.is_dir():
    os.environ.setdefault("SCID_BENCHMARKS", str(_bundled))

from . import _scid  # noqa: E402
from ._scid import SyntaxError, interpret  # noqa: E402

__all__ = ["gametime", "synth", "switch", "path_summary", "interpret", "SyntaxError"]


def gametime(program, platform, tau="inf", delta=0.05, seed=0, trial_factor=20.0, round_robin=False, audit_log=""):
    """Answer <TA> for a program on a platform model; returns the run report."""
    return json.loads(_scid.gametime(str(program), str(platform), str(tau), delta, seed, trial_factor,
                                     round_robin, str(audit_log)))


def synth(library, oracle, seed=0, max_iters=64, audit_log=""):
    """Oracle-guided synthesis over a component library; returns the run report."""
    return json.loads(_scid.synth(str(library), str(oracle), seed, max_iters, str(audit_log)))


def switch(mds="transmission", grid=0.01, dwell=0.0, step=0.01, horizon=200.0, replay_horizon=400.0, audit_log=""):
    """Hyperbox switching-guard synthesis; returns the run report."""
    return json.loads(_scid.switch(str(mds), grid, dwell, step, horizon, replay_horizon, str(audit_log)))


def path_summary(source):
    """(nodes, edges, paths, basis size) of a program given as source text."""
    return _scid.path_summary(source)
