"""Exact Ratliff-Rush and integral closures, Buchsbaum-Rim coefficients and
Rees-algebra data for modules M inside A^r, A = k[X, Y]."""

import json as _json

from ._core import (
    Error,
    InputError,
    Module,
    PreconditionError,
    SoundnessAlert,
    UnstableChain,
    commands,
    fixture_names,
    newton_closure,
    ratliff_rush_ideal,
)
from . import _core

__all__ = [
    "Error",
    "InputError",
    "Module",
    "PreconditionError",
    "SoundnessAlert",
    "UnstableChain",
    "commands",
    "fixture_names",
    "newton_closure",
    "ratliff_rush_ideal",
    "run",
    "run_fixtures",
]


def run(command, text, *, lmax=None, window=None, nmax=None, char=None):
    """Run a CLI command on problem-file text; returns (exit_code, report dict)."""
    code, report = _core.run(command, text, lmax, window, nmax, char)
    return code, _json.loads(report)


def run_fixtures(filter=""):
    """Run the built-in corpus; returns (exit_code, summary dict)."""
    code, report = _core.run_fixtures(filter)
    return code, _json.loads(report)
