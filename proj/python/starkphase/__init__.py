"""Phase shifts of off-resonant pulsed two- and three-state systems."""

import json

from ._core import *  # noqa: F401,F403
from ._core import __version__, _figure_csv, _figure_json, _run_sweep_json


def sweep(spec, threads=0):
    """Run a sweep described by a dict (same layout as the CLI's --spec file)."""
    return json.loads(_run_sweep_json(json.dumps(spec), threads))


def figure(name, points=200, threads=0):
    """Figure-data preset ("fig2" ... "fig7") as a dict with metadata and rows."""
    return json.loads(_figure_json(name, points, threads))


def figure_csv(name, points=200):
    """Figure-data preset rendered as CSV text."""
    return _figure_csv(name, points)
