"""Kahler-Weyl structures on 4-dimensional (para-)Hermitian models.

Thin wrapper over the compiled ``_kw4`` extension. Models are built with
:func:`standard_model`, :func:`random_model`, :func:`example_model` or the
:class:`Model` constructor; tensors come back as nested lists with the index
conventions of the C++ library.
"""

import json as _json

from ._kw4 import (
    Kw4Error,
    Model,
    __version__,
    codifferential_of_kahler,
    conformal_rescale,
    example_model,
    fd_oracle,
    gl4_action,
    hermitian_reduction_check,
    lee_form,
    levi_civita,
    nijenhuis,
    random_model,
    standard_model,
    uniqueness_rank,
    verify_kw,
    weyl_connection,
)
from ._kw4 import run_scenario as _run_scenario


def run(scenario, jobs=1, tolerance=None, wall_time=True):
    """Run a scenario (dict or JSON text). Returns (report dict, text lines)."""
    text = scenario if isinstance(scenario, str) else _json.dumps(scenario)
    report, lines = _run_scenario(text, jobs, tolerance, wall_time)
    return _json.loads(report), lines


__all__ = [
    "Kw4Error",
    "Model",
    "__version__",
    "codifferential_of_kahler",
    "conformal_rescale",
    "example_model",
    "fd_oracle",
    "gl4_action",
    "hermitian_reduction_check",
    "lee_form",
    "levi_civita",
    "nijenhuis",
    "random_model",
    "run",
    "standard_model",
    "uniqueness_rank",
    "verify_kw",
    "weyl_connection",
]
