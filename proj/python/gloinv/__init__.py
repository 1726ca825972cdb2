# Copyright 2026 The gloinv Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Certified global inversion of nonlinear maps and Volterra problems."""

import json

from . import _core
from ._core import (
    ConfigError,
    GloinvError,
    bielecki_lp_norm,
    bielecki_sobolev_norm,
    eta_pnorm,
    eta_quadratic,
    kernel,
    kernel_constants,
    run_inequality_suite,
    select_k,
    singular_value_bounds,
    sobolev_energy,
    solve_forward,
    solve_variational,
)

__all__ = [
    "ConfigError",
    "GloinvError",
    "bielecki_lp_norm",
    "bielecki_sobolev_norm",
    "certify_example",
    "eta_pnorm",
    "eta_quadratic",
    "kernel",
    "kernel_constants",
    "run",
    "run_inequality_suite",
    "select_k",
    "singular_value_bounds",
    "sobolev_energy",
    "solve_example",
    "solve_forward",
    "solve_variational",
]


def certify_example(seed=20260101):
    """Certificate reports for the worked 2-D example, as dicts."""
    return json.loads(_core.certify_example(seed))


def solve_example(seed=20260101):
    """Multistart uniqueness report for the worked 2-D example, as a dict."""
    return json.loads(_core.solve_example(seed))


def run(command, config=None, seed=None):
    """Runs a CLI pipeline in-process; returns (exit_code, report dict)."""
    text = "" if config is None else json.dumps(config)
    code, report = _core.run(command, text, seed)
    return code, json.loads(report)
