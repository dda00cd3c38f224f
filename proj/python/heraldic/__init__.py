# Copyright 2026 The Heraldic Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.


"""Python front end for the heraldic C++ core.

Structured values cross the boundary as JSON and come back as dicts.
"""

import json

import numpy as np

from . import _core
from ._core import (
    DimensionError,
    NotUnitaryError,
    ValidationError,
    derive_seed,
    haar_random_unitary,
    permanent,
    transition_amplitude,
)

__version__ = _core.__version__

__all__ = [
    "DimensionError",
    "NotUnitaryError",
    "ValidationError",
    "builtin_problem",
    "builtin_scheme_names",
    "clements_decompose",
    "compose",
    "count_nontrivial",
    "derive_seed",
    "haar_random_unitary",
    "herald_analysis",
    "permanent",
    "refine",
    "run_cli",
    "search",
    "transition_amplitude",
    "verify",
]


def _text(value):
    return value if isinstance(value, str) else json.dumps(value)


def builtin_scheme_names():
    return list(_core.builtin_scheme_names())


def builtin_problem(name, sign=1):
    return json.loads(_core.builtin_problem(name, sign))


def verify(name, sign=1):
    """Report for a built-in scheme; ``report["passed"]`` says whether every claim holds."""
    return json.loads(_core.verify(name, sign))


def clements_decompose(u):
    return json.loads(_core.clements_decompose(np.asarray(u, dtype=complex)))


def compose(circuit):
    return _core.compose(_text(circuit))


def count_nontrivial(circuit, tol=1e-6):
    return _core.count_nontrivial(_text(circuit), tol)


def herald_analysis(u, problem):
    return json.loads(_core.herald_analysis(np.asarray(u, dtype=complex), _text(problem)))


def search(config, workers=0):
    return json.loads(_core.search(_text(config), workers))


def refine(candidate, problem, config=None):
    return json.loads(_core.refine(_text(candidate), _text(problem), _text(config or {})))


def run_cli(*args):
    """Runs the command-line tool in-process; returns (exit_code, stdout, stderr)."""
    return _core.run_cli([str(a) for a in args])
