# Copyright 2026 The semiflat Authors
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


"""Finite semirings, semimodules, tensor products and flatness checks."""

import json

from . import _core
from ._core import (
    AxiomViolation,
    BadCaps,
    Error,
    IllDefined,
    ParseError,
    Semiring,
    SizeCapExceeded,
    UnknownReference,
    catalog,
    catalog_examples,
    from_tables,
    is_vn_regular,
    reproduce,
    row_keys,
)

SCHEMA_VERSION = _core.SCHEMA_VERSION


def analyze(request, *, tensor_cap=20, slack=2, bound=4):
    """Run one analysis request, given as a dict in workspace-file form."""
    return json.loads(_core.analyze(json.dumps(request), tensor_cap, slack, bound))


def run_workspace(text, jobs=1):
    """Run a workspace given as JSON text; returns the structured report."""
    return json.loads(_core.run_workspace(text, jobs))


def flatness(subject, target="S", route="both", **caps):
    return analyze({"kind": "flatness", "subject": subject, "target": target, "route": route}, **caps)


def regularity(semiring, **options):
    request = {"kind": "regularity", "semiring": semiring}
    request.update(options)
    return analyze(request)


def tensor(right, left, **caps):
    return analyze({"kind": "tensor", "right": right, "left": left}, **caps)


__all__ = [
    "AxiomViolation", "BadCaps", "Error", "IllDefined", "ParseError", "SCHEMA_VERSION",
    "Semiring", "SizeCapExceeded", "UnknownReference", "analyze", "catalog",
    "catalog_examples", "flatness", "from_tables", "is_vn_regular", "regularity",
    "reproduce", "row_keys", "run_workspace", "tensor",
]
