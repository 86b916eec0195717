#  Copyright 2026 The rescript-ifc Authors
#
#  Licensed under the Apache License, Version 2.0 (the "License");
#  you may not use this file except in compliance with the License.
#  You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
#  Unless required by applicable law or agreed to in writing, software
#  distributed under the License is distributed on an "AS IS" BASIS,
#  WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
#  See the License for the specific language governing permissions and
#  limitations under the License.

"""Security type checking and evaluation for a small ML-like language."""

import json

from . import _core
from ._core import ParseError, leq, join, meet, pretty

__all__ = ["ParseError", "parse", "pretty", "check", "run", "nitest", "run_corpus", "leq", "join", "meet"]


def parse(source):
    """Returns the AST of `source` as nested dicts."""
    return json.loads(_core.parse(source))


def check(source, context=None, pc="low", trace=False):
    """Type-checks `source` under a context mapping names to type strings."""
    return json.loads(_core.check(source, context or {}, pc, trace))


def run(source, fuel=10000, unchecked=False):
    """Evaluates `source`. Ill-typed programs are refused unless `unchecked`."""
    return json.loads(_core.run(source, fuel, unchecked))


def nitest(suite, trials, seed=42, fuel=10000):
    """Runs one property suite: soundness, lemma1, lemma2 or lemma5."""
    return json.loads(_core.nitest(suite, trials, seed, fuel))


def run_corpus(directory):
    return json.loads(_core.run_corpus(directory))
