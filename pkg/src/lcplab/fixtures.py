"""Witness fixture corpus: one definition document per sampled catalog
row and witness, shipped with the package and overridable through the
``LCPLAB_FIXTURES`` environment variable.

Each fixture file serialises (algebra, metric, theta, expected flat
space); the label line carries ``name | params | expected_dim`` so the
corpus can be re-associated with catalog rows without relying on file
names.
"""

from __future__ import annotations

import os
from importlib import resources
from pathlib import Path

from .detect import maximal_flat_parallel
from .docfmt import parse_file, render_document
from .errors import DocumentError
from .lowdim import SAMPLES, _params_str, table_algebra


def _slug(name: str, params: dict) -> str:
    s = name + ("_" + _params_str(params) if params else "")
    for a, b in (
        ("_{", ""), ("}", ""), ("^", ""), ("{", ""), ("(", ""), (")", ""),
        (",", "_"), ("=", ""), ("/", "o"), ("+", "p"), ("-", "m"), (" ", ""),
    ):
        s = s.replace(a, b)
    return s


def fixture_dir() -> Path:
    env = os.environ.get("LCPLAB_FIXTURES", "").strip()
    if env:
        return Path(env)
    return Path(resources.files("lcplab") / "fixtures")


def fixture_name(sample, windex: int) -> str:
    return f"{_slug(sample.name, sample.params)}_w{windex}.lcp"


def write_fixture_corpus(path: Path) -> list:
    """Generate the whole corpus into ``path``; returns the file list."""
    path.mkdir(parents=True, exist_ok=True)
    written = []
    for sample in SAMPLES:
        L = table_algebra(sample.name, sample.params)
        for k, w in enumerate(sample.witnesses):
            g = w.metric(L.dim)
            theta = w.one_form()
            flat = maximal_flat_parallel(L, g, theta)
            label = f"{sample.name} | {_params_str(sample.params)} | dim {w.expected_dim}"
            text = render_document(L, g, theta, flat, label=label)
            fname = fixture_name(sample, k)
            (path / fname).write_text(text, encoding="utf-8")
            written.append(fname)
    return written


def load_witnesses(sample, base: Path = None) -> list:
    """Load the (metric, theta, expected_dim) triples for a sample from
    the fixture corpus."""
    base = base or fixture_dir()
    out = []
    for k in range(len(sample.witnesses)):
        f = base / fixture_name(sample, k)
        if not f.exists():
            raise DocumentError(f"missing fixture {f}")
        doc = parse_file(f)
        expected = int(doc.label.rsplit("dim", 1)[1])
        out.append((doc.metric(), doc.one_form(), expected, doc))
    return out


def witness_specs_from_fixtures(sample, base: Path = None) -> list:
    """WitnessSpec-compatible view of the on-disk corpus (for verify_table)."""

    class _DocWitness:
        def __init__(self, metric, theta, expected):
            self._metric = metric
            self._theta = theta
            self.expected_dim = expected

        def metric(self, n):
            return self._metric

        def one_form(self):
            return self._theta

    return [
        _DocWitness(g, theta, expected)
        for (g, theta, expected, _) in load_witnesses(sample, base)
    ]
