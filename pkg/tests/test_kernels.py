"""Backend agreement: the numba kernels, the numpy fallback, and the
pure-python oracle must return identical results."""
from fractions import Fraction
from random import Random

import pytest

from pivotgraph import _kernels
from pivotgraph.graphs import Graph
from pivotgraph.mass import MassedGraph

from helpers import naive_focused, naive_max_anticomplete, random_graph
from test_mass import random_weights

BACKENDS = ["numpy"] + (["numba"] if _kernels.HAVE_NUMBA else [])


@pytest.mark.parametrize("backend", BACKENDS)
def test_sweep_backends_match_oracle(backend):
    rng = Random(71)
    for _ in range(40):
        g = random_graph(rng, rng.randrange(1, 10))
        mg = MassedGraph.uniform(g)
        nums, denom = mg.integer_weights()
        closed = [g.closed_mask(v) for v in range(g.n)]
        best, a, b = _kernels.anticomplete_sweep(closed, list(nums), backend=backend)
        value = Fraction(0) if best < 0 else Fraction(best, denom)
        assert value == naive_max_anticomplete(mg)


@pytest.mark.skipif(not _kernels.HAVE_NUMBA, reason="numba unavailable")
def test_sweep_backends_identical_witnesses():
    rng = Random(72)
    for _ in range(30):
        g = random_graph(rng, rng.randrange(1, 11))
        mg = MassedGraph.weighted(g, random_weights(rng, g.n))
        nums, _ = mg.integer_weights()
        closed = [g.closed_mask(v) for v in range(g.n)]
        assert (_kernels.anticomplete_sweep(closed, list(nums), backend="numba")
                == _kernels.anticomplete_sweep(closed, list(nums), backend="numpy"))


@pytest.mark.parametrize("backend", BACKENDS)
def test_focused_backends_match_oracle(backend):
    rng = Random(73)
    for _ in range(30):
        g = random_graph(rng, rng.randrange(1, 9))
        mg = MassedGraph.uniform(g)
        nums, denom = mg.integer_weights()
        delta = Fraction(rng.randrange(1, 5), 4)
        r = rng.randrange(1, 3)
        adj = [g.neighbors_mask(v) for v in range(g.n)]
        z = _kernels.focused_scan(adj, list(nums), r,
                                  delta.numerator * denom, delta.denominator,
                                  backend=backend)
        assert (z < 0) == naive_focused(mg, delta, r)


@pytest.mark.skipif(not _kernels.HAVE_NUMBA, reason="numba unavailable")
def test_focused_backends_identical_witnesses():
    rng = Random(74)
    for _ in range(30):
        g = random_graph(rng, rng.randrange(1, 10))
        mg = MassedGraph.uniform(g)
        nums, denom = mg.integer_weights()
        delta = Fraction(rng.randrange(1, 5), 4)
        adj = [g.neighbors_mask(v) for v in range(g.n)]
        args = (adj, list(nums), 1, delta.numerator * denom, delta.denominator)
        assert (_kernels.focused_scan(*args, backend="numba")
                == _kernels.focused_scan(*args, backend="numpy"))


def test_backend_env_resolution(monkeypatch):
    monkeypatch.setenv(_kernels.BACKEND_ENV, "numpy")
    assert _kernels._resolve_backend() == "numpy"
    monkeypatch.setenv(_kernels.BACKEND_ENV, "bogus")
    with pytest.raises(RuntimeError):
        _kernels._resolve_backend()
    monkeypatch.delenv(_kernels.BACKEND_ENV)
    assert _kernels._resolve_backend() in ("numba", "numpy")
