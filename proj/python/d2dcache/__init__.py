"""One-shot D2D coded caching: exact loads, bit-exact simulation, converse checks."""

import json as _json
from fractions import Fraction

try:
    from . import _core
except ImportError:  # running against a build tree, module next to sys.path
    import _core  # type: ignore

binom = _core.binom
n_distinct = _core.n_distinct
n_distinct_excluding = _core.n_distinct_excluding
worst_case_demand = _core.worst_case_demand
select_leaders = _core.select_leaders
curve_csv = _core.curve_csv


def _frac(pair):
    return Fraction(pair[0], pair[1])


def per_demand_load(N, K, t, demand):
    return _frac(_core.per_demand_load(N, K, t, list(demand)))


def average_load(N, K, t):
    return _frac(_core.average_load(N, K, t))


def worst_case_load(N, K, t):
    return _frac(_core.worst_case_load(N, K, t))


def ji_d2d_load(N, K, t):
    return _frac(_core.ji_d2d_load(N, K, t))


def shared_link_load(N, K, t, n_e):
    return _frac(_core.shared_link_load(N, K, t, n_e))


def average_converse(N, K, M):
    M = Fraction(M)
    return _frac(_core.average_converse(N, K, M.numerator, M.denominator))


def simulate(N, K, t, demand, seed=0, subpiece_bytes=1):
    """Run placement, delivery and decoding; returns the transcript dict."""
    return _json.loads(
        _core.simulate_json(N, K, t, list(demand), seed, subpiece_bytes)
    )


def verify(max_n=3, max_k=4):
    """Run the exhaustive invariant suite; returns the report dict."""
    return _json.loads(_core.verify_json(max_n, max_k))
