"""
Timing helpers for the torus closed forms.
"""
import logging
import math
import time
import timeit
from concurrent.futures import ThreadPoolExecutor

import numpy as np
from django.conf import settings

from closed_forms.structures import TorusSpec
from closed_forms.tori import all_displacements, representative_displacements, t_torus_row
from spectral.services import torus_spectral_entry

logger = logging.getLogger(__name__)

ORACLE_SAMPLE = 8


def best_of(fn, repeat):
    """Minimum wall time over `repeat` calls of fn, in nanoseconds."""
    timer = timeit.Timer(fn, timer=time.perf_counter_ns)
    return min(timer.repeat(repeat=repeat, number=1))


def format_dt(nanos):
    seconds = nanos / 1e9
    if seconds > 10e-3:
        return f"{seconds * 1e3:.1f} ms"
    if seconds > 10e-6:
        return f"{seconds * 1e6:.1f} us"
    return f"{nanos:.0f} ns"


def evaluate_row(spec, displacements, threads=1):
    if threads <= 1 or len(displacements) < 2 * threads:
        return t_torus_row(spec, displacements)
    chunks = np.array_split(displacements, threads)
    with ThreadPoolExecutor(max_workers=threads) as pool:
        parts = list(pool.map(lambda chunk: t_torus_row(spec, chunk), chunks))
    return np.concatenate(parts)


def per_entry_cost(spec):
    """Per-entry cost model n^(1-1/t)·log n of the closed form."""
    n = spec.vertex_count
    return n ** (1.0 - 1.0 / spec.t) * math.log(n)


def bench_torus(dims, mode="row", repeat=3, threads=1, compare_oracle=False):
    spec = dims if isinstance(dims, TorusSpec) else TorusSpec(tuple(dims))
    if mode == "row":
        displacements = representative_displacements(spec)
    else:
        displacements = all_displacements(spec)

    nanos = best_of(lambda: evaluate_row(spec, displacements, threads), repeat)
    record = {
        "dims": list(spec.dims),
        "mode": mode,
        "n": spec.vertex_count,
        "t": spec.t,
        "entries_computed": len(displacements),
        "nanos_total": int(nanos),
        "nanos_per_entry": nanos / len(displacements),
    }

    if compare_oracle:
        sample = displacements[np.linspace(0, len(displacements) - 1, ORACLE_SAMPLE).astype(int)]
        oracle_nanos = best_of(lambda: [torus_spectral_entry(spec.dims, d) for d in sample], repeat)
        record["oracle_nanos_per_entry"] = oracle_nanos / len(sample)
        record["speedup"] = record["oracle_nanos_per_entry"] / record["nanos_per_entry"]

    logger.info(
        f"torus {spec.dims} [{mode}]: {record['entries_computed']} entries in {format_dt(nanos)}, "
        f"{format_dt(record['nanos_per_entry'])}/entry"
    )
    return record


def check_scaling(records, slack=None):
    """
    Compares per-entry times of consecutive records of the same dimension
    count against the cost model. Returns the records that exceeded it.
    """
    slack = settings.GREENS_BENCH_SCALING_SLACK if slack is None else slack
    exceeded = []
    for before, after in zip(records, records[1:]):
        if before["t"] != after["t"] or after["n"] <= before["n"]:
            continue
        measured = after["nanos_per_entry"] / before["nanos_per_entry"]
        theory = per_entry_cost(TorusSpec(tuple(after["dims"]))) / per_entry_cost(TorusSpec(tuple(before["dims"])))
        if measured > slack * theory:
            logger.warning(
                f"Per-entry time grew {measured:.2f}x from n={before['n']} to n={after['n']}; "
                f"cost model allows {theory:.2f}x (slack {slack})"
            )
            exceeded.append(after)
    return exceeded
