import logging
from time import perf_counter
from models.base import BenchRow, ModelParams
from services.cbasis import clear_memo, f_expand
from services.spectra import coeff_table, default_methods
from utils.sympoly import partitions_of

logger = logging.getLogger(__name__)


def _timed(func, *args):
    start = perf_counter()
    result = func(*args)
    return result, perf_counter() - start


def run_bench(params: ModelParams, max_weight: int) -> list[BenchRow]:
    method = default_methods(params)[0]
    rows = []
    for w in range(max_weight + 1):
        for n in partitions_of(w, params.N):
            clear_memo()
            poly, seconds = _timed(f_expand, n, params)
            rows.append(BenchRow(operation="f_expand", label=n, size=w, terms=len(poly), seconds=seconds))
            table, seconds = _timed(coeff_table, n, params, method)
            rows.append(BenchRow(operation=f"{method} table", label=n, size=w, terms=len(table.entries), seconds=seconds))
            logger.info("Benchmarked %s", n)
    return rows
