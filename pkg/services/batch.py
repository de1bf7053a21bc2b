import json
import logging
from concurrent.futures import ProcessPoolExecutor
from errors import CacheError
from models.base import EigenRecord, ModelParams
from services.cache import ExpansionCache, RecordCache
from services.cbasis import set_store
from services.spectra import solve

logger = logging.getLogger(__name__)


def solve_one(
    params: ModelParams,
    label: tuple[int, ...],
    method: str,
    cache_dir: str | None = None,
    paranoid: bool = False,
) -> EigenRecord:
    cache = RecordCache(cache_dir, paranoid) if cache_dir else None
    if cache is not None:
        rec = cache.get(params, label, method)
        if rec is not None:
            logger.debug("Cache hit for %s %s", method, label)
            return rec
    rec = solve(label, params, method)
    if cache is not None:
        try:
            cache.put(rec)
        except CacheError as e:
            logger.warning("Could not cache result: %s", e)
    return rec


def _worker(params_doc: dict, label: tuple[int, ...], method: str, cache_dir: str | None, paranoid: bool) -> str:
    params = ModelParams.model_validate(params_doc)
    if cache_dir:
        set_store(ExpansionCache(cache_dir))
    return solve_one(params, label, method, cache_dir, paranoid).model_dump_json()


def solve_batch(
    params: ModelParams,
    tasks: list[tuple[tuple[int, ...], str]],
    jobs: int = 1,
    cache_dir: str | None = None,
    paranoid: bool = False,
) -> list[EigenRecord]:
    if jobs <= 1 or len(tasks) <= 1:
        return [solve_one(params, label, method, cache_dir, paranoid) for label, method in tasks]
    params_doc = params.model_dump(by_alias=True)
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        futures = [
            pool.submit(_worker, params_doc, label, method, cache_dir, paranoid) for label, method in tasks
        ]
        docs = []
        for done, future in enumerate(futures, start=1):
            docs.append(future.result())
            logger.info("Solved %d of %d", done, len(futures))
    return [EigenRecord.from_document(json.loads(doc)) for doc in docs]
