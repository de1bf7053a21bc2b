"""Content-addressed on-disk store for eigen records and f-expansions.

Entries are written to a temporary file and renamed into place, so readers
in other processes only ever see complete files.
"""

import json
import logging
import os
from pydantic import ValidationError
from sympy.polys.rings import PolyElement
from constants import (
    CACHE_CORRUPT,
    CACHE_MISMATCH,
    CACHE_UNVERIFIED,
    ENCODING,
    READ_TEXT,
    SCHEMA_VERSION,
    WRITE_TEXT,
)
from errors import CacheError
from models.base import CacheEntry, EigenRecord, ModelParams
from services.verify import verify_eigen
from utils.exact import format_rational
from utils.main import canonical_json, digest, generate_file_path, generate_temp_path
from utils.sympoly import poly_from_json, poly_to_json

logger = logging.getLogger(__name__)


def record_key(params: ModelParams, label: tuple[int, ...], method: str) -> str:
    return digest(
        {
            "kind": "record",
            "model": params.model,
            "N": params.N,
            "lambda": format_rational(params.lam),
            "mu": None if params.mu is None else format_rational(params.mu),
            "label": list(label),
            "method": method,
        }
    )


def expansion_key(key: tuple) -> str:
    N, lam, n, var, strategy = key
    return digest(
        {"kind": "f", "N": N, "lambda": format_rational(lam), "label": list(n), "var": var, "strategy": strategy}
    )


def cache_put(cache_dir: str, entry: CacheEntry) -> str:
    file_path = generate_file_path(cache_dir, entry.key)
    temp_path = generate_temp_path(file_path)
    try:
        os.makedirs(os.path.dirname(file_path), exist_ok=True)
        with open(temp_path, mode=WRITE_TEXT, encoding=ENCODING) as file_like:
            file_like.write(canonical_json({"schema": SCHEMA_VERSION, "key": entry.key, "value": entry.value}))
        os.replace(temp_path, file_path)
    except OSError as e:
        if os.path.exists(temp_path):
            os.remove(temp_path)
        raise CacheError(file_path, str(e)) from e
    logger.debug("Cached %s", file_path)
    return file_path


def cache_get(cache_dir: str, key: str) -> CacheEntry | None:
    file_path = generate_file_path(cache_dir, key)
    if not os.path.exists(file_path):
        logger.debug("Cache miss %s", key)
        return None
    try:
        with open(file_path, mode=READ_TEXT, encoding=ENCODING) as file_like:
            stored = json.load(file_like)
    except OSError as e:
        raise CacheError(file_path, str(e)) from e
    except ValueError:
        logger.warning("%s: %s", CACHE_CORRUPT, file_path)
        return None
    if not isinstance(stored, dict) or stored.get("schema") != SCHEMA_VERSION or stored.get("key") != key:
        logger.warning("%s: %s", CACHE_MISMATCH, file_path)
        return None
    try:
        return CacheEntry(key=key, value=stored["value"])
    except (KeyError, ValidationError):
        logger.warning("%s: %s", CACHE_CORRUPT, file_path)
        return None


class RecordCache:
    def __init__(self, cache_dir: str, paranoid: bool = False):
        self.cache_dir = cache_dir
        self.paranoid = paranoid

    def get(self, params: ModelParams, label: tuple[int, ...], method: str) -> EigenRecord | None:
        entry = cache_get(self.cache_dir, record_key(params, label, method))
        if entry is None:
            return None
        try:
            rec = EigenRecord.from_document(json.loads(entry.value))
        except (ValueError, KeyError, TypeError):
            logger.warning("%s: %s", CACHE_CORRUPT, entry.key)
            return None
        if rec.params != params or rec.label != tuple(label) or rec.method != method:
            logger.warning("%s: %s", CACHE_MISMATCH, entry.key)
            return None
        if self.paranoid and not verify_eigen(rec).passed:
            logger.warning("%s: %s", CACHE_UNVERIFIED, entry.key)
            return None
        return rec

    def put(self, rec: EigenRecord) -> str:
        key = record_key(rec.params, rec.label, rec.method)
        return cache_put(self.cache_dir, CacheEntry(key=key, value=rec.model_dump_json()))


class ExpansionCache:
    """Persistent backing for the in-process f-expansion memo."""

    def __init__(self, cache_dir: str):
        self.cache_dir = cache_dir

    def get(self, key: tuple) -> PolyElement | None:
        entry = cache_get(self.cache_dir, expansion_key(key))
        if entry is None:
            return None
        try:
            return poly_from_json(json.loads(entry.value), key[0], key[3])
        except (ValueError, KeyError, TypeError):
            logger.warning("%s: %s", CACHE_CORRUPT, entry.key)
            return None

    def put(self, key: tuple, poly: PolyElement) -> None:
        try:
            cache_put(self.cache_dir, CacheEntry(key=expansion_key(key), value=canonical_json(poly_to_json(poly))))
        except CacheError as e:
            logger.warning("Could not persist expansion: %s", e)
