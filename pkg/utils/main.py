import hashlib
import json
import os
import uuid
from constants import CACHE_SUFFIX, LABEL_REGEX, SCHEMA_VERSION, TEMP_SUFFIX
from errors import LabelError
import re


def to_label(val: str) -> tuple[int, ...]:
    if not re.match(LABEL_REGEX, val):
        raise LabelError(f"'{val}' is not a comma separated list of integers")
    return tuple(int(part) for part in val.split(","))


def to_labels(vals: list[str]) -> list[tuple[int, ...]]:
    return [to_label(val) for part in vals for val in part.split(";") if val.strip()]


def canonical_json(doc) -> str:
    return json.dumps(doc, sort_keys=True, ensure_ascii=False, separators=(",", ":"))


def digest(doc: dict) -> str:
    doc = {"schema": SCHEMA_VERSION, **doc}
    return hashlib.sha256(canonical_json(doc).encode("utf-8")).hexdigest()


def generate_temp_name(filename: str = "") -> str:
    return f"{uuid.uuid4()}-{filename}{TEMP_SUFFIX}"


def generate_file_path(cache_dir: str, key: str) -> str:
    return os.path.join(cache_dir, key[:2], key + CACHE_SUFFIX)


def generate_temp_path(file_path: str) -> str:
    return os.path.join(os.path.dirname(file_path), generate_temp_name(os.path.basename(file_path)))
