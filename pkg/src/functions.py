import hashlib
import json
from typing import Any, Union


def canonical_json(data: Any) -> str:
    """Serialize `data` with sorted keys, two-space indent and a trailing newline."""
    return json.dumps(data, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def content_hash(text: Union[str, bytes]) -> str:
    if isinstance(text, str):
        text = text.encode("utf-8")
    return "sha256:" + hashlib.sha256(text).hexdigest()


def symmetric_residue(value: int, p: int) -> int:
    """Representative of `value` mod p in (-p/2, p/2]."""
    value %= p
    if value > p // 2:
        value -= p
    return value


def parse_int_vector(text: str) -> list[int]:
    """Parse "1,0,-1,2" (commas or spaces) into a list of ints."""
    parts = list(filter(None, text.replace(",", " ").split(" ")))
    if not parts:
        raise ValueError(f"empty vector: {text!r}")
    return [int(part) for part in parts]
