import hashlib
import json


def canonical_json(data) -> str:
    """Serialize ``data`` with sorted keys and no insignificant whitespace."""
    return json.dumps(data, sort_keys=True, separators=(',', ':'), ensure_ascii=True)


def content_digest(data) -> str:
    """SHA-256 of the canonical JSON form of ``data``."""
    return hashlib.sha256(canonical_json(data).encode('utf-8')).hexdigest()
