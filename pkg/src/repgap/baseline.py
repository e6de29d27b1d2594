"""Published reference values shipped with the package, used by the
reproduce-everything pipeline for diffing.  The payload is immutable data
guarded by an embedded digest; a failed digest means a corrupted install.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass
from importlib import resources

BASELINE_RESOURCE = "s0_paper.json"


class BaselineError(RuntimeError):
    """Baseline file missing or failing its integrity digest."""


@dataclass(frozen=True)
class PaperBaseline:
    """The survivor table as printed, the known small solution, and the
    range on which the class-set inequality is positive."""

    s0_pairs: tuple[tuple[int, int], ...]
    fiat_prime_range: tuple[int, int]  # (-p, p) family over this prime range
    known_solution: tuple[int, int, int, int]  # (n, m, b, a)
    lhs6_positive_points: tuple[int, ...]
    lhs6_positive_range: tuple[int, int]
    sources: dict


def _canonical(payload: dict) -> bytes:
    return json.dumps(payload, sort_keys=True, separators=(",", ":")).encode()


def payload_digest(payload: dict) -> str:
    return hashlib.sha256(_canonical(payload)).hexdigest()


def load_baseline(path: str | None = None) -> PaperBaseline:
    """Load and integrity-check the baseline (package copy by default)."""
    if path is None:
        ref = resources.files("repgap").joinpath("data", BASELINE_RESOURCE)
        text = ref.read_text()
    else:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    try:
        blob = json.loads(text)
        payload = blob["payload"]
        digest = blob["sha256"]
    except (json.JSONDecodeError, KeyError, TypeError) as exc:
        raise BaselineError(f"malformed baseline file: {exc}") from exc
    if payload_digest(payload) != digest:
        raise BaselineError("baseline digest mismatch (corrupted file)")
    return PaperBaseline(
        s0_pairs=tuple((int(e["a"]), int(e["p"])) for e in payload["s0_pairs"]),
        fiat_prime_range=tuple(payload["fiat_prime_range"]),
        known_solution=tuple(payload["known_solution"]),
        lhs6_positive_points=tuple(payload["lhs6_positive_points"]),
        lhs6_positive_range=tuple(payload["lhs6_positive_range"]),
        sources=payload.get("sources", {}),
    )


def build_payload() -> dict:
    """The baseline payload (regeneration helper; the shipped JSON is the
    artifact of record)."""
    pairs = [
        (-43, 7), (-127, 7), (-547, 7), (-683, 11), (-1093, 7), (-2047, 11),
        (-2731, 13), (-3277, 7), (-5461, 7), (-8191, 11), (-13021, 7),
        (-19531, 7), (-39991, 7), (-43691, 17), (-44287, 11), (-55987, 7),
        (-88573, 11),
    ]
    return {
        "s0_pairs": [
            {"a": a, "p": p, "source": "published survivor table"} for a, p in pairs
        ],
        "fiat_prime_range": [7, 100000],
        "known_solution": [5, 5, 3, -1],
        "lhs6_positive_points": [3],
        "lhs6_positive_range": [5, 1000],
        "sources": {
            "s0_pairs": "published survivor table",
            "known_solution": "published small-search note",
            "lhs6": "published positivity check",
        },
    }


def write_baseline(path: str) -> None:
    payload = build_payload()
    blob = {"sha256": payload_digest(payload), "payload": payload}
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(blob, fh, indent=1, sort_keys=True)
        fh.write("\n")
