"""Claim suites: JSON arrays of {"claim": ID, "params": {...}}."""

from __future__ import annotations

import json
from concurrent.futures import ProcessPoolExecutor
from importlib import resources
from pathlib import Path

from ..errors import ConfigError
from .claims import verify_bound
from .report import Claim, VerificationReport

BUNDLED = ("paper-small.json",)


def bundled_suite_path(name: str) -> Path:
    return Path(str(resources.files("cdulab") / "suites" / name))


def load_suite(src) -> list[Claim]:
    """A path, a bundled suite name, a JSON string or an already-parsed list."""
    if isinstance(src, (str, Path)):
        text = str(src)
        if text in BUNDLED:
            text = bundled_suite_path(text).read_text()
        elif not text.lstrip().startswith("["):
            path = Path(text)
            if not path.exists():
                raise ConfigError(f"no such suite file: {path}")
            text = path.read_text()
        try:
            src = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ConfigError(f"invalid suite json: {exc}") from exc
    if not isinstance(src, list):
        raise ConfigError("a suite must be a JSON array")
    try:
        return [c if isinstance(c, Claim) else Claim.from_json(c) for c in src]
    except (KeyError, TypeError, AttributeError) as exc:
        raise ConfigError(f"malformed suite entry: {exc}") from exc


def _job(args) -> VerificationReport:
    claim, exploratory = args
    return verify_bound(claim, workers=1, exploratory=exploratory)


def run_suite(claims, workers: int = 1, exploratory: bool = False) -> list[VerificationReport]:
    """Run claims as independent jobs; reports come back in suite order."""
    claims = load_suite(claims) if not isinstance(claims, list) or (claims and not isinstance(claims[0], Claim)) \
        else claims
    if workers <= 1 or len(claims) <= 1:
        return [verify_bound(c, exploratory=exploratory) for c in claims]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(_job, [(c, exploratory) for c in claims]))
