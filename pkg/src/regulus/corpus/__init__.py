"""Bundled ``.cat`` files and the expected verdicts recorded for them.

Every run re-derives each expectation from scratch.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources

from ..checks import CheckResult, run_check
from ..dsl import Workspace, load


@dataclass(frozen=True)
class CorpusEntry:
    id: str
    file: str
    kind: str
    args: tuple
    options: dict
    expect: dict
    origin: str


def _root():
    return resources.files(__name__)


def corpus_files() -> list[str]:
    return sorted(p.name for p in _root().iterdir() if p.name.endswith(".cat"))


def corpus_text(file: str) -> str:
    return _root().joinpath(file).read_text(encoding="utf-8")


def load_corpus_file(file: str) -> Workspace:
    return load(corpus_text(file))


def manifest() -> list[CorpusEntry]:
    data = json.loads(_root().joinpath("manifest.json").read_text(encoding="utf-8"))
    return [CorpusEntry(e["id"], e["file"], e["check"]["kind"], tuple(e["check"]["args"]),
                        e["check"].get("options", {}), e["expect"], e["origin"]) for e in data["entries"]]


def corpus_entries() -> list[tuple[Workspace, CorpusEntry]]:
    cache: dict[str, Workspace] = {}
    out = []
    for entry in manifest():
        if entry.file not in cache:
            cache[entry.file] = load_corpus_file(entry.file)
        out.append((cache[entry.file], entry))
    return out


def _contains(actual, expected) -> bool:
    if isinstance(expected, dict):
        return isinstance(actual, dict) and all(k in actual and _contains(actual[k], v) for k, v in expected.items())
    return actual == expected


def mismatches(result: CheckResult, expect: dict) -> list[str]:
    """Differences between a result and an expectation record (empty when it matches)."""
    out = []
    if "verdict" in expect and result.verdict != expect["verdict"]:
        out.append(f"verdict {result.verdict} != {expect['verdict']}")
    for key in ("details", "witnesses"):
        if key in expect and not _contains(getattr(result, key) or {}, expect[key]):
            out.append(f"{key} {getattr(result, key)} do not contain {expect[key]}")
    if "max_depth" in expect:
        depth = result.details.get("depth")
        if depth is None or depth > expect["max_depth"]:
            out.append(f"certificate depth {depth} exceeds {expect['max_depth']}")
    return out


def run_entry(ws: Workspace, entry: CorpusEntry) -> tuple[CheckResult, list[str]]:
    result = run_check(ws, entry.kind, entry.args, entry.options)
    return result, mismatches(result, entry.expect)


def run_corpus():
    """Yield ``(entry, result, mismatches)`` for every manifest entry, in manifest order."""
    for ws, entry in corpus_entries():
        result, bad = run_entry(ws, entry)
        yield entry, result, bad
