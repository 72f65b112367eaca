"""Word-stream file format: one `kind page root postfix` record per line,
with a JSON sidecar for event records."""

from __future__ import annotations

import json
from pathlib import Path
from typing import Iterable, Union

from .events import EventRecord
from .words import Kind, TxWord

PathLike = Union[str, Path]


def words_to_text(words: Iterable[TxWord]) -> str:
    return "".join(
        f"{w.kind.value} {w.page} {w.root} {w.postfix}\n" for w in words
    )


def write_words(path: PathLike, words: Iterable[TxWord]) -> None:
    Path(path).write_text(words_to_text(words))


def read_words(path: PathLike) -> list[TxWord]:
    out = []
    for lineno, line in enumerate(Path(path).read_text().splitlines(), start=1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 4:
            raise ValueError(f"{path}:{lineno}: expected 'kind page root postfix'")
        kind, page, root, postfix = parts
        out.append(TxWord(Kind(kind), int(page), int(root), int(postfix)).validate())
    return out


def write_events(path: PathLike, events: Iterable[EventRecord]) -> None:
    payload = [
        {
            "word_index": e.word_index,
            "time_ns": e.time_ns,
            "uncertainty_ns": e.uncertainty_ns,
            **({"train_type": e.train_type} if e.train_type is not None else {}),
        }
        for e in events
    ]
    Path(path).write_text(json.dumps(payload, indent=2) + "\n")


def read_events(path: PathLike) -> list[EventRecord]:
    raw = json.loads(Path(path).read_text())
    return [
        EventRecord(
            word_index=item["word_index"],
            time_ns=item.get("time_ns", 8.0 * item["word_index"] - 4.0),
            uncertainty_ns=item.get("uncertainty_ns", 4.0),
            train_type=item.get("train_type"),
        )
        for item in raw
    ]


def read_event_times(path: PathLike) -> list[float]:
    """Event arrival times (ns) from a sidecar, for feeding the encoder."""
    raw = json.loads(Path(path).read_text())
    out = []
    for item in raw:
        if "time_ns" in item:
            out.append(float(item["time_ns"]))
        else:
            out.append(8.0 * int(item["word_index"]))
    return out
