"""Transported word: kind, page, nonary root, postfix."""

from __future__ import annotations

from enum import Enum
from typing import NamedTuple


class Kind(str, Enum):
    DATA = "data"
    DATA_NOTED = "data*"
    IDLE = "idle"
    IDLE_NOTED = "idle*"
    USD = "usd"
    USD_NOTED = "usd*"
    ESC = "esc"
    ESC_NOTED = "esc*"

    @property
    def noted(self) -> bool:
        return self.value.endswith("*")

    @property
    def base(self) -> "Kind":
        return Kind(self.value.rstrip("*"))

    @property
    def noted_image(self) -> "Kind":
        return self if self.noted else Kind(self.value + "*")

    @property
    def is_control(self) -> bool:
        return self.base in (Kind.IDLE, Kind.USD, Kind.ESC)


# Kinds pinned to the zeroth page (delimiters and idle filler).
PAGE_ZERO_KINDS = frozenset(
    {Kind.IDLE, Kind.IDLE_NOTED, Kind.USD, Kind.USD_NOTED}
)


class TxWord(NamedTuple):
    kind: Kind
    page: int
    root: int      # nonary: 0..8 on the wire
    postfix: int

    def validate(self) -> "TxWord":
        if not 0 <= self.page <= 7:
            raise ValueError(f"page out of range: {self.page}")
        if not 0 <= self.root <= 8:
            raise ValueError(f"root out of range: {self.root}")
        if not 0 <= self.postfix <= 7:
            raise ValueError(f"postfix out of range: {self.postfix}")
        if self.kind in PAGE_ZERO_KINDS and self.page != 0:
            raise ValueError(f"{self.kind.value} words live in page 0")
        if self.kind.base is Kind.IDLE and self.root > 2:
            raise ValueError("idle roots are ternary")
        return self
