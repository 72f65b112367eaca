"""Event records and the cycle-spaced event train.

A single noted word fixes an event with a half-word-period uncertainty
(+-4 ns at 8 ns/word).  The event train raises the resolution by repeating
(or withholding) events at cycle offsets m, 2m and 3m after an anchor
event; the presence pattern encodes three extra bits.
"""

from __future__ import annotations

from typing import NamedTuple, Optional, Sequence

WORD_NS = 8.0
HALF_WORD_NS = WORD_NS / 2.0
MIN_CYCLE_WORDS = 20


class EventRecord(NamedTuple):
    word_index: int
    time_ns: float
    uncertainty_ns: float = HALF_WORD_NS
    train_type: Optional[int] = None

    @classmethod
    def at_word(cls, index: int) -> "EventRecord":
        # an event quantized to word w arrived inside (8(w-1), 8w]
        return cls(index, WORD_NS * index - HALF_WORD_NS)


def event_train_encode(train_type: int, cycle_words: int = MIN_CYCLE_WORDS) -> list[int]:
    """Word offsets of the train encoding a 3-bit type.

    The anchor event always fires; cycles 1m, 2m, 3m fire for type bits 2,
    1, 0 respectively, so type 0 is a bare event and type 7 fires all four.
    """
    if not 0 <= train_type <= 7:
        raise ValueError("train type must be 0..7")
    if cycle_words < MIN_CYCLE_WORDS:
        raise ValueError(f"cycle spacing below {MIN_CYCLE_WORDS} words")
    offsets = [0]
    for bit, cycle in ((2, 1), (1, 2), (0, 3)):
        if (train_type >> bit) & 1:
            offsets.append(cycle * cycle_words)
    return offsets


def event_train_decode(presence: Sequence[bool]) -> Optional[int]:
    """Type from the four cycle observations; None for a partial train.

    `presence` holds the anchor observation followed by the three cycle
    slots.  A train whose anchor is missing, or that was cut short before
    all three slots could be observed, is unclassified.
    """
    if len(presence) != 4 or not presence[0]:
        return None
    return (presence[1] << 2) | (presence[2] << 1) | int(presence[3])
