"""Stream decoder: framed words back into octets and event records.

Clear-path octets are recovered on arrival and emitted exactly seven words
later.  A noted data word (descrambled root 8) yields an event record at
its own index and defers the word's root bits into the following 18-word
echo; the octets riding an echo round complete only when the round's sixth
digit lands, so in-order delivery stalls behind the noted word and catches
up at two octets per word afterwards.  A corrupted stream aborts with a
diagnostic rather than resynchronizing.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Optional

from .events import EventRecord
from .pages import PageSelector
from .scramblers import WordScrambler, descramble_root
from .words import Kind, TxWord

DECODE_LATENCY = 7
EMIT_CAP = 2
ECHO_ROUNDS = 3
ROUND_WORDS = 6
POW8 = tuple(8**i for i in range(7))
POW9 = tuple(9**i for i in range(7))
CODEWORD_LIMIT = 2 * POW8[6]


class CodecError(ValueError):
    """Stream-level decode failure (framing, codeword or sync violation)."""


@dataclass
class DecodeResult:
    octets: bytes
    events: list[EventRecord]
    arrival_index: list[int]     # per octet: index of the word that carried it
    emit_index: list[int]        # per octet: index at which it was emitted
    flushed: int                 # octets emitted only by the end-of-stream flush


class _Pending:
    __slots__ = ("arrival", "tcm", "postfix", "root")

    def __init__(self, arrival: int, tcm: int, postfix: int, root: Optional[int]):
        self.arrival = arrival
        self.tcm = tcm
        self.postfix = postfix
        self.root = root

    @property
    def ready(self) -> bool:
        return self.root is not None

    def octet(self) -> int:
        assert self.root is not None
        return (self.tcm << 6) | (self.root << 3) | self.postfix


_PHASES = ("ipg", "head_usd", "head_esc", "payload", "tail_esc", "tail_usd")


class Decoder:
    def __init__(self, seed: int = 1, scramble: bool = True):
        self.scrambler = WordScrambler(seed, scramble)
        self.selector = PageSelector()
        self.index = 0
        self.phase = "ipg"
        self._usd_run = 0
        self.queue: deque[_Pending] = deque()
        self.events: list[EventRecord] = []
        self.octets = bytearray()
        self.arrival_index: list[int] = []
        self.emit_index: list[int] = []
        # echo bookkeeping
        self._echo_rounds_left = 0
        self._round_digits: list[int] = []
        self._round_slots: list[Optional[_Pending]] = []
        self._deferred_bits: list[int] = []
        self._noted_entry: Optional[_Pending] = None

    # -- framing ------------------------------------------------------------

    def _violation(self, word: TxWord) -> None:
        raise CodecError(
            f"framing violation at word {self.index}: "
            f"{word.kind.value} not expected in phase {self.phase}"
        )

    def _advance_phase(self, word: TxWord) -> None:
        kind = word.kind.base
        phase = self.phase
        if kind is Kind.IDLE:
            if phase == "ipg":
                return
            if phase == "tail_usd" and self._usd_run == 2:
                self.phase = "ipg"
                return
            self._violation(word)
        if kind is Kind.USD:
            if phase == "ipg":
                self.phase, self._usd_run = "head_usd", 1
            elif phase == "head_usd" and self._usd_run == 1:
                self._usd_run = 2
            elif phase in ("head_esc", "payload", "tail_esc"):
                # head_esc -> empty payload; counts as the tail delimiter
                self.phase, self._usd_run = "tail_usd", 1
            elif phase == "tail_usd" and self._usd_run == 1:
                self._usd_run = 2
            elif phase == "tail_usd" and self._usd_run == 2:
                # fully stretched frames may abut with no idles between
                self.phase, self._usd_run = "head_usd", 1
            else:
                self._violation(word)
            return
        if kind is Kind.ESC:
            if phase == "head_usd" and self._usd_run == 2:
                self.phase = "head_esc"
            elif phase in ("head_esc", "tail_esc"):
                pass
            elif phase == "payload":
                self.phase = "tail_esc"
            else:
                self._violation(word)
            return
        if kind is Kind.DATA:
            if phase == "head_esc":
                self.phase = "payload"
            elif phase == "payload":
                pass
            else:
                self._violation(word)
            return
        self._violation(word)

    # -- echo ---------------------------------------------------------------

    def _echo_feed(self, digit: int, entry: Optional[_Pending]) -> None:
        self._round_digits.append(digit)
        self._round_slots.append(entry)
        if len(self._round_digits) < ROUND_WORDS:
            return
        u = 0
        for j, d in enumerate(self._round_digits):
            u += d * POW9[5 - j]
        if u >= CODEWORD_LIMIT:
            raise CodecError(
                f"invalid echo codeword at word {self.index}: {u} >= {CODEWORD_LIMIT}"
            )
        self._deferred_bits.append(u // POW8[6])
        for j, slot in enumerate(self._round_slots):
            if slot is not None:
                slot.root = (u // POW8[5 - j]) % 8
        self._round_digits = []
        self._round_slots = []
        self._echo_rounds_left -= 1
        if self._echo_rounds_left == 0:
            bits = self._deferred_bits
            assert self._noted_entry is not None
            self._noted_entry.root = (bits[0] << 2) | (bits[1] << 1) | bits[2]
            self._noted_entry = None
            self._deferred_bits = []

    @property
    def _echo_active(self) -> bool:
        return self._echo_rounds_left > 0

    # -- word processing ----------------------------------------------------

    def process(self, word: TxWord) -> tuple[list[int], list[EventRecord]]:
        """Consume one word; returns (octets emitted now, events seen now)."""
        keys = self.scrambler.next_keys()
        self._advance_phase(word)
        kind = word.kind
        base = kind.base
        new_events: list[EventRecord] = []

        if base in (Kind.DATA, Kind.ESC):
            if (word.page & 1) != self.selector.parity():
                raise CodecError(
                    f"descrambler desync at word {self.index}: page parity mismatch"
                )
            self.selector.emit(word.page >> 1)
            root = descramble_root(word.root, keys)
            if base is Kind.DATA:
                tcm = (word.page >> 1) ^ keys.sy
                postfix = word.postfix ^ keys.sx
                if kind is Kind.DATA_NOTED:
                    if root != 8:
                        raise CodecError(
                            f"noted data word without the noted root at {self.index}"
                        )
                    if self._echo_active:
                        raise CodecError(f"nested echo at word {self.index}")
                    entry = _Pending(self.index, tcm, postfix, None)
                    self.queue.append(entry)
                    self._noted_entry = entry
                    self._echo_rounds_left = ECHO_ROUNDS
                    new_events.append(EventRecord.at_word(self.index))
                elif self._echo_active:
                    entry = _Pending(self.index, tcm, postfix, None)
                    self.queue.append(entry)
                    self._echo_feed(root, entry)
                else:
                    if root > 7:
                        raise CodecError(
                            f"clear data word with root 8 at {self.index}"
                        )
                    self.queue.append(_Pending(self.index, tcm, postfix, root))
            else:                           # ESC or ESC*
                if kind is Kind.ESC_NOTED:
                    new_events.append(EventRecord.at_word(self.index))
                elif self._echo_active:
                    self._echo_feed(root, None)
        else:                               # IDLE/USD families
            if word.page != 0:
                raise CodecError(f"{kind.value} outside page 0 at word {self.index}")
            if kind.noted:
                new_events.append(EventRecord.at_word(self.index))

        self.events.extend(new_events)
        emitted = self._emit_due()
        self.index += 1
        return emitted, new_events

    def _emit_due(self) -> list[int]:
        emitted = []
        while (
            len(emitted) < EMIT_CAP
            and self.queue
            and self.queue[0].ready
            and self.queue[0].arrival + DECODE_LATENCY <= self.index
        ):
            entry = self.queue.popleft()
            value = entry.octet()
            emitted.append(value)
            self.octets.append(value)
            self.arrival_index.append(entry.arrival)
            self.emit_index.append(self.index)
        return emitted

    def finish(self) -> int:
        """Flush octets already complete when the stream ends."""
        flushed = 0
        while self.queue and self.queue[0].ready:
            entry = self.queue.popleft()
            self.octets.append(entry.octet())
            self.arrival_index.append(entry.arrival)
            self.emit_index.append(self.index)
            flushed += 1
        if self.queue:
            raise CodecError(
                f"stream ended with {len(self.queue)} octets incomplete"
            )
        return flushed


def decode_stream(words: Iterable[TxWord], seed: int = 1,
                  scramble: bool = True) -> DecodeResult:
    dec = Decoder(seed=seed, scramble=scramble)
    for word in words:
        dec.process(word)
    flushed = dec.finish()
    return DecodeResult(
        octets=bytes(dec.octets),
        events=dec.events,
        arrival_index=dec.arrival_index,
        emit_index=dec.emit_index,
        flushed=flushed,
    )
