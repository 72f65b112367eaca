"""Stream encoder: octets plus asynchronous events into a framed word stream.

The encoder is word-clocked.  An octet enters the six-deep lookahead buffer
and reaches the wire exactly six words later; the lookahead exists because
an echo round's codeword mixes the round's six root digits, all of which
must be known when the round's first word is emitted.  Events are quantized
to the next word boundary and noted on whatever word occupies it, provided
no echo or silence is pending; otherwise they are dropped and counted.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Optional, Union

from .framing import FramePattern
from .pages import PageSelector, drive_for, fade_in_drives, fade_out_drives
from .scramblers import WordScrambler, scramble_root
from .words import Kind, TxWord

WORD_NS = 8.0
EVENT_SPACING = 20
ECHO_ROUNDS = 3
ROUND_WORDS = 6
POW8 = tuple(8**i for i in range(7))
POW9 = tuple(9**i for i in range(7))
CODEWORD_LIMIT = 2 * POW8[6]


def quantize_event(event: Union[int, float]) -> int:
    """Word index of the next word boundary at or after the event time."""
    if isinstance(event, bool):
        raise TypeError("event must be a word index or a time in ns")
    if isinstance(event, int):
        return event
    return math.ceil(event / WORD_NS)


@dataclass
class EncodeResult:
    words: list[TxWord]
    accepted_events: list[int]          # wire indexes of noted words
    dropped_events: int
    out_of_range_events: int
    feed_index: list[int]               # per octet: call when it entered the buffer
    wire_index: list[int]               # per octet: index of its data word
    first_data_index: int


@dataclass
class _EchoState:
    bits: deque = field(default_factory=deque)   # deferred root bits, MSB first
    digits: Optional[list[int]] = None           # current round codeword
    pos: int = 0

    @property
    def active(self) -> bool:
        return bool(self.bits) or self.digits is not None

    def words_remaining(self) -> int:
        rem = ROUND_WORDS * len(self.bits)
        if self.digits is not None:
            rem += ROUND_WORDS - self.pos
        return rem

    def start(self, root: int) -> None:
        self.bits = deque(((root >> 2) & 1, (root >> 1) & 1, root & 1))
        self.digits = None
        self.pos = 0

    def next_digit(self, slot_roots: list[int]) -> Optional[int]:
        """Wire digit for the current word; slot_roots feeds a starting round."""
        if self.digits is None:
            if not self.bits:
                return None
            b = self.bits.popleft()
            u = b * POW8[6]
            for j in range(ROUND_WORDS):
                d = slot_roots[j] if j < len(slot_roots) else 0
                u += d * POW8[5 - j]
            assert u < CODEWORD_LIMIT
            self.digits = [(u // POW9[5 - j]) % 9 for j in range(ROUND_WORDS)]
            self.pos = 0
        digit = self.digits[self.pos]
        self.pos += 1
        if self.pos == ROUND_WORDS:
            self.digits = None
            self.pos = 0
        return digit


class Encoder:
    def __init__(self, seed: int = 1, scramble: bool = True,
                 head_stretch: int = 0, tail_stretch: int = 0):
        self.pattern = FramePattern(head_stretch, tail_stretch)
        self.selector = PageSelector()
        self.scrambler = WordScrambler(seed, scramble)
        self.echo = _EchoState()
        self.quiet_until = 0
        self.words: list[TxWord] = []
        self.accepted: list[int] = []
        self.dropped = 0
        self._last_data_page = 0

    # -- per-word helpers ---------------------------------------------------

    @property
    def index(self) -> int:
        return len(self.words)

    def _note(self, event_here: bool) -> bool:
        if not event_here:
            return False
        if self.index < self.quiet_until:
            self.dropped += 1
            return False
        self.quiet_until = self.index + EVENT_SPACING
        self.accepted.append(self.index)
        return True

    def _emit(self, word: TxWord) -> None:
        self.words.append(word)

    def _word_idle(self, event_here: bool) -> None:
        keys = self.scrambler.next_keys()
        kind = Kind.IDLE_NOTED if self._note(event_here) else Kind.IDLE
        self._emit(TxWord(kind, 0, keys.g0, 0))

    def _word_usd(self, event_here: bool) -> None:
        self.scrambler.next_keys()
        kind = Kind.USD_NOTED if self._note(event_here) else Kind.USD
        self._emit(TxWord(kind, 0, 0, 0))

    def _word_esc(self, drive: int, event_here: bool) -> None:
        keys = self.scrambler.next_keys()
        page = self.selector.emit(drive)
        digit = self.echo.next_digit([])
        if digit is None:
            kind = Kind.ESC_NOTED if self._note(event_here) else Kind.ESC
            root = 0
        else:
            # an echo word always sits inside the silence window, so the
            # event cannot be accepted here; it is dropped and counted
            self._note(event_here)
            kind = Kind.ESC
            root = digit
        self._emit(TxWord(kind, page, scramble_root(root, keys), keys.sx))

    def _word_data(self, octet: int, future: deque, event_here: bool) -> None:
        keys = self.scrambler.next_keys()
        tcm = (octet >> 6) & 3
        root_clear = (octet >> 3) & 7
        postfix = octet & 7
        page = self.selector.emit(tcm ^ keys.sy)
        self._last_data_page = page
        kind = Kind.DATA
        if self.echo.active:
            self._note(event_here)      # echo in progress: drops and counts
            slots = [root_clear] + [(o >> 3) & 7 for o in list(future)[:5]]
            root = self.echo.next_digit(slots)
            assert root is not None
        elif self._note(event_here):
            kind = Kind.DATA_NOTED
            root = 8
            self.echo.start(root_clear)
        else:
            root = root_clear
        self._emit(TxWord(kind, page, scramble_root(root, keys),
                          postfix ^ keys.sx))

    def _parity_keeping_drive(self) -> int:
        return drive_for(self.selector.state >> 2, 0)


def encode_stream(octets: Union[bytes, bytearray, Iterable[int]],
                  events: Iterable[Union[int, float]] = (),
                  head_stretch: int = 0, tail_stretch: int = 0,
                  scramble: bool = True, seed: int = 1) -> EncodeResult:
    """Encode one framed payload; events may fall anywhere in the stream."""
    octets = bytes(octets)
    enc = Encoder(seed=seed, scramble=scramble,
                  head_stretch=head_stretch, tail_stretch=tail_stretch)
    pattern = enc.pattern

    quantized = sorted(quantize_event(e) for e in events)
    out_of_range = sum(1 for i in quantized if i < 0)
    event_indexes = [i for i in quantized if i >= 0]
    ev_ptr = 0

    def event_here() -> bool:
        nonlocal ev_ptr
        hit = False
        while ev_ptr < len(event_indexes) and event_indexes[ev_ptr] == enc.index:
            # several events on one word: the first is the candidate, the
            # rest collapse into it (and will be refused by the spacing rule)
            if hit:
                enc.dropped += 1
            hit = True
            ev_ptr += 1
        return hit

    lead = pattern.lead_idles
    first_data = lead + 2 + pattern.head_esc_words
    feed_start = first_data - 6

    buffer: deque[int] = deque()
    feed_pos = 0
    feed_index = [0] * len(octets)
    wire_index = [0] * len(octets)

    def feed() -> None:
        nonlocal feed_pos
        if feed_pos < len(octets) and enc.index >= feed_start:
            feed_index[feed_pos] = enc.index
            buffer.append(octets[feed_pos])
            feed_pos += 1

    # --- head glue ---
    for _ in range(lead):
        feed()
        enc._word_idle(event_here())
    for _ in range(2):
        feed()
        enc._word_usd(event_here())
    fade_target = ((octets[0] >> 6) & 3) << 1 if octets else 0
    v_a, v_b = fade_in_drives(enc.selector.state, fade_target)
    for drive in (v_a, v_b):
        feed()
        enc._word_esc(drive, event_here())
    for _ in range(pattern.head_esc_words - 2):
        feed()
        enc._word_esc(enc._parity_keeping_drive(), event_here())

    # --- payload ---
    for k in range(len(octets)):
        feed()
        wire_index[k] = enc.index
        octet = buffer.popleft()
        enc._word_data(octet, buffer, event_here())

    # --- tail glue ---
    remaining = enc.echo.words_remaining()
    tail_len = max(pattern.tail_esc_words, remaining + (remaining & 1))
    for i in range(tail_len):
        if i == tail_len - 2:
            v_a, v_b = fade_out_drives(enc.selector.state, enc._last_data_page)
            enc._word_esc(v_a, event_here())
            enc._word_esc(v_b, event_here())
            break
        enc._word_esc(enc._parity_keeping_drive(), event_here())
    for _ in range(2):
        enc._word_usd(event_here())
    trail = pattern.trail_idles
    if octets:
        trail = max(trail, 7 - 2 - tail_len)
    for _ in range(trail):
        enc._word_idle(event_here())

    out_of_range += len(event_indexes) - ev_ptr
    return EncodeResult(
        words=enc.words,
        accepted_events=enc.accepted,
        dropped_events=enc.dropped,
        out_of_range_events=out_of_range,
        feed_index=feed_index,
        wire_index=wire_index,
        first_data_index=first_data,
    )
