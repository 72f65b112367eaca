"""Payload framing: inter-payload glue, head/tail ESC stretching.

The minimal inter-payload gap is 12 words: a fade-out ESC pair, a USD pair,
four idles, a USD pair and a fade-in ESC pair.  Stretching the head (H) or
tail (T) ESC runs by 2H/2T words eats the adjacent idles, keeping the gap
at its minimum; H or T of 3 would stall the pipeline 9 words and is
rejected.  The head stretch buys room for user extra bits, the tail stretch
absorbs a still-running echo.
"""

from __future__ import annotations

from dataclasses import dataclass

MIN_IPG_WORDS = 12

# Usable extra head bits per stretch level.
HEAD_EXTRA_BITS = {0: 16, 1: 26, 2: 42}


@dataclass(frozen=True)
class FramePattern:
    head_stretch: int = 0
    tail_stretch: int = 0

    def __post_init__(self) -> None:
        for name, value in (("head", self.head_stretch), ("tail", self.tail_stretch)):
            if value not in (0, 1, 2):
                raise ValueError(
                    f"{name} stretch {value} rejected: only 0..2 keep the "
                    f"processing delay acceptable"
                )

    @property
    def head_esc_words(self) -> int:
        return 2 + 2 * self.head_stretch

    @property
    def tail_esc_words(self) -> int:
        return 2 + 2 * self.tail_stretch

    @property
    def head_extra_bits(self) -> int:
        return HEAD_EXTRA_BITS[self.head_stretch]

    @property
    def lead_idles(self) -> int:
        return max(0, 2 - 2 * self.head_stretch)

    @property
    def trail_idles(self) -> int:
        return max(0, 2 - 2 * self.tail_stretch)


def frame_stream(payload: bytes, head_stretch: int = 0, tail_stretch: int = 0,
                 scramble: bool = False, seed: int = 1):
    """Frame a payload into its word sequence (no events)."""
    from .encoder import encode_stream

    result = encode_stream(
        payload, events=(), head_stretch=head_stretch, tail_stretch=tail_stretch,
        scramble=scramble, seed=seed,
    )
    return result.words
