"""Eight-state page selector and the two-step page fades.

The selector register s (3 bits) shifts in the parity of its two input
bits each data/ESC word; the emitted page is (input << 1) | parity(s), so
the input bits ride the page's high bits (transparent to the decoder) while
the low bit is pinned by the register.  The register is never force-reset:
a page fade drives two ESC words whose injected parities steer the register
until its parity matches the target page's low bit.
"""

from __future__ import annotations


def _parity2(value: int) -> int:
    return (value ^ (value >> 1)) & 1


class PageSelector:
    def __init__(self, state: int = 0):
        self.state = state & 7

    def parity(self) -> int:
        s = self.state
        return (s ^ (s >> 1) ^ (s >> 2)) & 1

    def emit(self, inputs: int) -> int:
        """Page for the current word; steps the register."""
        page = ((inputs & 3) << 1) | self.parity()
        self.state = ((self.state << 1) | _parity2(inputs)) & 7
        return page

    def compatible(self, page: int) -> bool:
        """Whether the register parity can produce this page next."""
        return self.parity() == (page & 1)

    @staticmethod
    def data_bits(page: int) -> int:
        return (page >> 1) & 3


def drive_for(parity: int, wanted_bits: int) -> int:
    """Input value with the given injected parity, nearest the wanted bits."""
    if _parity2(wanted_bits) == parity:
        return wanted_bits
    return wanted_bits ^ 1


def fade_in_drives(state: int, target_page: int) -> tuple[int, int]:
    """ESC input pair steering the register into a target-compatible state."""
    if not 0 <= target_page <= 7:
        raise ValueError("target page must be 0..7")
    want = target_page >> 1
    q = (state & 1) ^ (target_page & 1)
    return drive_for(0, want), drive_for(q, want)


def fade_out_drives(state: int, source_page: int) -> tuple[int, int]:
    """Mirror pair: steering parity on the first word, settling on the second."""
    if not 0 <= source_page <= 7:
        raise ValueError("source page must be 0..7")
    return drive_for(state & 1, source_page >> 1), drive_for(0, 0)


def page_fade_in(selector: PageSelector, target_page: int) -> list[int]:
    """Two ESC pages walking the register into a target-compatible state.

    Mutates the selector exactly as emitting the two ESC words would.
    """
    v_a, v_b = fade_in_drives(selector.state, target_page)
    pages = [selector.emit(v_a), selector.emit(v_b)]
    assert selector.compatible(target_page)
    return pages


def page_fade_out(selector: PageSelector, source_page: int) -> list[int]:
    """Two ESC pages returning the register to a page-0-compatible state."""
    v_a, v_b = fade_out_drives(selector.state, source_page)
    pages = [selector.emit(v_a), selector.emit(v_b)]
    assert selector.compatible(0)
    return pages
