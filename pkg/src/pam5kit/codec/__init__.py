"""Word-stream codec multiplexing an octet stream with a single-event channel.

Wire convention (this artifact's, summarized):

* A word is (kind, page, root, postfix).  Kinds: data, idle, usd, esc and
  their noted images data*, idle*, usd*, esc*.
* An octet splits as 2 page-selector bits (b7 b6), 3 root bits (b5..b3) and
  3 postfix bits (b2..b0).  Data rate is exactly 8 bits per word.
* The root morpheme rides a nonary (0..8) transport; value 8 on a clear
  data word marks an event (a noted word) and defers the word's 3 root bits
  into an 18-word echo: three rounds of six words, round r carrying
  u = b * 8**6 + sum(d_j * 8**(5-j)) as six big-endian nonary digits, where
  b is the r-th deferred bit (most significant first) and d_j the round's
  data-word root values (0 for ESC slots).  2 * 8**6 <= 9**6 makes every
  round codeword representable.
* Noting an event on a control word emits the noted control image and
  generates no echo.  After any accepted event the next 19 words refuse
  events (18 echo words at most, then at least one silence word).
* Scrambling: a 33-bit side-stream LFSR steps once per word; derived bits
  scramble the selector bits (xor), postfix (xor) and root (digit-wise
  mod-3 addition of a mapped ternary pair).
* Encode latency is 6 words (the echo round codeword needs the round's six
  root digits up front); decode latency is 7 words on the clear path.
"""

from .words import Kind, TxWord
from .scramblers import Lfsr33, WordScrambler, ternary_descramble, ternary_scramble
from .pages import PageSelector, page_fade_in, page_fade_out
from .framing import FramePattern, MIN_IPG_WORDS, frame_stream
from .encoder import EncodeResult, Encoder, encode_stream
from .decoder import DecodeResult, Decoder, CodecError, decode_stream
from .events import EventRecord, event_train_decode, event_train_encode
from .wirefmt import read_events, read_words, write_events, write_words

ENCODE_LATENCY = 6
DECODE_LATENCY = 7
EVENT_SPACING = 20
ECHO_ROUNDS = 3
ROUND_WORDS = 6
ECHO_WORDS = ECHO_ROUNDS * ROUND_WORDS
CODEWORD_LIMIT = 2 * 8**6        # 524_288 <= 9**6 = 531_441

__all__ = [
    "Kind", "TxWord", "Lfsr33", "WordScrambler",
    "ternary_scramble", "ternary_descramble",
    "PageSelector", "page_fade_in", "page_fade_out",
    "FramePattern", "MIN_IPG_WORDS", "frame_stream",
    "Encoder", "EncodeResult", "encode_stream",
    "Decoder", "DecodeResult", "CodecError", "decode_stream",
    "EventRecord", "event_train_encode", "event_train_decode",
    "read_words", "write_words", "read_events", "write_events",
    "ENCODE_LATENCY", "DECODE_LATENCY", "EVENT_SPACING",
    "ECHO_ROUNDS", "ROUND_WORDS", "ECHO_WORDS", "CODEWORD_LIMIT",
]
