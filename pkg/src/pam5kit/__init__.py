"""pam5kit: analysis and simulation workbench for 4D-PAM5 coding designs.

Subpackages and modules:

* levels    -- the 625-point constellation: subsets, pages, slices, NAP
* muxplan   -- multiplexing arithmetic: echo durations, variants, round plans
* codec     -- the data+event word-stream encoder/decoder with framing
* balance   -- constellation symmetries and hit-rate balancing
* stellar   -- coding-gain geometry, two-orbit constellations, sphere limits
* mdistats  -- MDI output power/wobble/change statistics
* reftables -- embedded reference values and reproduction reports
"""

from . import balance, codec, levels, mdistats, muxplan, stellar

__version__ = "0.1.0"

__all__ = ["balance", "codec", "levels", "mdistats", "muxplan", "stellar", "__version__"]
