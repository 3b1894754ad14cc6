"""Exact decision procedures for curve systems on surfaces and braid groups.

Two engines answer the same kind of question and check each other:

* combinatorial curve topology — curve systems as crossing sequences with
  signs (``curvesys``), bigon reduction, surgeries and Dehn twists
  (``moves``), and the embedded-bouquet decision built on them
  (``bouquet``);
* braid-group algebra — free-group words (``words``), the Garside
  left-greedy normal form solving the word problem (``braid``), and the
  cycle presentation with its braid embedding (``cyclepres``).

``cli`` exposes everything as a command-line tool.
"""

from __future__ import annotations

__version__ = "0.1.0"
