"""symbraid: symmetric-union braid words, Jones and Khovanov invariants,
and slice-obstruction tooling built on them.
"""

__version__ = "0.1.0"
