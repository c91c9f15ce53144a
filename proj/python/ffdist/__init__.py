"""Distance functions, character sums and embedding counts over GF(p^k)."""

try:
    from ._ffdist import *  # noqa: F401,F403  (wheel layout)
except ImportError:  # in-tree builds put the extension on sys.path directly
    from _ffdist import *  # type: ignore  # noqa: F401,F403

__version__ = "0.1.0"
