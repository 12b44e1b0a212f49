"""Spin-qudit quantum error correction toolkit.

Thin Python surface over the C++ core: codeword construction and
Knill-Laflamme verification, the frozen encoding/decoding pulse sequences,
relaxation and pulse-imperfection channels, full QEC-cycle simulation, and
resource-comparison calculators.
"""

try:
    from ._core import *  # noqa: F401,F403
    from ._core import __version__  # noqa: F401
except ImportError:  # running against an in-build module on PYTHONPATH
    from _core import *  # noqa: F401,F403
    from _core import __version__  # noqa: F401
