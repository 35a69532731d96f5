"""Differentially private release of infrastructure network datasets.

The heavy lifting lives in the compiled ``_netveil`` extension; this package
re-exports its surface. When running from a plain CMake build tree (rather
than an installed wheel), the extension sits next to this package on
``PYTHONPATH``.
"""

try:
    from ._netveil import *  # noqa: F401,F403
    from ._netveil import __doc__  # noqa: F401
except ImportError:  # pragma: no cover - CMake build-tree layout
    from _netveil import *  # noqa: F401,F403

__version__ = "0.1.0"
