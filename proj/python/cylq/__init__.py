"""Volume-weighted cylinder tilings: exact and asymptotic tools."""
try:
    from ._cylq import *  # noqa: F401,F403  (installed wheel layout)
except ImportError:
    from _cylq import *  # noqa: F401,F403  (in-tree build directory)
