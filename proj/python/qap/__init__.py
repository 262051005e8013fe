"""Gate-level divisor finding: restoring-division and successive-subtraction
wiring diagrams, a lockstep register-bank processor, and the plain-arithmetic
reference implementations."""

try:
    from ._qap import *  # noqa: F401,F403
except ImportError:  # development layout: the extension sits on sys.path
    from _qap import *  # noqa: F401,F403

__version__ = "0.1.0"
