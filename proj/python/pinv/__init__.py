"""B-invariants of parabolic nilradicals in gl(n).

Thin wrapper over the C++ extension. Roots are (row, col) tuples, 1-based;
rational values come back as fractions.Fraction.
"""

from fractions import Fraction

from . import _pinv
from ._pinv import PinvError

__all__ = [
    "PinvError",
    "base",
    "canonicalize",
    "diagram",
    "invariants",
    "orbit_dimension",
    "phi",
    "psi",
    "run",
]


def _blocks(blocks):
    if isinstance(blocks, str):
        return [int(b) for b in blocks.split(",")]
    return list(blocks)


def diagram(blocks, format="ascii"):
    return _pinv.diagram(_blocks(blocks), format)


def base(blocks):
    return _pinv.base(_blocks(blocks))


def phi(blocks):
    return _pinv.phi(_blocks(blocks))


def psi(blocks):
    """{"first": Psi1, "second": Psi2, "numbering": Psi in solve order}."""
    return _pinv.psi(_blocks(blocks))


def orbit_dimension(blocks):
    return _pinv.orbit_dimension(_blocks(blocks))


def invariants(blocks):
    """M, L, then A/B in numbering order, each as a JSON-style dict."""
    return _pinv.invariants(_blocks(blocks))


def canonicalize(blocks, entries):
    """Canonical X-slice coefficients of a point given as {(i, j): value}.

    Values may be int, Fraction or "p/q" strings. Returns a dict with
    "method", "coefficients" and "invariants", values as Fractions.
    """
    raw = {tuple(k): str(Fraction(v)) for k, v in entries.items()}
    out = _pinv.canonicalize(_blocks(blocks), raw)
    for key in ("coefficients", "invariants"):
        out[key] = {k: Fraction(v) for k, v in out[key].items()}
    return out


def run(*args):
    """Run the command line tool in process; returns (exit_code, stdout, stderr)."""
    return _pinv.run([str(a) for a in args])
