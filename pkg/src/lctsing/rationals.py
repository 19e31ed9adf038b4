"""Exact rational arithmetic: gmpy2.mpq when available, Fraction otherwise."""

try:
    from gmpy2 import mpq as Q
except ImportError:  # pragma: no cover
    from fractions import Fraction as Q

QZERO = Q(0)
QONE = Q(1)


def qstr(x) -> str:
    """Render a rational as "p/q", with "/q" omitted when q == 1."""
    return str(Q(x))


def parse_rational(s: str):
    if "/" in s:
        num, den = s.split("/", 1)
        return Q(int(num), int(den))
    return Q(int(s))
