"""The infinite order.

Orders of magnitude and ranking values live in Z ∪ {∞}. ``INF`` is a single
distinguished object (not a large sentinel integer) with the arithmetic the
calculus needs: it absorbs addition, compares above every integer, and is
equal only to itself.
"""

from __future__ import annotations


class Infinity:
    """Singleton type of ``INF``. Do not instantiate a second one."""

    __slots__ = ()

    def __repr__(self) -> str:
        return "INF"

    def __str__(self) -> str:
        return "inf"

    # -- total order against ints (and itself) --------------------------
    def __lt__(self, other):
        if isinstance(other, (int, Infinity)):
            return False
        return NotImplemented

    def __le__(self, other):
        if isinstance(other, Infinity):
            return True
        if isinstance(other, int):
            return False
        return NotImplemented

    def __gt__(self, other):
        if isinstance(other, Infinity):
            return False
        if isinstance(other, int):
            return True
        return NotImplemented

    def __ge__(self, other):
        if isinstance(other, (int, Infinity)):
            return True
        return NotImplemented

    # -- absorbing addition ---------------------------------------------
    def __add__(self, other):
        if isinstance(other, (int, Infinity)):
            return self
        return NotImplemented

    __radd__ = __add__

    def __sub__(self, other):
        # INF - n = INF for finite n; INF - INF is deliberately undefined.
        if isinstance(other, int):
            return self
        return NotImplemented

    def __hash__(self) -> int:
        return hash(float("inf"))


INF = Infinity()
