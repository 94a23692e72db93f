"""The crossing step between a primary and a secondary part, and its inverse."""

from __future__ import annotations

from .parts import Primary, Secondary, delta, gamma, mu, natural_gt, strong_gt


def cross(x: Primary, y: Secondary) -> tuple[Secondary, Primary]:
    """Move the primary part ``x`` past the secondary part ``y``.

    Total length and the sequence of primary colors are both conserved.
    Defined for every size, including non-positive ones.
    """
    k, p = x.k, x.p
    l, q, r = y.k, y.p, y.q
    return Secondary(l + delta(q, r), p, q), Primary(k - delta(p, q) - delta(q, r), r)


def uncross(x: Secondary, y: Primary) -> tuple[Primary, Secondary]:
    """Inverse of :func:`cross`."""
    k, p, q = x.k, x.p, x.q
    l, r = y.k, y.p
    return Primary(l + delta(p, q) + delta(q, r), p), Secondary(k - delta(q, r), q, r)


def crossing_repairs_order(x: Primary, y: Secondary) -> bool:
    """Whether ``not x >> y`` holds exactly when the crossed pair is ``>>``-ordered.

    True for every pair; shipped for verification runs.
    """
    first, second = cross(x, y)
    return (not strong_gt(x, y)) == strong_gt(first, second)


def uncrossing_repairs_order(x: Secondary, y: Primary) -> bool:
    """Whether ``not mu(x) >_c y`` holds exactly when the uncrossed primary
    part is ``>>`` the upper half of the new secondary part.

    True for every pair.
    """
    first, second = uncross(x, y)
    return (not natural_gt(mu(x), y)) == strong_gt(first, gamma(second))
