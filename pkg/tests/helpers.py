"""Brute-force oracles and small utilities shared by the test modules.

The oracles here enumerate group elements directly and never touch the
Smith-form machinery they are used to check.
"""

from itertools import product

from ahom.abelian import FgAbGroup


def elements(g: FgAbGroup):
    """All elements of a finite group as coordinate tuples."""
    assert g.is_finite()
    return product(*(range(d) for d in g.invariant_factors))


def brute_hom_order(g: FgAbGroup, h: FgAbGroup) -> int:
    """|Hom(g, h)| for finite g, h by counting annihilated elements.

    A homomorphism is a free choice, for each cyclic generator of order a,
    of an element y in h with a*y = 0.
    """
    assert g.is_finite() and h.is_finite()
    count = 1
    for a in g.invariant_factors:
        killed = sum(
            1 for y in elements(h)
            if all((a * yj) % dj == 0 for yj, dj in zip(y, h.invariant_factors))
        )
        count *= killed
    return count


def brute_ext_order(g: FgAbGroup, h: FgAbGroup) -> int:
    """|Ext(g, h)| for finite g, h via Ext(Z/a, H) = H / aH."""
    assert g.is_finite() and h.is_finite()
    count = 1
    for a in g.invariant_factors:
        image = {
            tuple((a * yj) % dj for yj, dj in zip(y, h.invariant_factors))
            for y in elements(h)
        }
        count *= h.order() // len(image)
    return count


def divides(a, b) -> bool:
    """Divisibility allowing math.inf on the right."""
    if b == float("inf"):
        return True
    if a == float("inf"):
        return False
    return b % a == 0
