"""Finite groups given by multiplication tables.

Element 0 is always the identity.  Groups are small (order <= ~24), so
everything is done by exhaustive enumeration over the table.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product

__all__ = [
    "GroupTableError",
    "FiniteGroup",
    "Subgroup",
    "validate_group",
    "make_cyclic",
    "make_product",
    "make_klein",
    "make_symmetric",
    "make_dihedral",
    "make_quaternion",
    "group_from_permutations",
    "cyclic_subgroups",
    "all_subgroups",
    "preset_groups",
]


class GroupTableError(ValueError):
    """A multiplication table violating a group law; ``witness`` names the culprits."""

    def __init__(self, message, witness=()):
        super().__init__(message)
        self.witness = tuple(witness)


@dataclass(frozen=True, eq=False)
class FiniteGroup:
    """A validated group law on {0, ..., order-1} with identity 0.

    Build instances with :func:`validate_group` or the ``make_*`` helpers.
    """

    mult: tuple[tuple[int, ...], ...]
    name: str = ""
    inverse: tuple[int, ...] = field(init=False, repr=False)

    def __post_init__(self):
        n = len(self.mult)
        inv = [0] * n
        for a in range(n):
            inv[a] = self.mult[a].index(0)
        object.__setattr__(self, "inverse", tuple(inv))

    @property
    def order(self):
        return len(self.mult)

    def mul(self, a, b):
        return self.mult[a][b]

    def element_order(self, g):
        k, x = 1, g
        while x != 0:
            x = self.mult[x][g]
            k += 1
        return k

    def powers(self, g):
        out, x = [0], g
        while x != 0:
            out.append(x)
            x = self.mult[x][g]
        return out

    def is_trivial(self):
        return self.order == 1

    def __eq__(self, other):
        return isinstance(other, FiniteGroup) and self.mult == other.mult

    def __hash__(self):
        return hash(self.mult)

    def __repr__(self):
        label = self.name or "group"
        return f"<FiniteGroup {label} of order {self.order}>"


@dataclass(frozen=True)
class Subgroup:
    parent: FiniteGroup
    elements: tuple[int, ...]

    @property
    def order(self):
        return len(self.elements)

    def table(self):
        """The subgroup as a standalone group, reindexed by sorted position."""
        pos = {g: i for i, g in enumerate(self.elements)}
        mult = tuple(
            tuple(pos[self.parent.mult[a][b]] for b in self.elements) for a in self.elements
        )
        return FiniteGroup(mult, name=f"subgroup of {self.parent.name or 'group'}")


def validate_group(table, name=""):
    """Check a square table is a group law with identity 0.

    Raises :class:`GroupTableError` carrying a witness: ``(a, b, c)`` for
    failed associativity, ``(x,)`` for a bad identity or a missing inverse.
    """
    rows = [list(r) for r in table]
    n = len(rows)
    if n == 0:
        raise GroupTableError("empty table")
    for i, r in enumerate(rows):
        if len(r) != n:
            raise GroupTableError(f"row {i} has length {len(r)}, expected {n}", (i,))
        for j, v in enumerate(r):
            if isinstance(v, bool) or not isinstance(v, int) or not 0 <= v < n:
                raise GroupTableError(f"entry ({i}, {j}) = {v!r} is not an element index", (i, j))
    for x in range(n):
        if rows[0][x] != x or rows[x][0] != x:
            raise GroupTableError(f"index 0 is not an identity: fails at element {x}", (x,))
    for x in range(n):
        if 0 not in rows[x]:
            raise GroupTableError(f"element {x} has no inverse", (x,))
        y = rows[x].index(0)
        if rows[y][x] != 0:
            raise GroupTableError(f"element {x} has no two-sided inverse", (x,))
    for a, b, c in product(range(n), repeat=3):
        if rows[rows[a][b]][c] != rows[a][rows[b][c]]:
            raise GroupTableError(f"associativity fails at ({a}, {b}, {c})", (a, b, c))
    return FiniteGroup(tuple(tuple(r) for r in rows), name=name)


def make_cyclic(n):
    if n < 1:
        raise ValueError("cyclic group order must be >= 1")
    mult = tuple(tuple((a + b) % n for b in range(n)) for a in range(n))
    return FiniteGroup(mult, name=f"C{n}")


def make_product(G, H):
    """Direct product; element (g, h) has index g * |H| + h."""
    m = H.order
    mult = tuple(
        tuple(G.mult[a // m][b // m] * m + H.mult[a % m][b % m] for b in range(G.order * m))
        for a in range(G.order * m)
    )
    return FiniteGroup(mult, name=f"{G.name or 'G'}x{H.name or 'H'}")


def make_klein():
    G = make_product(make_cyclic(2), make_cyclic(2))
    return FiniteGroup(G.mult, name="V4")


def group_from_permutations(generators, name=""):
    """The permutation group generated by ``generators`` (tuples of images).

    Elements are ordered by breadth-first discovery from the identity, so the
    numbering is deterministic.  Returns ``(group, elements)`` where
    ``elements[i]`` is the permutation with index ``i``.
    """
    gens = [tuple(g) for g in generators]
    degree = len(gens[0]) if gens else 0
    ident = tuple(range(degree))
    elements = [ident]
    seen = {ident: 0}
    frontier = [ident]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = tuple(g[x[i]] for i in range(degree))
                if y not in seen:
                    seen[y] = len(elements)
                    elements.append(y)
                    nxt.append(y)
        frontier = nxt
    # composition (a*b)(i) = a(b(i)), so a*b acts by b first
    mult = tuple(
        tuple(seen[tuple(a[b[i]] for i in range(degree))] for b in elements) for a in elements
    )
    return FiniteGroup(mult, name=name), elements


def make_symmetric(n):
    if n == 1:
        return FiniteGroup(((0,),), name="S1")
    gens = [tuple([1, 0] + list(range(2, n))), tuple(list(range(1, n)) + [0])]
    return group_from_permutations(gens, name=f"S{n}")[0]


def make_dihedral(n):
    """Dihedral group of order 2n acting on an n-gon."""
    if n < 3:
        raise ValueError("dihedral group needs n >= 3")
    rot = tuple((i + 1) % n for i in range(n))
    ref = tuple((-i) % n for i in range(n))
    return group_from_permutations([rot, ref], name=f"D{n}")[0]


def make_quaternion():
    # left regular action of Q8 on {1, i, j, k, -1, -i, -j, -k}
    i = (1, 4, 3, 6, 5, 0, 7, 2)
    j = (2, 7, 4, 1, 6, 3, 0, 5)
    return group_from_permutations([i, j], name="Q8")[0]


def _closure(G, elements):
    out = set(elements) | {0}
    frontier = list(out)
    while frontier:
        nxt = []
        for a in frontier:
            for b in list(out):
                for c in (G.mult[a][b], G.mult[b][a]):
                    if c not in out:
                        out.add(c)
                        nxt.append(c)
        frontier = nxt
    return tuple(sorted(out))


def cyclic_subgroups(G):
    """All subgroups <g>, deduplicated, sorted lexicographically by elements."""
    subs = {tuple(sorted(G.powers(g))) for g in range(G.order)}
    return [Subgroup(G, s) for s in sorted(subs)]


def all_subgroups(G):
    """Every subgroup, found as joins of cyclic subgroups."""
    found = {s.elements for s in cyclic_subgroups(G)}
    cyclic = list(found)
    frontier = list(found)
    while frontier:
        nxt = []
        for s in frontier:
            for c in cyclic:
                j = _closure(G, s + c)
                if j not in found:
                    found.add(j)
                    nxt.append(j)
        frontier = nxt
    return [Subgroup(G, s) for s in sorted(found, key=lambda s: (len(s), s))]


def preset_groups(max_order=8):
    """The named small groups used by the self-tests, up to ``max_order``."""
    groups = [make_cyclic(n) for n in range(1, max_order + 1)]
    extra = [
        make_klein(),
        make_symmetric(3),
        make_product(make_cyclic(2), make_cyclic(4)),
        FiniteGroup(make_product(make_klein(), make_cyclic(2)).mult, name="C2^3"),
        make_dihedral(4),
        make_quaternion(),
    ]
    groups += [g for g in extra if g.order <= max_order]
    return groups
