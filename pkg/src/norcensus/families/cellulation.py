"""Cellulations of the central surface and the thin I-bundles they determine.

A cellulation lists one cell per tetrahedron: a disc code (see
:mod:`norcensus.surfaces`) and a label for each side of the disc, in the
cyclic corner order of that code.  Each label occurs on exactly two sides;
a leading ``-`` reverses the side's direction.  The side running from
corner ``(i, s)`` to corner ``(i, e)`` lies in face ``{i, s, e}`` of the
tetrahedron and points from ``s`` to ``e``; ``i`` is the vertex its arc
cuts off.
"""
from dataclasses import dataclass

from ..isosig import canonical_signature
from ..perm import S4
from ..surfaces import CORNERS, NONE
from ..triangulation import EDGE_VERTICES, TriangulationBuilder, TriangulationError
from .ibundles import classify_bundle


class NonThickenable(ValueError):
    pass


def disc_sides(code):
    """``[(face, cut_vertex, start, end)]`` around the disc of ``code``."""
    cs = CORNERS[code]
    out = []
    for k in range(len(cs)):
        e1, e2 = set(EDGE_VERTICES[cs[k]]), set(EDGE_VERTICES[cs[(k + 1) % len(cs)]])
        (i,) = e1 & e2
        (s,) = e1 - {i}
        (e,) = e2 - {i}
        out.append((6 - i - s - e, i, s, e))
    return out


@dataclass(frozen=True)
class Cellulation:
    cells: tuple     # ((code, (label, ...)), ...)

    def __post_init__(self):
        cells = tuple((int(c), tuple(str(x) for x in sides)) for c, sides in self.cells)
        object.__setattr__(self, "cells", cells)
        count = {}
        for code, sides in cells:
            if code == NONE or len(sides) != len(CORNERS[code]):
                raise NonThickenable(f"cell {code} needs {len(CORNERS[code])} sides")
            for x in sides:
                count[x.lstrip("-")] = count.get(x.lstrip("-"), 0) + 1
        if any(v != 2 for v in count.values()):
            raise NonThickenable("every side label must occur exactly twice")

    @property
    def euler(self):
        # vertices are not stored; count them as corner classes
        return _corner_classes(self) - sum(len(s) for _, s in self.cells) // 2 + len(self.cells)


def _endpoints(cell, k):
    code, sides = cell
    f, i, s, e = disc_sides(code)[k]
    if sides[k].startswith("-"):
        s, e = e, s
    return f, i, s, e


def _corner_classes(c):
    parent = {}

    def find(x):
        while parent.setdefault(x, x) != x:
            x = parent[x]
        return x
    occ = {}
    for t, cell in enumerate(c.cells):
        for k, x in enumerate(cell[1]):
            occ.setdefault(x.lstrip("-"), []).append((t, k))
    for (t1, k1), (t2, k2) in occ.values():
        _, i1, s1, e1 = _endpoints(c.cells[t1], k1)
        _, i2, s2, e2 = _endpoints(c.cells[t2], k2)
        for a, b in (((t1, i1, s1), (t2, i2, s2)), ((t1, i1, e1), (t2, i2, e2))):
            parent[find(a)] = find(b)
    for t, (code, _) in enumerate(c.cells):
        for e in CORNERS[code]:
            u, v = EDGE_VERTICES[e]
            parent[find((t, u, v))] = find((t, v, u))
    return len({find(x) for x in list(parent)})


def bundle_from_cellulation(c):
    """Build the thin I-bundle whose central surface is ``c``."""
    if not isinstance(c, Cellulation):
        c = Cellulation(tuple(c))
    occ = {}
    for t, cell in enumerate(c.cells):
        for k, x in enumerate(cell[1]):
            occ.setdefault(x.lstrip("-"), []).append((t, k))
    bld = TriangulationBuilder()
    for _ in c.cells:
        bld.new_tet()
    try:
        for (t1, k1), (t2, k2) in occ.values():
            f1, i1, s1, e1 = _endpoints(c.cells[t1], k1)
            f2, i2, s2, e2 = _endpoints(c.cells[t2], k2)
            perm = [0] * 4
            perm[f1], perm[i1], perm[s1], perm[e1] = f2, i2, s2, e2
            bld.join(t1, f1, t2, tuple(perm))
        tri = bld.freeze()
    except TriangulationError as exc:
        raise NonThickenable(str(exc)) from None
    choices = [code for code, _ in c.cells]
    b = classify_bundle(tri, choices)
    if b is None:
        raise NonThickenable("cellulation does not thicken to an I-bundle")
    return b


def cellulation_of(tri, choices):
    """Read the central cellulation off a thin I-bundle triangulation."""
    labels = {}
    cells = []
    for t, code in enumerate(choices):
        sides = []
        for f, i, s, e in disc_sides(code):
            g = tri.raw(t, f)
            if g is None:
                raise NonThickenable(f"face {f} of tetrahedron {t} is crossed but unglued")
            t2, p = g
            key = min((t, f), (t2, S4[p][f]))
            if key not in labels:
                labels[key] = (f"x{len(labels)}", (t, f, s))
            name, (tf, ff, sf) = labels[key]
            if (t, f) == (tf, ff):
                sides.append(name)
            else:
                # the other side: same direction iff s maps onto the stored start
                back = S4[tri.raw(tf, ff)[1]]
                sides.append(name if back[sf] == s else "-" + name)
        cells.append((code, tuple(sides)))
    return Cellulation(tuple(cells))


def signature_of_cellulation(c):
    return canonical_signature(bundle_from_cellulation(c).tri)
