"""Names for the census manifolds: torus bundles and Seifert fibred spaces.

Monodromies act on column vectors, so ``[p q; r s]`` sends the first basis
curve to ``p x + r y``.
"""
from dataclasses import dataclass, field
from functools import lru_cache
from math import gcd

from .groups import AbelianGroup
from .presentation import Presentation

DEFAULT_CAP = 10


class UnsupportedBase(ValueError):
    pass


# -- monodromies ------------------------------------------------------------

def _mul(a, b):
    p, q, r, s = a
    w, x, y, z = b
    return (p * w + q * y, p * x + q * z, r * w + s * y, r * x + s * z)


def det(a):
    return a[0] * a[3] - a[1] * a[2]


def _inv(a):
    d = det(a)
    if abs(d) != 1:
        raise ValueError(f"matrix {a} is not invertible over Z")
    p, q, r, s = a
    return (s * d, -q * d, -r * d, p * d)


def as_matrix(a):
    """Accept ``(p, q, r, s)`` or ``((p, q), (r, s))``."""
    if len(a) == 2:
        (p, q), (r, s) = a
        return (int(p), int(q), int(r), int(s))
    return tuple(int(x) for x in a)


@lru_cache(maxsize=None)
def _conjugators(cap):
    rng = range(-cap, cap + 1)
    out = []
    for p in rng:
        for q in rng:
            for r in rng:
                for s in rng:
                    if abs(p * s - q * r) == 1:
                        out.append((p, q, r, s))
    return tuple(out)


def _monodromy_key(a):
    # paper-style representatives: few negative entries, small entries,
    # then a large top-left entry
    return (sum(1 for x in a if x < 0), sum(abs(x) for x in a), tuple(-x for x in a))


@lru_cache(maxsize=4096)
def _canonical(a, cap):
    best = None
    for m in (a, _inv(a)):
        for u in _conjugators(cap):
            c = _mul(_mul(u, m), _inv(u))
            if best is None or _monodromy_key(c) < _monodromy_key(best):
                best = c
    return best


def canonical_monodromy(a, cap=DEFAULT_CAP):
    """Preferred representative of the class of ``a`` under conjugation in
    GL(2,Z) (conjugators with entries bounded by ``cap``) and inversion."""
    a = as_matrix(a)
    if abs(det(a)) != 1:
        raise ValueError(f"monodromy {a} must have determinant +-1")
    return _canonical(a, cap)


def monodromy_invariants(a):
    """Cheap class invariants: ``(det, |trace|, coker(A - I))``."""
    a = as_matrix(a)
    return det(a), abs(a[0] + a[3]), torus_bundle_homology(a)


def torus_bundle_homology(a):
    """H_1 of the mapping torus: ``Z + coker(A - I)``."""
    p, q, r, s = as_matrix(a)
    cok = AbelianGroup.from_presentation(2, [[p - 1, q], [r, s - 1]])
    return AbelianGroup(cok.rank + 1, cok.torsion)


def torus_bundle_presentation(a):
    """``<x, y, t | [x,y], t x t^-1 = A(x), t y t^-1 = A(y)>``."""
    p, q, r, s = as_matrix(a)

    def power(g, k):
        return (g,) * k if k >= 0 else (-g,) * (-k)
    x, y, t = 1, 2, 3
    rels = [(x, y, -x, -y),
            (t, x, -t) + tuple(-g for g in reversed(power(x, p) + power(y, r))),
            (t, y, -t) + tuple(-g for g in reversed(power(x, q) + power(y, s)))]
    return Presentation(3, rels)


# -- Seifert fibred spaces --------------------------------------------------

BASES = ("RP2", "Dbar")
_BASE_ALIASES = {"RP2": "RP2", "RP^2": "RP2", "Dbar": "Dbar", "D": "Dbar", "D-": "Dbar"}


@dataclass(frozen=True, order=True)
class SfsDescriptor:
    base: str
    fibres: tuple = ()

    def __post_init__(self):
        base = _BASE_ALIASES.get(self.base, self.base)
        object.__setattr__(self, "base", base)
        fibres = tuple((int(a), int(b)) for a, b in self.fibres)
        for a, b in fibres:
            if a < 1:
                raise ValueError(f"fibre ({a},{b}) needs a >= 1")
        object.__setattr__(self, "fibres", fibres)

    def __str__(self):
        body = "".join(f"({a},{b})" for a, b in self.fibres)
        return f"SFS({self.base}: {body})"


def _check_base(d):
    if d.base not in BASES:
        raise UnsupportedBase(f"base orbifold {d.base!r} is not supported")


def normalize_sfs(d):
    """Reduce each ``b`` mod ``a``, drop ``a = 1`` fibres, sort, and pick the
    smaller of the two orbits under simultaneous reflection ``b -> a - b``."""
    _check_base(d)
    fibres = [(a, b % a) for a, b in d.fibres if a > 1]
    if any(b == 0 for _, b in fibres):
        raise ValueError("exceptional fibres need gcd(a, b) = 1")
    for a, b in fibres:
        if gcd(a, b) != 1:
            raise ValueError(f"fibre ({a},{b}) is not coprime")
    plain = tuple(sorted(fibres))
    mirror = tuple(sorted((a, a - b) for a, b in fibres))
    return SfsDescriptor(d.base, min(plain, mirror))


def sfs_homology(d):
    """H_1 from the abelianised standard presentation (obstruction zero).

    RP2: generators ``v, c_i, h`` with ``a_i c_i + b_i h`` and
    ``2v + sum c_i``.  Dbar: generators ``c_i, m`` (``m`` a half fibre over
    the reflector, ``h = 2m``) with ``a_i c_i + 2 b_i m``.
    """
    _check_base(d)
    k = len(d.fibres)
    rows = []
    if d.base == "RP2":
        for i, (a, b) in enumerate(d.fibres):
            row = [0] * (k + 2)
            row[1 + i], row[k + 1] = a, b
            rows.append(row)
        rows.append([2] + [1] * k + [0])
        return AbelianGroup.from_presentation(k + 2, rows)
    for i, (a, b) in enumerate(d.fibres):
        row = [0] * (k + 1)
        row[i], row[k] = a, 2 * b
        rows.append(row)
    return AbelianGroup.from_presentation(k + 1, rows)


def sfs_presentation(d):
    """Fundamental group presentation matching :func:`sfs_homology`."""
    _check_base(d)
    k = len(d.fibres)

    def power(g, e):
        return (g,) * e if e >= 0 else (-g,) * (-e)
    cs = list(range(1, k + 1))
    rels = []
    if d.base == "RP2":
        v, h = k + 1, k + 2
        for c, (a, b) in zip(cs, d.fibres):
            rels.append((c, h, -c, -h))
            rels.append(power(c, a) + power(h, b))
        rels.append((v, h, -v, -h))
        rels.append((v, v) + tuple(cs))
        return Presentation(k + 2, rels)
    m = k + 1
    for c, (a, b) in zip(cs, d.fibres):
        rels.append((c, m, m, -c, -m, -m))
        rels.append(power(c, a) + power(m, 2 * b))
    prod = tuple(cs)
    rels.append(prod + (m,) + tuple(-c for c in reversed(prod)) + (-m,))
    return Presentation(k + 1, rels)


# -- manifold names ---------------------------------------------------------

@dataclass(frozen=True)
class TorusBundle:
    matrix: tuple

    def __post_init__(self):
        object.__setattr__(self, "matrix", canonical_monodromy(self.matrix))

    kind = "torus-bundle"

    def homology(self):
        return torus_bundle_homology(self.matrix)

    def presentation(self):
        return torus_bundle_presentation(self.matrix)

    def __str__(self):
        p, q, r, s = self.matrix
        return f"T2xI/[{p} {q};{r} {s}]"


@dataclass(frozen=True)
class Sfs:
    descriptor: SfsDescriptor

    def __post_init__(self):
        object.__setattr__(self, "descriptor", normalize_sfs(self.descriptor))

    kind = "sfs"

    def homology(self):
        return sfs_homology(self.descriptor)

    def presentation(self):
        return sfs_presentation(self.descriptor)

    def __str__(self):
        return str(self.descriptor)


@dataclass(frozen=True)
class Unknown:
    reason: str = field(default="", compare=False)

    kind = "unknown"

    def homology(self):
        return None

    def __str__(self):
        return "Unknown"


def sfs(base, *fibres):
    return Sfs(SfsDescriptor(base, tuple(fibres)))


def parse_name(text):
    """Inverse of ``str`` for :class:`TorusBundle` and :class:`Sfs`."""
    text = text.strip()
    if text.startswith("T2xI/[") and text.endswith("]"):
        body = text[len("T2xI/["):-1]
        rows = [r.split() for r in body.split(";")]
        if len(rows) != 2 or any(len(r) != 2 for r in rows):
            raise ValueError(f"cannot parse monodromy in {text!r}")
        return TorusBundle(tuple(int(x) for r in rows for x in r))
    if text.startswith("SFS(") and text.endswith(")"):
        base, _, body = text[4:-1].partition(":")
        fibres = []
        for part in body.replace(" ", "").split(")"):
            if part:
                a, b = part.lstrip("(").split(",")
                fibres.append((int(a), int(b)))
        return sfs(base.strip(), *fibres)
    if text == "Unknown":
        return Unknown()
    raise ValueError(f"cannot parse manifold name {text!r}")
