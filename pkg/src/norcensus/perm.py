"""Permutations of {0, 1, 2, 3}.

Gluing maps between tetrahedron faces are stored as permutations of the four
vertex labels.  Hot loops (census enumeration, signatures) work with the
integer index of a permutation into :data:`S4` and the precomputed tables
below; :class:`Perm4` is the user-facing value type.
"""
from itertools import permutations

S4 = tuple(permutations(range(4)))
INDEX = {p: i for i, p in enumerate(S4)}

IDENTITY = INDEX[(0, 1, 2, 3)]


def _sign(p):
    s = 1
    for i in range(4):
        for j in range(i + 1, 4):
            if p[i] > p[j]:
                s = -s
    return s


SIGN = tuple(_sign(p) for p in S4)
# COMPOSE[a][b] is the index of (a o b), i.e. apply b first.
COMPOSE = tuple(tuple(INDEX[tuple(S4[a][S4[b][i]] for i in range(4))]
                      for b in range(24)) for a in range(24))
INVERSE = tuple(INDEX[tuple(S4[a].index(i) for i in range(4))] for a in range(24))

# Permutations sending face f to face g: FACE_MAPS[f][g] lists 6 indices.
FACE_MAPS = tuple(tuple(tuple(i for i, p in enumerate(S4) if p[f] == g)
                        for g in range(4)) for f in range(4))


class Perm4(tuple):
    """An immutable permutation of ``(0, 1, 2, 3)`` given by its images."""

    __slots__ = ()

    def __new__(cls, images=(0, 1, 2, 3)):
        images = tuple(int(x) for x in images)
        if images not in INDEX:
            raise ValueError(f"not a permutation of 0..3: {images!r}")
        return super().__new__(cls, images)

    @classmethod
    def from_index(cls, idx):
        return tuple.__new__(cls, S4[idx])

    @classmethod
    def from_string(cls, text):
        return cls(int(c) for c in text)

    @property
    def index(self):
        return INDEX[tuple(self)]

    def __call__(self, i):
        return self[i]

    def __mul__(self, other):
        """Composition ``self * other`` applies ``other`` first."""
        return Perm4.from_index(COMPOSE[self.index][Perm4(other).index])

    def inverse(self):
        return Perm4.from_index(INVERSE[self.index])

    def sign(self):
        return SIGN[self.index]

    def __str__(self):
        return "".join(str(x) for x in self)

    def __repr__(self):
        return f"Perm4({str(self)!r})"
