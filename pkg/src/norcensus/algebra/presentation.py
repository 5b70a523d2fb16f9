"""Fundamental group presentations and Tietze simplification.

Words are tuples of nonzero integers: ``g`` for generator ``g - 1`` and
``-g`` for its inverse.
"""
from ..triangulation import EDGE_NUMBER, EDGE_VERTICES
from .groups import AbelianGroup
from .homology import spanning_tree_edges


def free_reduce(word):
    out = []
    for x in word:
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


def cyclic_reduce(word):
    w = list(free_reduce(word))
    while len(w) >= 2 and w[0] == -w[-1]:
        w = w[1:-1]
    return tuple(w)


def inverse(word):
    return tuple(-x for x in reversed(word))


def _canonical_relator(word):
    """Least cyclic rotation of the word or its inverse."""
    w = cyclic_reduce(word)
    if not w:
        return w
    cands = []
    for v in (w, inverse(w)):
        for i in range(len(v)):
            cands.append(v[i:] + v[:i])
    return min(cands, key=lambda v: (len(v), tuple(abs(x) * 2 + (x < 0) for x in v)))


class Presentation:
    """A finite group presentation with Tietze moves."""

    def __init__(self, ngens, relators):
        self.ngens = ngens
        self.relators = [cyclic_reduce(r) for r in relators]
        self._tidy()

    def _tidy(self):
        seen = set()
        out = []
        for r in self.relators:
            c = _canonical_relator(r)
            if c and c not in seen:
                seen.add(c)
                out.append(c)
        self.relators = sorted(out, key=len)

    def abelianization(self):
        rows = []
        for r in self.relators:
            row = [0] * self.ngens
            for x in r:
                row[abs(x) - 1] += 1 if x > 0 else -1
            rows.append(row)
        return AbelianGroup.from_presentation(self.ngens, rows)

    def _substitute(self, g, word):
        """Replace generator g (1-based) by ``word`` and renumber."""
        inv = inverse(word)
        new = []
        for r in self.relators:
            w = []
            for x in r:
                if x == g:
                    w.extend(word)
                elif x == -g:
                    w.extend(inv)
                else:
                    w.append(x)
            new.append(w)

        def renum(x):
            a = abs(x)
            a = a - 1 if a > g else a
            return a if x > 0 else -a
        self.relators = [cyclic_reduce(tuple(renum(x) for x in w)) for w in new]
        self.ngens -= 1
        self._tidy()

    def simplify(self):
        """Eliminate generators that occur exactly once in some relator."""
        changed = True
        while changed:
            changed = False
            for r in self.relators:
                counts = {}
                for x in r:
                    counts[abs(x)] = counts.get(abs(x), 0) + 1
                single = [g for g, k in counts.items() if k == 1]
                if not single:
                    continue
                g = min(single)
                i = next(i for i, x in enumerate(r) if abs(x) == g)
                rest = r[i + 1:] + r[:i]
                # r = g^{+-1} rest  =>  g = rest^{-1} (or rest)
                word = inverse(rest) if r[i] > 0 else rest
                self.relators = [s for s in self.relators if s is not r]
                self._substitute(g, word)
                changed = True
                break
        return self

    def total_length(self):
        return sum(len(r) for r in self.relators)

    def _apply_nielsen(self, i, j, sign, side):
        """Relators after replacing generator i by ``i j^sign`` (side 0) or
        ``j^sign i`` (side 1); generators are 1-based."""
        rep = (i, sign * j) if side == 0 else (sign * j, i)
        inv = inverse(rep)
        out = []
        for r in self.relators:
            w = []
            for x in r:
                if x == i:
                    w.extend(rep)
                elif x == -i:
                    w.extend(inv)
                else:
                    w.append(x)
            out.append(tuple(w))
        return out

    def shorten(self, max_rounds=200):
        """Greedy Nielsen moves while the total relator length drops."""
        for _ in range(max_rounds):
            self.simplify()
            best = self.total_length()
            best_rel = None
            for i in range(1, self.ngens + 1):
                for j in range(1, self.ngens + 1):
                    if i == j:
                        continue
                    for sign in (1, -1):
                        for side in (0, 1):
                            rel = self._apply_nielsen(i, j, sign, side)
                            cand = Presentation(self.ngens, rel)
                            if cand.total_length() < best:
                                best = cand.total_length()
                                best_rel = cand.relators
            if best_rel is None:
                break
            self.relators = best_rel
            self._tidy()
        return self

    def is_abelian_by_relators(self):
        """True if the relators include a commutator for every generator pair."""
        have = set()
        for r in self.relators:
            if len(r) == 4 and r[0] == -r[2] and r[1] == -r[3] and abs(r[0]) != abs(r[1]):
                have.add(frozenset((abs(r[0]), abs(r[1]))))
        return all(frozenset((i, j)) in have
                   for i in range(1, self.ngens + 1) for j in range(i + 1, self.ngens + 1))

    def __str__(self):
        def w(r):
            return ".".join(("" if x > 0 else "-") + str(abs(x) - 1) for x in r)
        return f"<{self.ngens} | " + ", ".join(w(r) for r in self.relators) + ">"


def fundamental_group(tri):
    """Presentation of pi_1 from the 2-skeleton (edges modulo a vertex tree)."""
    sk = tri.skeleton
    tree = set(spanning_tree_edges(sk))
    gens = [c for c in range(sk.num_edges) if c not in tree]
    gid = {c: i + 1 for i, c in enumerate(gens)}
    relators = []
    for fc in sk.face_classes:
        t, f = fc[0]
        a, b, c = [v for v in range(4) if v != f]
        word = []
        for x, y in ((a, b), (b, c), (c, a)):
            e = EDGE_NUMBER[min(x, y), max(x, y)]
            cls = sk.edge_of[t][e]
            if cls in tree:
                continue
            s = 1 if x < y else -1
            if sk.edge_parity[t][e]:
                s = -s
            word.append(gid[cls] * s)
        relators.append(tuple(word))
    return Presentation(len(gens), relators)


def reducibility_certificate(tri):
    """A reason the manifold is not P^2-irreducible, or ``None``.

    Closed P^2-irreducible non-orientable manifolds are aspherical, so their
    fundamental group is torsion-free and not infinite cyclic.  The checks
    look for an infinite cyclic group or a generator ``g`` with ``g^k = 1``
    whose image in H_1 is nonzero.
    """
    pres = fundamental_group(tri).shorten()
    if pres.ngens <= 1 or pres.is_abelian_by_relators():
        h = pres.abelianization()
        if not (h.rank == 3 and not h.torsion):
            return f"fundamental group is abelian ({h}) but not Z^3"
    ab_rows = []
    for r in pres.relators:
        row = [0] * pres.ngens
        for x in r:
            row[abs(x) - 1] += 1 if x > 0 else -1
        ab_rows.append(row)
    for r in pres.relators:
        if len(set(r)) == 1 and len(r) >= 2:
            g = abs(r[0])
            # g is nontrivial iff adding g as a relation changes H_1
            base = AbelianGroup.from_presentation(pres.ngens, ab_rows)
            row = [0] * pres.ngens
            row[g - 1] = 1
            killed = AbelianGroup.from_presentation(pres.ngens, ab_rows + [row])
            if killed != base:
                return f"generator of order dividing {len(r)} in the fundamental group"
    return None
