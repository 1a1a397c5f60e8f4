"""Root systems and Dynkin diagrams of the simple Lie algebras.

Conventions used throughout the package:

* Cartan matrix entries are ``a[i][j] = 2 (a_i, a_j) / (a_i, a_i)``, so the
  ``a_i``-string through a simple root ``a_j`` has length ``-a[i][j]``.
* Squared lengths are 2 for simply-laced types, 4/2 (long/short) for B, C, F
  and 6/2 for G2. The invariant form on simple roots is then
  ``(a_i, a_j) = L_i * a[i][j] / 2``.
* Node numbering follows Bourbaki, except that G2 lists the long root first so
  that its positive roots read ``a, b, a+b, a+2b, a+3b, 2a+3b`` with ``b``
  short. B2 already has ``a`` long and ``b`` short in Bourbaki's numbering.
* Roots are integer coefficient vectors over the simple roots.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Sequence


class RootSystemError(ValueError):
    """Illegal (type, rank) pair or a Cartan matrix matching no diagram."""


LEGAL_MIN_RANK = {"A": 1, "B": 2, "C": 2, "D": 4}
EXCEPTIONAL = {"E": (6, 7, 8), "F": (4,), "G": (2,)}


def check_type(typ: str, rank: int) -> tuple[str, int]:
    """Validate and normalise a simple type; ``C2`` is returned as ``B2``."""
    typ = typ.upper()
    rank = int(rank)
    if typ in LEGAL_MIN_RANK:
        if rank < LEGAL_MIN_RANK[typ]:
            raise RootSystemError(f"{typ}{rank} is not a simple type")
    elif typ in EXCEPTIONAL:
        if rank not in EXCEPTIONAL[typ]:
            raise RootSystemError(f"{typ}{rank} is not a simple type")
    else:
        raise RootSystemError(f"unknown Cartan type {typ!r}")
    if typ == "C" and rank == 2:
        return "B", 2
    return typ, rank


def parse_label(label: str) -> tuple[str, int]:
    m = re.fullmatch(r"\s*([A-Ga-g])\s*_?\s*(\d+)\s*", label)
    if not m:
        raise RootSystemError(f"cannot read simple type label {label!r}")
    return check_type(m.group(1), int(m.group(2)))


def label(typ: str, rank: int) -> str:
    return f"{typ}{rank}"


def label_sort_key(lab: str):
    typ, rank = parse_label(lab)
    return typ, -rank


def sort_labels(labels: Sequence[str]) -> list[str]:
    return sorted(labels, key=label_sort_key)


# -- diagrams ---------------------------------------------------------------------


def _diagram(typ: str, rank: int) -> tuple[list[int], list[tuple[int, int]]]:
    """Squared root lengths and the (0-based) edge list."""
    if typ == "E":
        # row 1-3-4-5-6-7-8, node 2 hangs off node 4 (Bourbaki)
        row = [0] + list(range(2, rank))
        edges = list(zip(row, row[1:])) + [(1, 3)]
        return [2] * rank, edges
    if typ == "D":
        edges = [(i, i + 1) for i in range(rank - 2)] + [(rank - 3, rank - 1)]
        return [2] * rank, edges
    edges = [(i, i + 1) for i in range(rank - 1)]
    if typ == "A":
        lengths = [2] * rank
    elif typ == "B":
        lengths = [4] * (rank - 1) + [2]
    elif typ == "C":
        lengths = [2] * (rank - 1) + [4]
    elif typ == "F":
        lengths = [4, 4, 2, 2]
    elif typ == "G":
        lengths = [6, 2]
    else:
        raise RootSystemError(f"unknown Cartan type {typ!r}")
    return lengths, edges


def cartan_matrix(typ: str, rank: int) -> list[list[int]]:
    typ, rank = check_type(typ, rank)
    lengths, edges = _diagram(typ, rank)
    A = [[2 if i == j else 0 for j in range(rank)] for i in range(rank)]
    for i, j in edges:
        ip = -Fraction(max(lengths[i], lengths[j]), 2)
        A[i][j] = int(2 * ip / lengths[i])
        A[j][i] = int(2 * ip / lengths[j])
    return A


def lengths_from_cartan(A: Sequence[Sequence[int]]) -> list[Fraction]:
    """Squared lengths, shortest root of each component normalised to 2."""
    n = len(A)
    L: list[Fraction | None] = [None] * n
    for start in range(n):
        if L[start] is not None:
            continue
        comp = {start: Fraction(1)}
        stack = [start]
        while stack:
            i = stack.pop()
            for j in range(n):
                if j != i and A[i][j] and j not in comp:
                    # a_ij / a_ji = L_j / L_i
                    comp[j] = comp[i] * Fraction(A[i][j], A[j][i])
                    stack.append(j)
        scale = 2 / min(comp.values())
        for i, v in comp.items():
            L[i] = v * scale
    return L


def bilinear_from_cartan(A: Sequence[Sequence[int]]) -> list[list[Fraction]]:
    L = lengths_from_cartan(A)
    return [[L[i] * A[i][j] / 2 for j in range(len(A))] for i in range(len(A))]


@dataclass(frozen=True)
class DynkinDiagram:
    type_label: str
    nodes: tuple[int, ...]
    edges: tuple[tuple[int, int, int], ...]  # (i, j, multiplicity), 1-based
    arrows: tuple[tuple[int, int], ...]  # (long, short) for multiple bonds

    @classmethod
    def from_type(cls, typ: str, rank: int) -> "DynkinDiagram":
        typ, rank = check_type(typ, rank)
        return cls.from_cartan(cartan_matrix(typ, rank), label(typ, rank))

    @classmethod
    def from_cartan(cls, A, type_label: str = "") -> "DynkinDiagram":
        n = len(A)
        edges, arrows = [], []
        for i in range(n):
            for j in range(i + 1, n):
                m = A[i][j] * A[j][i]
                if m:
                    edges.append((i + 1, j + 1, m))
                    if m > 1:
                        # the node with a = -m toward its neighbour is the short one
                        short, long_ = (i, j) if A[i][j] < A[j][i] else (j, i)
                        arrows.append((long_ + 1, short + 1))
        return cls(type_label, tuple(range(1, n + 1)), tuple(edges), tuple(arrows))

    def to_json(self) -> dict:
        return {
            "type": self.type_label,
            "nodes": list(self.nodes),
            "edges": [{"nodes": [i, j], "multiplicity": m} for i, j, m in self.edges],
            "arrows": [{"from_long": a, "to_short": b} for a, b in self.arrows],
        }

    def ascii(self) -> str:
        """Main chain on one line, any branch node hanging below it.

        Bonds: ``---`` single, ``=>=`` double and ``>>>`` triple, arrow
        pointing at the short root.
        """
        n = len(self.nodes)
        adj: dict[int, dict[int, int]] = {v: {} for v in self.nodes}
        for i, j, m in self.edges:
            adj[i][j] = m
            adj[j][i] = m
        arrow = {(a, b) for a, b in self.arrows}
        row = _longest_path(adj)
        on_row = set(row)
        line, labels = "", ""
        pos = {}
        for k, v in enumerate(row):
            pos[v] = len(line)
            tag = str(v)
            labels += tag.ljust(4)
            line += "o"
            if k + 1 < len(row):
                w = row[k + 1]
                m = adj[v][w]
                if m == 1:
                    line += "---"
                else:
                    mark = ">" if (v, w) in arrow else "<"
                    line += f"={mark}=" if m == 2 else mark * 3
        out = [labels.rstrip(), line]
        for v in self.nodes:
            if v in on_row:
                continue
            (anchor,) = [w for w in adj[v] if w in on_row] or [row[0]]
            pad = " " * pos[anchor]
            out.append(pad + "|")
            out.append(pad + f"o {v}")
        if n == 0:
            return ""
        return "\n".join(out)


def _longest_path(adj: dict[int, dict[int, int]]) -> list[int]:
    best: list[int] = []
    nodes = sorted(adj)

    def walk(path):
        nonlocal best
        if len(path) > len(best) or (len(path) == len(best) and path < best):
            best = list(path)
        for w in sorted(adj[path[-1]]):
            if w not in path:
                walk(path + [w])

    for v in nodes:
        walk([v])
    return best


# -- classification of Cartan matrices -------------------------------------------


def _components(A) -> list[list[int]]:
    n = len(A)
    seen, comps = set(), []
    for s in range(n):
        if s in seen:
            continue
        comp, stack = [], [s]
        seen.add(s)
        while stack:
            i = stack.pop()
            comp.append(i)
            for j in range(n):
                if j != i and A[i][j] and j not in seen:
                    seen.add(j)
                    stack.append(j)
        comps.append(sorted(comp))
    return comps


def _order_connected(A, comp: list[int]) -> tuple[str, int, list[int]]:
    """Identify one connected component; return type, rank and nodes in canonical order."""
    n = len(comp)
    sub = [[A[i][j] for j in comp] for i in comp]
    for i in range(n):
        if sub[i][i] != 2:
            raise RootSystemError("Cartan matrix diagonal must be 2")
        for j in range(n):
            if i != j and (sub[i][j] > 0 or (sub[i][j] == 0) != (sub[j][i] == 0)):
                raise RootSystemError("off-diagonal Cartan entries must be <= 0 and zero-symmetric")
            if i != j and sub[i][j] * sub[j][i] > 3:
                raise RootSystemError("bond multiplicity above 3")
    if n == 1:
        return "A", 1, comp
    adj = {i: [j for j in range(n) if j != i and sub[i][j]] for i in range(n)}
    nedges = sum(len(v) for v in adj.values()) // 2
    if nedges != n - 1:
        raise RootSystemError("Dynkin graph has a cycle; no classical diagram matches")
    mult = {(i, j): sub[i][j] * sub[j][i] for i in range(n) for j in adj[i]}
    degrees = {i: len(adj[i]) for i in range(n)}
    branch = [i for i in range(n) if degrees[i] >= 3]

    def arm(start, prev):
        out = [start]
        while True:
            nxt = [j for j in adj[out[-1]] if j != prev]
            if not nxt:
                return out
            prev = out[-1]
            out.append(nxt[0])

    if branch:
        if len(branch) > 1 or degrees[branch[0]] > 3 or any(m > 1 for m in mult.values()):
            raise RootSystemError("branched diagram matches no classical type")
        b = branch[0]
        arms = sorted((arm(j, b) for j in adj[b]), key=lambda a: (len(a), a))
        la = tuple(len(a) for a in arms)
        if la[0] == 1 and la[1] == 1:
            # D_n: chain from the far end of the long arm to b, then the two leaves
            long_arm = arms[2]
            order = long_arm[::-1] + [b, arms[0][0], arms[1][0]]
            return "D", n, [comp[i] for i in order]
        if la[0] == 1 and la[1] == 2 and la[2] in (2, 3, 4):
            # E_n (Bourbaki): 1 = end of the length-2 arm, 2 = leaf, 3, 4 = b, 5.. long arm
            short_arm, leaf, long_arm = arms[1], arms[0], arms[2]
            order = [short_arm[1], leaf[0], short_arm[0], b] + long_arm
            return "E", n, [comp[i] for i in order]
        raise RootSystemError("branched diagram matches no classical type")
    ends = [i for i in range(n) if degrees[i] == 1]
    path = arm(ends[0], None)
    multiples = [k for k in range(n - 1) if mult[(path[k], path[k + 1])] > 1]
    if not multiples:
        return "A", n, [comp[i] for i in path]
    if len(multiples) > 1:
        raise RootSystemError("more than one multiple bond; no classical diagram matches")
    k = multiples[0]
    m = mult[(path[k], path[k + 1])]
    if m == 3:
        if n != 2:
            raise RootSystemError("triple bond outside G2")
        long_first = path if sub[path[1]][path[0]] == -3 else path[::-1]
        return "G", 2, [comp[i] for i in long_first]
    if n == 2:
        # B2: long node first
        long_first = path if sub[path[1]][path[0]] == -2 else path[::-1]
        return "B", 2, [comp[i] for i in long_first]
    if k == 0:
        path = path[::-1]
        k = n - 2
    if k == n - 2:
        last, prev = path[-1], path[-2]
        short_last = sub[last][prev] == -2
        return ("B" if short_last else "C"), n, [comp[i] for i in path]
    if n == 4 and k == 1:
        # F4: long nodes first
        if sub[path[2]][path[1]] != -2:
            path = path[::-1]
        return "F", 4, [comp[i] for i in path]
    raise RootSystemError("multiple bond in an unsupported position")


def classify_cartan_matrix(A: Sequence[Sequence[int]]) -> list[tuple[str, list[int]]]:
    """Split a Cartan matrix into simple components and name each.

    Returns ``(label, nodes)`` pairs with ``nodes`` listed in the canonical
    numbering of the label, so that the restricted matrix equals
    :func:`cartan_matrix` entry for entry (checked here).
    """
    out = []
    for comp in _components(A):
        typ, rank, order = _order_connected(A, comp)
        ref = cartan_matrix(typ, rank)
        got = [[A[i][j] for j in order] for i in order]
        if got != ref:
            raise RootSystemError(f"component {comp} does not match the {typ}{rank} table")
        out.append((label(typ, rank), order))
    out.sort(key=lambda t: (label_sort_key(t[0]), t[1]))
    return out


def identify_cartan_matrix(A) -> list[str]:
    return [lab for lab, _ in classify_cartan_matrix(A)]


# -- root systems ------------------------------------------------------------------


def _height_key(root: tuple[int, ...]):
    return sum(root), tuple(-c for c in root)


def generate_positive_roots(A: Sequence[Sequence[int]]) -> list[tuple[int, ...]]:
    """Positive roots from a Cartan matrix via root strings, ordered by height."""
    n = len(A)
    simple = [tuple(int(i == j) for j in range(n)) for i in range(n)]
    roots = set(simple)
    layer = list(simple)
    while layer:
        nxt = []
        for beta in layer:
            for i in range(n):
                p = 0
                lower = list(beta)
                while True:
                    lower[i] -= 1
                    if tuple(lower) in roots:
                        p += 1
                    else:
                        break
                pairing = sum(beta[j] * A[i][j] for j in range(n))
                if p - pairing > 0:
                    up = list(beta)
                    up[i] += 1
                    up = tuple(up)
                    if up not in roots:
                        roots.add(up)
                        nxt.append(up)
        layer = nxt
    return sorted(roots, key=_height_key)


@dataclass(frozen=True)
class RootSystem:
    type: str
    rank: int
    cartan_matrix: tuple[tuple[int, ...], ...]
    bilinear: tuple[tuple[Fraction, ...], ...]
    positive_roots: tuple[tuple[int, ...], ...]
    simple_roots: tuple[tuple[int, ...], ...] = field(repr=False, default=())

    @property
    def label(self) -> str:
        return label(self.type, self.rank)

    def inner(self, a: Sequence[int], b: Sequence[int]) -> Fraction:
        B = self.bilinear
        return sum((a[i] * B[i][j] * b[j] for i in range(self.rank) for j in range(self.rank)
                    if a[i] and b[j]), Fraction(0))

    def coroot_pairing(self, a: Sequence[int], b: Sequence[int]) -> Fraction:
        """``<a, b^vee> = 2 (a, b) / (b, b)``."""
        return 2 * self.inner(a, b) / self.inner(b, b)

    def is_root(self, v: Sequence[int]) -> bool:
        v = tuple(v)
        return v in self._root_set()

    @lru_cache(maxsize=None)
    def _root_set(self) -> frozenset:
        neg = [tuple(-c for c in r) for r in self.positive_roots]
        return frozenset(self.positive_roots) | frozenset(neg)

    def all_roots(self) -> list[tuple[int, ...]]:
        return list(self.positive_roots) + [tuple(-c for c in r) for r in self.positive_roots]

    def diagram(self) -> DynkinDiagram:
        return DynkinDiagram.from_cartan(self.cartan_matrix, self.label)

    def to_json(self) -> dict:
        return {
            "type": self.label,
            "cartan_matrix": [list(r) for r in self.cartan_matrix],
            "bilinear": [[str(x) for x in r] for r in self.bilinear],
            "positive_roots": [list(r) for r in self.positive_roots],
            "highest_root": list(highest_root(self)),
        }


def build(typ: str, rank: int | None = None) -> RootSystem:
    """Root system of a simple type, e.g. ``build("D", 4)`` or ``build("G2")``."""
    if rank is None:
        typ, rank = parse_label(typ)
    typ, rank = check_type(typ, rank)
    A = cartan_matrix(typ, rank)
    B = bilinear_from_cartan(A)
    pos = generate_positive_roots(A)
    simple = tuple(tuple(int(i == j) for j in range(rank)) for i in range(rank))
    return RootSystem(typ, rank, tuple(map(tuple, A)), tuple(map(tuple, B)), tuple(pos), simple)


def highest_root(rs: RootSystem) -> tuple[int, ...]:
    """The positive root dominating every other positive root coefficient-wise."""
    top = max(rs.positive_roots, key=_height_key)
    for r in rs.positive_roots:
        if any(t < c for t, c in zip(top, r)):
            raise RootSystemError("no unique highest root")
    return top


def orthogonal_a1_subset(rs: RootSystem, size: int) -> list[tuple[int, ...]] | None:
    """First ``size`` pairwise-orthogonal positive roots in height order, or None."""
    if size < 1:
        raise ValueError("size must be at least 1")
    roots = rs.positive_roots
    gram = {(a, b): rs.inner(a, b) for a in roots for b in roots}
    for combo in itertools.combinations(roots, size):
        if all(gram[(a, b)] == 0 for a, b in itertools.combinations(combo, 2)):
            return list(combo)
    return None


def format_root(root: Sequence[int], names: Sequence[str] | None = None) -> str:
    """``(1, 2, 1, 1)`` -> ``a1 + 2*a2 + a3 + a4`` (or with the given names)."""
    names = names or [f"a{i + 1}" for i in range(len(root))]
    parts = []
    for c, nm in zip(root, names):
        if not c:
            continue
        body = nm if abs(c) == 1 else f"{abs(c)}*{nm}"
        if not parts:
            parts.append(("-" if c < 0 else "") + body)
        else:
            parts.append((" - " if c < 0 else " + ") + body)
    return "".join(parts) or "0"


# -- obstruction witnesses -------------------------------------------------------


@dataclass(frozen=True)
class Witness:
    """Why a simple type is (or is not) of type A.

    ``kind`` is ``"A"`` for A-types and otherwise the label of the forbidden
    sub-diagram (``B2``, ``G2`` or ``D4``); ``nodes`` are its 0-based simple
    root indices inside the parent diagram, in the sub-type's own numbering.
    For E-types ``e6_nodes``/``e6_row``/``removed`` record how the D4 was cut
    out of an E6.
    """

    parent: str
    kind: str
    nodes: tuple[int, ...] = ()
    reason: str = ""
    e6_nodes: tuple[int, ...] = ()
    e6_row: tuple[int, ...] = ()
    removed: tuple[int, ...] = ()

    @property
    def is_obstruction(self) -> bool:
        return self.kind != "A"

    def sub_cartan(self) -> list[list[int]]:
        A = cartan_matrix(*parse_label(self.parent))
        return [[A[i][j] for j in self.nodes] for i in self.nodes]

    def rebuilt_label(self) -> str:
        """Identify the sub-root-system spanned by the witness nodes from scratch."""
        labels = identify_cartan_matrix(self.sub_cartan())
        if len(labels) != 1:
            raise RootSystemError(f"witness nodes span {labels}, not a simple type")
        return labels[0]

    def verify(self) -> bool:
        if not self.is_obstruction:
            return parse_label(self.parent)[0] == "A"
        if self.rebuilt_label() != self.kind:
            return False
        if self.sub_cartan() != cartan_matrix(*parse_label(self.kind)):
            return False
        if self.e6_nodes:
            A = cartan_matrix(*parse_label(self.parent))
            e6 = [[A[i][j] for j in self.e6_nodes] for i in self.e6_nodes]
            if identify_cartan_matrix(e6) != ["E6"]:
                return False
            kept = [v for v in self.e6_row if v not in self.removed] + [
                v for v in self.e6_nodes if v not in self.e6_row]
            if set(kept) != set(self.nodes) or set(self.removed) != {self.e6_row[0], self.e6_row[-1]}:
                return False
        return True

    def to_json(self) -> dict:
        out = {"parent": self.parent, "kind": self.kind, "nodes": [v + 1 for v in self.nodes],
               "reason": self.reason}
        if self.e6_nodes:
            out["e6_nodes"] = [v + 1 for v in self.e6_nodes]
            out["e6_row"] = [v + 1 for v in self.e6_row]
            out["removed"] = [v + 1 for v in self.removed]
        return out


def obstruction_witness(typ: str, rank: int | None = None) -> Witness:
    if rank is None:
        typ, rank = parse_label(typ)
    typ, rank = check_type(typ, rank)
    parent = label(typ, rank)
    if typ == "A":
        return Witness(parent, "A", reason="type A: no obstruction")
    if typ in ("B", "C"):
        nodes = (rank - 2, rank - 1)
        if typ == "C":
            nodes = (rank - 1, rank - 2)  # long node first, as in B2's numbering
        return Witness(parent, "B2", nodes, reason="multiple (double) bond generates B2")
    if typ == "F":
        return Witness(parent, "B2", (1, 2), reason="multiple (double) bond generates B2")
    if typ == "G":
        return Witness(parent, "G2", (0, 1), reason="triple bond: the algebra is G2 itself")
    if typ == "D":
        nodes = (rank - 4, rank - 3, rank - 2, rank - 1)
        return Witness(parent, "D4", nodes, reason="D_n contains the D4 at its fork")
    # E6 inside E_n: Bourbaki nodes 1..6; its row is 1-3-4-5-6
    e6 = (0, 1, 2, 3, 4, 5)
    row = (0, 2, 3, 4, 5)
    removed = (row[0], row[-1])
    nodes = (2, 3, 4, 1)  # D4 numbering: chain 3-4-5 with 2 on the fork
    return Witness(parent, "D4", nodes, reason="E6 row minus its two extreme vertices is D4",
                   e6_nodes=e6, e6_row=row, removed=removed)


def all_simple_types(max_rank: int = 8) -> list[tuple[str, int]]:
    out = []
    for r in range(1, max_rank + 1):
        out.append(("A", r))
    for r in range(2, max_rank + 1):
        out.append(("B", r))
    for r in range(3, max_rank + 1):
        out.append(("C", r))
    for r in range(4, max_rank + 1):
        out.append(("D", r))
    out += [("E", r) for r in (6, 7, 8) if r <= max_rank]
    if max_rank >= 4:
        out.append(("F", 4))
    if max_rank >= 2:
        out.append(("G", 2))
    return out
