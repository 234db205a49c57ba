"""Combinatorial Morse analysis of a presentation 2-complex.

The height map sends every generator edge up by its weight; only the
all-weights-one regime is supported (zero-weight edges would be horizontal
and break the non-constant-on-edges requirement).  Each relator boundary
gets a height profile; corners classify into ascending, descending, and
mixed, which builds the ascending/descending links of the unique vertex.
If both links are trees and every cell boundary is a staircase, the level
set of the height map is a rose and the kernel of the weight homomorphism
is free of rank the total cell area.
"""

from dataclasses import dataclass

from .errors import RangeError, UnsupportedCell, UnsupportedRegime
from .words import CyclicWord, exponent_sum


def _require_unit_weights(alphabet, weights):
    for g in alphabet:
        if g not in weights:
            raise UnsupportedRegime(f"no weight for generator {g!r}")
        if weights[g] != 1:
            raise UnsupportedRegime(
                f"unsupported regime: weight of {g!r} is {weights[g]}, "
                "only all-weights-one height maps are supported")


@dataclass(frozen=True)
class CellHeights:
    """Boundary height profile of one 2-cell.

    ``heights[i]`` is the height of the boundary vertex before letter i of
    the stored rotation; the profile closes up because the relator has
    weighted exponent sum zero.
    """

    boundary: CyclicWord
    heights: tuple
    min_height: int
    max_height: int

    def span(self):
        return self.max_height - self.min_height


def heights(relator, weights):
    """Height profile of a relator boundary under a unit weight map."""
    if not isinstance(relator, CyclicWord):
        raise RangeError("heights needs a CyclicWord relator")
    _require_unit_weights(relator.alphabet, weights)
    total = exponent_sum(relator.letters, weights)
    if total != 0:
        raise RangeError(
            f"relator {relator.letters!r} has weighted exponent sum {total}, "
            "so its cell does not descend to the level complex")
    profile = []
    h = 0
    for ch in relator.letters:
        profile.append(h)
        h += weights[ch.lower()] if ch.islower() else -weights[ch.lower()]
    return CellHeights(boundary=relator, heights=tuple(profile),
                       min_height=min(profile), max_height=max(profile))


def cell_area(cell):
    """Level-arc count of the cell: interior-level boundary vertices, halved.

    Requires the staircase shape: every boundary vertex at an interior
    level is a transversal crossing (its neighbors straddle it); only the
    global extrema may turn.
    """
    hs = cell.heights
    n = len(hs)
    level_count = {}
    for i, h in enumerate(hs):
        prev_h = hs[(i - 1) % n]
        next_h = hs[(i + 1) % n]
        interior = cell.min_height < h < cell.max_height
        if interior and (prev_h - h) * (next_h - h) > 0:
            raise UnsupportedCell(
                f"boundary vertex {i} of {cell.boundary.letters!r} turns at "
                f"interior level {h}")
        if interior:
            level_count[h] = level_count.get(h, 0) + 1
    area = 0
    for level, count in level_count.items():
        if count % 2:
            raise UnsupportedCell(
                f"odd vertex count at level {level} in "
                f"{cell.boundary.letters!r}")
        area += count // 2
    return area


@dataclass(frozen=True)
class LinkGraph:
    """Ascending (+1) or descending (-1) link of the unique complex vertex.

    Vertices are direction tokens like ``a+`` or ``t-``; edges are corner
    records (token, token, relator index, corner position).
    """

    sign: int
    vertices: tuple
    edges: tuple

    def edge_pairs(self):
        return [(a, b) for a, b, _, _ in self.edges]

    def is_tree(self):
        """Connected with edge count one less than vertex count."""
        if len(self.edges) != len(self.vertices) - 1:
            return False
        if not self.vertices:
            return False
        adj = {v: [] for v in self.vertices}
        for a, b, _, _ in self.edges:
            adj[a].append(b)
            adj[b].append(a)
        seen = {self.vertices[0]}
        stack = [self.vertices[0]]
        while stack:
            for w in adj[stack.pop()]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return len(seen) == len(self.vertices)


def _corner_tokens(x, y):
    """Direction tokens at the corner where letter x ends and y starts."""
    end = x.lower() + ("+" if x.isupper() else "-")
    start = y.lower() + ("+" if y.islower() else "-")
    return end, start


def _link(p, weights, sign):
    _require_unit_weights(p.alphabet, weights)
    mark = "+" if sign > 0 else "-"
    vertices = tuple(g + mark for g in p.alphabet)
    edges = []
    for ri, rel in enumerate(p.relators):
        word = rel.letters
        total = exponent_sum(word, weights)
        if total != 0:
            raise RangeError(
                f"relator {word!r} has weighted exponent sum {total}")
        n = len(word)
        for i in range(n):
            end, start = _corner_tokens(word[i], word[(i + 1) % n])
            if end[1] == mark and start[1] == mark:
                a, b = sorted((end, start))
                edges.append((a, b, ri, i))
    return LinkGraph(sign=sign, vertices=vertices, edges=tuple(edges))


def ascending_link(p, weights):
    return _link(p, weights, +1)


def descending_link(p, weights):
    return _link(p, weights, -1)


def is_tree(link):
    return link.is_tree()


def corner_census(relator):
    """(ascending, descending, mixed) corner counts of one relator."""
    word = relator.letters
    n = len(word)
    asc = desc = mixed = 0
    for i in range(n):
        end, start = _corner_tokens(word[i], word[(i + 1) % n])
        if end[1] == "+" and start[1] == "+":
            asc += 1
        elif end[1] == "-" and start[1] == "-":
            desc += 1
        else:
            mixed += 1
    return asc, desc, mixed


@dataclass(frozen=True)
class KernelCertificate:
    """Freeness certificate for the kernel of a unit-weight homomorphism."""

    ascending: LinkGraph
    descending: LinkGraph
    asc_tree: bool
    desc_tree: bool
    cells: tuple
    areas: tuple
    rank: int
    justification: str


def kernel_rank(p, weights):
    """Certify ker(weight map) free, with rank = total cell area.

    Refuses (raises) unless both links are trees and every cell passes the
    staircase check; a refusal is not a disproof.
    """
    asc = ascending_link(p, weights)
    desc = descending_link(p, weights)
    if not asc.is_tree():
        raise UnsupportedCell("ascending link is not a tree; no certificate")
    if not desc.is_tree():
        raise UnsupportedCell("descending link is not a tree; no certificate")
    cells = tuple(heights(rel, weights) for rel in p.relators)
    areas = tuple(cell_area(c) for c in cells)
    rank = sum(areas)
    just = (f"both links are trees, hence contractible; each level set of "
            f"the height map is a rose with {rank} petals and carries the "
            f"homotopy type of the cover, so the kernel is free of rank {rank}")
    return KernelCertificate(ascending=asc, descending=desc,
                             asc_tree=True, desc_tree=True,
                             cells=cells, areas=areas, rank=rank,
                             justification=just)
