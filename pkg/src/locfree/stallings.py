"""Basepointed subgroup graphs of free groups, with folding.

A graph edge (u, g, v) is a positive g-edge from u to v; traversing it
backwards reads the inverse letter.  Folded graphs admit at most one
outgoing and one incoming g-edge per vertex, which makes membership a
deterministic path trace and rank an Euler characteristic count.
"""

from collections import deque
from dataclasses import dataclass

from .errors import CertificateRefused, StateError
from .words import Alphabet, conjugate, invert, reduce_word


class SubgroupGraph:
    """Labeled basepointed digraph for a finitely generated subgroup.

    Vertices are 0..n-1 with basepoint 0.  The graph may be unfolded
    (parallel edges allowed); ``fold()`` returns the canonical folded,
    core-trimmed form.  Folded graphs are relabeled breadth-first from the
    basepoint with edges in alphabet order, so structural equality is
    graph isomorphism over the basepoint.
    """

    __slots__ = ("alphabet", "num_vertices", "edges", "folded", "_out", "_in")

    def __init__(self, alphabet, num_vertices, edges, folded=False):
        self.alphabet = Alphabet(alphabet)
        self.num_vertices = num_vertices
        self.edges = tuple(sorted(edges))
        self.folded = folded
        self._out = None
        self._in = None

    def __eq__(self, other):
        return (isinstance(other, SubgroupGraph)
                and self.alphabet == other.alphabet
                and self.num_vertices == other.num_vertices
                and self.edges == other.edges)

    def __hash__(self):
        return hash((self.alphabet, self.num_vertices, self.edges))

    def __repr__(self):
        return (f"SubgroupGraph(V={self.num_vertices}, "
                f"E={len(self.edges)}, folded={self.folded})")

    def _maps(self):
        if self._out is None:
            out = {}
            inn = {}
            for u, g, v in self.edges:
                out[u, g] = v
                inn[v, g] = u
            self._out, self._in = out, inn
        return self._out, self._in

    def fold(self):
        """Fold and core-trim; idempotent and order-independent."""
        if self.folded:
            return self
        return _fold_edges(self.alphabet, self.num_vertices, self.edges)

    def require_folded(self):
        if not self.folded:
            raise StateError("operation requires a folded graph")

    def trace(self, word, start=0):
        """Follow ``word`` from ``start``; return the end vertex or None."""
        self.require_folded()
        out, inn = self._maps()
        v = start
        for ch in word:
            self.alphabet.check_word(ch.lower())
            if ch.islower():
                v = out.get((v, ch))
            else:
                v = inn.get((v, ch.lower()))
            if v is None:
                return None
        return v

    def contains(self, word):
        """Membership of the subgroup: does the word trace a loop at the basepoint?

        The word is freely reduced first; letters outside the graph's
        alphabet are checked and rejected by trace.
        """
        return self.trace(reduce_word(word)) == 0

    def rank(self):
        """Nielsen-Schreier rank of the subgroup: E - V + 1 for the core graph."""
        self.require_folded()
        if not self._connected():
            raise StateError("rank requires a connected graph")
        return len(self.edges) - self.num_vertices + 1

    def _connected(self):
        if self.num_vertices == 1:
            return True
        seen = {0}
        queue = deque([0])
        nbr = {}
        for u, _, v in self.edges:
            nbr.setdefault(u, []).append(v)
            nbr.setdefault(v, []).append(u)
        while queue:
            for w in nbr.get(queue.popleft(), ()):
                if w not in seen:
                    seen.add(w)
                    queue.append(w)
        return len(seen) == self.num_vertices

    def is_rose(self):
        """True iff the graph is the full one-vertex rose over its alphabet."""
        return (self.folded and self.num_vertices == 1
                and len(self.edges) == len(self.alphabet))

    def dump(self):
        """Edge list lines ``v0 -a-> v1`` in canonical order."""
        return [f"v{u} -{g}-> v{v}" for u, g, v in self.edges]


def wedge_of_loops(gens, alphabet):
    """Unfolded wedge spelling each generator word as a loop at the basepoint."""
    alphabet = Alphabet(alphabet)
    edges = []
    nv = 1
    for word in gens:
        alphabet.check_word(word)
        word = reduce_word(word)
        if not word:
            continue
        prev = 0
        for i, ch in enumerate(word):
            nxt = 0 if i == len(word) - 1 else nv
            if nxt != 0:
                nv += 1
            if ch.islower():
                edges.append((prev, ch, nxt))
            else:
                edges.append((nxt, ch.lower(), prev))
            prev = nxt
    return SubgroupGraph(alphabet, nv, edges, folded=False)


def graph_from_generators(gens, alphabet):
    """Folded, core-trimmed Stallings graph of the subgroup the words generate."""
    return wedge_of_loops(gens, alphabet).fold()


def _fold_edges(alphabet, num_vertices, edges):
    parent = list(range(num_vertices))
    size = [1] * num_vertices

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    out = [dict() for _ in range(num_vertices)]
    inn = [dict() for _ in range(num_vertices)]
    pending = deque(edges)

    def union(a, b):
        # small-into-large: re-queue the smaller vertex's edges
        a, b = find(a), find(b)
        if a == b:
            return
        if size[a] < size[b]:
            a, b = b, a
        parent[b] = a
        size[a] += size[b]
        for g, t in out[b].items():
            pending.append((a, g, t))
        for g, s in inn[b].items():
            pending.append((s, g, a))
        out[b] = {}
        inn[b] = {}

    def process():
        while pending:
            u, g, v = pending.popleft()
            u, v = find(u), find(v)
            w = out[u].get(g)
            if w is not None:
                w = find(w)
                out[u][g] = w
                if w != v:
                    # second outgoing g-edge: identify the targets
                    union(v, w)
                    continue
            s = inn[v].get(g)
            if s is not None:
                s = find(s)
                inn[v][g] = s
                if s != u:
                    # second incoming g-edge: identify the sources
                    union(s, u)
                    continue
            out[u][g] = v
            inn[v][g] = u

    # the incremental pass can leave a pair of records out of sync right
    # after a union; rescan and reprocess until genuinely folded
    while True:
        process()
        clean = True
        targets = {}
        for u in range(num_vertices):
            if find(u) != u:
                continue
            for g, v in list(out[u].items()):
                key = (find(v), g)
                other = targets.get(key)
                if other is None:
                    targets[key] = u
                elif other != u:
                    pending.append((u, g, find(v)))
                    clean = False
        if clean:
            break

    base = find(0)
    folded = set()
    for u in range(num_vertices):
        if find(u) != u:
            continue
        for g, v in out[u].items():
            folded.add((u, g, find(v)))

    # core-trim: drop non-basepoint vertices of degree <= 1
    degree = {base: 0}
    incident = {base: set()}
    for e in folded:
        u, _, v = e
        for end in (u, v):
            degree[end] = degree.get(end, 0) + 1
            incident.setdefault(end, set()).add(e)
    hair = deque(v for v, d in degree.items() if d <= 1 and v != base)
    while hair:
        w = hair.popleft()
        for e in list(incident[w]):
            if e not in folded:
                continue
            folded.discard(e)
            for end in (e[0], e[2]):
                degree[end] -= 1
                incident[end].discard(e)
                if end != base and degree[end] == 1:
                    hair.append(end)

    return _canonicalize(alphabet, base, folded)


def _canonicalize(alphabet, base, edges):
    """Breadth-first relabeling from the basepoint, edges in alphabet order."""
    out = {}
    inn = {}
    for u, g, v in edges:
        out[u, g] = v
        inn[v, g] = u
    label = {base: 0}
    order = deque([base])
    while order:
        v = order.popleft()
        for g in alphabet:
            for nbr in (out.get((v, g)), inn.get((v, g))):
                if nbr is not None and nbr not in label:
                    label[nbr] = len(label)
                    order.append(nbr)
    relabeled = [(label[u], g, label[v]) for u, g, v in edges]
    return SubgroupGraph(alphabet, len(label), relabeled, folded=True)


@dataclass(frozen=True)
class EndoReport:
    """Image analysis of a free-group endomorphism.

    Injectivity is certified by Hopficity: the image graph having full rank
    means the endomorphism is onto a rank-k free group, and a surjection of
    a finite-rank free group onto one of equal rank is an isomorphism.
    """

    image_rank: int
    injective: bool
    proper: bool
    missing_generator: str | None
    image_graph: SubgroupGraph
    justification: str

    def strictly_ascending(self):
        return self.injective and self.proper


def analyze_endomorphism(endo):
    """EndoReport for a FreeEndo (injective? proper? witness generator)."""
    alphabet = endo.alphabet
    graph = graph_from_generators(
        [endo.images[g] for g in alphabet], alphabet)
    image_rank = graph.rank()
    injective = image_rank == len(alphabet)
    missing = None
    for g in alphabet:
        if not graph.contains(g):
            missing = g
            break
    just = ("image rank equals domain rank, so the endomorphism is injective "
            "(finite-rank free groups are Hopfian)" if injective
            else "image rank is below domain rank")
    if missing is not None:
        just += f"; generator {missing!r} is outside the image, so the image is proper"
    return EndoReport(
        image_rank=image_rank,
        injective=injective,
        proper=missing is not None,
        missing_generator=missing,
        image_graph=graph,
        justification=just,
    )


@dataclass(frozen=True)
class SeparabilityWitness:
    """Conjugate subgroup pair exhibiting non-separability.

    ``inner`` is the base subgroup L1, ``outside_element`` lies in the
    conjugate t L1 t-inverse but not in L1.  In any finite quotient the two
    conjugates have images of the same order, and the image of L1 sits
    inside the image of the conjugate, so the images coincide; hence no
    finite quotient separates the outside element from L1.
    """

    inner: SubgroupGraph
    conjugator: str
    outside_element: str
    justification: str

    def replay(self):
        """Re-check the certificate; returns a list of (name, bool) checks."""
        checks = [("outside element not in the base subgroup",
                   not self.inner.contains(self.outside_element))]
        return checks


def separability_witness(endo, stable_letter, full_alphabet=None):
    """Witness that the base subgroup is not separable in the extension.

    Requires the endomorphism to be injective and proper.  The base rose
    L1 satisfies t-inverse L1 t = image(endo) inside L1, while conjugating
    the missing generator x the other way gives t x t-inverse outside L1.
    """
    report = analyze_endomorphism(endo)
    if not report.strictly_ascending():
        raise CertificateRefused(
            "separability witness needs an injective, proper endomorphism "
            f"(injective={report.injective}, proper={report.proper})")
    if full_alphabet is None:
        full_alphabet = Alphabet(endo.alphabet.letters + stable_letter)
    x = report.missing_generator
    inner = graph_from_generators(list(endo.alphabet), full_alphabet)
    outside = conjugate(x, invert(stable_letter))
    checks = []
    for g in endo.alphabet:
        checks.append(inner.contains(endo.images[g]))
    if not all(checks):
        raise CertificateRefused("endomorphism image escapes the base subgroup")
    if inner.contains(outside):
        raise CertificateRefused("outside element unexpectedly in the base subgroup")
    just = (f"conjugating L1 by {stable_letter!r} maps each generator into L1, "
            f"so L1 lies inside its conjugate; {outside!r} is in the conjugate "
            f"but not in L1 because {x!r} is outside the endomorphism image; "
            "conjugate subgroups have images of the same order in any finite "
            "quotient, so the images coincide and no finite quotient separates "
            f"{outside!r} from L1")
    return SeparabilityWitness(
        inner=inner,
        conjugator=stable_letter,
        outside_element=outside,
        justification=just,
    )
