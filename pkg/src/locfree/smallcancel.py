"""Symmetrized piece analysis and metric small-cancellation checking.

A piece is a word that occurs in two genuinely distinct places among the
relators read cyclically, their inverses included: either inside two
different relator orbits, or at two distinct rotational positions of one
orbit (which is what makes proper powers fail).  Occurrences are proper
cyclic subwords, so a piece in an orbit of length L has length at most L-1.

The C'(lambda) condition demands every piece p occurring in relator r
satisfy len(p) < lambda * len(r), strictly.
"""

from dataclasses import dataclass
from fractions import Fraction

from .errors import RangeError
from .words import Alphabet, CyclicWord, invert, rotate, format_fraction


@dataclass(frozen=True)
class SymmetrizedSet:
    """Closure of the relators under inversion and cyclic rotation.

    ``elements`` lists every distinct rotation of every relator and inverse
    (the classical symmetrized set).  ``orbits`` keeps one cyclic word per
    relator-or-inverse for occurrence bookkeeping: an occurrence is a pair
    (orbit index, start position).
    """

    alphabet: Alphabet
    elements: tuple
    orbits: tuple

    def element_count(self):
        return len(self.elements)


def symmetrize(relators):
    """Build the symmetrized set; relators must be nontrivial cyclic words."""
    if not relators:
        raise RangeError("need at least one relator")
    alphabet = relators[0].alphabet
    orbits = []
    elements = set()
    for rel in relators:
        if not isinstance(rel, CyclicWord):
            rel = CyclicWord(rel, alphabet)
        if len(rel) == 0:
            raise RangeError("trivial relator rejected")
        if rel.alphabet != alphabet:
            raise RangeError("relators use different alphabets")
        for cyc in (rel, rel.inverse()):
            if cyc.letters not in orbits:
                orbits.append(cyc.letters)
            for k in range(len(cyc)):
                elements.add(rotate(cyc.letters, k))
    ordered = sorted(elements, key=alphabet.word_key)
    return SymmetrizedSet(alphabet=alphabet, elements=tuple(ordered),
                          orbits=tuple(orbits))


@dataclass(frozen=True)
class PieceReport:
    """Longest piece with a deterministic witness pair of occurrences.

    ``witness`` is (piece, (orbit, pos), (orbit, pos)); orbit indexes the
    symmetrized set's orbit list and pos is the cyclic start position.
    ``per_orbit_max`` maps orbit index to the longest piece meeting it.
    """

    max_piece_length: int
    witness: tuple | None
    per_orbit_max: tuple
    thresholds: tuple = ()
    holds: bool | None = None

    def describe_witness(self):
        if self.witness is None:
            return "no piece"
        piece, a, b = self.witness
        return (f"piece {piece!r} at orbit {a[0]} pos {a[1]} "
                f"and orbit {b[0]} pos {b[1]}")


def _occurrences(sym, length):
    """Map each cyclic subword of the given length to its occurrence pairs."""
    occ = {}
    for oi, orbit in enumerate(sym.orbits):
        L = len(orbit)
        if length >= L:
            continue
        doubled = orbit + orbit
        for pos in range(L):
            occ.setdefault(doubled[pos:pos + length], []).append((oi, pos))
    return occ


def _pieces_at(sym, length):
    return {w: places for w, places in _occurrences(sym, length).items()
            if len(places) >= 2}


def max_piece(sym):
    """Longest piece via binary search on the monotone has-a-piece predicate."""
    top = max((len(o) for o in sym.orbits), default=0)
    lo, hi = 0, top - 1  # pieces are proper subwords
    while lo < hi:
        mid = (lo + hi + 1) // 2
        if _pieces_at(sym, mid):
            lo = mid
        else:
            hi = mid - 1
    return _report_for_length(sym, lo)


def max_piece_brute(sym):
    """Quadratic oracle over all occurrence pairs, independent of max_piece.

    For every ordered pair of distinct (orbit, position) occurrences the
    common cyclic prefix is measured directly, capped so pieces stay proper
    in both orbits.
    """
    doubled = [o + o for o in sym.orbits]
    occs = [(oi, pos) for oi, o in enumerate(sym.orbits)
            for pos in range(len(o))]
    best = 0
    per_orbit = [0 for _ in sym.orbits]
    hits = []
    for a in range(len(occs)):
        o1, p1 = occs[a]
        for b in range(a + 1, len(occs)):
            o2, p2 = occs[b]
            cap = min(len(sym.orbits[o1]), len(sym.orbits[o2])) - 1
            lcp = _common_prefix(doubled[o1], p1, doubled[o2], p2, cap)
            if lcp == 0:
                continue
            per_orbit[o1] = max(per_orbit[o1], lcp)
            per_orbit[o2] = max(per_orbit[o2], lcp)
            if lcp > best:
                best = lcp
                hits = [(occs[a], occs[b])]
            elif lcp == best:
                hits.append((occs[a], occs[b]))
    if best == 0:
        return PieceReport(0, None, tuple(per_orbit))
    pieces = {}
    for (o1, p1), (o2, p2) in hits:
        word = doubled[o1][p1:p1 + best]
        pieces.setdefault(word, set()).update([(o1, p1), (o2, p2)])
    word = min(pieces, key=sym.alphabet.word_key)
    places = sorted(pieces[word])
    return PieceReport(best, (word, places[0], places[1]), tuple(per_orbit))


def _common_prefix(d1, p1, d2, p2, cap):
    """Length of the common prefix of d1[p1:] and d2[p2:], at most cap."""
    lo, hi = 0, cap
    while lo < hi:
        mid = (lo + hi + 1) // 2
        if d1[p1:p1 + mid] == d2[p2:p2 + mid]:
            lo = mid
        else:
            hi = mid - 1
    return lo


def _report_for_length(sym, best):
    if best == 0:
        per_orbit = tuple(0 for _ in sym.orbits)
        return PieceReport(0, None, per_orbit)
    pieces = _pieces_at(sym, best)
    word = min(pieces, key=sym.alphabet.word_key)
    places = sorted(pieces[word])
    witness = (word, places[0], places[1])
    per_orbit = []
    for oi in range(len(sym.orbits)):
        per_orbit.append(_orbit_max(sym, oi))
    return PieceReport(best, witness, tuple(per_orbit))


def _orbit_max(sym, oi):
    """Longest piece having at least one occurrence inside orbit ``oi``."""
    lo, hi = 0, len(sym.orbits[oi]) - 1
    while lo < hi:
        mid = (lo + hi + 1) // 2
        found = any(any(p[0] == oi for p in places)
                    for places in _pieces_at(sym, mid).values())
        if found:
            lo = mid
        else:
            hi = mid - 1
    return lo


def check_metric(relators, lam, brute_force=False):
    """C'(lambda) verdict: strict piece bound per relator orbit.

    Returns a PieceReport whose ``thresholds`` pair each orbit with its
    exact rational bound lambda * orbit length and whose ``holds`` flag is
    the strict comparison on every orbit.
    """
    lam = Fraction(lam)
    if not 0 < lam < 1:
        raise RangeError(f"lambda must be strictly between 0 and 1, got {lam}")
    sym = symmetrize(relators)
    report = max_piece_brute(sym) if brute_force else max_piece(sym)
    thresholds = tuple(lam * len(o) for o in sym.orbits)
    holds = all(m < th for m, th in zip(report.per_orbit_max, thresholds))
    return PieceReport(report.max_piece_length, report.witness,
                       report.per_orbit_max, thresholds, holds)


@dataclass(frozen=True)
class BoundCheck:
    """Exact evaluation of the sufficient inequality for the staircase family."""

    s: int
    lhs: Fraction
    rhs: Fraction
    satisfied: bool

    def describe(self):
        rel = "<=" if self.satisfied else ">"
        return (f"2s+15 = {format_fraction(self.lhs)} {rel} "
                f"{format_fraction(self.rhs)} = (8+(14+s)(s+1))/7")


def gs_bound_check(s):
    """Evaluate 2s+15 <= (8 + (14+s)(s+1))/7 in exact rational arithmetic."""
    if s < 3:
        raise RangeError(f"family parameter must be at least 3, got {s}")
    lhs = Fraction(2 * s + 15)
    rhs = Fraction(8 + (14 + s) * (s + 1), 7)
    return BoundCheck(s=s, lhs=lhs, rhs=rhs, satisfied=lhs <= rhs)
