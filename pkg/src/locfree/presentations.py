"""Finite presentations: parser, Tietze engine, HNN recognition, semidirect
normal forms, automorphism verification, and abelianization.

The presentation text format is line oriented:

    gens: a b t          ordered alphabet of single lowercase letters
    rel: TatB            relator in compact notation (uppercase = inverse)
    eq: a^t = b          sugar for the relator t-inverse a t b-inverse
    hom: psi             names the weight map given by the next line
    weight: a=1 b=1 t=1

Tietze scripts are one move per line:

    ADDGEN x aT          adjoin x with defining relator x (aT)^-1
    RMGEN b 0            eliminate b using relator 0
    MULT 2 0 conj=T sign=-1
                         relator 2 times the conjugate of relator 0^-1 by T
    INVERT 1             replace relator 1 by its inverse
    PERMUTE x y z t      reorder the alphabet
    RMTRIV 1             drop relator 1, which must be trivial
"""

from dataclasses import dataclass

from . import abelian
from .errors import (AlphabetError, MoveError, ParseError, RangeError,
                     RecognitionError)
from .words import (Alphabet, CyclicWord, build_W, invert, reduce_word,
                    rotate, substitute, make_weights)


class FreeEndo:
    """Endomorphism of a free group given by generator images."""

    __slots__ = ("alphabet", "images")

    def __init__(self, alphabet, images):
        self.alphabet = Alphabet(alphabet)
        imgs = {}
        for g in self.alphabet:
            if g not in images:
                raise AlphabetError(f"no image for generator {g!r}")
            imgs[g] = reduce_word(self.alphabet.check_word(images[g]))
        for g in images:
            if g not in self.alphabet:
                raise AlphabetError(f"image given for unknown generator {g!r}")
        self.images = imgs

    def __eq__(self, other):
        return (isinstance(other, FreeEndo)
                and self.alphabet == other.alphabet
                and self.images == other.images)

    def __repr__(self):
        body = "; ".join(f"{g}={w}" for g, w in self.images.items())
        return f"FreeEndo({body})"

    def apply(self, word):
        return substitute(word, self.images)

    def compose(self, other):
        """self after other: returns g -> self(other(g))."""
        return FreeEndo(self.alphabet,
                        {g: self.apply(other.images[g]) for g in self.alphabet})

    def power(self, n):
        if n < 0:
            raise RangeError("negative powers need a verified inverse")
        result = FreeEndo(self.alphabet, {g: g for g in self.alphabet})
        for _ in range(n):
            result = self.compose(result)
        return result

    def is_identity(self):
        return all(self.images[g] == g for g in self.alphabet)

    def abelianized(self):
        """Integer matrix with column j the exponent vector of image j."""
        gens = list(self.alphabet)
        cols = []
        for g in gens:
            img = self.images[g]
            cols.append([sum(+1 if ch == h else -1 if ch == h.upper() else 0
                             for ch in img) for h in gens])
        return abelian.transpose(abelian.matrix(cols))


class FreeAuto:
    """Automorphism: an endomorphism with a verified inverse."""

    __slots__ = ("forward", "backward")

    def __init__(self, forward, backward):
        residue = _composition_residue(forward, backward)
        if residue is not None:
            g, word = residue
            raise AlphabetError(
                f"not inverse to each other: generator {g!r} maps to {word!r}")
        self.forward = forward
        self.backward = backward

    def apply(self, word, n=1):
        endo = self.forward if n >= 0 else self.backward
        for _ in range(abs(n)):
            word = endo.apply(word)
        return word


def _composition_residue(fwd, bwd):
    if fwd.alphabet != bwd.alphabet:
        raise AlphabetError("automorphism halves use different alphabets")
    for first, second in ((fwd, bwd), (bwd, fwd)):
        for g in fwd.alphabet:
            image = second.apply(first.images[g])
            if image != g:
                return g, image
    return None


def verify_automorphism(forward, backward):
    """Check the two endomorphisms invert each other; raises on failure."""
    return FreeAuto(forward, backward)


class Presentation:
    """Ordered generator alphabet plus relators as canonical cyclic words."""

    __slots__ = ("alphabet", "relators")

    def __init__(self, alphabet, relators):
        self.alphabet = Alphabet(alphabet)
        rels = []
        for r in relators:
            if not isinstance(r, CyclicWord):
                r = CyclicWord(r, self.alphabet)
            elif r.alphabet != self.alphabet:
                r = CyclicWord(r.letters, self.alphabet)
            rels.append(r)
        self.relators = tuple(rels)

    def __eq__(self, other):
        """Equality: same ordered alphabet and same relator multiset."""
        return (isinstance(other, Presentation)
                and self.alphabet == other.alphabet
                and sorted(r.letters for r in self.relators)
                == sorted(r.letters for r in other.relators))

    def __repr__(self):
        rels = ", ".join(r.letters for r in self.relators)
        return f"Presentation(<{self.alphabet.letters} | {rels}>)"

    def format(self):
        """Canonical text form; parse(format(p)) == p."""
        lines = ["gens: " + " ".join(self.alphabet)]
        lines.extend("rel: " + r.letters for r in self.relators)
        return "\n".join(lines) + "\n"

    def relator_matrix(self):
        """Exponent matrix: rows = relators, columns = generators."""
        gens = list(self.alphabet)
        return abelian.matrix(
            [[sum(+1 if ch == g else -1 if ch == g.upper() else 0
                  for ch in r.letters) for g in gens]
             for r in self.relators])

    def abelianization(self):
        """(free_rank, torsion) of the abelianized group via Smith normal form."""
        return abelian.cokernel_invariants(self.relator_matrix(),
                                           len(self.alphabet))


@dataclass(frozen=True)
class ParsedDocument:
    presentation: Presentation
    weight_maps: dict
    warnings: tuple


def parse_document(text):
    """Parse the presentation file format; collects named weight maps."""
    gens = None
    raw_relators = []
    weight_maps = {}
    warnings = []
    pending_hom = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if ":" not in line:
            raise ParseError(f"expected 'key: value', got {line!r}", lineno)
        key, _, value = line.partition(":")
        key = key.strip()
        value = value.strip()
        if key == "gens":
            if gens is not None:
                raise ParseError("duplicate gens line", lineno)
            names = value.split()
            for name in names:
                if len(name) != 1 or not ("a" <= name <= "z"):
                    raise ParseError(
                        f"generator {name!r} must be a single lowercase letter",
                        lineno, raw.index(name) + 1)
            try:
                gens = Alphabet("".join(names))
            except AlphabetError as exc:
                raise ParseError(str(exc), lineno) from None
        elif key == "rel":
            if gens is None:
                raise ParseError("rel before gens", lineno)
            if not value:
                raise ParseError("empty relator", lineno)
            raw_relators.append((lineno, _checked_word(value, gens, lineno, raw)))
        elif key == "eq":
            if gens is None:
                raise ParseError("eq before gens", lineno)
            raw_relators.append((lineno, _parse_eq(value, gens, lineno, raw)))
        elif key == "hom":
            if not value or not value.isidentifier():
                raise ParseError(f"bad weight map name {value!r}", lineno)
            pending_hom = value
        elif key == "weight":
            if gens is None:
                raise ParseError("weight before gens", lineno)
            if pending_hom is None:
                raise ParseError("weight line without a preceding hom line", lineno)
            weight_maps[pending_hom] = _parse_weights(value, gens, lineno)
            pending_hom = None
        else:
            raise ParseError(f"unknown key {key!r}", lineno)
    if gens is None:
        raise ParseError("missing gens line", 1)
    relators = []
    for lineno, word in raw_relators:
        cyc = CyclicWord(word, gens)
        if not cyc.letters:
            raise ParseError("relator reduces to the empty word", lineno)
        if cyc.letters != word and sorted(cyc.letters) != sorted(word):
            warnings.append(f"line {lineno}: relator {word!r} was not reduced")
        relators.append(cyc)
    return ParsedDocument(Presentation(gens, relators), weight_maps,
                          tuple(warnings))


def parse(text):
    return parse_document(text).presentation


def _checked_word(word, gens, lineno, raw):
    for ch in word:
        if ch.lower() not in gens:
            raise ParseError(f"unknown generator {ch.lower()!r}",
                             lineno, raw.index(ch) + 1)
    return word


def _parse_eq(value, gens, lineno, raw):
    """``u^c = w`` becomes the relator c-inverse u c w-inverse."""
    if "=" not in value:
        raise ParseError("eq needs '='", lineno)
    left, _, right = value.partition("=")
    left = left.strip()
    right = right.strip()
    if not right:
        raise ParseError("eq needs a right-hand side", lineno)
    if "^" in left:
        base, _, conj = left.partition("^")
        base = base.strip()
        conj = conj.strip()
        if not base or not conj:
            raise ParseError("eq conjugation needs both a base and an exponent",
                             lineno)
    else:
        base, conj = left.strip(), ""
    if not base:
        raise ParseError("eq needs a left-hand side", lineno)
    for part in (base, conj, right):
        _checked_word(part, gens, lineno, raw)
    return reduce_word(invert(conj) + base + conj + invert(right))


def _parse_weights(value, gens, lineno):
    values = {}
    for item in value.split():
        if "=" not in item:
            raise ParseError(f"bad weight entry {item!r}", lineno)
        name, _, number = item.partition("=")
        try:
            values[name] = int(number)
        except ValueError:
            raise ParseError(f"bad weight value {number!r}", lineno) from None
    try:
        return make_weights(gens, values)
    except AlphabetError as exc:
        raise ParseError(str(exc), lineno) from None


def relator_from_eq(base, conj, rhs):
    return reduce_word(invert(conj) + base + conj + invert(rhs))


def make_prop1():
    """Three-generator, two-relator presentation: a^t = b, b^t = a b a^-1."""
    return Presentation("abt", [
        relator_from_eq("a", "t", "b"),
        relator_from_eq("b", "t", "abA"),
    ])


def make_gs(s):
    """Staircase family: a^t = b, b^t = W(b,a) b W(a,b)^-1."""
    if s < 3:
        raise RangeError(f"family parameter must be at least 3, got {s}")
    rhs = build_W(s, "b", "a") + "b" + invert(build_W(s, "a", "b"))
    return Presentation("abt", [
        relator_from_eq("a", "t", "b"),
        relator_from_eq("b", "t", rhs),
    ])


def make_prop2_target():
    """Four-generator mapping-torus presentation: x^t=y, y^t=z, z^t=y^2 x^-1."""
    return Presentation("xyzt", [
        relator_from_eq("x", "t", "y"),
        relator_from_eq("y", "t", "z"),
        relator_from_eq("z", "t", "yyX"),
    ])


@dataclass(frozen=True)
class HNNStructure:
    """Ascending HNN shape: every relator reads stable^-1 x stable image^-1."""

    base_alphabet: Alphabet
    stable: str
    endo: FreeEndo


def recognize_ascending_hnn(p, stable):
    """Extract the base endomorphism if every relator has HNN shape.

    Each relator must be a cyclic rotation (up to inversion) of
    stable^-1 g stable w^-1 with g a base generator and w a base word,
    and each base generator must occur exactly once in that role.
    """
    if stable not in p.alphabet:
        raise RecognitionError(f"stable letter {stable!r} not in the alphabet")
    base = p.alphabet.remove(stable)
    images = {}
    for idx, rel in enumerate(p.relators):
        match = _match_hnn_relator(rel, stable, base)
        if match is None:
            raise RecognitionError(
                f"relator {idx} ({rel.letters!r}) does not have the shape "
                f"{stable!r}^-1 (generator) {stable!r} (base word)^-1")
        g, image = match
        if g in images:
            raise RecognitionError(f"generator {g!r} defined by two relators")
        images[g] = image
    missing = [g for g in base if g not in images]
    if missing:
        raise RecognitionError(f"no defining relator for generator(s) {missing}")
    return HNNStructure(base_alphabet=base, stable=stable,
                        endo=FreeEndo(base, images))


def _match_hnn_relator(rel, stable, base):
    T = stable.upper()
    for word in (rel.letters, invert(rel.letters)):
        for k in range(len(word)):
            w = rotate(word, k)
            if (len(w) >= 3 and w[0] == T and w[1] in base.letters
                    and w[2] == stable):
                tail = w[3:]
                if all(ch.lower() != stable for ch in tail):
                    return w[1], invert(tail)
    return None


def one_relator_form(p):
    """Eliminate a generator defined by conjugation, leaving one relator.

    Requires a relator of the shape stable^-1 x stable y^-1 with y a single
    generator; that relator defines y and is used to remove it.
    """
    for idx, rel in enumerate(p.relators):
        if len(rel) != 4:
            continue
        for word in (rel.letters, invert(rel.letters)):
            for k in range(4):
                w = rotate(word, k)
                # shape: G g h g^-1-free tail of length 1... concretely
                # T x t Y: eliminated generator is y = t^-1 x t
                if (w[0].isupper() and w[2] == w[0].lower()
                        and w[1].islower() and w[3].isupper()
                        and w[3].lower() not in (w[0].lower(), w[1])):
                    gen = w[3].lower()
                    result = apply_tietze(p, [RemoveGen(gen, idx)])
                    if len(result.relators) == 1:
                        return result
    raise RecognitionError("no relator defines one generator as a conjugate "
                           "of another")


# ---------------------------------------------------------------------------
# semidirect product normal form


@dataclass(frozen=True)
class SemidirectElement:
    """Normal form stable^k w with w a reduced word in the fiber group."""

    k: int
    w: str


def semidirect_multiply(g1, g2, auto):
    """Product in fiber x| <t>: shift the left fiber word past t^k2."""
    return SemidirectElement(g1.k + g2.k,
                             reduce_word(auto.apply(g1.w, g2.k) + g2.w))


def semidirect_invert(g, auto):
    return SemidirectElement(-g.k, auto.apply(invert(g.w), -g.k))


def semidirect_eval(word, auto, stable="t"):
    """Evaluate a word over fiber generators and the stable letter.

    The stable letter acts on the fiber by the automorphism: moving a fiber
    word past one power of the stable letter applies it once.
    """
    k = 0
    w = ""
    for ch in word:
        if ch.lower() == stable:
            step = 1 if ch.islower() else -1
            k += step
            w = auto.apply(w, step)
        else:
            if ch.lower() not in auto.forward.alphabet:
                raise AlphabetError(f"letter {ch!r} is neither fiber nor stable")
            w = reduce_word(w + ch)
    return SemidirectElement(k, w)


# ---------------------------------------------------------------------------
# Tietze moves


@dataclass(frozen=True)
class AddGen:
    """Adjoin a fresh generator g equal to the word w: relator g w^-1."""

    gen: str
    word: str


@dataclass(frozen=True)
class RemoveGen:
    """Remove a generator using a relator that reads g (g-free tail)."""

    gen: str
    index: int


@dataclass(frozen=True)
class MultRelator:
    """Replace relator i by relator_i (conj^-1 relator_j^sign conj)."""

    i: int
    j: int
    conj: str = ""
    sign: int = 1


@dataclass(frozen=True)
class Permute:
    """Reorder the alphabet; relators are re-canonicalized."""

    order: str


@dataclass(frozen=True)
class InvertRelator:
    """Replace a relator by its inverse (an elementary relator move)."""

    index: int


@dataclass(frozen=True)
class RemoveTrivial:
    """Drop a relator that is the empty cyclic word."""

    index: int


def apply_tietze(p, script, trace=False):
    """Replay a Tietze script; every move is validated before it acts.

    With ``trace`` true, returns the list of presentations after each move
    (starting with the input); otherwise returns the final presentation.
    """
    states = [p]
    for pos, move in enumerate(script):
        try:
            p = _apply_move(p, move)
        except MoveError:
            raise
        except Exception as exc:
            raise MoveError(pos, str(exc)) from exc
        states.append(p)
    return states if trace else p


def _apply_move(p, move):
    if isinstance(move, AddGen):
        if move.gen in p.alphabet:
            raise AlphabetError(f"generator {move.gen!r} already present")
        word = p.alphabet.check_word(move.word)
        bigger = p.alphabet.extend(move.gen)
        relators = [CyclicWord(r.letters, bigger) for r in p.relators]
        relators.append(CyclicWord(move.gen + invert(word), bigger))
        return Presentation(bigger, relators)

    if isinstance(move, RemoveGen):
        if not 0 <= move.index < len(p.relators):
            raise RangeError(f"relator index {move.index} out of range")
        gen = move.gen
        if gen not in p.alphabet:
            raise AlphabetError(f"unknown generator {gen!r}")
        definition = _solve_for_generator(p.relators[move.index], gen)
        if definition is None:
            raise RecognitionError(
                f"relator {move.index} does not define {gen!r} by a "
                f"{gen!r}-free word")
        smaller = p.alphabet.remove(gen)
        images = {g: g for g in smaller}
        images[gen] = definition
        relators = []
        for idx, r in enumerate(p.relators):
            if idx == move.index:
                continue
            relators.append(CyclicWord(substitute(r.letters, images), smaller))
        return Presentation(smaller, relators)

    if isinstance(move, MultRelator):
        n = len(p.relators)
        if not (0 <= move.i < n and 0 <= move.j < n):
            raise RangeError("relator index out of range")
        if move.i == move.j:
            raise RangeError("cannot multiply a relator into itself")
        if move.sign not in (1, -1):
            raise RangeError(f"sign must be +1 or -1, got {move.sign}")
        conj = p.alphabet.check_word(move.conj)
        rj = p.relators[move.j].letters
        if move.sign < 0:
            rj = invert(rj)
        product = reduce_word(p.relators[move.i].letters
                              + invert(conj) + rj + conj)
        relators = list(p.relators)
        relators[move.i] = CyclicWord(product, p.alphabet)
        return Presentation(p.alphabet, relators)

    if isinstance(move, InvertRelator):
        if not 0 <= move.index < len(p.relators):
            raise RangeError(f"relator index {move.index} out of range")
        relators = list(p.relators)
        relators[move.index] = relators[move.index].inverse()
        return Presentation(p.alphabet, relators)

    if isinstance(move, Permute):
        order = Alphabet(move.order)
        if sorted(order.letters) != sorted(p.alphabet.letters):
            raise AlphabetError("permutation must use exactly the current "
                                "generators")
        return Presentation(order,
                            [CyclicWord(r.letters, order) for r in p.relators])

    if isinstance(move, RemoveTrivial):
        if not 0 <= move.index < len(p.relators):
            raise RangeError(f"relator index {move.index} out of range")
        if len(p.relators[move.index]) != 0:
            raise RecognitionError(
                f"relator {move.index} is not trivial")
        relators = [r for idx, r in enumerate(p.relators)
                    if idx != move.index]
        return Presentation(p.alphabet, relators)

    raise RecognitionError(f"unknown move {move!r}")


def _solve_for_generator(rel, gen):
    """Rotation of the relator (or inverse) reading gen then a gen-free tail."""
    for word in (rel.letters, invert(rel.letters)):
        for k in range(len(word)):
            w = rotate(word, k)
            if w[0] == gen and all(ch.lower() != gen for ch in w[1:]):
                return invert(w[1:])
    return None


# ---------------------------------------------------------------------------
# Tietze script files


def format_script(script):
    lines = []
    for move in script:
        if isinstance(move, AddGen):
            lines.append(f"ADDGEN {move.gen} {move.word}")
        elif isinstance(move, RemoveGen):
            lines.append(f"RMGEN {move.gen} {move.index}")
        elif isinstance(move, MultRelator):
            conj = move.conj if move.conj else "-"
            lines.append(f"MULT {move.i} {move.j} conj={conj} sign={move.sign:+d}")
        elif isinstance(move, InvertRelator):
            lines.append(f"INVERT {move.index}")
        elif isinstance(move, Permute):
            lines.append("PERMUTE " + " ".join(move.order))
        elif isinstance(move, RemoveTrivial):
            lines.append(f"RMTRIV {move.index}")
        else:
            raise RecognitionError(f"unknown move {move!r}")
    return "\n".join(lines) + "\n"


def parse_script(text):
    script = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        op = parts[0].upper()
        try:
            if op == "ADDGEN" and len(parts) == 3:
                script.append(AddGen(parts[1], parts[2]))
            elif op == "RMGEN" and len(parts) == 3:
                script.append(RemoveGen(parts[1], int(parts[2])))
            elif op == "MULT" and len(parts) == 5:
                i, j = int(parts[1]), int(parts[2])
                conj = _keyword(parts[3], "conj")
                conj = "" if conj == "-" else conj
                sign = int(_keyword(parts[4], "sign"))
                script.append(MultRelator(i, j, conj, sign))
            elif op == "INVERT" and len(parts) == 2:
                script.append(InvertRelator(int(parts[1])))
            elif op == "PERMUTE" and len(parts) >= 2:
                script.append(Permute("".join(parts[1:])))
            elif op == "RMTRIV" and len(parts) == 2:
                script.append(RemoveTrivial(int(parts[1])))
            else:
                raise ParseError(f"bad move line {line!r}", lineno)
        except ValueError:
            raise ParseError(f"bad number in move line {line!r}", lineno) from None
    return script


def _keyword(part, name):
    key, _, value = part.partition("=")
    if key != name or not value:
        raise ParseError(f"expected {name}=..., got {part!r}")
    return value
