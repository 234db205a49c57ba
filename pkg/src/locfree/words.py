"""Exact algebra of freely reduced words over a finite generator alphabet.

Words are plain Python strings in compact notation: a lowercase letter is a
generator, the corresponding uppercase letter is its inverse ("TatB" reads
t-inverse, a, t, b-inverse).  All functions return freely reduced words.
Cyclic words get their own class because they need a canonical rotation for
equality testing.
"""

from fractions import Fraction

from .errors import AlphabetError, RangeError


def inverse_letter(ch):
    return ch.swapcase()


class Alphabet:
    """An ordered set of single lowercase generator letters.

    The order is total and fixed at construction; it drives canonical
    rotations (positive letter sorts before its inverse).

    >>> ab = Alphabet("ab")
    >>> sorted("bBaA", key=ab.letter_key)
    ['a', 'A', 'b', 'B']
    """

    __slots__ = ("letters", "_index")

    def __init__(self, letters):
        if isinstance(letters, Alphabet):
            letters = letters.letters
        letters = str(letters)
        if not letters:
            raise AlphabetError("alphabet must contain at least one generator")
        seen = set()
        for ch in letters:
            if not ("a" <= ch <= "z"):
                raise AlphabetError(f"generator {ch!r} is not a lowercase letter")
            if ch in seen:
                raise AlphabetError(f"duplicate generator {ch!r}")
            seen.add(ch)
        self.letters = letters
        self._index = {ch: i for i, ch in enumerate(letters)}

    def __contains__(self, gen):
        return gen in self._index

    def __iter__(self):
        return iter(self.letters)

    def __len__(self):
        return len(self.letters)

    def __eq__(self, other):
        return isinstance(other, Alphabet) and self.letters == other.letters

    def __hash__(self):
        return hash(self.letters)

    def __repr__(self):
        return f"Alphabet({self.letters!r})"

    def index(self, gen):
        try:
            return self._index[gen]
        except KeyError:
            raise AlphabetError(f"unknown generator {gen!r}") from None

    def letter_key(self, ch):
        """Sort key for a signed letter: generator index, positive first."""
        return (self.index(ch.lower()), 0 if ch.islower() else 1)

    def word_key(self, word):
        return tuple(self.letter_key(ch) for ch in word)

    def check_word(self, word):
        """Validate every letter of ``word``; return the word unchanged."""
        for ch in word:
            if ch.lower() not in self._index:
                raise AlphabetError(f"unknown generator {ch.lower()!r} in {word!r}")
        return word

    def extend(self, gen):
        if gen in self._index:
            raise AlphabetError(f"generator {gen!r} already present")
        return Alphabet(self.letters + gen)

    def remove(self, gen):
        self.index(gen)
        return Alphabet(self.letters.replace(gen, ""))


def reduce_word(raw):
    """Freely reduce a letter sequence.

    >>> reduce_word("aA")
    ''
    >>> reduce_word("TatTAt")
    ''
    >>> reduce_word("xYYyy")
    'x'
    """
    out = []
    for ch in raw:
        if out and out[-1] == ch.swapcase():
            out.pop()
        else:
            out.append(ch)
    return "".join(out)


def is_reduced(word):
    return all(word[i] != word[i + 1].swapcase() for i in range(len(word) - 1))


def invert(word):
    """Inverse word: reverse the letters and flip every sign."""
    return word[::-1].swapcase()


def multiply(u, v):
    return reduce_word(u + v)


def conjugate(x, y):
    """Conjugate of x by y, written x^y: y-inverse, x, y."""
    return reduce_word(invert(y) + x + y)


def commutator(u, v):
    return reduce_word(u + v + invert(u) + invert(v))


def power(word, n):
    if n < 0:
        return power(invert(word), -n)
    return reduce_word(word * n)


def is_cyclically_reduced(word):
    if len(word) < 2:
        return is_reduced(word)
    return is_reduced(word) and word[0] != word[-1].swapcase()


def cyclic_reduce(word):
    """Split a word as conjugate(core, conjugator) with a cyclically reduced core.

    >>> cyclic_reduce("Tat")
    ('a', 't')
    >>> cyclic_reduce("")
    ('', '')
    """
    core = reduce_word(word)
    conj = ""
    while len(core) >= 2 and core[0] == core[-1].swapcase():
        conj = core[-1] + conj
        core = core[1:-1]
    return core, conj


def rotate(word, k):
    if not word:
        return word
    k %= len(word)
    return word[k:] + word[:k]


class CyclicWord:
    """A cyclically reduced word stored in its canonical rotation.

    The canonical rotation is the lexicographically least one under the
    alphabet order (positive letter before its inverse), so structural
    equality coincides with cyclic equality.

    >>> CyclicWord("TatB", Alphabet("abt")).letters
    'atBT'
    """

    __slots__ = ("alphabet", "letters")

    def __init__(self, word, alphabet):
        alphabet = Alphabet(alphabet)
        alphabet.check_word(word)
        core, _ = cyclic_reduce(word)
        if core:
            core = min((rotate(core, k) for k in range(len(core))),
                       key=alphabet.word_key)
        self.alphabet = alphabet
        self.letters = core

    def __len__(self):
        return len(self.letters)

    def __eq__(self, other):
        return (isinstance(other, CyclicWord)
                and self.alphabet == other.alphabet
                and self.letters == other.letters)

    def __hash__(self):
        return hash((self.alphabet, self.letters))

    def __repr__(self):
        return f"CyclicWord({self.letters!r})"

    def rotations(self):
        return [rotate(self.letters, k) for k in range(len(self.letters))]

    def inverse(self):
        return CyclicWord(invert(self.letters), self.alphabet)


def make_weights(alphabet, values):
    """Total generator-to-integer weight map as a plain dict.

    ``values`` is either a single integer (same weight everywhere) or a
    mapping that must cover the whole alphabet.
    """
    alphabet = Alphabet(alphabet)
    if isinstance(values, int):
        return {g: values for g in alphabet}
    weights = {}
    for g in alphabet:
        if g not in values:
            raise AlphabetError(f"weight map misses generator {g!r}")
        weights[g] = int(values[g])
    for g in values:
        if g not in alphabet:
            raise AlphabetError(f"weight for unknown generator {g!r}")
    return weights


def exponent_sum(word, weights):
    """Weighted exponent sum; a homomorphism to the integers.

    >>> exponent_sum("TatB", {"a": 1, "b": 1, "t": 1})
    0
    >>> exponent_sum("at", {"a": 1, "t": 1})
    2
    """
    total = 0
    for ch in word:
        g = ch.lower()
        if g not in weights:
            raise AlphabetError(f"no weight for generator {g!r}")
        total += weights[g] if ch.islower() else -weights[g]
    return total


def substitute(word, images):
    """Apply the homomorphism sending each generator to its image word.

    >>> substitute("TTattaTAtA", {"a": "xt", "t": "t"})
    'TTxtttxTXX'
    """
    parts = []
    for ch in word:
        g = ch.lower()
        if g not in images:
            raise AlphabetError(f"no image for generator {g!r}")
        img = images[g]
        parts.append(img if ch.islower() else invert(img))
    return reduce_word("".join(parts))


def build_W(s, x="x", y="y"):
    """The staircase word x y^4 x y^5 x ... x y^(4+s) x.

    Its length is (s+2) + (s+1)(s+8)/2.

    >>> build_W(3, "x", "y")
    'xyyyyxyyyyyxyyyyyyxyyyyyyyx'
    """
    if s < 3:
        raise RangeError(f"staircase parameter must be at least 3, got {s}")
    if x == y:
        raise AlphabetError("the two staircase generators must differ")
    parts = [x]
    for k in range(4, 4 + s + 1):
        parts.append(y * k)
        parts.append(x)
    return "".join(parts)


def build_W_length(s):
    """Closed form for len(build_W(s))."""
    if s < 3:
        raise RangeError(f"staircase parameter must be at least 3, got {s}")
    return (s + 2) + (s + 1) * (s + 8) // 2


def format_fraction(q):
    """Render an exact rational as ``p`` or ``p/q``."""
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"
