"""
Braid words in the Artin generators and the torus-braid conventions used to
build twisted torus knots.

Letter ``+i`` is the generator sigma_i (strand i crosses under strand i+1),
letter ``-i`` its inverse. Words are stored verbatim: nothing is normalized on
construction, so word identities and move replays see exactly what was built.
"""

from __future__ import annotations

import dataclasses
from typing import Iterable, Sequence


class BraidError(ValueError):
    """Invalid braid word or an operation whose precondition is unmet."""


@dataclasses.dataclass(frozen=True)
class BraidWord:
    strands: int
    letters: tuple[int, ...] = ()

    def __post_init__(self):
        if self.strands < 1:
            raise BraidError(f"strand count must be positive, got {self.strands}")
        letters = tuple(int(x) for x in self.letters)
        for x in letters:
            if x == 0 or abs(x) > self.strands - 1:
                raise BraidError(
                    f"letter {x} out of range for {self.strands} strands"
                )
        object.__setattr__(self, "letters", letters)

    def __len__(self) -> int:
        return len(self.letters)

    def __str__(self) -> str:
        return format_braid(self)


@dataclasses.dataclass(frozen=True)
class Permutation:
    """``images[i]`` is the (1-based) bottom position of the strand starting at position i+1."""
    images: tuple[int, ...]

    def __post_init__(self):
        if sorted(self.images) != list(range(1, len(self.images) + 1)):
            raise BraidError(f"not a permutation: {self.images}")

    @classmethod
    def identity(cls, n: int) -> Permutation:
        return cls(tuple(range(1, n + 1)))

    def then(self, other: Permutation) -> Permutation:
        """Apply ``self`` first, then ``other``."""
        return Permutation(tuple(other.images[i - 1] for i in self.images))

    def cycles(self) -> list[tuple[int, ...]]:
        seen = set()
        out = []
        for start in range(1, len(self.images) + 1):
            if start in seen:
                continue
            cyc = []
            x = start
            while x not in seen:
                seen.add(x)
                cyc.append(x)
                x = self.images[x - 1]
            out.append(tuple(cyc))
        return out


# -- constructors -----------------------------------------------------------

def torus_braid(k: int, ell: int) -> BraidWord:
    """``(s_1 s_2 ... s_{k-1})^ell``; negative ``ell`` gives ``(s_{k-1}^-1 ... s_1^-1)^|ell|``."""
    if k < 1:
        raise BraidError("torus braid needs k >= 1")
    if ell >= 0:
        block = list(range(1, k))
    else:
        block = [-i for i in range(k - 1, 0, -1)]
    return BraidWord(k, tuple(block * abs(ell)))


def bar_torus_braid(k: int, ell: int) -> BraidWord:
    """``(s_{k-1} ... s_1)^ell``; negative ``ell`` gives ``(s_1^-1 ... s_{k-1}^-1)^|ell|``."""
    if k < 1:
        raise BraidError("torus braid needs k >= 1")
    if ell >= 0:
        block = list(range(k - 1, 0, -1))
    else:
        block = [-i for i in range(1, k)]
    return BraidWord(k, tuple(block * abs(ell)))


def full_twist(k: int, ell: int) -> BraidWord:
    """``ell`` full twists on ``k`` strands, the torus braid ``(k, ell*k)``."""
    return torus_braid(k, ell * k)


def bar_full_twist(k: int, ell: int) -> BraidWord:
    return bar_torus_braid(k, ell * k)


def concat(b1: BraidWord, b2: BraidWord) -> BraidWord:
    if b1.strands != b2.strands:
        raise BraidError(f"strand mismatch: {b1.strands} vs {b2.strands}")
    return BraidWord(b1.strands, b1.letters + b2.letters)


def embed(b: BraidWord, n: int, offset: int = 0) -> BraidWord:
    """Place ``b`` on strands ``offset+1 .. offset+b.strands`` of an ``n``-strand braid."""
    if offset < 0 or offset + b.strands > n:
        raise BraidError(
            f"cannot embed {b.strands} strands at offset {offset} into {n}"
        )
    return BraidWord(n, tuple(x + offset if x > 0 else x - offset for x in b.letters))


def mirror(b: BraidWord) -> BraidWord:
    return BraidWord(b.strands, tuple(-x for x in b.letters))


def reverse(b: BraidWord) -> BraidWord:
    return BraidWord(b.strands, b.letters[::-1])


def inverse(b: BraidWord) -> BraidWord:
    return mirror(reverse(b))


def flip(b: BraidWord) -> BraidWord:
    """Conjugate by the half twist: ``s_i -> s_{n-i}``."""
    n = b.strands
    return BraidWord(n, tuple(n - x if x > 0 else -(n + x) for x in b.letters))


# -- bookkeeping ------------------------------------------------------------

def permutation(b: BraidWord) -> Permutation:
    # pos[s] = current position of the strand that started at position s+1
    n = b.strands
    at = list(range(n))          # at[position] = strand index occupying it
    for x in b.letters:
        i = abs(x) - 1
        at[i], at[i + 1] = at[i + 1], at[i]
    images = [0] * n
    for position, strand in enumerate(at):
        images[strand] = position + 1
    return Permutation(tuple(images))


def closure_components(b: BraidWord) -> int:
    return len(permutation(b).cycles())


def exponent_sum(b: BraidWord) -> int:
    return sum(1 if x > 0 else -1 for x in b.letters)


# -- Markov moves -------------------------------------------------------------

def conjugate(b: BraidWord, g: int) -> BraidWord:
    """The word ``g^-1 . b . g``."""
    if g == 0 or abs(g) > b.strands - 1:
        raise BraidError(f"conjugating letter {g} out of range for {b.strands} strands")
    return BraidWord(b.strands, (-g,) + b.letters + (g,))


def stabilize(b: BraidWord, sign: int = 1) -> BraidWord:
    if sign not in (1, -1):
        raise BraidError("stabilization sign must be +1 or -1")
    n = b.strands
    return BraidWord(n + 1, b.letters + (sign * n,))


def destabilize(b: BraidWord) -> BraidWord:
    n = b.strands
    if n < 2 or not b.letters or abs(b.letters[-1]) != n - 1:
        raise BraidError(f"last letter is not s_{n - 1}^±1")
    if sum(1 for x in b.letters if abs(x) == n - 1) != 1:
        raise BraidError(f"generator {n - 1} occurs more than once")
    return BraidWord(n - 1, b.letters[:-1])


def free_reduce(b: BraidWord) -> BraidWord:
    stack: list[int] = []
    for x in b.letters:
        if stack and stack[-1] == -x:
            stack.pop()
        else:
            stack.append(x)
    return BraidWord(b.strands, tuple(stack))


# -- move scripts -------------------------------------------------------------

MOVE_KINDS = ("free_reduce", "commute", "braid_relation", "conjugate",
              "stabilize", "destabilize")


@dataclasses.dataclass(frozen=True)
class Move:
    kind: str
    arg: int | None = None

    def __post_init__(self):
        if self.kind not in MOVE_KINDS:
            raise BraidError(f"unknown move {self.kind!r}")
        if self.kind != "destabilize" and self.arg is None:
            raise BraidError(f"move {self.kind} needs an argument")

    def __str__(self) -> str:
        return self.kind if self.arg is None else f"{self.kind} {self.arg}"


class MoveError(BraidError):
    def __init__(self, index: int, move: Move, reason: str):
        super().__init__(f"move {index} ({move}) not applicable: {reason}")
        self.index = index
        self.move = move
        self.reason = reason


def apply_move(b: BraidWord, move: Move) -> BraidWord:
    w = list(b.letters)
    k, a = move.kind, move.arg
    if k == "free_reduce":
        if not 0 <= a < len(w) - 1 or w[a] != -w[a + 1]:
            raise BraidError(f"no cancelling pair at position {a}")
        return BraidWord(b.strands, tuple(w[:a] + w[a + 2:]))
    if k == "commute":
        if not 0 <= a < len(w) - 1 or abs(abs(w[a]) - abs(w[a + 1])) < 2:
            raise BraidError(f"letters at {a}, {a + 1} do not commute")
        w[a], w[a + 1] = w[a + 1], w[a]
        return BraidWord(b.strands, tuple(w))
    if k == "braid_relation":
        if not 0 <= a < len(w) - 2:
            raise BraidError(f"position {a} out of range")
        x, y, z = w[a:a + 3]
        same_sign = (x > 0) == (y > 0) == (z > 0)
        if not (x == z and same_sign and abs(abs(x) - abs(y)) == 1):
            raise BraidError(f"no braid relation pattern at {a}")
        w[a:a + 3] = [y, x, y]
        return BraidWord(b.strands, tuple(w))
    if k == "conjugate":
        return conjugate(b, a)
    if k == "stabilize":
        return stabilize(b, a)
    return destabilize(b)


def apply_move_script(b: BraidWord, script: Sequence[Move]) -> BraidWord:
    """Replay ``script`` move by move; the first illegal move raises :class:`MoveError`."""
    for index, move in enumerate(script):
        try:
            b = apply_move(b, move)
        except BraidError as exc:
            raise MoveError(index, move, str(exc)) from None
    return b


def parse_move_script(text: str) -> list[Move]:
    """One move per line, e.g. ``conjugate -2`` or ``destabilize``; ``#`` starts a comment."""
    moves = []
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        kind = parts[0].replace("-", "_")
        try:
            arg = int(parts[1]) if len(parts) > 1 else None
            if len(parts) > 2:
                raise ValueError("too many fields")
            moves.append(Move(kind, arg))
        except (ValueError, BraidError) as exc:
            raise BraidError(f"line {lineno}: {exc}") from None
    return moves


def format_move_script(script: Iterable[Move]) -> str:
    return "".join(f"{m}\n" for m in script)


# -- text format --------------------------------------------------------------

def format_braid(b: BraidWord) -> str:
    if not b.letters:
        return f"{b.strands}:"
    return f"{b.strands}: " + " ".join(str(x) for x in b.letters)


def parse_braid(text: str) -> BraidWord:
    head, sep, tail = text.strip().partition(":")
    if not sep:
        raise BraidError(f"expected 'n: letters', got {text!r}")
    try:
        n = int(head)
        letters = tuple(int(x) for x in tail.split())
    except ValueError:
        raise BraidError(f"malformed braid word {text!r}") from None
    return BraidWord(n, letters)


# -- closure-preserving simplification ----------------------------------------

def _find_cancellation(letters: list[int]) -> tuple[int, int] | None:
    size = len(letters)
    for i, x in enumerate(letters):
        for step in range(1, size):
            j = (i + step) % size
            y = letters[j]
            if y == -x:
                return i, j
            if abs(abs(y) - abs(x)) < 2:
                break
    return None


class _Simplifier:
    """Mutable working copy of a word that can log every step as a primitive move."""

    def __init__(self, b: BraidWord, record: bool):
        self.n = b.strands
        self.letters = list(b.letters)
        self.script: list[Move] | None = [] if record else None

    def _log(self, kind: str, arg: int | None = None):
        if self.script is not None:
            self.script.append(Move(kind, arg))

    def rotate_left(self, count: int):
        """Move the first ``count`` letters to the end (conjugation, then free reduction)."""
        if self.script is not None:
            for _ in range(count):
                x = self.letters[0]
                self._log("conjugate", x)
                self._log("free_reduce", 0)
                self.letters = self.letters[1:] + [x]
        else:
            self.letters = self.letters[count:] + self.letters[:count]

    def cancel(self, i: int, j: int):
        """Cancel letter ``i`` against the inverse at ``j``, commuting it forward."""
        if j < i:
            self.rotate_left(i)
            j -= i - len(self.letters)
            i = 0
        if self.script is not None:
            for pos in range(i, j - 1):
                self._log("commute", pos)
            self._log("free_reduce", j - 1)
        del self.letters[j]
        del self.letters[i]

    def cancel_all(self):
        """
        Cancel ``x ... x^-1`` pairs around the cyclic word whenever everything
        in between commutes with ``x``.
        """
        while True:
            hit = _find_cancellation(self.letters)
            if hit is None:
                return
            self.cancel(*hit)

    def drop_top_strand(self) -> bool:
        top = [k for k, x in enumerate(self.letters) if abs(x) == self.n - 1]
        if len(top) != 1:
            return False
        self.rotate_left(top[0] + 1)
        self._log("destabilize")
        self.letters.pop()
        self.n -= 1
        return True

    def flip(self):
        n = self.n
        self.letters = [n - x if x > 0 else -(n + x) for x in self.letters]

    def run(self, allow_flip: bool) -> BraidWord:
        self.cancel_all()
        while self.n > 1:
            if not self.drop_top_strand():
                if not allow_flip:
                    break
                self.flip()
                if not self.drop_top_strand():
                    self.flip()
                    break
            self.cancel_all()
        return BraidWord(self.n, tuple(self.letters))


def simplify_closure(b: BraidWord) -> BraidWord:
    """
    A shorter braid with the same closure, found with conjugation, commutation,
    free reduction, destabilization and conjugation by the half twist.

    Isolated strands are kept, so the component count never changes.
    """
    return _Simplifier(b, record=False).run(allow_flip=True)


def simplify_with_script(b: BraidWord) -> tuple[BraidWord, list[Move]]:
    """
    Like :func:`simplify_closure` but without half-twist flips, returning a
    move script that :func:`apply_move_script` replays from ``b`` to the result.
    """
    worker = _Simplifier(b, record=True)
    return worker.run(allow_flip=False), worker.script


def random_word(rng, strands: int, length: int) -> BraidWord:
    """A uniformly random word; ``rng`` is a :class:`random.Random`."""
    if strands < 2:
        return BraidWord(strands)
    letters = [rng.choice((1, -1)) * rng.randint(1, strands - 1) for _ in range(length)]
    return BraidWord(strands, tuple(letters))

