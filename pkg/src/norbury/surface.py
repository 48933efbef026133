"""Presentations of nonorientable punctured surfaces and word algebra.

A surface N_{g,n} (g crosscaps, n punctures, 2 - g - n < 0) is presented by
the free group on crosscap generators a_1..a_g and puncture loops x_1..x_{n-1}.
The n peripheral words are x_1, ..., x_{n-1} and the defining-relation word
a_1^2 ... a_g^2 x_1 ... x_{n-1}, the last being the boundary of the
distinguished cusp by default.

Words are tuples of nonzero ints: +i is generator i, -i its inverse
(1-based).  Strings use one lowercase letter per generator, uppercase for the
inverse, e.g. "aaB".
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import NotHyperbolic

Word = tuple  # tuple of nonzero ints


def free_reduce(letters) -> Word:
    out = []
    for s in letters:
        if s == 0:
            raise ValueError("zero letter")
        if out and out[-1] == -s:
            out.pop()
        else:
            out.append(int(s))
    return tuple(out)


def inverse_word(w: Word) -> Word:
    return tuple(-s for s in reversed(w))


def concat(*words: Word) -> Word:
    letters = []
    for w in words:
        letters.extend(w)
    return free_reduce(letters)


def word_power(w: Word, k: int) -> Word:
    if k < 0:
        return word_power(inverse_word(w), -k)
    return concat(*([w] * k)) if k else ()


def cyclic_reduce(w: Word):
    """(core, conjugator) with w = conjugator * core * conjugator^-1."""
    w = free_reduce(w)
    pre = []
    while len(w) > 1 and w[0] == -w[-1]:
        pre.append(w[0])
        w = w[1:-1]
    return tuple(w), tuple(pre)


def canonical_conjugacy(w: Word) -> Word:
    """Cyclically reduced, lexicographically least rotation among the word and
    its inverse; constant on unoriented conjugacy classes."""
    core, _ = cyclic_reduce(w)
    if not core:
        return ()
    best = None
    for cand in (core, inverse_word(core)):
        for i in range(len(cand)):
            rot = cand[i:] + cand[:i]
            if best is None or rot < best:
                best = rot
    return best


@dataclass(frozen=True)
class SurfacePresentation:
    """Free presentation of N_{g,n} with peripheral structure."""

    crosscap_count: int
    puncture_count: int
    distinguished_cusp: int
    generator_names: tuple = field(default=())

    def __post_init__(self):
        g, n = self.crosscap_count, self.puncture_count
        if g < 1 or n < 1:
            raise NotHyperbolic("need at least one crosscap and one puncture")
        if 2 - g - n >= 0:
            raise NotHyperbolic(f"N_{{{g},{n}}} has Euler characteristic {2 - g - n} >= 0")
        if not (0 <= self.distinguished_cusp < n):
            raise ValueError("distinguished cusp index out of range")
        if not self.generator_names:
            crosscaps = tuple("abcdefgh"[:g])
            punctures = tuple("xyzuvw"[: n - 1])
            object.__setattr__(self, "generator_names", crosscaps + punctures)

    @property
    def rank(self) -> int:
        return self.crosscap_count + self.puncture_count - 1

    @property
    def euler_characteristic(self) -> int:
        return 2 - self.crosscap_count - self.puncture_count

    def word_from_string(self, s: str) -> Word:
        letters = []
        for ch in s:
            if ch in " \t":
                continue
            low = ch.lower()
            if low not in self.generator_names:
                raise ValueError(f"unknown generator letter {ch!r}")
            idx = self.generator_names.index(low) + 1
            letters.append(idx if ch.islower() else -idx)
        return free_reduce(letters)

    def word_to_string(self, w: Word) -> str:
        out = []
        for s in w:
            name = self.generator_names[abs(s) - 1]
            out.append(name if s > 0 else name.upper())
        return "".join(out)

    def peripheral_words(self) -> list:
        """One word per cusp; the last is the defining-relation word read as
        the boundary of the default distinguished cusp."""
        g, n = self.crosscap_count, self.puncture_count
        words = [(g + i,) for i in range(1, n)]
        relation = []
        for i in range(1, g + 1):
            relation += [i, i]
        for i in range(1, n):
            relation.append(g + i)
        words.append(tuple(relation))
        return words

    def meridian(self) -> Word:
        """Peripheral word of the distinguished cusp."""
        return self.peripheral_words()[self.distinguished_cusp]

    def orientation_character(self, w: Word) -> int:
        """1 for 1-sided classes, 0 for 2-sided; counts crosscap letters mod 2."""
        g = self.crosscap_count
        return sum(1 for s in w if abs(s) <= g) % 2

    def crosscap_vector(self, w: Word) -> tuple:
        """Exponent sums of the crosscap generators mod 2 (H_1(N; Z/2)
        coordinates that carry the intersection form)."""
        g = self.crosscap_count
        v = [0] * g
        for s in w:
            if abs(s) <= g:
                v[abs(s) - 1] ^= 1
        return tuple(v)

    def parity_z2(self, u: Word, v: Word) -> int:
        """Mod-2 intersection pairing of the classes [u], [v] in H_1(N; Z/2).

        Peripheral and puncture-loop classes lie in the radical; crosscap
        classes pair by the identity form, so the pairing is the dot product
        of crosscap exponent vectors mod 2."""
        cu, cv = self.crosscap_vector(u), self.crosscap_vector(v)
        return sum(x & y for x, y in zip(cu, cv)) % 2

    def is_peripheral_class(self, w: Word) -> bool:
        can = canonical_conjugacy(w)
        for p in self.peripheral_words():
            if canonical_conjugacy(p) == can:
                return True
            # powers of peripherals are cusp-parallel too
            core, _ = cyclic_reduce(w)
            pc = canonical_conjugacy(p)
            if core and len(core) % len(pc) == 0:
                k = len(core) // len(pc)
                if canonical_conjugacy(word_power(p, k)) == can:
                    return True
        return False

    def cusp_index_of_class(self, w: Word):
        """Index of the cusp whose peripheral class (or its inverse) is [w],
        or None."""
        can = canonical_conjugacy(w)
        for i, p in enumerate(self.peripheral_words()):
            if canonical_conjugacy(p) == can:
                return i
        return None

    def spec(self) -> dict:
        return {
            "crosscaps": self.crosscap_count,
            "punctures": self.puncture_count,
            "cusp": self.distinguished_cusp,
        }


def presentation(g: int, n: int, cusp: int | None = None) -> SurfacePresentation:
    """Standard presentation of N_{g,n}; `cusp` defaults to the relation-word
    cusp (index n-1)."""
    if cusp is None:
        cusp = n - 1
    return SurfacePresentation(g, n, cusp)


def from_spec(d: dict) -> SurfacePresentation:
    return presentation(int(d["crosscaps"]), int(d["punctures"]), int(d.get("cusp", d["punctures"] - 1)))
