"""Free unital associative algebras with integer coefficients.

An element is a finite map from words (tuples of letters) to nonzero integers;
the empty word is the unit.  Both the cobar algebra and the simplicial DGA are
instances, differing only in what a letter is.
"""
from __future__ import annotations

from typing import Callable, Hashable, Iterable, Mapping


class WordSum:
    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[tuple, int] | None = None):
        clean = {}
        if terms:
            for w, c in terms.items():
                if c:
                    clean[tuple(w)] = clean.get(tuple(w), 0) + int(c)
            clean = {w: c for w, c in clean.items() if c}
        self.terms: dict[tuple, int] = clean

    @classmethod
    def scalar(cls, c: int) -> "WordSum":
        return cls({(): c})

    @classmethod
    def letter(cls, x: Hashable, c: int = 1) -> "WordSum":
        return cls({(x,): c})

    @classmethod
    def word(cls, letters: Iterable[Hashable], c: int = 1) -> "WordSum":
        return cls({tuple(letters): c})

    def _add_into(self, acc: dict, other: "WordSum", sign: int = 1):
        for w, c in other.terms.items():
            acc[w] = acc.get(w, 0) + sign * c

    def __add__(self, other):
        other = _coerce(other)
        acc = dict(self.terms)
        self._add_into(acc, other)
        return WordSum(acc)

    __radd__ = __add__

    def __neg__(self):
        return WordSum({w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-_coerce(other))

    def __rsub__(self, other):
        return _coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, int):
            return WordSum({w: c * other for w, c in self.terms.items()})
        other = _coerce(other)
        acc: dict[tuple, int] = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                w = w1 + w2
                acc[w] = acc.get(w, 0) + c1 * c2
        return WordSum(acc)

    def __rmul__(self, other):
        if isinstance(other, int):
            return self * other
        return _coerce(other) * self

    def __eq__(self, other):
        if isinstance(other, int):
            other = WordSum.scalar(other)
        if not isinstance(other, WordSum):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def constant(self) -> int:
        return self.terms.get((), 0)

    def letters(self) -> set:
        return {x for w in self.terms for x in w}

    def items(self):
        return sorted(self.terms.items(), key=lambda t: (len(t[0]), repr(t[0])))

    def apply_hom(self, image: Callable[[Hashable], object], one, times=None):
        """Evaluate the unital algebra homomorphism sending each letter to image(x).

        ``one`` is the unit of the target and ``times`` its multiplication
        (defaults to ``*``); integer coefficients act by scalar multiplication.
        """
        times = times or (lambda a, b: a * b)
        total = None
        for w, c in self.items():
            val = one
            for x in w:
                val = times(val, image(x))
            term = val * c
            total = term if total is None else total + term
        return one * 0 if total is None else total

    def derive(self, on_letter: Callable[[Hashable], "WordSum"],
               weight: Callable[[Hashable], int]) -> "WordSum":
        """Extend a map on letters as a derivation with Koszul sign.

        D(x1...xn) = sum_i (-1)^{w(x1)+...+w(x_{i-1})} x1...D(xi)...xn.
        """
        acc: dict[tuple, int] = {}
        for w, c in self.terms.items():
            passed = 0
            for i, x in enumerate(w):
                dx = on_letter(x)
                sign = -1 if passed % 2 else 1
                pre, post = w[:i], w[i + 1:]
                for mid, cm in dx.terms.items():
                    key = pre + mid + post
                    acc[key] = acc.get(key, 0) + sign * c * cm
                passed += weight(x)
        return WordSum(acc)

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for w, c in self.items():
            parts.append(f"{c:+d} " + "*".join(str(x) for x in w) if w else f"{c:+d}")
        return " ".join(parts)


def _coerce(x) -> WordSum:
    if isinstance(x, WordSum):
        return x
    if isinstance(x, int):
        return WordSum.scalar(x)
    raise TypeError(f"cannot combine WordSum with {type(x).__name__}")
