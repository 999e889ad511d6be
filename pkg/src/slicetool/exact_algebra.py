"""Exact integer/rational linear algebra and Laurent polynomial arithmetic.

Everything here is arbitrary precision: matrices hold Python ints, the
congruence diagonalization works over Fraction.  No floating point.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, Iterator


class LaurentPoly:
    """An integer Laurent polynomial, stored as {exponent: nonzero coeff}."""

    __slots__ = ("_terms",)

    def __init__(self, terms: dict[int, int] | None = None):
        clean = {e: c for e, c in (terms or {}).items() if c != 0}
        self._terms = dict(sorted(clean.items()))

    @classmethod
    def zero(cls) -> "LaurentPoly":
        return cls({})

    @classmethod
    def one(cls) -> "LaurentPoly":
        return cls({0: 1})

    @classmethod
    def monomial(cls, coeff: int, exp: int) -> "LaurentPoly":
        return cls({exp: coeff})

    @property
    def terms(self) -> dict[int, int]:
        return dict(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def coeff(self, exp: int) -> int:
        return self._terms.get(exp, 0)

    def degree(self) -> int:
        if not self._terms:
            raise ValueError("zero polynomial has no degree")
        return max(self._terms)

    def min_degree(self) -> int:
        if not self._terms:
            raise ValueError("zero polynomial has no degree")
        return min(self._terms)

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        out = dict(self._terms)
        for e, c in other._terms.items():
            out[e] = out.get(e, 0) + c
        return LaurentPoly(out)

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly({e: -c for e, c in self._terms.items()})

    def __sub__(self, other: "LaurentPoly") -> "LaurentPoly":
        return self + (-other)

    def __mul__(self, other: "LaurentPoly") -> "LaurentPoly":
        out: dict[int, int] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = e1 + e2
                out[e] = out.get(e, 0) + c1 * c2
        return LaurentPoly(out)

    def scale(self, c: int) -> "LaurentPoly":
        return LaurentPoly({e: c * v for e, v in self._terms.items()})

    def shift(self, k: int) -> "LaurentPoly":
        """Multiply by t^k."""
        return LaurentPoly({e + k: c for e, c in self._terms.items()})

    def mirror(self) -> "LaurentPoly":
        """Substitute t -> 1/t."""
        return LaurentPoly({-e: c for e, c in self._terms.items()})

    def evaluate(self, value: Fraction | int) -> Fraction:
        """Evaluate at a nonzero rational."""
        x = Fraction(value)
        if x == 0:
            raise ZeroDivisionError("Laurent polynomial at 0")
        return sum((c * x**e for e, c in self._terms.items()), Fraction(0))

    def __eq__(self, other: object) -> bool:
        return isinstance(other, LaurentPoly) and self._terms == other._terms

    def __hash__(self) -> int:
        return hash(tuple(self._terms.items()))

    def __bool__(self) -> bool:
        return bool(self._terms)

    def to_text(self) -> str:
        """Round-trippable form, e.g. ``-1t^-4+1t^-3+1t^-1``; exponent 0 is bare."""
        if not self._terms:
            return "0"
        parts = []
        for e, c in self._terms.items():
            sign = "+" if c > 0 else "-"
            body = str(abs(c)) if e == 0 else f"{abs(c)}t^{e}"
            parts.append(f"{sign}{body}")
        text = "".join(parts)
        return text[1:] if text.startswith("+") else text

    _TERM_RE = re.compile(r"([+-]?\d+)(?:t\^(-?\d+))?")

    @classmethod
    def from_text(cls, text: str) -> "LaurentPoly":
        text = text.strip()
        if text in ("", "0"):
            return cls.zero()
        terms: dict[int, int] = {}
        pos = 0
        for m in cls._TERM_RE.finditer(text):
            if m.start() != pos:
                raise ValueError(f"bad Laurent polynomial text: {text!r}")
            pos = m.end()
            c = int(m.group(1))
            e = int(m.group(2)) if m.group(2) is not None else 0
            terms[e] = terms.get(e, 0) + c
        if pos != len(text):
            raise ValueError(f"bad Laurent polynomial text: {text!r}")
        return cls(terms)

    def __repr__(self) -> str:
        return f"LaurentPoly({self.to_text()!r})"


def laurent_is_unit(p: LaurentPoly) -> bool:
    """True iff p = +-t^k, the units of the integer Laurent ring."""
    t = p.terms
    return len(t) == 1 and abs(next(iter(t.values()))) == 1


class IntMatrix:
    """Immutable integer matrix with exact operations."""

    __slots__ = ("rows", "cols", "_e")

    def __init__(self, rows: int, cols: int, entries: Iterable[int]):
        e = tuple(int(x) for x in entries)
        if len(e) != rows * cols:
            raise ValueError(f"expected {rows * cols} entries, got {len(e)}")
        self.rows = rows
        self.cols = cols
        self._e = e

    @classmethod
    def from_rows(cls, data: Iterable[Iterable[int]]) -> "IntMatrix":
        rows = [list(r) for r in data]
        if not rows:
            return cls(0, 0, [])
        w = len(rows[0])
        if any(len(r) != w for r in rows):
            raise ValueError("ragged rows")
        return cls(len(rows), w, [x for r in rows for x in r])

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls(n, n, [1 if i == j else 0 for i in range(n) for j in range(n)])

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise IndexError(ij)
        return self._e[i * self.cols + j]

    def row(self, i: int) -> tuple[int, ...]:
        return self._e[i * self.cols : (i + 1) * self.cols]

    def to_lists(self) -> list[list[int]]:
        return [list(self.row(i)) for i in range(self.rows)]

    def transpose(self) -> "IntMatrix":
        return IntMatrix(
            self.cols,
            self.rows,
            [self._e[i * self.cols + j] for j in range(self.cols) for i in range(self.rows)],
        )

    def __add__(self, other: "IntMatrix") -> "IntMatrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch")
        return IntMatrix(self.rows, self.cols, [a + b for a, b in zip(self._e, other._e)])

    def __sub__(self, other: "IntMatrix") -> "IntMatrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch")
        return IntMatrix(self.rows, self.cols, [a - b for a, b in zip(self._e, other._e)])

    def __mul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise ValueError("shape mismatch")
        out = []
        ot = other.transpose()
        for i in range(self.rows):
            r = self.row(i)
            for j in range(other.cols):
                c = ot.row(j)
                out.append(sum(a * b for a, b in zip(r, c)))
        return IntMatrix(self.rows, other.cols, out)

    def scale(self, c: int) -> "IntMatrix":
        return IntMatrix(self.rows, self.cols, [c * x for x in self._e])

    def is_square(self) -> bool:
        return self.rows == self.cols

    def is_symmetric(self) -> bool:
        return self.is_square() and all(
            self[i, j] == self[j, i] for i in range(self.rows) for j in range(i + 1, self.cols)
        )

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, IntMatrix)
            and (self.rows, self.cols) == (other.rows, other.cols)
            and self._e == other._e
        )

    def __hash__(self) -> int:
        return hash((self.rows, self.cols, self._e))

    def to_text(self) -> str:
        """Rows joined by ';', entries by ',': ``-1,1;0,-1``."""
        return ";".join(",".join(str(x) for x in self.row(i)) for i in range(self.rows))

    @classmethod
    def from_text(cls, text: str) -> "IntMatrix":
        text = text.strip()
        if not text:
            return cls(0, 0, [])
        rows = [[int(x) for x in part.split(",")] for part in text.split(";")]
        return cls.from_rows(rows)

    def __repr__(self) -> str:
        return f"IntMatrix({self.to_text()!r})"


class DiagonalForm:
    """Diagonal Gram entries of a nondegenerate rational quadratic form."""

    __slots__ = ("entries",)

    def __init__(self, entries: Iterable[Fraction | int]):
        es = tuple(Fraction(x) for x in entries)
        if any(x == 0 for x in es):
            raise ValueError("diagonal form entries must be nonzero")
        self.entries = es

    def __iter__(self) -> Iterator[Fraction]:
        return iter(self.entries)

    def __len__(self) -> int:
        return len(self.entries)

    def __repr__(self) -> str:
        return f"DiagonalForm({[str(x) for x in self.entries]})"


def integer_det(m: IntMatrix) -> int:
    """Exact determinant via fraction-free Bareiss elimination."""
    if not m.is_square():
        raise ValueError("determinant of non-square matrix")
    n = m.rows
    if n == 0:
        return 1
    a = [list(m.row(i)) for i in range(n)]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def _congruence_diagonal(m: IntMatrix) -> list[Fraction]:
    """Diagonal entries of P^T m P for some invertible rational P.

    Zero pivots are repaired by adding the first later basis vector with a
    nonzero pairing; a direction pairing trivially with everything yields a
    zero entry (possible only for singular input).
    """
    if not m.is_symmetric():
        raise ValueError("congruence diagonalization needs a symmetric matrix")
    n = m.rows
    a = [[Fraction(m[i, j]) for j in range(n)] for i in range(n)]
    out: list[Fraction] = []
    pos = 0
    while pos < n:
        if a[pos][pos] == 0:
            for j in range(pos + 1, n):
                if a[pos][j] != 0:
                    for k in range(n):
                        a[pos][k] += a[j][k]
                    for k in range(n):
                        a[k][pos] += a[k][j]
                    break
            else:
                out.append(Fraction(0))
                pos += 1
                continue
        p = a[pos][pos]
        for i in range(pos + 1, n):
            f = a[i][pos] / p
            if f:
                for k in range(n):
                    a[i][k] -= f * a[pos][k]
        for i in range(pos + 1, n):
            f = a[pos][i] / p
            if f:
                for k in range(n):
                    a[k][i] -= f * a[k][pos]
        out.append(p)
        pos += 1
    return out


def symmetric_signature(m: IntMatrix) -> int:
    """Signature of a symmetric integer matrix via exact congruence."""
    d = _congruence_diagonal(m)
    return sum(1 for x in d if x > 0) - sum(1 for x in d if x < 0)


def rational_congruence_diagonalize(m: IntMatrix) -> DiagonalForm:
    """Diagonalize a nonsingular symmetric matrix over the rationals."""
    d = _congruence_diagonal(m)
    if any(x == 0 for x in d):
        raise ValueError("matrix is singular; no nondegenerate diagonalization")
    return DiagonalForm(d)


def laurent_matrix_det(entries: list[list[LaurentPoly]]) -> LaurentPoly:
    """Determinant of a matrix of Laurent polynomials.

    Subset-sum Laplace expansion along columns; fine for the dimensions that
    occur here (restricted Seifert forms, dim <= 8).
    """
    n = len(entries)
    if n == 0:
        return LaurentPoly.one()
    if any(len(r) != n for r in entries):
        raise ValueError("non-square matrix")
    # memo[mask] = det of the submatrix on rows {n-popcount..} and columns in mask
    memo: dict[int, LaurentPoly] = {0: LaurentPoly.one()}

    def det_for(mask: int) -> LaurentPoly:
        if mask in memo:
            return memo[mask]
        cols = [j for j in range(n) if mask >> j & 1]
        i = n - len(cols)  # expand along row i
        acc = LaurentPoly.zero()
        for pos, j in enumerate(cols):
            entry = entries[i][j]
            if entry.is_zero():
                continue
            sub = det_for(mask & ~(1 << j))
            term = entry * sub
            acc = acc + (term if pos % 2 == 0 else -term)
        memo[mask] = acc
        return acc

    return det_for((1 << n) - 1)


def alexander_from_seifert(theta: IntMatrix) -> LaurentPoly:
    """det(t*theta - theta^T) as an integer Laurent polynomial."""
    if not theta.is_square():
        raise ValueError("Seifert matrix must be square")
    n = theta.rows
    entries = [
        [LaurentPoly({1: theta[i, j], 0: -theta[j, i]}) for j in range(n)] for i in range(n)
    ]
    return laurent_matrix_det(entries)
