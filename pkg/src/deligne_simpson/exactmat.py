"""Exact dense linear algebra over arbitrary-precision rationals.

Matrix entries are ``fractions.Fraction`` values, so every result here is
exact: ranks, characteristic polynomials, generated-algebra dimensions,
centralizer dimensions and the block-gluing linear solves all certify their
answers over Q (which, for rational input, agree with the answers over C).

Rank-type computations clear denominators row by row and then run
fraction-free integer elimination with gcd normalization, which keeps the
intermediate entries small.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

ZERO = Fraction(0)
ONE = Fraction(1)


class NotNilpotentError(ValueError):
    """Raised when an operation requires a nilpotent matrix."""


class NoSolutionError(ValueError):
    """Raised when a linear system has no exact solution."""


def rat_from_str(s: str) -> Fraction:
    return Fraction(s)


def rat_to_str(x: Fraction) -> str:
    return str(x)


# ---------------------------------------------------------------------------
# Matrices


class Mat:
    """Immutable square matrix with Fraction entries."""

    __slots__ = ("n", "rows")

    def __init__(self, rows: Iterable[Iterable]):
        rows = tuple(tuple(Fraction(x) for x in row) for row in rows)
        n = len(rows)
        if n == 0 or any(len(r) != n for r in rows):
            raise ValueError("matrix must be non-empty and square")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "rows", rows)

    def __setattr__(self, *args):
        raise AttributeError("Mat is immutable")

    @staticmethod
    def zero(n: int) -> "Mat":
        return Mat([[ZERO] * n for _ in range(n)])

    @staticmethod
    def identity(n: int) -> "Mat":
        return Mat([[ONE if i == j else ZERO for j in range(n)] for i in range(n)])

    @staticmethod
    def from_entries(n: int, entries: dict[tuple[int, int], Fraction]) -> "Mat":
        """Build an n x n matrix from a sparse {(row, col): value} dict (0-based)."""
        rows = [[ZERO] * n for _ in range(n)]
        for (i, j), v in entries.items():
            rows[i][j] = Fraction(v)
        return Mat(rows)

    def __getitem__(self, ij: tuple[int, int]) -> Fraction:
        return self.rows[ij[0]][ij[1]]

    def __eq__(self, other) -> bool:
        return isinstance(other, Mat) and self.rows == other.rows

    def __hash__(self) -> int:
        return hash(self.rows)

    def __repr__(self) -> str:
        return "Mat(%r)" % (self.rows,)

    def __add__(self, other: "Mat") -> "Mat":
        self._check(other)
        return Mat([[a + b for a, b in zip(ra, rb)] for ra, rb in zip(self.rows, other.rows)])

    def __sub__(self, other: "Mat") -> "Mat":
        self._check(other)
        return Mat([[a - b for a, b in zip(ra, rb)] for ra, rb in zip(self.rows, other.rows)])

    def __neg__(self) -> "Mat":
        return Mat([[-a for a in row] for row in self.rows])

    def __matmul__(self, other: "Mat") -> "Mat":
        self._check(other)
        n = self.n
        cols = list(zip(*other.rows))
        return Mat([[sum((a * b for a, b in zip(row, col) if a and b), ZERO)
                     for col in cols] for row in self.rows])

    def scale(self, c) -> "Mat":
        c = Fraction(c)
        return Mat([[c * a for a in row] for row in self.rows])

    def power(self, k: int) -> "Mat":
        if k < 0:
            raise ValueError("negative power")
        out = Mat.identity(self.n)
        for _ in range(k):
            out = out @ self
        return out

    def transpose(self) -> "Mat":
        return Mat(list(zip(*self.rows)))

    def is_zero(self) -> bool:
        return all(a == 0 for row in self.rows for a in row)

    def trace(self) -> Fraction:
        return sum((self.rows[i][i] for i in range(self.n)), ZERO)

    def inv(self) -> "Mat":
        """Exact inverse via Gauss-Jordan; raises NoSolutionError if singular."""
        n = self.n
        a = [list(row) for row in self.rows]
        b = [[ONE if i == j else ZERO for j in range(n)] for i in range(n)]
        for col in range(n):
            piv = next((r for r in range(col, n) if a[r][col] != 0), None)
            if piv is None:
                raise NoSolutionError("matrix is singular")
            a[col], a[piv] = a[piv], a[col]
            b[col], b[piv] = b[piv], b[col]
            inv_p = ONE / a[col][col]
            a[col] = [x * inv_p for x in a[col]]
            b[col] = [x * inv_p for x in b[col]]
            for r in range(n):
                if r != col and a[r][col] != 0:
                    f = a[r][col]
                    a[r] = [x - f * y for x, y in zip(a[r], a[col])]
                    b[r] = [x - f * y for x, y in zip(b[r], b[col])]
        return Mat(b)

    def conjugate_by(self, p: "Mat") -> "Mat":
        """Return p^-1 @ self @ p."""
        return p.inv() @ self @ p

    def _check(self, other: "Mat"):
        if self.n != other.n:
            raise ValueError("matrix sizes differ: %d vs %d" % (self.n, other.n))

    def to_dict(self) -> dict:
        return {"n": self.n,
                "entries": [[rat_to_str(x) for x in row] for row in self.rows]}

    @staticmethod
    def from_dict(d: dict) -> "Mat":
        m = Mat([[rat_from_str(x) for x in row] for row in d["entries"]])
        if m.n != d["n"]:
            raise ValueError("matrix size field disagrees with entries")
        return m


def mat_sum(ms: Sequence[Mat]) -> Mat:
    out = Mat.zero(ms[0].n)
    for m in ms:
        out = out + m
    return out


# ---------------------------------------------------------------------------
# Integer row reduction (fraction-free)


def _int_row(row: Sequence[Fraction]) -> list[int]:
    """Clear denominators of a rational row and strip its integer content."""
    den = 1
    for x in row:
        den = den * x.denominator // gcd(den, x.denominator)
    out = [int(x * den) for x in row]
    g = 0
    for v in out:
        g = gcd(g, v)
    if g > 1:
        out = [v // g for v in out]
    return out


def _normalize_int_row(row: list[int]) -> list[int]:
    g = 0
    for v in row:
        g = gcd(g, v)
    if g > 1:
        row = [v // g for v in row]
    return row


def _rank_int_rows(rows: list[list[int]]) -> int:
    """Rank of integer rows by fraction-free elimination with gcd stripping."""
    rows = [r for r in rows if any(r)]
    if not rows:
        return 0
    width = len(rows[0])
    rank = 0
    for col in range(width):
        piv = next((i for i in range(rank, len(rows)) if rows[i][col]), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        pv = rows[rank][col]
        for i in range(rank + 1, len(rows)):
            if rows[i][col]:
                c = rows[i][col]
                rows[i] = _normalize_int_row(
                    [pv * a - c * b for a, b in zip(rows[i], rows[rank])])
        rows = rows[:rank + 1] + [r for r in rows[rank + 1:] if any(r)]
        rank += 1
        if rank == len(rows):
            break
    return rank


def rational_rank(rows: Sequence[Sequence[Fraction]]) -> int:
    """Rank over Q of a list of rational rows."""
    return _rank_int_rows([_int_row(r) for r in rows])


def rank(m: Mat) -> int:
    """Rank of m over Q (equal to the rank over C for rational matrices)."""
    return rational_rank(m.rows)


class IntSpan:
    """Incrementally built row space over Q, rows kept integer-normalized.

    Rows are reduced against earlier pivots only; enough to count dimension
    and test membership.
    """

    def __init__(self, width: int):
        self.width = width
        self.rows: list[list[int]] = []
        self.pivots: list[int] = []

    @property
    def dim(self) -> int:
        return len(self.rows)

    def _reduce(self, row: list[int]) -> list[int]:
        for piv, prow in zip(self.pivots, self.rows):
            if row[piv]:
                c = row[piv]
                pv = prow[piv]
                row = _normalize_int_row([pv * a - c * b for a, b in zip(row, prow)])
        return row

    def insert(self, row: Sequence[Fraction]) -> bool:
        """Add a rational vector; True iff it enlarged the span."""
        irow = self._reduce(_int_row(row))
        if not any(irow):
            return False
        piv = next(i for i, v in enumerate(irow) if v)
        self.rows.append(irow)
        self.pivots.append(piv)
        return True

    def contains(self, row: Sequence[Fraction]) -> bool:
        return not any(self._reduce(_int_row(row)))


# ---------------------------------------------------------------------------
# Polynomials


class Poly:
    """Univariate polynomial over Q, coefficients lowest degree first."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable):
        cs = [Fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, *args):
        raise AttributeError("Poly is immutable")

    @staticmethod
    def zero() -> "Poly":
        return Poly([])

    @staticmethod
    def x() -> "Poly":
        return Poly([0, 1])

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __getitem__(self, k: int) -> Fraction:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else ZERO

    def __eq__(self, other) -> bool:
        return isinstance(other, Poly) and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return "Poly(%r)" % (list(self.coeffs),)

    def __add__(self, other: "Poly") -> "Poly":
        n = max(len(self.coeffs), len(other.coeffs))
        return Poly([self[k] + other[k] for k in range(n)])

    def __sub__(self, other: "Poly") -> "Poly":
        n = max(len(self.coeffs), len(other.coeffs))
        return Poly([self[k] - other[k] for k in range(n)])

    def __neg__(self) -> "Poly":
        return Poly([-c for c in self.coeffs])

    def __mul__(self, other: "Poly") -> "Poly":
        if self.is_zero() or other.is_zero():
            return Poly.zero()
        out = [ZERO] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                if b:
                    out[i + j] += a * b
        return Poly(out)

    def scale(self, c) -> "Poly":
        c = Fraction(c)
        return Poly([c * a for a in self.coeffs])

    def shift(self, k: int) -> "Poly":
        """Multiply by x^k."""
        if self.is_zero():
            return self
        return Poly([ZERO] * k + list(self.coeffs))

    def divmod(self, other: "Poly") -> tuple["Poly", "Poly"]:
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = len(rem) - len(other.coeffs)
        if dq < 0:
            return Poly.zero(), self
        quo = [ZERO] * (dq + 1)
        lead = other.coeffs[-1]
        for k in range(dq, -1, -1):
            c = rem[k + other.degree] / lead
            quo[k] = c
            if c:
                for j, b in enumerate(other.coeffs):
                    rem[k + j] -= c * b
        return Poly(quo), Poly(rem)

    def __floordiv__(self, other: "Poly") -> "Poly":
        return self.divmod(other)[0]

    def __mod__(self, other: "Poly") -> "Poly":
        return self.divmod(other)[1]

    def derivative(self) -> "Poly":
        return Poly([k * c for k, c in enumerate(self.coeffs)][1:])

    def monic(self) -> "Poly":
        if self.is_zero():
            return self
        return self.scale(ONE / self.coeffs[-1])

    def eval(self, x) -> Fraction:
        x = Fraction(x)
        out = ZERO
        for c in reversed(self.coeffs):
            out = out * x + c
        return out

    def valuation(self) -> int:
        """Multiplicity of the root 0 (degree+1 of trailing zeros)."""
        if self.is_zero():
            raise ValueError("zero polynomial")
        return next(k for k, c in enumerate(self.coeffs) if c != 0)

    def to_list(self) -> list[str]:
        return [rat_to_str(c) for c in self.coeffs]

    @staticmethod
    def from_list(cs: Sequence[str]) -> "Poly":
        return Poly([rat_from_str(c) for c in cs])


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Monic gcd over Q."""
    while not b.is_zero():
        a, b = b, a % b
    return a.monic() if not a.is_zero() else a


def charpoly(m: Mat) -> Poly:
    """Exact characteristic polynomial det(x*I - m), monic of degree n.

    Computed by similarity reduction to Hessenberg form followed by the
    recurrence on leading principal minors; division-safe over Q.
    """
    n = m.n
    a = [list(row) for row in m.rows]
    # Hessenberg reduction by exact similarity transforms.
    for col in range(n - 2):
        piv = next((r for r in range(col + 1, n) if a[r][col] != 0), None)
        if piv is None:
            continue
        if piv != col + 1:
            a[col + 1], a[piv] = a[piv], a[col + 1]
            for r in range(n):
                a[r][col + 1], a[r][piv] = a[r][piv], a[r][col + 1]
        pv = a[col + 1][col]
        for r in range(col + 2, n):
            if a[r][col] != 0:
                f = a[r][col] / pv
                a[r] = [x - f * y for x, y in zip(a[r], a[col + 1])]
                for i in range(n):
                    a[i][col + 1] += f * a[i][r]
    # p_k = (x - a[k][k]) p_{k-1} - sum_i a[i][k] (prod of subdiagonal) p_{i-1}
    polys = [Poly([ONE])]
    for k in range(n):
        pk = Poly([-a[k][k], ONE]) * polys[k]
        prod = ONE
        for i in range(k - 1, -1, -1):
            prod *= a[i + 1][i]
            if prod == 0:
                break
            if a[i][k] != 0:
                pk = pk - polys[i].scale(a[i][k] * prod)
        polys.append(pk)
    return polys[n]


# ---------------------------------------------------------------------------
# Jordan structure of nilpotent matrices


def jordan_type_nilpotent(m: Mat) -> tuple[int, ...]:
    """Partition of n giving the Jordan block sizes of a nilpotent matrix.

    The number of blocks of size >= k equals rank(m^(k-1)) - rank(m^k).
    Raises NotNilpotentError if m^n != 0.
    """
    n = m.n
    ranks = [n]
    power = m
    while ranks[-1] > 0 and len(ranks) <= n:
        ranks.append(rank(power))
        if ranks[-1] > 0:
            power = power @ m
    if ranks[-1] != 0:
        raise NotNilpotentError("matrix is not nilpotent")
    # counts[k] = number of blocks of size >= k+1
    counts = [ranks[k] - ranks[k + 1] for k in range(len(ranks) - 1)]
    sizes = []
    for s in range(len(counts), 0, -1):
        exact = counts[s - 1] - (counts[s] if s < len(counts) else 0)
        sizes.extend([s] * exact)
    assert sum(sizes) == n
    return tuple(sorted(sizes, reverse=True))


def is_nilpotent(m: Mat) -> bool:
    try:
        jordan_type_nilpotent(m)
        return True
    except NotNilpotentError:
        return False


def kernel_basis(m: Mat) -> list[tuple[Fraction, ...]]:
    """Basis of the right kernel of m, via reduced row echelon form."""
    n = m.n
    rows = [list(r) for r in m.rows]
    pivots: list[int] = []
    r = 0
    for col in range(n):
        piv = next((i for i in range(r, len(rows)) if rows[i][col] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        rows[r] = [x / rows[r][col] for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][col] != 0:
                f = rows[i][col]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(col)
        r += 1
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for fc in free:
        vec = [ZERO] * n
        vec[fc] = ONE
        for i, pc in enumerate(pivots):
            vec[pc] = -rows[i][fc]
        basis.append(tuple(vec))
    return basis


def nilpotent_jordan_basis(m: Mat) -> tuple[Mat, tuple[int, ...]]:
    """Exact P with P^-1 @ m @ P the nilpotent Jordan matrix of m's type.

    Blocks come out in weakly decreasing size order. Raises
    NotNilpotentError for non-nilpotent input.
    """
    n = m.n
    jtype = jordan_type_nilpotent(m)
    t = max(jtype)
    kernels: list[list[tuple[Fraction, ...]]] = [[]]
    power = Mat.identity(n)
    for _ in range(t):
        power = power @ m
        kernels.append(kernel_basis(power))
    # chain = [top, m top, m^2 top, ...]; a chain started at `level` ends in
    # ker(m) after level-1 extensions
    chains: list[list[tuple[Fraction, ...]]] = []
    carried: list[tuple[tuple[Fraction, ...], list]] = []
    for level in range(t, 0, -1):
        span = IntSpan(n)
        for v in kernels[level - 1]:
            span.insert(v)
        for v, chain in carried:
            ok = span.insert(v)
            assert ok, "chain image dependent modulo lower kernel"
            chain.append(v)
        for v in kernels[level]:
            if span.insert(v):
                chains.append([v])
        if level > 1:
            carried = [(apply_mat(m, ch[-1]), ch) for ch in chains]
    cols: list[tuple[Fraction, ...]] = []
    chains.sort(key=len, reverse=True)
    for chain in chains:
        cols.extend(reversed(chain))
    p = Mat(list(zip(*cols)))
    return p, jtype


def apply_mat(m: Mat, v: Sequence[Fraction]) -> tuple[Fraction, ...]:
    return tuple(sum((a * x for a, x in zip(row, v) if a and x), ZERO) for row in m.rows)


def jordan_nilpotent_matrix(parts: Sequence[int]) -> Mat:
    """Nilpotent Jordan matrix with blocks of the given sizes, in order."""
    n = sum(parts)
    entries = {}
    pos = 0
    for b in parts:
        for k in range(b - 1):
            entries[(pos + k, pos + k + 1)] = ONE
        pos += b
    return Mat.from_entries(n, entries)


# ---------------------------------------------------------------------------
# Generated algebra and centralizer


def algebra_closure_dim(ms: Sequence[Mat]) -> int:
    """Dimension of the unital associative algebra generated by ms.

    Breadth-first multiplication with rank-based deduplication, capped at
    n^2 basis elements; the value n^2 certifies irreducibility (Burnside).
    """
    if not ms:
        raise ValueError("need at least one matrix")
    n = ms[0].n
    for m in ms:
        if m.n != n:
            raise ValueError("matrices must share a size")
    span = IntSpan(n * n)
    ident = Mat.identity(n)
    queue = []
    for cand in [ident, *ms]:
        if span.insert([x for row in cand.rows for x in row]):
            queue.append(cand)
    while queue and span.dim < n * n:
        w = queue.pop(0)
        for g in ms:
            prod = w @ g
            if span.insert([x for row in prod.rows for x in row]):
                queue.append(prod)
                if span.dim == n * n:
                    break
    return span.dim


def centralizer_dim(ms: Sequence[Mat]) -> int:
    """Dimension of {X : [X, m] = 0 for all m in ms}; 1 certifies triviality."""
    if not ms:
        raise ValueError("need at least one matrix")
    n = ms[0].n
    rows = []
    for m in ms:
        for a in range(n):
            for b in range(n):
                row = [ZERO] * (n * n)
                for k in range(n):
                    row[a * n + k] += m.rows[k][b]   # (X m)_{ab}
                    row[k * n + b] -= m.rows[a][k]   # (m X)_{ab}
                if any(row):
                    rows.append(row)
    return n * n - rational_rank(rows)


# ---------------------------------------------------------------------------
# Linear solving


def solve_linear(rows: list[list[Fraction]], rhs: list[Fraction]) -> list[Fraction]:
    """Solve rows * x = rhs; minimal-pivot solution with free variables 0.

    Gauss-Jordan with leftmost pivots (deterministic). Raises
    NoSolutionError when the system is inconsistent.
    """
    if not rows:
        return []
    width = len(rows[0])
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    pivots: list[int] = []
    r = 0
    for col in range(width):
        piv = next((i for i in range(r, len(aug)) if aug[i][col] != 0), None)
        if piv is None:
            continue
        aug[r], aug[piv] = aug[piv], aug[r]
        aug[r] = [x / aug[r][col] for x in aug[r]]
        for i in range(len(aug)):
            if i != r and aug[i][col] != 0:
                f = aug[i][col]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[r])]
        pivots.append(col)
        r += 1
        if r == len(aug):
            break
    for i in range(r, len(aug)):
        if aug[i][width] != 0:
            raise NoSolutionError("inconsistent linear system")
    x = [ZERO] * width
    for i, col in enumerate(pivots):
        x[col] = aug[i][width]
    return x


def solve_coboundary_sum(pairs: Sequence[tuple[Mat, Mat]], target: Mat) -> list[Mat]:
    """Solve sum_j (A_j D_j - D_j A'_j) = target for the blocks D_j.

    All blocks are square of one size. The solution is the deterministic
    minimal-pivot one (row-reduced system, leftmost pivots, free variables
    0). Raises NoSolutionError when the target lies outside the image, which
    signals equivalent representations or a deficient image.
    """
    if not pairs:
        raise ValueError("need at least one pair")
    b = pairs[0][0].n
    for aj, apj in pairs:
        if aj.n != b or apj.n != b:
            raise ValueError("all blocks must share one size")
    if target.n != b:
        raise ValueError("target block has wrong size")
    p1 = len(pairs)
    width = p1 * b * b
    rows = []
    rhs = []
    for u in range(b):
        for v in range(b):
            row = [ZERO] * width
            for j, (aj, apj) in enumerate(pairs):
                base = j * b * b
                for k in range(b):
                    row[base + k * b + v] += aj.rows[u][k]
                    row[base + u * b + k] -= apj.rows[k][v]
            rows.append(row)
            rhs.append(target.rows[u][v])
    x = solve_linear(rows, rhs)
    return [Mat([[x[j * b * b + i * b + v] for v in range(b)] for i in range(b)])
            for j in range(p1)]
