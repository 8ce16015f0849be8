"""Block-structured hypersurface models u = Phi(x, s) and their quadric normal forms.

A model in C^{n+1} is a list of blocks.  Block j owns the consecutive real
variables x_{o+1}..x_{o+n_j} (o being the total size of earlier blocks) and
contributes eps_j * (f_j(x_{o+1}) + sum x_{o+a} x_{o+b} s^{n_j+1-a-b}), the sum
running over ordered pairs a, b >= 1 with a + b <= n_j + 1.  All blocks share
s = Re zeta.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import product

from .jet import Jet, jet_from_spec
from .ring import SQRT2, Poly, QSqrt2, VarTable


class ModelError(ValueError):
    pass


@dataclass(frozen=True)
class BlockSpec:
    size: int
    sign: int = 1
    jet: Jet = field(default_factory=Jet.zero)

    def __post_init__(self):
        if not isinstance(self.size, int) or self.size < 1:
            raise ModelError(f"block size must be a positive integer, got {self.size!r}")
        if self.sign not in (1, -1):
            raise ModelError(f"block sign must be +1 or -1, got {self.sign!r}")

    def to_json(self):
        return {"size": self.size, "sign": self.sign, "jet": self.jet.to_json()}


@dataclass(frozen=True)
class HSModel:
    n: int
    blocks: tuple

    def __post_init__(self):
        object.__setattr__(self, "blocks", tuple(self.blocks))
        if not isinstance(self.n, int) or self.n < 2:
            raise ModelError("n must be an integer >= 2")
        if not self.blocks:
            raise ModelError("a model needs at least one block")
        total = sum(b.size for b in self.blocks)
        if total != self.n - 1:
            raise ModelError(f"block sizes sum to {total}, expected n - 1 = {self.n - 1}")

    @classmethod
    def single(cls, n, jet=None, sign=1):
        return cls(n, (BlockSpec(n - 1, sign, jet if jet is not None else Jet.zero()),))

    @classmethod
    def from_blocks(cls, sizes, signs=None, jets=None):
        sizes = list(sizes)
        signs = signs or [1] * len(sizes)
        jets = jets or [Jet.zero()] * len(sizes)
        return cls(sum(sizes) + 1, tuple(BlockSpec(a, e, j) for a, e, j in zip(sizes, signs, jets)))

    @property
    def table(self) -> VarTable:
        return VarTable.chart(self.n)

    @property
    def sizes(self):
        return tuple(b.size for b in self.blocks)

    @property
    def offsets(self):
        out, o = [], 0
        for b in self.blocks:
            out.append(o)
            o += b.size
        return out

    @property
    def jet_order(self):
        """Smallest order among non-exact jets (None when every jet is exact)."""
        orders = [b.jet.order for b in self.blocks if not b.jet.exact]
        return min(orders) if orders else None

    @property
    def exact(self):
        return all(b.jet.exact for b in self.blocks)

    @cached_property
    def quadric(self) -> Poly:
        """Phi without the jet contributions."""
        tab = self.table
        s = Poly.var(tab, "s")
        spow = [Poly.const(tab, 1)]
        for _ in range(self.n):
            spow.append(spow[-1] * s)
        total = Poly.zero(tab)
        for block, off in zip(self.blocks, self.offsets):
            m = block.size
            xs = [Poly.var(tab, f"x{off + i}") for i in range(1, m + 1)]
            part = Poly.zero(tab)
            for a, b in product(range(1, m + 1), repeat=2):
                if a + b <= m + 1:
                    part = part + xs[a - 1] * xs[b - 1] * spow[m + 1 - a - b]
            total = total + part.scale(block.sign)
        return total

    @cached_property
    def defining_polynomial(self) -> Poly:
        tab = self.table
        total = self.quadric
        for block, off in zip(self.blocks, self.offsets):
            if not block.jet.is_zero():
                total = total + block.jet.poly(tab, f"x{off + 1}").scale(block.sign)
        return total

    def with_jet(self, jet, index=0):
        blocks = list(self.blocks)
        blocks[index] = BlockSpec(blocks[index].size, blocks[index].sign, jet)
        return HSModel(self.n, tuple(blocks))

    def to_json(self):
        return {"n": self.n, "blocks": [b.to_json() for b in self.blocks]}

    @classmethod
    def from_json(cls, data):
        blocks = []
        for b in data["blocks"]:
            jet = jet_from_spec(b["jet"]) if "jet" in b else Jet.zero()
            blocks.append(BlockSpec(b["size"], b.get("sign", 1), jet))
        return cls(data["n"], tuple(blocks))


def link(m1: HSModel, m2: HSModel) -> HSModel:
    """Sum of the two defining functions with the s variable identified."""
    return HSModel(m1.n + m2.n - 1, m1.blocks + m2.blocks)


def extend(m: HSModel, sign: int = 1) -> HSModel:
    """Add the square eps * x_new^2 of one new variable."""
    return HSModel(m.n + 1, m.blocks + (BlockSpec(1, sign, Jet.zero()),))


# quadric normal forms ----------------------------------------------------

def _check_palindrome(sizes):
    sizes = tuple(sizes)
    if not sizes or any(not isinstance(a, int) or a < 1 for a in sizes):
        raise ModelError("sizes must be positive integers")
    if sizes != sizes[::-1]:
        raise ModelError(f"sizes {sizes} are not palindromic")
    return sizes


def _offsets(sizes):
    out, o = [], 0
    for a in sizes:
        out.append(o)
        o += a
    return out


def staircase(l):
    """S_l: ones where j + k <= l + 1 (1-based)."""
    return [[Fraction(1) if j + k <= l + 1 else Fraction(0) for k in range(1, l + 1)] for j in range(1, l + 1)]


def smatrix_normal_form(sizes):
    """Block anti-diagonal S with S_{n_1} bottom-left up to S_{n_mu} top-right."""
    sizes = _check_palindrome(sizes)
    dim = sum(sizes)
    mu = len(sizes)
    off = _offsets(sizes)
    S = [[Fraction(0)] * dim for _ in range(dim)]
    for r in range(mu):
        c = mu - 1 - r
        blk = staircase(sizes[c])
        for i, row in enumerate(blk):
            for j, val in enumerate(row):
                S[off[r] + i][off[c] + j] = val
    return S


@dataclass(frozen=True)
class SModel:
    """Hypersurface u = sum S_{jk} x_j x_k s^{n-j-k} for a symmetric matrix S."""

    S: tuple

    def __post_init__(self):
        S = tuple(tuple(Fraction(x) for x in row) for row in self.S)
        object.__setattr__(self, "S", S)
        m = len(S)
        if any(len(row) != m for row in S):
            raise ModelError("S must be square")
        for j in range(m):
            for k in range(m):
                if S[j][k] != S[k][j]:
                    raise ModelError("S must be symmetric")

    @property
    def n(self):
        return len(self.S) + 1

    @property
    def table(self):
        return VarTable.chart(self.n)

    blocks = None
    exact = True
    jet_order = None

    @cached_property
    def defining_polynomial(self):
        tab, n = self.table, self.n
        s = Poly.var(tab, "s")
        total = Poly.zero(tab)
        for j in range(1, n):
            for k in range(1, n):
                c = self.S[j - 1][k - 1]
                if c and j + k <= n:
                    total = total + (Poly.var(tab, f"x{j}") * Poly.var(tab, f"x{k}") * s ** (n - j - k)).scale(c)
        return total

    @property
    def quadric(self):
        return self.defining_polynomial


def quadric_matrices_from_S(S):
    """Q_1..Q_{n-1} with sum_j x^T Q_j x s^{j-1} equal to the S-polynomial."""
    m = len(S)
    n = m + 1
    out = []
    for j in range(1, n):
        Q = [[Fraction(0)] * m for _ in range(m)]
        for r in range(1, m + 1):
            for c in range(1, m + 1):
                if r + c == n + 1 - j:
                    Q[r - 1][c - 1] = Fraction(S[r - 1][c - 1])
        out.append(Q)
    return out


def _qblock(size, j):
    """Q_{size; j}: entry (r, s) equals 1 iff r + s = size + 2 - j."""
    return [[Fraction(1) if r + c == size + 2 - j else Fraction(0) for c in range(1, size + 1)] for r in range(1, size + 1)]


def quadric_matrices(sizes):
    """Block anti-diagonal Q_j assembled from the per-block Q_{n_i; j}."""
    sizes = _check_palindrome(sizes)
    dim, mu, off = sum(sizes), len(sizes), _offsets(sizes)
    out = []
    for j in range(1, dim + 1):
        Q = [[Fraction(0)] * dim for _ in range(dim)]
        for r in range(mu):
            c = mu - 1 - r
            blk = _qblock(sizes[c], j)
            for a, row in enumerate(blk):
                for b, val in enumerate(row):
                    Q[off[r] + a][off[c] + b] = val
        out.append(Q)
    return out


def quadric_hat_matrices(sizes):
    """Block-diagonal Qhat_j = diag(Q_{n_1;j}, .., Q_{n_h;j}, -Q_{n_{h+1};j}, ..), h = ceil(mu/2)."""
    sizes = _check_palindrome(sizes)
    dim, mu, off = sum(sizes), len(sizes), _offsets(sizes)
    half = (mu + 1) // 2
    out = []
    for j in range(1, dim + 1):
        Q = [[Fraction(0)] * dim for _ in range(dim)]
        for i in range(mu):
            sign = 1 if i < half else -1
            for a, row in enumerate(_qblock(sizes[i], j)):
                for b, val in enumerate(row):
                    Q[off[i] + a][off[i] + b] = sign * val
        out.append(Q)
    return out


def conjugating_matrix(sizes):
    """X = (1/sqrt2)[[I, I], [I, -I]] paired outside-in, sqrt2*I on an odd middle block."""
    sizes = _check_palindrome(sizes)
    dim, mu, off = sum(sizes), len(sizes), _offsets(sizes)
    zero = QSqrt2(0)
    half_root = SQRT2 / 2
    X = [[zero] * dim for _ in range(dim)]
    for i in range(mu // 2):
        k = mu - 1 - i
        for a in range(sizes[i]):
            X[off[i] + a][off[i] + a] = half_root
            X[off[i] + a][off[k] + a] = half_root
            X[off[k] + a][off[i] + a] = half_root
            X[off[k] + a][off[k] + a] = -half_root
    if mu % 2:
        m = mu // 2
        for a in range(sizes[m]):
            X[off[m] + a][off[m] + a] = QSqrt2(1)
    return X


@dataclass
class ConjugationCertificate:
    sizes: tuple
    X: list
    Q: list
    Qhat: list
    holds: bool
    failures: list


def _sandwich(X, Q):
    dim = len(X)
    QX = [[sum((Q[r][k] * X[k][c] for k in range(dim) if Q[r][k]), QSqrt2(0)) for c in range(dim)] for r in range(dim)]
    return [[sum((X[k][r] * QX[k][c] for k in range(dim)), QSqrt2(0)) for c in range(dim)] for r in range(dim)]


def conjugation_witness(sizes) -> ConjugationCertificate:
    """Check Q_j = X^T Qhat_j X exactly in Q(sqrt 2) for every j."""
    sizes = _check_palindrome(sizes)
    X = conjugating_matrix(sizes)
    Qs, Qh = quadric_matrices(sizes), quadric_hat_matrices(sizes)
    failures = []
    for j, (Q, H) in enumerate(zip(Qs, Qh), start=1):
        got = _sandwich(X, H)
        if any(got[r][c] != Q[r][c] for r in range(len(Q)) for c in range(len(Q))):
            failures.append(j)
    if failures:
        raise ModelError(f"conjugation identity fails for j in {failures}")
    return ConjugationCertificate(sizes, X, Qs, Qh, True, failures)


def enumerate_block_structures(n):
    """Palindromic compositions of n - 1, without the all-ones composition."""
    if n < 3:
        raise ModelError("enumeration needs n >= 3")
    m = n - 1
    found = []
    for mask in range(1 << (m - 1)):
        parts, cur = [], 1
        for i in range(m - 1):
            if mask >> i & 1:
                parts.append(cur)
                cur = 1
            else:
                cur += 1
        parts.append(cur)
        t = tuple(parts)
        if t == t[::-1] and any(a > 1 for a in t):
            found.append(t)
    return sorted(found, key=lambda t: (len(t), t))


def admissible_model(sizes, jets=None):
    """Signed block model for a palindromic structure: + on the first ceil(mu/2) blocks."""
    sizes = _check_palindrome(sizes)
    half = (len(sizes) + 1) // 2
    signs = [1 if i < half else -1 for i in range(len(sizes))]
    return HSModel.from_blocks(sizes, signs, jets)
