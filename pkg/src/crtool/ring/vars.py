"""Variable tables: ordered variables with kind tags and real/conjugate pairings."""
from __future__ import annotations

from functools import lru_cache

from .kernels import BITS

REAL, HOLO, ANTI = "real", "holomorphic", "antiholomorphic"


class VarTable:
    """An ordered list of variables.

    ``realpair`` maps each holomorphic variable to its (real part, imaginary
    part) variables; ``conjpair`` maps holomorphic to antiholomorphic names
    and back.  Position in the table fixes the bit field of each exponent and
    the lexicographic priority in the monomial order.
    """

    __slots__ = ("names", "kinds", "index", "shifts", "realpair", "conjpair", "_key")

    def __init__(self, variables, realpair=None, conjpair=None):
        names = tuple(name for name, _ in variables)
        if len(set(names)) != len(names):
            raise ValueError("duplicate variable names")
        self.names = names
        self.kinds = {name: kind for name, kind in variables}
        self.index = {name: i for i, name in enumerate(names)}
        count = len(names)
        # variable 0 sits in the most significant field, so that integer
        # comparison of equal-degree keys is lexicographic
        self.shifts = {name: BITS * (count - 1 - i) for i, name in enumerate(names)}
        self.realpair = dict(realpair or {})
        conjpair = dict(conjpair or {})
        for a, b in list(conjpair.items()):
            conjpair.setdefault(b, a)
        self.conjpair = conjpair
        for h, (re, im) in self.realpair.items():
            if self.kinds.get(h) != HOLO or self.kinds.get(re) != REAL or self.kinds.get(im) != REAL:
                raise ValueError(f"bad realification pair for {h}")
        for a, b in self.conjpair.items():
            if {self.kinds.get(a), self.kinds.get(b)} != {HOLO, ANTI}:
                raise ValueError(f"bad conjugation pair {a} <-> {b}")
        self._key = (names, tuple(sorted(self.realpair.items())), tuple(sorted(self.conjpair.items())))

    def __len__(self):
        return len(self.names)

    def __contains__(self, name):
        return name in self.index

    def __eq__(self, other):
        return self is other or (isinstance(other, VarTable) and self._key == other._key)

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        return f"VarTable({', '.join(self.names)})"

    def kind(self, name):
        try:
            return self.kinds[name]
        except KeyError:
            raise KeyError(f"unknown variable {name!r}") from None

    def shift(self, name):
        try:
            return self.shifts[name]
        except KeyError:
            raise KeyError(f"unknown variable {name!r}") from None

    def of_kind(self, kind):
        return [n for n in self.names if self.kinds[n] == kind]

    @staticmethod
    @lru_cache(maxsize=None)
    def chart(n: int) -> "VarTable":
        """Coordinates of C^{n+1} for the hypersurface models.

        Holomorphic ``w, z1..z{n-1}, zeta`` with conjugates ``wb, z1b.., zetab``
        and real coordinates ``w = u + i v``, ``z_j = x_j + i y_j``,
        ``zeta = s + i t``.  Real variables come first.
        """
        if n < 2:
            raise ValueError("chart needs n >= 2")
        m = n - 1
        variables = [(f"x{j}", REAL) for j in range(1, m + 1)] + [("s", REAL)]
        variables += [(f"y{j}", REAL) for j in range(1, m + 1)] + [("t", REAL), ("u", REAL), ("v", REAL)]
        holo = ["w"] + [f"z{j}" for j in range(1, m + 1)] + ["zeta"]
        variables += [(h, HOLO) for h in holo]
        variables += [(h + "b", ANTI) for h in holo]
        realpair = {"w": ("u", "v"), "zeta": ("s", "t")}
        realpair.update({f"z{j}": (f"x{j}", f"y{j}") for j in range(1, m + 1)})
        conjpair = {h: h + "b" for h in holo}
        return VarTable(variables, realpair, conjpair)


def holo_coords(n: int):
    """Holomorphic coordinate names in chart order: w, z1, ..., z{n-1}, zeta."""
    return ["w"] + [f"z{j}" for j in range(1, n)] + ["zeta"]


def real_coords(n: int):
    """Real parts in the order used by defining functions: x1, ..., x{n-1}, s."""
    return [f"x{j}" for j in range(1, n)] + ["s"]
