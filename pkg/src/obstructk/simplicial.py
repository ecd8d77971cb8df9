"""Finite simplicial complexes, cochains, exact cohomology, star covers.

Orientation convention: simplices are stored as strictly ascending vertex
tuples and coboundary signs come from the position of the omitted vertex.
All arithmetic is exact (ints and Fractions); the rationals stand in for
the reals throughout.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd

from . import exactla
from .errors import (
    CoefficientMismatchError,
    InputError,
    InternalInvariantError,
    NotACocycleError,
)

Simplex = tuple


def _as_simplex(seq):
    s = tuple(int(v) for v in seq)
    if any(s[i] >= s[i + 1] for i in range(len(s) - 1)):
        raise InputError(f"simplex {s} is not strictly ascending")
    return s


def _faces(s):
    return [s[:i] + s[i + 1 :] for i in range(len(s))]


class SimplicialComplex:
    """A finite abstract simplicial complex, closed under taking faces.

    Also serves as the nerve of its own star cover, so the same object
    models both the base space and the covering combinatorics.
    """

    def __init__(self, simplices, vertices=None):
        closed = set()
        for s in simplices:
            closed.add(_as_simplex(s))
        for s in list(closed):
            stack = [s]
            while stack:
                t = stack.pop()
                for f in _faces(t):
                    if f and f not in closed:
                        closed.add(f)
                        stack.append(f)
        if vertices is not None:
            for v in vertices:
                closed.add((int(v),))
        if not closed:
            raise InputError("empty complex")
        self._by_dim = {}
        self._index = {}
        self._cobmat = {}
        self._cohomology = {}
        self.simplices = tuple(sorted(closed, key=lambda s: (len(s), s)))
        self._simplex_set = frozenset(self.simplices)
        self.vertices = tuple(v for (v,) in self.simplices_of_dim(0))
        self.dimension = max(len(s) for s in self.simplices) - 1

    @classmethod
    def from_maximal(cls, simplices, vertices=None):
        return cls(simplices, vertices=vertices)

    def __eq__(self, other):
        return isinstance(other, SimplicialComplex) and self.simplices == other.simplices

    def __hash__(self):
        return hash(self.simplices)

    def __repr__(self):
        counts = [len(self.simplices_of_dim(q)) for q in range(self.dimension + 1)]
        return f"SimplicialComplex(f-vector={counts})"

    def __contains__(self, simplex):
        return tuple(simplex) in self._simplex_set

    def simplices_of_dim(self, q):
        if q not in self._by_dim:
            self._by_dim[q] = tuple(s for s in self.simplices if len(s) == q + 1)
        return self._by_dim[q]

    def index_of_dim(self, q):
        if q not in self._index:
            self._index[q] = {s: i for i, s in enumerate(self.simplices_of_dim(q))}
        return self._index[q]

    def coboundary_matrix(self, q):
        """Integer matrix of delta^q, rows (q+1)-simplices, cols q-simplices."""
        if q not in self._cobmat:
            rows = self.simplices_of_dim(q + 1)
            idx = self.index_of_dim(q)
            mat = exactla.zeros(len(rows), len(self.simplices_of_dim(q)))
            for r, s in enumerate(rows):
                for i, f in enumerate(_faces(s)):
                    mat[r][idx[f]] += (-1) ** i
            self._cobmat[q] = mat
        return self._cobmat[q]

    def boundary_matrix(self, q):
        """Integer matrix of the boundary, rows (q-1)-simplices, cols q-simplices."""
        idx = self.index_of_dim(q - 1)
        cols = self.simplices_of_dim(q)
        mat = exactla.zeros(len(self.simplices_of_dim(q - 1)), len(cols))
        for c, s in enumerate(cols):
            for i, f in enumerate(_faces(s)):
                mat[idx[f]][c] += (-1) ** i
        return mat

    def relabel(self, mapping):
        """New complex with vertices renamed through an injective mapping."""
        m = {int(k): int(v) for k, v in mapping.items()}
        if len(set(m.values())) != len(m):
            raise InputError("relabeling is not injective")
        return SimplicialComplex(
            [tuple(sorted(m[v] for v in s)) for s in self.simplices]
        )


class CoefficientSystem:
    """One of: Integers, IntegersMod n, Rationals, RationalVectors k,
    RationalsModIntegers. Carries the value arithmetic for cochains."""

    KINDS = (
        "integers",
        "integers_mod",
        "rationals",
        "rational_vectors",
        "rationals_mod_integers",
    )

    def __init__(self, kind, n=None, k=None):
        if kind not in self.KINDS:
            raise InputError(f"unknown coefficient kind {kind!r}")
        if kind == "integers_mod":
            if n is None or n < 2:
                raise InputError("IntegersMod requires n >= 2")
        elif kind == "rational_vectors":
            if k is None or k < 1:
                raise InputError("RationalVectors requires k >= 1")
        self.kind = kind
        self.n = int(n) if kind == "integers_mod" else None
        self.k = int(k) if kind == "rational_vectors" else None

    def key(self):
        return (self.kind, self.n, self.k)

    def __eq__(self, other):
        return isinstance(other, CoefficientSystem) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        if self.kind == "integers_mod":
            return f"Z/{self.n}"
        if self.kind == "rational_vectors":
            return f"Q^{self.k}"
        return {"integers": "Z", "rationals": "Q", "rationals_mod_integers": "Q/Z"}[
            self.kind
        ]

    def zero(self):
        if self.kind == "rational_vectors":
            return tuple(Fraction(0) for _ in range(self.k))
        if self.kind in ("rationals", "rationals_mod_integers"):
            return Fraction(0)
        return 0

    def normalize(self, value):
        if self.kind == "integers":
            if isinstance(value, Fraction):
                if value.denominator != 1:
                    raise InputError(f"{value} is not an integer")
                value = value.numerator
            return int(value)
        if self.kind == "integers_mod":
            if isinstance(value, Fraction):
                if value.denominator != 1:
                    raise InputError(f"{value} is not an integer")
                value = value.numerator
            return int(value) % self.n
        if self.kind == "rationals":
            return Fraction(value)
        if self.kind == "rationals_mod_integers":
            return Fraction(value) % 1
        vec = tuple(Fraction(x) for x in value)
        if len(vec) != self.k:
            raise InputError(f"expected a vector of length {self.k}")
        return vec

    def add(self, a, b):
        if self.kind == "rational_vectors":
            return tuple(x + y for x, y in zip(a, b))
        return self.normalize(a + b)

    def neg(self, a):
        if self.kind == "rational_vectors":
            return tuple(-x for x in a)
        return self.normalize(-a)

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def scale(self, c, a):
        if self.kind == "rational_vectors":
            return tuple(Fraction(c) * x for x in a)
        return self.normalize(c * a)

    def is_zero(self, a):
        return self.normalize(a) == self.zero()


INTEGERS = CoefficientSystem("integers")
RATIONALS = CoefficientSystem("rationals")
RATIONALS_MOD_1 = CoefficientSystem("rationals_mod_integers")


def integers_mod(n):
    return CoefficientSystem("integers_mod", n=n)


def rational_vectors(k):
    return CoefficientSystem("rational_vectors", k=k)


class Cochain:
    """Degree-q assignment of coefficient values to ascending q-simplices.

    Absent key means zero. Values are normalized on construction and zero
    values are dropped, so equality is canonical.
    """

    def __init__(self, complex_, degree, coeff, values=None):
        self.complex = complex_
        self.degree = int(degree)
        self.coeff = coeff
        vals = {}
        if values:
            simplices = (
                complex_._simplex_set if degree >= 0 else frozenset()
            )
            for key, raw in values.items():
                s = tuple(int(v) for v in key)
                if len(s) != degree + 1 or s not in simplices:
                    raise InputError(
                        f"key {s} is not a {degree}-simplex of the complex"
                    )
                v = coeff.normalize(raw)
                if not coeff.is_zero(v):
                    vals[s] = v
        self.values = vals

    @classmethod
    def zero(cls, complex_, degree, coeff):
        return cls(complex_, degree, coeff, {})

    @classmethod
    def from_vector(cls, complex_, degree, coeff, vector):
        simplices = complex_.simplices_of_dim(degree)
        return cls(
            complex_, degree, coeff, dict(zip(simplices, vector))
        )

    def value(self, simplex):
        return self.values.get(tuple(simplex), self.coeff.zero())

    def value_oriented(self, seq):
        """Value on an arbitrary-order vertex sequence, with orientation sign."""
        seq = tuple(seq)
        srt = tuple(sorted(seq))
        if len(set(seq)) != len(seq):
            return self.coeff.zero()
        sign = _permutation_sign(seq, srt)
        v = self.value(srt)
        return v if sign == 1 else self.coeff.neg(v)

    def vector(self):
        return [self.value(s) for s in self.complex.simplices_of_dim(self.degree)]

    def is_zero(self):
        return not self.values

    def map_values(self, coeff, fn):
        """Reinterpret through a value map into another coefficient system."""
        return Cochain(
            self.complex,
            self.degree,
            coeff,
            {s: fn(v) for s, v in self.values.items()},
        )

    def _check_compatible(self, other):
        if self.complex is not other.complex and self.complex != other.complex:
            raise CoefficientMismatchError("cochains live on different complexes")
        if self.degree != other.degree or self.coeff != other.coeff:
            raise CoefficientMismatchError(
                "cochain degree/coefficient mismatch: "
                f"{self.degree}/{self.coeff} vs {other.degree}/{other.coeff}"
            )

    def add(self, other):
        self._check_compatible(other)
        vals = dict(self.values)
        for s, v in other.values.items():
            vals[s] = self.coeff.add(vals.get(s, self.coeff.zero()), v)
        return Cochain(self.complex, self.degree, self.coeff, vals)

    def neg(self):
        return Cochain(
            self.complex,
            self.degree,
            self.coeff,
            {s: self.coeff.neg(v) for s, v in self.values.items()},
        )

    def sub(self, other):
        return self.add(other.neg())

    def scale(self, c):
        return Cochain(
            self.complex,
            self.degree,
            self.coeff,
            {s: self.coeff.scale(c, v) for s, v in self.values.items()},
        )

    def __eq__(self, other):
        return (
            isinstance(other, Cochain)
            and self.degree == other.degree
            and self.coeff == other.coeff
            and self.complex == other.complex
            and self.values == other.values
        )

    def __repr__(self):
        return f"Cochain(q={self.degree}, coeff={self.coeff}, support={len(self.values)})"


def _permutation_sign(seq, sorted_seq):
    perm = [sorted_seq.index(v) for v in seq]
    sign = 1
    for i in range(len(perm)):
        for j in range(i + 1, len(perm)):
            if perm[i] > perm[j]:
                sign = -sign
    return sign


def coboundary(c: Cochain) -> Cochain:
    """Simplicial coboundary: (dc)(v0..vq+1) = sum_i (-1)^i c(v0 .. omit i .. )."""
    X = c.complex
    if c.degree < 0:
        return Cochain.zero(X, 0, c.coeff)
    out = {}
    coeff = c.coeff
    for s in X.simplices_of_dim(c.degree + 1):
        acc = coeff.zero()
        for i, f in enumerate(_faces(s)):
            v = c.values.get(f)
            if v is None:
                continue
            acc = coeff.add(acc, v if i % 2 == 0 else coeff.neg(v))
        if not coeff.is_zero(acc):
            out[s] = acc
    return Cochain(X, c.degree + 1, c.coeff, out)


def first_coboundary_violation(c: Cochain):
    """The least (q+1)-simplex where delta(c) is nonzero, or None."""
    d = coboundary(c)
    if d.is_zero():
        return None
    return min(d.values)


# ---------------------------------------------------------------------------
# Cohomology engine
# ---------------------------------------------------------------------------


@dataclass
class CohomologyGroup:
    complex: SimplicialComplex
    coeff: CoefficientSystem
    degree: int
    free_rank: int
    torsion: list
    generators: list
    _engine: object = field(repr=False, default=None)

    def describe(self):
        parts = []
        if self.free_rank:
            base = {
                "rationals": "Q",
                "rational_vectors": "Q",
                "rationals_mod_integers": "Q/Z",
            }.get(self.coeff.kind, "Z")
            parts.append(base if self.free_rank == 1 else f"{base}^{self.free_rank}")
        parts.extend(f"Z/{d}" for d in self.torsion)
        return " + ".join(parts) if parts else "0"


@dataclass
class CohomologyClass:
    group: CohomologyGroup
    free_coords: list
    torsion_coords: list
    witness: Cochain | None

    @property
    def is_zero(self):
        return self.witness is not None

    def coordinates(self):
        return (tuple(self.torsion_coords), tuple(self.free_coords))


class _DegreeData:
    """SNF bookkeeping for one (complex, degree): shared by all coefficients."""

    def __init__(self, X, q):
        self.X = X
        self.q = q
        self.nq = len(X.simplices_of_dim(q))
        self.A = X.coboundary_matrix(q - 1) if q >= 1 else exactla.zeros(self.nq, 0)
        self.B = X.coboundary_matrix(q)
        self.snfB = exactla.snf(self.B, ncols=self.nq)
        self.rB = self.snfB.rank
        self.kernel_dim = self.nq - self.rB
        full = exactla.mat_mul(self.snfB.vinv, self.A)
        for i in range(self.rB):
            if any(x != 0 for x in full[i]):
                raise InternalInvariantError("image of delta escapes the kernel")
        self.M = full[self.rB :]
        self.snfM = exactla.snf(self.M)
        self.rM = self.snfM.rank
        self._snfA = None
        self._snf_stacked = {}

    @property
    def snfA(self):
        if self._snfA is None:
            self._snfA = exactla.snf(self.A)
        return self._snfA

    def snf_stacked(self, n):
        # [A | n*I] for mod-n witness solves
        if n not in self._snf_stacked:
            ncols_a = len(self.A[0]) if self.A else 0
            stacked = [
                row[:] + [n if j == i else 0 for j in range(self.nq)]
                for i, row in enumerate(self.A)
            ]
            if not stacked and self.nq == 0:
                stacked = []
            self._snf_stacked[n] = (exactla.snf(stacked), ncols_a)
        return self._snf_stacked[n]

    def kernel_basis_column(self, i):
        """Column r_B + i of V_B, a basis vector of the cocycle lattice."""
        v = self.snfB.v
        return [v[r][self.rB + i] for r in range(self.nq)]

    def kernel_combination(self, coeffs):
        v = self.snfB.v
        out = [0] * self.nq
        for i, c in enumerate(coeffs):
            if c == 0:
                continue
            for r in range(self.nq):
                out[r] += c * v[r][self.rB + i]
        return out

    def kernel_coordinates(self, vec, exact_cocycle=True):
        """y = Vinv_B @ vec; checks the leading r_B coordinates vanish."""
        y = exactla.mat_vec(self.snfB.vinv, vec)
        if exact_cocycle:
            for i in range(self.rB):
                if y[i] != 0:
                    raise InternalInvariantError("vector is not in the cocycle lattice")
        return y

    def solve_integer_coboundary(self, vec):
        """x with A x = vec over the integers; class-zero input required."""
        s = self.snfA
        u = exactla.mat_vec(s.u, vec)
        y = [0] * (len(self.A[0]) if self.A else 0)
        for i in range(s.rank):
            if u[i] % s.divisors[i] != 0:
                raise InternalInvariantError("integer witness solve failed")
            y[i] = u[i] // s.divisors[i]
        for i in range(s.rank, len(u)):
            if u[i] != 0:
                raise InternalInvariantError("integer witness solve failed")
        return exactla.mat_vec(s.v, y)

    def solve_rational_coboundary(self, vec, modulo_integers=False):
        """x with A x = vec over Q; with modulo_integers, A x = vec mod Z^nq."""
        s = self.snfA
        u = exactla.mat_vec(s.u, [Fraction(x) for x in vec])
        ncols = len(self.A[0]) if self.A else 0
        y = [Fraction(0)] * ncols
        for i in range(s.rank):
            y[i] = u[i] / s.divisors[i]
        for i in range(s.rank, len(u)):
            if modulo_integers:
                if u[i].denominator != 1:
                    raise InternalInvariantError("mod-1 witness solve failed")
            elif u[i] != 0:
                raise InternalInvariantError("rational witness solve failed")
        return exactla.mat_vec(s.v, y)

    def solve_mod_n_coboundary(self, vec, n):
        (s, ncols_a) = self.snf_stacked(n)
        u = exactla.mat_vec(s.u, vec)
        y = [0] * s.ncols
        for i in range(s.rank):
            if u[i] % s.divisors[i] != 0:
                raise InternalInvariantError("mod-n witness solve failed")
            y[i] = u[i] // s.divisors[i]
        for i in range(s.rank, len(u)):
            if u[i] != 0:
                raise InternalInvariantError("mod-n witness solve failed")
        full = exactla.mat_vec(s.v, y)
        return [x % n for x in full[:ncols_a]]


class _ScalarEngine:
    """Classification data for one (complex, degree, scalar coefficient)."""

    def __init__(self, data: _DegreeData, coeff: CoefficientSystem):
        self.data = data
        self.coeff = coeff
        kind = coeff.kind
        if kind == "integers" or kind == "rationals":
            e = data.snfM.divisors
            self.torsion_indices = [i for i, d in enumerate(e) if d >= 2]
            self.free_indices = list(range(data.rM, data.kernel_dim))
            if kind == "integers":
                self.torsion = [e[i] for i in self.torsion_indices]
            else:
                self.torsion_indices = []
                self.torsion = []
            self.free_rank = len(self.free_indices)
        elif kind == "rationals_mod_integers":
            dB = self.data.snfB.divisors
            self.torsion_indices = [i for i, d in enumerate(dB) if d >= 2]
            self.torsion = [dB[i] for i in self.torsion_indices]
            self.free_indices = list(range(data.rM, data.kernel_dim))
            self.free_rank = len(self.free_indices)
        elif kind == "integers_mod":
            n = coeff.n
            data_dB = data.snfB.divisors
            self.s = [
                n // gcd(data_dB[i], n) if i < data.rB else 1
                for i in range(data.nq)
            ]
            cols = []
            vinv = data.snfB.vinv
            ncols_a = len(data.A[0]) if data.A else 0
            for j in range(ncols_a):
                col = [sum(vinv[r][t] * data.A[t][j] for t in range(data.nq)) for r in range(data.nq)]
                cols.append(self._scale_down(col))
            for j in range(data.nq):
                col = [n * vinv[r][j] for r in range(data.nq)]
                cols.append(self._scale_down(col))
            N = [[cols[c][r] for c in range(len(cols))] for r in range(data.nq)]
            self.snfN = exactla.snf(N)
            if self.snfN.rank != data.nq:
                raise InternalInvariantError("mod-n relation lattice is degenerate")
            f = self.snfN.divisors
            self.torsion_indices = [i for i, d in enumerate(f) if d >= 2]
            self.torsion = [f[i] for i in self.torsion_indices]
            self.all_divisors = f
            self.free_indices = []
            self.free_rank = 0
        else:
            raise InputError(f"unsupported scalar coefficient {coeff}")

    def _scale_down(self, col):
        out = []
        for i, x in enumerate(col):
            if x % self.s[i] != 0:
                raise InternalInvariantError("relation column escapes the cocycle lattice")
            out.append(x // self.s[i])
        return out

    # -- generators ---------------------------------------------------------

    def generators(self):
        d = self.data
        gens = []
        kind = self.coeff.kind
        if kind in ("integers", "rationals"):
            uinv = d.snfM.uinv
            for i in self.torsion_indices + self.free_indices:
                coeffs = [uinv[r][i] for r in range(d.kernel_dim)]
                vec = d.kernel_combination(coeffs)
                gens.append([self.coeff.normalize(x) for x in vec])
        elif kind == "rationals_mod_integers":
            dB = d.snfB.divisors
            for i in self.torsion_indices:
                col = [Fraction(d.snfB.v[r][i], dB[i]) for r in range(d.nq)]
                gens.append([x % 1 for x in col])
            uinv = d.snfM.uinv
            for i in self.free_indices:
                coeffs = [uinv[r][i] for r in range(d.kernel_dim)]
                vec = d.kernel_combination(coeffs)
                gens.append([Fraction(x, 2) % 1 for x in vec])
        elif kind == "integers_mod":
            n = self.coeff.n
            uinv = self.snfN.uinv
            for i in self.torsion_indices:
                coeffs = [uinv[r][i] for r in range(d.nq)]
                vec = [0] * d.nq
                for j, c in enumerate(coeffs):
                    if c == 0:
                        continue
                    sj = self.s[j]
                    for r in range(d.nq):
                        vec[r] += c * sj * d.snfB.v[r][j]
                gens.append([x % n for x in vec])
        return gens

    # -- classification -----------------------------------------------------

    def classify(self, vec):
        """Returns (torsion_coords, free_coords, is_zero, witness_vector|None)."""
        d = self.data
        kind = self.coeff.kind
        if kind == "integers":
            y = d.kernel_coordinates(vec)
            c = y[d.rB :]
            w = exactla.mat_vec(d.snfM.u, c)
            e = d.snfM.divisors
            torsion = [w[i] % e[i] for i in self.torsion_indices]
            free = [w[i] for i in self.free_indices]
            zero = all(t == 0 for t in torsion) and all(f == 0 for f in free)
            witness = d.solve_integer_coboundary(vec) if zero else None
            return torsion, free, zero, witness
        if kind == "rationals":
            y = d.kernel_coordinates([Fraction(x) for x in vec])
            c = y[d.rB :]
            w = exactla.mat_vec(d.snfM.u, c)
            free = [w[i] for i in self.free_indices]
            zero = all(f == 0 for f in free)
            witness = d.solve_rational_coboundary(vec) if zero else None
            return [], free, zero, witness
        if kind == "rationals_mod_integers":
            lift = [Fraction(x) for x in vec]
            y = exactla.mat_vec(d.snfB.vinv, lift)
            dB = d.snfB.divisors
            for i in range(d.rB):
                if (dB[i] * y[i]).denominator != 1:
                    raise InternalInvariantError("circle cocycle coordinates not integral")
            torsion = []
            for i in self.torsion_indices:
                torsion.append(int(dB[i] * y[i]) % dB[i])
            c = y[d.rB :]
            w = exactla.mat_vec(d.snfM.u, c)
            free = [w[i] % 1 for i in self.free_indices]
            zero = all(t == 0 for t in torsion) and all(f == 0 for f in free)
            witness = None
            if zero:
                witness = [
                    x % 1 for x in d.solve_rational_coboundary(lift, modulo_integers=True)
                ]
            return torsion, free, zero, witness
        if kind == "integers_mod":
            n = self.coeff.n
            y = exactla.mat_vec(d.snfB.vinv, [int(x) % n for x in vec])
            c = []
            for i, yi in enumerate(y):
                if yi % self.s[i] != 0:
                    raise InternalInvariantError("mod-n cocycle coordinates not in lattice")
                c.append(yi // self.s[i])
            w = exactla.mat_vec(self.snfN.u, c)
            f = self.all_divisors
            torsion = [w[i] % f[i] for i in self.torsion_indices]
            zero = all(w[i] % f[i] == 0 for i in range(d.nq))
            witness = d.solve_mod_n_coboundary([int(x) % n for x in vec], n) if zero else None
            return torsion, [], zero, witness
        raise InputError(f"unsupported coefficient {self.coeff}")


def _degree_data(X, q):
    key = ("degree-data", q)
    if key not in X._cohomology:
        X._cohomology[key] = _DegreeData(X, q)
    return X._cohomology[key]


def cohomology_group(X: SimplicialComplex, coeff: CoefficientSystem, q: int) -> CohomologyGroup:
    """H^q(X; coeff): free rank, invariant factors, generator cocycles."""
    if q < 0 or q > X.dimension + 1:
        raise InputError(f"degree {q} out of range 0..{X.dimension + 1}")
    key = (coeff.key(), q)
    if key in X._cohomology:
        return X._cohomology[key]

    if coeff.kind == "rational_vectors":
        scalar = cohomology_group(X, RATIONALS, q)
        k = coeff.k
        gens = []
        for comp in range(k):
            for g in scalar.generators:
                vals = {
                    s: tuple(v if c == comp else Fraction(0) for c in range(k))
                    for s, v in g.values.items()
                }
                gens.append(Cochain(X, q, coeff, vals))
        group = CohomologyGroup(
            complex=X,
            coeff=coeff,
            degree=q,
            free_rank=k * scalar.free_rank,
            torsion=[],
            generators=gens,
            _engine=("vectors", scalar),
        )
        X._cohomology[key] = group
        return group

    data = _degree_data(X, q)
    engine = _ScalarEngine(data, coeff)
    gens = [
        Cochain.from_vector(X, q, coeff, vec) for vec in engine.generators()
    ]
    group = CohomologyGroup(
        complex=X,
        coeff=coeff,
        degree=q,
        free_rank=engine.free_rank,
        torsion=list(engine.torsion),
        generators=gens,
        _engine=engine,
    )
    X._cohomology[key] = group
    return group


def classify_cocycle(z: Cochain, group: CohomologyGroup) -> CohomologyClass:
    """Coordinates of [z] in the group; witness with delta(witness) = z when zero."""
    if z.complex != group.complex:
        raise CoefficientMismatchError("cochain and group complexes differ")
    if z.degree != group.degree:
        raise CoefficientMismatchError(
            f"cochain degree {z.degree} does not match group degree {group.degree}"
        )
    if z.coeff != group.coeff:
        raise CoefficientMismatchError(
            f"cochain coefficients {z.coeff} do not match group {group.coeff}"
        )
    bad = first_coboundary_violation(z)
    if bad is not None:
        raise NotACocycleError(bad)

    X = group.complex
    q = group.degree
    if isinstance(group._engine, tuple) and group._engine[0] == "vectors":
        scalar_group = group._engine[1]
        k = group.coeff.k
        free = []
        torsion = []
        witnesses = []
        zero = True
        for comp in range(k):
            comp_vals = {s: v[comp] for s, v in z.values.items()}
            zc = Cochain(X, q, RATIONALS, comp_vals)
            cls = classify_cocycle(zc, scalar_group)
            free.extend(cls.free_coords)
            zero = zero and cls.is_zero
            witnesses.append(cls.witness)
        witness = None
        if zero:
            vals = {}
            for comp, wc in enumerate(witnesses):
                for s, v in wc.values.items():
                    cur = vals.setdefault(s, [Fraction(0)] * k)
                    cur[comp] = v
            witness = Cochain(X, q - 1, group.coeff, {s: tuple(v) for s, v in vals.items()})
        return CohomologyClass(group, free, torsion, witness)

    engine = group._engine
    torsion, free, zero, wvec = engine.classify(z.vector())
    witness = None
    if zero:
        if q == 0:
            witness = Cochain(X, -1, group.coeff, {})
        else:
            witness = Cochain.from_vector(X, q - 1, group.coeff, wvec)
    return CohomologyClass(group, free, torsion, witness)


def homology_cycle_basis(X: SimplicialComplex, q: int):
    """Integral q-cycles generating the free part of H_q(X), as vectors."""
    nq = len(X.simplices_of_dim(q))
    bd_q = X.boundary_matrix(q) if q >= 1 else exactla.zeros(0, nq)
    if q + 1 <= X.dimension:
        bd_q1 = X.boundary_matrix(q + 1)
    else:
        bd_q1 = [[] for _ in range(nq)]
    s = exactla.snf(bd_q, ncols=nq)
    r = s.rank
    k = nq - r
    full = exactla.mat_mul(s.vinv, bd_q1)
    m = full[r:]
    sm = exactla.snf(m, ncols=len(bd_q1[0]) if bd_q1 and bd_q1[0] else 0)
    basis = []
    for i in range(sm.rank, k):
        coeffs = [sm.uinv[t][i] for t in range(k)]
        vec = [0] * nq
        for j, c in enumerate(coeffs):
            if c == 0:
                continue
            for t in range(nq):
                vec[t] += c * s.v[t][r + j]
        basis.append(vec)
    return basis


def pair_cochain_with_cycle(z: Cochain, cycle):
    """<z, c> for a chain given as a vector over the q-simplices."""
    total = None
    for x, s in zip(cycle, z.complex.simplices_of_dim(z.degree)):
        if x == 0:
            continue
        term = z.coeff.scale(x, z.value(s))
        total = term if total is None else z.coeff.add(total, term)
    return z.coeff.zero() if total is None else total


# ---------------------------------------------------------------------------
# Star covers
# ---------------------------------------------------------------------------


@dataclass
class Cover:
    """The closed-star cover of a complex; its nerve is the complex itself."""

    complex: SimplicialComplex
    elements: dict

    def intersection_simplices(self, seq):
        """Simplices shared by the stars of the given vertices."""
        want = set(int(v) for v in seq)
        return tuple(s for s in self.complex.simplices if want <= set(s))

    def intersection_vertices(self, seq):
        """Vertices v with {v} together with seq spanning a simplex."""
        base = tuple(sorted(set(int(x) for x in seq)))
        out = []
        for v in self.complex.vertices:
            joined = tuple(sorted(set(base) | {v}))
            if joined in self.complex:
                out.append(v)
        return tuple(out)

    def nerve(self) -> SimplicialComplex:
        simplices = [
            s for s in self.complex.simplices if self.intersection_simplices(s)
        ]
        nerve = SimplicialComplex(simplices)
        if nerve.simplices != self.complex.simplices:
            raise InternalInvariantError("nerve of the star cover differs from the complex")
        return nerve


def star_nerve(X: SimplicialComplex) -> Cover:
    """Closed vertex stars; U_{i0..iq} nonempty exactly when {i0..iq} is a simplex."""
    elements = {}
    for v in X.vertices:
        # s lies in the closed star of v exactly when s + {v} spans a simplex
        star = [
            s for s in X.simplices if tuple(sorted(set(s) | {v})) in X
        ]
        elements[v] = tuple(star)
    return Cover(complex=X, elements=elements)


def pullback_cochain(h: Cochain, phi, X: SimplicialComplex) -> Cochain:
    """Pull a cochain back along a simplicial isomorphism phi: X -> h.complex."""
    vals = {}
    for s in X.simplices_of_dim(h.degree):
        image = [phi[v] for v in s]
        v = h.value_oriented(image)
        if not h.coeff.is_zero(v):
            vals[s] = v
    return Cochain(X, h.degree, h.coeff, vals)
