"""Structure-group backends, central extensions with sections, and the
cochain chase for short exact coefficient sequences.

Backends are exact: finite multiplication tables, rationals mod 1 for the
circle, plain rationals/integers for its cover, and rational quaternions /
rotation matrices for the SU(2) -> SO(3) story. A float-tolerance mode
exists only for importing numeric quaternion data; nothing verified runs
through it.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt

from .errors import (
    AmbiguousLiftError,
    CoefficientMismatchError,
    DiscontinuousDataError,
    InputError,
    InternalInvariantError,
    NotACocycleError,
)
from .simplicial import (
    Cochain,
    CoefficientSystem,
    INTEGERS,
    RATIONALS,
    RATIONALS_MOD_1,
    coboundary,
    first_coboundary_violation,
    integers_mod,
)


# ---------------------------------------------------------------------------
# Backends
# ---------------------------------------------------------------------------


class FiniteTable:
    """Finite group as an index table. Group axioms are checked on load."""

    kind = "finite_table"

    def __init__(self, names, table, name=None):
        self.names = tuple(str(x) for x in names)
        n = len(self.names)
        if len(set(self.names)) != n:
            raise InputError("duplicate element names")
        self.table = tuple(tuple(int(x) for x in row) for row in table)
        if len(self.table) != n or any(len(r) != n for r in self.table):
            raise InputError("multiplication table must be n x n")
        if any(x < 0 or x >= n for row in self.table for x in row):
            raise InputError("table entry out of range")
        self.name = name or "group"
        self._validate()
        self.identity_elem = self._identity
        self._inverse = [None] * n
        for a in range(n):
            for b in range(n):
                if self.table[a][b] == self._identity:
                    self._inverse[a] = b
        if any(v is None for v in self._inverse):
            raise InputError("an element has no inverse")

    def _validate(self):
        n = len(self.names)
        ident = None
        for e in range(n):
            if all(self.table[e][x] == x and self.table[x][e] == x for x in range(n)):
                ident = e
                break
        if ident is None:
            raise InputError("no identity element")
        self._identity = ident
        for a in range(n):
            for b in range(n):
                for c in range(n):
                    if self.table[self.table[a][b]][c] != self.table[a][self.table[b][c]]:
                        raise InputError(
                            f"associativity fails at ({self.names[a]}, {self.names[b]}, {self.names[c]})"
                        )

    def __len__(self):
        return len(self.names)

    def elements(self):
        return range(len(self.names))

    def mul(self, a, b):
        return self.table[a][b]

    def inv(self, a):
        return self._inverse[a]

    def identity(self):
        return self.identity_elem

    def eq(self, a, b):
        return a == b

    def contains(self, a):
        return isinstance(a, int) and 0 <= a < len(self.names)

    def index(self, name):
        try:
            return self.names.index(str(name))
        except ValueError:
            raise InputError(f"{name!r} is not an element of {self.name}")

    def format(self, a):
        return self.names[a]

    def order_of(self, a):
        e = self.identity_elem
        x, k = a, 1
        while x != e:
            x = self.mul(x, a)
            k += 1
        return k

    def __repr__(self):
        return f"FiniteTable({self.name}, order {len(self.names)})"


class CircleRational:
    """The circle as rationals mod 1, exact."""

    kind = "circle_rational"
    name = "circle"

    def mul(self, a, b):
        return (Fraction(a) + Fraction(b)) % 1

    def inv(self, a):
        return (-Fraction(a)) % 1

    def identity(self):
        return Fraction(0)

    def eq(self, a, b):
        return (Fraction(a) - Fraction(b)) % 1 == 0

    def contains(self, a):
        return isinstance(a, (int, Fraction))

    def format(self, a):
        f = Fraction(a) % 1
        return f"{f.numerator}/{f.denominator}"

    def __repr__(self):
        return "CircleRational()"


class RationalAdditive:
    """The additive rationals; the exact cover of the circle."""

    kind = "rational_additive"
    name = "rational_line"

    def mul(self, a, b):
        return Fraction(a) + Fraction(b)

    def inv(self, a):
        return -Fraction(a)

    def identity(self):
        return Fraction(0)

    def eq(self, a, b):
        return Fraction(a) == Fraction(b)

    def contains(self, a):
        return isinstance(a, (int, Fraction))

    def format(self, a):
        f = Fraction(a)
        return f"{f.numerator}/{f.denominator}"

    def __repr__(self):
        return "RationalAdditive()"


class IntegerAdditive:
    """The additive integers; fiber of the circle cover."""

    kind = "integer_additive"
    name = "integers"

    def mul(self, a, b):
        return int(a) + int(b)

    def inv(self, a):
        return -int(a)

    def identity(self):
        return 0

    def eq(self, a, b):
        return int(a) == int(b)

    def contains(self, a):
        return isinstance(a, int) or (isinstance(a, Fraction) and a.denominator == 1)

    def format(self, a):
        return str(int(a))

    def __repr__(self):
        return "IntegerAdditive()"


def _fraction_sqrt(x: Fraction) -> Fraction:
    if x < 0:
        raise InputError("negative value has no rational square root")
    num, den = x.numerator, x.denominator
    rn, rd = isqrt(num), isqrt(den)
    if rn * rn != num or rd * rd != den:
        raise InputError(f"{x} is not a perfect rational square")
    return Fraction(rn, rd)


def quat_mul(p, q):
    a1, b1, c1, d1 = p
    a2, b2, c2, d2 = q
    return (
        a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2,
        a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2,
        a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2,
        a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2,
    )


def quat_conj(q):
    a, b, c, d = q
    return (a, -b, -c, -d)


def quat_to_rotation(q):
    a, b, c, d = q
    return (
        (a * a + b * b - c * c - d * d, 2 * (b * c - a * d), 2 * (b * d + a * c)),
        (2 * (b * c + a * d), a * a - b * b + c * c - d * d, 2 * (c * d - a * b)),
        (2 * (b * d - a * c), 2 * (c * d + a * b), a * a - b * b - c * c + d * d),
    )


def rotation_to_quaternion(r):
    """Exact extraction; real part >= 0, then first nonzero component positive."""
    t = r[0][0] + r[1][1] + r[2][2]
    cand = [
        (Fraction(1 + t, 4), 0),
        (Fraction(1 + 2 * r[0][0] - t, 4), 1),
        (Fraction(1 + 2 * r[1][1] - t, 4), 2),
        (Fraction(1 + 2 * r[2][2] - t, 4), 3),
    ]
    sq, pivot = max(cand)
    p = _fraction_sqrt(sq)
    if p == 0:
        raise InternalInvariantError("degenerate rotation matrix")
    if pivot == 0:
        q = (
            p,
            Fraction(r[2][1] - r[1][2]) / (4 * p),
            Fraction(r[0][2] - r[2][0]) / (4 * p),
            Fraction(r[1][0] - r[0][1]) / (4 * p),
        )
    elif pivot == 1:
        q = (
            Fraction(r[2][1] - r[1][2]) / (4 * p),
            p,
            Fraction(r[0][1] + r[1][0]) / (4 * p),
            Fraction(r[0][2] + r[2][0]) / (4 * p),
        )
    elif pivot == 2:
        q = (
            Fraction(r[0][2] - r[2][0]) / (4 * p),
            Fraction(r[0][1] + r[1][0]) / (4 * p),
            p,
            Fraction(r[1][2] + r[2][1]) / (4 * p),
        )
    else:
        q = (
            Fraction(r[1][0] - r[0][1]) / (4 * p),
            Fraction(r[0][2] + r[2][0]) / (4 * p),
            Fraction(r[1][2] + r[2][1]) / (4 * p),
            p,
        )
    for x in q:
        if x != 0:
            if x < 0:
                q = tuple(-y for y in q)
            break
    if quat_to_rotation(q) != tuple(tuple(Fraction(x) for x in row) for row in r):
        raise InputError("matrix is not the rotation of a rational quaternion")
    return q


class UnitQuaternion:
    """Unit quaternions with exact rational components.

    tolerance > 0 switches on the float-import mode used only to admit
    numeric data; the exact mode (tolerance 0) is what everything verified
    uses.
    """

    kind = "unit_quaternion"
    name = "su2"

    def __init__(self, tolerance=0):
        self.tolerance = tolerance

    def mul(self, a, b):
        return quat_mul(a, b)

    def inv(self, a):
        return quat_conj(a)

    def identity(self):
        return (Fraction(1), Fraction(0), Fraction(0), Fraction(0))

    def eq(self, a, b):
        return tuple(a) == tuple(b)

    def contains(self, a):
        try:
            vals = [Fraction(x) if self.tolerance == 0 else x for x in a]
        except (TypeError, ValueError):
            return False
        norm = sum(x * x for x in vals)
        if self.tolerance == 0:
            return norm == 1
        return abs(norm - 1) <= self.tolerance

    def format(self, a):
        return "(" + ", ".join(f"{Fraction(x)}" for x in a) + ")"

    def __repr__(self):
        return f"UnitQuaternion(tolerance={self.tolerance})"


class RotationSO3:
    """Rotation matrices with exact rational entries."""

    kind = "rotation_so3"
    name = "so3"

    def mul(self, a, b):
        return tuple(
            tuple(sum(a[i][k] * b[k][j] for k in range(3)) for j in range(3))
            for i in range(3)
        )

    def inv(self, a):
        return tuple(tuple(a[j][i] for j in range(3)) for i in range(3))

    def identity(self):
        one, zero = Fraction(1), Fraction(0)
        return ((one, zero, zero), (zero, one, zero), (zero, zero, one))

    def eq(self, a, b):
        return tuple(map(tuple, a)) == tuple(map(tuple, b))

    def contains(self, a):
        try:
            m = tuple(tuple(Fraction(x) for x in row) for row in a)
        except (TypeError, ValueError):
            return False
        ident = self.identity()
        if self.mul(m, self.inv(m)) != ident:
            return False
        det = (
            m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
        )
        return det == 1

    def format(self, a):
        return repr([[str(Fraction(x)) for x in row] for row in a])

    def __repr__(self):
        return "RotationSO3()"


class DirectProduct:
    """Componentwise product of two backends; used for split extensions."""

    kind = "direct_product"

    def __init__(self, left, right):
        self.left = left
        self.right = right
        self.name = f"{getattr(left, 'name', left.kind)}x{getattr(right, 'name', right.kind)}"

    def mul(self, a, b):
        return (self.left.mul(a[0], b[0]), self.right.mul(a[1], b[1]))

    def inv(self, a):
        return (self.left.inv(a[0]), self.right.inv(a[1]))

    def identity(self):
        return (self.left.identity(), self.right.identity())

    def eq(self, a, b):
        return self.left.eq(a[0], b[0]) and self.right.eq(a[1], b[1])

    def contains(self, a):
        return (
            isinstance(a, tuple)
            and len(a) == 2
            and self.left.contains(a[0])
            and self.right.contains(a[1])
        )

    def format(self, a):
        return f"({self.left.format(a[0])}, {self.right.format(a[1])})"

    def __repr__(self):
        return f"DirectProduct({self.left!r}, {self.right!r})"


# ---------------------------------------------------------------------------
# Central extensions
# ---------------------------------------------------------------------------


class CentralExtension:
    """Z -> Khat -> K with a stored set-level section of the projection.

    The fiber is identified with a coefficient system (Z/n for a cyclic
    table, Z for the integers, Q/Z for the circle) so obstruction cochains
    can take values in it.
    """

    def __init__(self, total, base, fiber, project, embed, section, name=None,
                 sample_base=None):
        self.total = total
        self.base = base
        self.fiber = fiber
        self.project = project
        self.embed = embed
        self.section = section
        self.name = name or "extension"
        self._sample_base = sample_base
        self._identify_fiber()
        self._validate()

    # -- fiber <-> coefficient values ---------------------------------------

    def _identify_fiber(self):
        f = self.fiber
        if isinstance(f, FiniteTable):
            n = len(f)
            gen = None
            for a in f.elements():
                if f.order_of(a) == n:
                    gen = a
                    break
            if gen is None:
                raise InputError(
                    f"fiber {f.name} is not cyclic; no coefficient identification"
                )
            powers = [f.identity()]
            for _ in range(n - 1):
                powers.append(f.mul(powers[-1], gen))
            self.fiber_coeff = integers_mod(n)
            self._fiber_powers = powers
            self._fiber_log = {p: k for k, p in enumerate(powers)}
        elif isinstance(f, IntegerAdditive):
            self.fiber_coeff = INTEGERS
        elif isinstance(f, CircleRational):
            self.fiber_coeff = RATIONALS_MOD_1
        else:
            raise InputError(f"unsupported fiber backend {f!r}")

    def fiber_to_value(self, z):
        if isinstance(self.fiber, FiniteTable):
            return self._fiber_log[z]
        if isinstance(self.fiber, IntegerAdditive):
            return int(z)
        return Fraction(z) % 1

    def value_to_fiber(self, v):
        if isinstance(self.fiber, FiniteTable):
            return self._fiber_powers[int(v) % len(self.fiber)]
        if isinstance(self.fiber, IntegerAdditive):
            return int(v)
        return Fraction(v) % 1

    def fiber_elements(self):
        if isinstance(self.fiber, FiniteTable):
            return list(self.fiber.elements())
        raise InputError("fiber is not finite")

    def fiber_is_finite(self):
        return isinstance(self.fiber, FiniteTable)

    def peel_fiber(self, x):
        """Inverse of embed on elements of the kernel; checks membership."""
        for attempt in self._kernel_iter():
            if self.total.eq(self.embed(attempt), x):
                return attempt
        raise InternalInvariantError(
            f"element {self.total.format(x)} is not in the embedded fiber"
        )

    def _kernel_iter(self):
        if isinstance(self.fiber, FiniteTable):
            return list(self.fiber.elements())
        raise InternalInvariantError("peel_fiber needs a finite fiber")

    def fiber_value_of(self, x):
        """Coefficient value of a total element lying in the embedded fiber."""
        if isinstance(self.fiber, FiniteTable):
            return self.fiber_to_value(self.peel_fiber(x))
        if isinstance(self.fiber, IntegerAdditive):
            v = Fraction(x)
            if v.denominator != 1:
                raise InternalInvariantError(f"{x} is not an integer fiber element")
            return int(v)
        if isinstance(self.fiber, CircleRational) and isinstance(self.total, DirectProduct):
            if not self.total.right.eq(x[1], self.total.right.identity()):
                raise InternalInvariantError(
                    f"{self.total.format(x)} is not in the embedded fiber"
                )
            return Fraction(x[0]) % 1
        raise InternalInvariantError("no fiber identification for this total element")

    # -- validation ----------------------------------------------------------

    def _validate(self):
        t, b, f = self.total, self.base, self.fiber
        if isinstance(t, FiniteTable) and isinstance(b, FiniteTable) and isinstance(f, FiniteTable):
            for x in t.elements():
                for y in t.elements():
                    if self.project(t.mul(x, y)) != b.mul(self.project(x), self.project(y)):
                        raise InputError("projection is not a homomorphism")
            if set(self.project(x) for x in t.elements()) != set(b.elements()):
                raise InputError("projection is not surjective")
            kernel = {x for x in t.elements() if self.project(x) == b.identity()}
            image = {self.embed(z) for z in f.elements()}
            if kernel != image:
                raise InputError("kernel of the projection differs from the embedded fiber")
            for z in f.elements():
                for w in f.elements():
                    if self.embed(f.mul(z, w)) != t.mul(self.embed(z), self.embed(w)):
                        raise InputError("embedding is not a homomorphism")
            if len(image) != len(f):
                raise InputError("embedding is not injective")
            for z in f.elements():
                ez = self.embed(z)
                for x in t.elements():
                    if t.mul(ez, x) != t.mul(x, ez):
                        raise InputError("embedded fiber is not central")
            for g in b.elements():
                if self.project(self.section(g)) != g:
                    raise InputError("section does not split the projection")
        else:
            samples = self._sample_base or []
            for g in samples:
                if not b.eq(self.project(self.section(g)), g):
                    raise InputError("section does not split the projection")
                for z in self._fiber_samples():
                    ez = self.embed(z)
                    x = self.section(g)
                    if not t.eq(t.mul(ez, x), t.mul(x, ez)):
                        raise InputError("embedded fiber is not central")

    def _fiber_samples(self):
        if isinstance(self.fiber, FiniteTable):
            return list(self.fiber.elements())
        if isinstance(self.fiber, IntegerAdditive):
            return [0, 1, -1, 2]
        return [Fraction(0), Fraction(1, 2), Fraction(1, 3)]

    def with_section(self, section):
        """Same extension with a different stored section."""
        return CentralExtension(
            total=self.total,
            base=self.base,
            fiber=self.fiber,
            project=self.project,
            embed=self.embed,
            section=section,
            name=self.name,
            sample_base=self._sample_base,
        )

    def __repr__(self):
        return f"CentralExtension({self.name})"


def section_lift(ext: CentralExtension, g):
    """The stored section applied to g; deterministic by construction."""
    if not ext.base.contains(g):
        raise InputError(f"{g!r} is not an element of the base group")
    return ext.section(g)


def nearest_lift(ext: CentralExtension, anchor, g):
    """Among all lifts of g, the one closest to the anchor.

    Circle cover: the unique real lift within distance 1/2 (tie is an
    error). Quaternions: the sign with positive inner product. Finite
    fibers: the anchor must itself be a lift, otherwise the data jumps.
    """
    total = ext.total
    if isinstance(total, RationalAdditive):
        a = Fraction(anchor)
        delta = (Fraction(g) - a) % 1
        if delta == Fraction(1, 2):
            raise AmbiguousLiftError(
                f"lift of {g} is exactly 1/2 away from anchor {a}"
            )
        if delta > Fraction(1, 2):
            delta -= 1
        return a + delta
    if isinstance(total, UnitQuaternion):
        q = section_lift(ext, g)
        inner = sum(Fraction(x) * Fraction(y) for x, y in zip(anchor, q))
        if inner == 0:
            raise AmbiguousLiftError("candidate lifts are orthogonal to the anchor")
        return q if inner > 0 else tuple(-x for x in q)
    if ext.fiber_is_finite():
        if ext.base.eq(ext.project(anchor), g):
            return anchor
        raise DiscontinuousDataError(
            f"anchor projects to {ext.base.format(ext.project(anchor))}, not {ext.base.format(g)}"
        )
    raise InputError("nearest_lift requires a discrete fiber or the circle cover")


# ---------------------------------------------------------------------------
# Short exact coefficient sequences and the connecting chase
# ---------------------------------------------------------------------------


@dataclass
class ShortExactCoefficients:
    """0 -> A -> B -> C -> 0 with a set-level section of the surjection."""

    sub: CoefficientSystem
    mid: CoefficientSystem
    quot: CoefficientSystem
    inject: object
    surject: object
    set_section: object
    inject_inverse: object
    name: str = "sequence"

    def __post_init__(self):
        for c in self._quot_samples():
            s = self.set_section(c)
            if self.quot.normalize(self.surject(s)) != self.quot.normalize(c):
                raise InputError("surject(set_section(c)) != c")
        for a in self._sub_samples():
            img = self.surject(self.inject(a))
            if not self.quot.is_zero(img):
                raise InputError("surject(inject(a)) != 0")
            back = self.inject_inverse(self.inject(a))
            if self.sub.normalize(back) != self.sub.normalize(a):
                raise InputError("inject_inverse does not invert inject")
        if not self.mid.is_zero(self.set_section(self.quot.zero())):
            raise InputError("set_section must send 0 to 0")

    def _quot_samples(self):
        if self.quot.kind == "integers_mod":
            return list(range(self.quot.n))
        return [Fraction(0), Fraction(1, 2), Fraction(2, 3), Fraction(5, 7)]

    def _sub_samples(self):
        return [0, 1, -1, 2, -3, 5]


def bockstein_sequence(n: int) -> ShortExactCoefficients:
    """0 -> Z --n--> Z -> Z/n -> 0 with the canonical representative section."""

    def inject(a):
        return n * int(a)

    def inject_inverse(b):
        b = int(b)
        if b % n != 0:
            raise InternalInvariantError(f"{b} is not divisible by {n}")
        return b // n

    return ShortExactCoefficients(
        sub=INTEGERS,
        mid=INTEGERS,
        quot=integers_mod(n),
        inject=inject,
        surject=lambda b: int(b) % n,
        set_section=lambda c: int(c) % n,
        inject_inverse=inject_inverse,
        name=f"bockstein-{n}",
    )


def circle_sequence() -> ShortExactCoefficients:
    """0 -> Z -> Q -> Q/Z -> 0 with the representative in [0, 1)."""

    def inject_inverse(b):
        b = Fraction(b)
        if b.denominator != 1:
            raise InternalInvariantError(f"{b} is not an integer")
        return int(b)

    return ShortExactCoefficients(
        sub=INTEGERS,
        mid=RATIONALS,
        quot=RATIONALS_MOD_1,
        inject=lambda a: Fraction(int(a)),
        surject=lambda b: Fraction(b) % 1,
        set_section=lambda c: Fraction(c) % 1,
        inject_inverse=inject_inverse,
        name="circle",
    )


def connecting_chase(z: Cochain, seq: ShortExactCoefficients, X) -> tuple:
    """Lift valuewise through the section, take the coboundary, read it back
    through the injection. Realizes the connecting homomorphism."""
    if z.complex != X:
        raise CoefficientMismatchError("cochain does not live on the given complex")
    if z.coeff != seq.quot:
        raise CoefficientMismatchError(
            f"cochain coefficients {z.coeff} do not match the sequence quotient {seq.quot}"
        )
    bad = first_coboundary_violation(z)
    if bad is not None:
        raise NotACocycleError(bad)
    lift = z.map_values(seq.mid, seq.set_section)
    d = coboundary(lift)
    result = d.map_values(seq.sub, seq.inject_inverse)
    check = first_coboundary_violation(result)
    if check is not None:
        raise InternalInvariantError("chase output is not a cocycle")
    return lift, result


def circle_log_difference(a, b):
    """Representative of b - a in (-1/2, 1/2); the edgewise lift difference."""
    delta = (Fraction(b) - Fraction(a)) % 1
    if delta == Fraction(1, 2):
        raise AmbiguousLiftError("difference is exactly 1/2")
    if delta > Fraction(1, 2):
        delta -= 1
    return delta


# ---------------------------------------------------------------------------
# Built-in groups and extensions
# ---------------------------------------------------------------------------


def cyclic_group(n: int) -> FiniteTable:
    names = [str(i) for i in range(n)]
    table = [[(i + j) % n for j in range(n)] for i in range(n)]
    return FiniteTable(names, table, name=f"Z{n}")


_QUAT_UNITS = {
    "1": (1, 0, 0, 0),
    "-1": (-1, 0, 0, 0),
    "i": (0, 1, 0, 0),
    "-i": (0, -1, 0, 0),
    "j": (0, 0, 1, 0),
    "-j": (0, 0, -1, 0),
    "k": (0, 0, 0, 1),
    "-k": (0, 0, 0, -1),
}


def quaternion_group() -> FiniteTable:
    names = ["1", "-1", "i", "-i", "j", "-j", "k", "-k"]
    vecs = [_QUAT_UNITS[s] for s in names]
    lookup = {v: idx for idx, v in enumerate(vecs)}
    table = [[lookup[quat_mul(vecs[a], vecs[b])] for b in range(8)] for a in range(8)]
    return FiniteTable(names, table, name="Q8")


def klein_four_group() -> FiniteTable:
    # Q8 mod center; elements written as the unsigned quaternion units
    names = ["1", "i", "j", "k"]
    def cls(v):
        return v.lstrip("-")
    q8 = quaternion_group()
    table = []
    for a in names:
        row = []
        for b in names:
            prod = q8.names[q8.mul(q8.index(a), q8.index(b))]
            row.append(names.index(cls(prod)))
        table.append(row)
    return FiniteTable(names, table, name="V4")


def dihedral_group_8() -> FiniteTable:
    # symmetries of the square: r rotation, s reflection, s r s = r^-1
    names = ["e", "r", "r2", "r3", "s", "rs", "r2s", "r3s"]

    def compose(a, b):
        (i, x) = a
        (j, y) = b
        if x == 0:
            return ((i + j) % 4, y)
        return ((i - j) % 4, (x + y) % 2)

    elems = [(i, x) for x in (0, 1) for i in range(4)]
    idx = {e: k for k, e in enumerate(elems)}
    table = [[idx[compose(a, b)] for b in elems] for a in elems]
    return FiniteTable(names, table, name="D4")


def q8_to_v4_extension() -> CentralExtension:
    q8 = quaternion_group()
    v4 = klein_four_group()
    z2 = cyclic_group(2)

    def project(x):
        return v4.index(q8.names[x].lstrip("-"))

    def embed(z):
        return q8.index("1" if z == 0 else "-1")

    def section(g):
        return q8.index(v4.names[g])

    return CentralExtension(q8, v4, z2, project, embed, section, name="Q8/V4")


def d4_to_v4_extension() -> CentralExtension:
    d4 = dihedral_group_8()
    z2 = cyclic_group(2)
    names = ["1", "r", "s", "rs"]
    table = [[0, 1, 2, 3], [1, 0, 3, 2], [2, 3, 0, 1], [3, 2, 1, 0]]
    v4 = FiniteTable(names, table, name="D4/Z")

    quotient = {"e": "1", "r": "r", "r2": "1", "r3": "r", "s": "s", "rs": "rs", "r2s": "s", "r3s": "rs"}

    def project(x):
        return v4.index(quotient[d4.names[x]])

    def embed(z):
        return d4.index("e" if z == 0 else "r2")

    def section(g):
        return d4.index({"1": "e", "r": "r", "s": "s", "rs": "rs"}[v4.names[g]])

    return CentralExtension(d4, v4, z2, project, embed, section, name="D4/V4")


def split_extension(fiber, base, name=None) -> CentralExtension:
    """Z x K -> K with the homomorphic section g -> (e, g)."""
    total = DirectProduct(fiber, base)
    sample = None
    if not isinstance(base, FiniteTable) or not isinstance(fiber, FiniteTable):
        if isinstance(base, FiniteTable):
            sample = list(base.elements())
        elif isinstance(base, CircleRational):
            sample = [Fraction(0), Fraction(1, 3), Fraction(3, 4)]
        else:
            sample = [base.identity()]
    ext = CentralExtension(
        total=total,
        base=base,
        fiber=fiber,
        project=lambda x: x[1],
        embed=lambda z: (z, base.identity()),
        section=lambda g: (fiber.identity(), g),
        name=name or f"split-{getattr(fiber, 'name', fiber.kind)}-{getattr(base, 'name', base.kind)}",
        sample_base=sample,
    )
    return ext


def circle_cover_extension() -> CentralExtension:
    """0 -> Z -> Q -> Q/Z -> 0 as a central extension of groups."""
    return CentralExtension(
        total=RationalAdditive(),
        base=CircleRational(),
        fiber=IntegerAdditive(),
        project=lambda x: Fraction(x) % 1,
        embed=lambda z: Fraction(int(z)),
        section=lambda g: Fraction(g) % 1,
        name="Z-Q-Q/Z",
        sample_base=[Fraction(0), Fraction(1, 4), Fraction(2, 3), Fraction(7, 8)],
    )


def su2_to_so3_extension() -> CentralExtension:
    su2 = UnitQuaternion()
    so3 = RotationSO3()
    z2 = cyclic_group(2)

    def project(q):
        return quat_to_rotation(q)

    def embed(z):
        one = Fraction(1)
        return (one if z == 0 else -one, Fraction(0), Fraction(0), Fraction(0))

    def section(r):
        return rotation_to_quaternion(r)

    sample = [
        so3.identity(),
        quat_to_rotation((Fraction(0), Fraction(1), Fraction(0), Fraction(0))),
        quat_to_rotation((Fraction(3, 5), Fraction(4, 5), Fraction(0), Fraction(0))),
    ]
    return CentralExtension(su2, so3, z2, project, embed, section,
                            name="SU2/SO3", sample_base=sample)
