"""Exact scalar fields: the rationals, cyclotomic fields Q(zeta_m), and F_p.

Rationals use :class:`fractions.Fraction` directly.  The other two fields
have small element classes with the usual operators, so matrix and
polynomial code can be written once for all three.
"""

from fractions import Fraction
from functools import lru_cache
from math import gcd

from .errors import InputError


class Rationals:
    characteristic = 0
    degree = 1

    def __call__(self, value):
        if isinstance(value, Fraction):
            return value
        if isinstance(value, int):
            return Fraction(value)
        if isinstance(value, str):
            try:
                return Fraction(value)
            except ValueError:
                raise InputError(f"cannot parse rational {value!r}") from None
        raise InputError(f"cannot interpret {value!r} as a rational")

    @property
    def zero(self):
        return Fraction(0)

    @property
    def one(self):
        return Fraction(1)

    def key(self, x):
        return (x,)

    def to_json(self, x):
        return str(x) if x.denominator != 1 else x.numerator

    def describe(self):
        return {"type": "rational"}

    def galois(self, x, k):
        return x

    def __eq__(self, other):
        return isinstance(other, Rationals)

    def __hash__(self):
        return hash("Q")

    def __repr__(self):
        return "QQ"


QQ = Rationals()


class PrimeField:
    def __init__(self, p):
        p = int(p)
        if p < 2 or any(p % q == 0 for q in range(2, int(p**0.5) + 1)):
            raise InputError(f"{p} is not prime")
        self.p = p
        self.characteristic = p
        self.degree = 1

    def __call__(self, value):
        if isinstance(value, Fp):
            return value
        if isinstance(value, Fraction):
            return Fp(value.numerator, self) / Fp(value.denominator, self)
        if isinstance(value, str):
            return self(Fraction(value))
        if isinstance(value, int):
            return Fp(value, self)
        raise InputError(f"cannot interpret {value!r} in F_{self.p}")

    @property
    def zero(self):
        return Fp(0, self)

    @property
    def one(self):
        return Fp(1, self)

    def key(self, x):
        return (x.v,)

    def to_json(self, x):
        return x.v

    def describe(self):
        return {"type": "prime", "p": self.p}

    def galois(self, x, k):
        return x

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("Fp", self.p))

    def __repr__(self):
        return f"GF({self.p})"


class Fp:
    __slots__ = ("v", "field")

    def __init__(self, v, field):
        self.v = v % field.p
        self.field = field

    def _coerce(self, other):
        if isinstance(other, Fp):
            return other.v
        if isinstance(other, int):
            return other
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else Fp(self.v + o, self.field)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else Fp(self.v - o, self.field)

    def __rsub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else Fp(o - self.v, self.field)

    def __mul__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else Fp(self.v * o, self.field)

    __rmul__ = __mul__

    def __neg__(self):
        return Fp(-self.v, self.field)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        if o % self.field.p == 0:
            raise ZeroDivisionError("division by zero in F_p")
        return Fp(self.v * pow(o, -1, self.field.p), self.field)

    def __rtruediv__(self, other):
        return Fp(other, self.field) / self

    def __pow__(self, k):
        return Fp(pow(self.v, k, self.field.p), self.field)

    def __bool__(self):
        return self.v != 0

    def __eq__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return False
        return (self.v - o) % self.field.p == 0

    def __hash__(self):
        return hash(self.v)

    def __repr__(self):
        return f"{self.v}"


@lru_cache(maxsize=None)
def cyclotomic_polynomial(m):
    """Integer coefficients of Phi_m, lowest degree first."""
    num = [-1] + [0] * (m - 1) + [1]  # x^m - 1
    for d in range(1, m):
        if m % d == 0:
            num = _exact_divide(num, cyclotomic_polynomial(d))
    return tuple(num)


def _exact_divide(num, den):
    num = list(num)
    out = [0] * (len(num) - len(den) + 1)
    for i in range(len(out) - 1, -1, -1):
        q = num[i + len(den) - 1] // den[-1]
        out[i] = q
        for j, c in enumerate(den):
            num[i + j] -= q * c
    assert not any(num), "non-exact cyclotomic division"
    return out


class CyclotomicField:
    """Q(zeta_m) as Q[x] / Phi_m(x)."""

    characteristic = 0

    def __init__(self, m):
        m = int(m)
        if m < 1:
            raise InputError(f"cyclotomic order must be positive, got {m}")
        self.m = m
        self.phi = cyclotomic_polynomial(m)
        self.degree = len(self.phi) - 1
        # x^k mod Phi_m for k < 2 * degree, enough for one product
        self._powers = []
        for k in range(2 * self.degree):
            self._powers.append(self._reduce_monomial(k))

    def _reduce_monomial(self, k):
        coeffs = [0] * (k + 1)
        coeffs[k] = 1
        return tuple(Fraction(c) for c in self._reduce(coeffs))

    def _reduce(self, coeffs):
        coeffs = list(coeffs)
        deg = self.degree
        phi = self.phi
        for i in range(len(coeffs) - 1, deg - 1, -1):
            c = coeffs[i]
            if c:
                for j in range(deg + 1):
                    coeffs[i - deg + j] -= c * phi[j]
        coeffs = coeffs[:deg] + [0] * (deg - len(coeffs))
        return coeffs

    @property
    def exponent(self):
        """Order of the group of roots of unity in this field."""
        return self.m if self.m % 2 == 0 else 2 * self.m

    def __call__(self, value):
        if isinstance(value, Cyc):
            if value.field != self:
                raise InputError("element belongs to another cyclotomic field")
            return value
        if isinstance(value, (int, Fraction, str)):
            c = QQ(value)
            return Cyc(tuple([c] + [Fraction(0)] * (self.degree - 1)), self)
        if isinstance(value, dict):
            if "zeta" in value:
                return self.zeta(int(value["zeta"])) * QQ(value.get("coeff", 1))
            raise InputError(f"cannot interpret {value!r} in Q(zeta_{self.m})")
        if isinstance(value, (list, tuple)):
            coeffs = [QQ(c) for c in value]
            return Cyc(tuple(Fraction(c) for c in self._reduce(coeffs)), self)
        raise InputError(f"cannot interpret {value!r} in Q(zeta_{self.m})")

    @property
    def zero(self):
        return Cyc((Fraction(0),) * self.degree, self)

    @property
    def one(self):
        return self(1)

    def zeta(self, k=1):
        k %= self.m
        coeffs = [Fraction(0)] * k + [Fraction(1)]
        return Cyc(tuple(Fraction(c) for c in self._reduce(coeffs)), self)

    def root_of_unity(self, order, k=1):
        """zeta_order^k, provided order divides the field's exponent."""
        e = self.exponent
        if e % order:
            raise InputError(f"Q(zeta_{self.m}) has no primitive {order}-th root of unity")
        step = e // order * k % e
        # zeta_e = -zeta_m^((m+1)/2) when m is odd
        if self.m % 2:
            if step % 2 == 0:
                return self.zeta(step // 2)
            return -self.zeta((step + self.m) // 2)
        return self.zeta(step)

    def galois(self, x, k):
        """Apply the automorphism zeta -> zeta^k."""
        if gcd(k, self.m) != 1:
            raise InputError(f"{k} is not a unit mod {self.m}")
        coeffs = [Fraction(0)] * (self.degree * abs(k % self.m) + 1)
        kk = k % self.m
        for j, c in enumerate(x.c):
            coeffs[j * kk] += c
        return Cyc(tuple(Fraction(c) for c in self._reduce(coeffs)), self)

    def key(self, x):
        return x.c

    def to_json(self, x):
        if all(c == 0 for c in x.c[1:]):
            return QQ.to_json(x.c[0])
        return [QQ.to_json(c) for c in x.c]

    def describe(self):
        return {"type": "cyclotomic", "order": self.m}

    def __eq__(self, other):
        return isinstance(other, CyclotomicField) and other.m == self.m

    def __hash__(self):
        return hash(("cyc", self.m))

    def __repr__(self):
        return f"QQ(zeta_{self.m})"


class Cyc:
    __slots__ = ("c", "field")

    def __init__(self, c, field):
        self.c = c
        self.field = field

    def _coerce(self, other):
        if isinstance(other, Cyc):
            return other
        if isinstance(other, (int, Fraction)):
            return self.field(other)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Cyc(tuple(a + b for a, b in zip(self.c, o.c)), self.field)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Cyc(tuple(a - b for a, b in zip(self.c, o.c)), self.field)

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        return Cyc(tuple(-a for a in self.c), self.field)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return Cyc(tuple(a * other for a in self.c), self.field)
        if not isinstance(other, Cyc):
            return NotImplemented
        F = self.field
        d = F.degree
        out = [Fraction(0)] * d
        powers = F._powers
        for i, a in enumerate(self.c):
            if not a:
                continue
            for j, b in enumerate(other.c):
                if not b:
                    continue
                ab = a * b
                for k, p in enumerate(powers[i + j]):
                    if p:
                        out[k] += ab * p
        return Cyc(tuple(out), F)

    __rmul__ = __mul__

    def inverse(self):
        if not self:
            raise ZeroDivisionError("division by zero in cyclotomic field")
        F = self.field
        # extended Euclid in Q[x]; invariant r_i = s_i * self mod Phi
        r0, r1 = [Fraction(c) for c in F.phi], _trim(self.c)
        s0, s1 = [Fraction(0)], [Fraction(1)]
        while len(r1) > 1:
            q, r = _divmod_poly(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, _sub_poly(s0, _mul_poly(q, s1))
        inv = 1 / r1[0]
        return F([c * inv for c in s1])

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inverse()

    def __pow__(self, k):
        if k < 0:
            return self.inverse() ** (-k)
        out = self.field.one
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __bool__(self):
        return any(self.c)

    def __eq__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return False
        return self.c == o.c

    def __hash__(self):
        if not any(self.c[1:]):
            return hash(self.c[0])
        return hash(self.c)

    def is_rational(self):
        return not any(self.c[1:])

    def rational(self):
        if not self.is_rational():
            raise ValueError(f"{self!r} is not rational")
        return self.c[0]

    def __repr__(self):
        terms = []
        for k, c in enumerate(self.c):
            if c:
                terms.append(f"{c}" if k == 0 else f"{c}*z^{k}")
        return " + ".join(terms) if terms else "0"


def _trim(p):
    p = list(p)
    while len(p) > 1 and p[-1] == 0:
        p.pop()
    return p


def _divmod_poly(a, b):
    a = _trim(a)
    b = _trim(b)
    if len(a) < len(b):
        return [Fraction(0)], a
    q = [Fraction(0)] * (len(a) - len(b) + 1)
    r = list(a)
    for i in range(len(q) - 1, -1, -1):
        c = r[i + len(b) - 1] / b[-1]
        q[i] = c
        if c:
            for j, bj in enumerate(b):
                r[i + j] -= c * bj
    return q, _trim(r[: len(b) - 1] or [Fraction(0)])


def _mul_poly(a, b):
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _trim(out)


def _sub_poly(a, b):
    n = max(len(a), len(b))
    a = list(a) + [Fraction(0)] * (n - len(a))
    b = list(b) + [Fraction(0)] * (n - len(b))
    return _trim([x - y for x, y in zip(a, b)])


def field_from_json(doc):
    if doc is None:
        return QQ
    kind = doc.get("type") if isinstance(doc, dict) else None
    if kind == "rational":
        return QQ
    if kind == "cyclotomic":
        return CyclotomicField(doc["order"])
    if kind == "prime":
        return PrimeField(doc["p"])
    raise InputError(f"unknown field descriptor {doc!r}")


def to_rational(x):
    """Exact rational value of a characteristic-zero scalar."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, Cyc):
        return x.rational()
    return Fraction(x)
