"""Exact truncated series and rational-function arithmetic.

Everything in this package is built on four carriers:

* :class:`QSeries` -- univariate truncated Laurent series in the nome q,
  used for eta products, Eisenstein series and hauptmoduls.
* :class:`BiSeries` -- bivariate power series in (z1, z2) truncated at a
  per-variable degree bound, used for periods and mirror maps.
* :class:`BiPolynomial` / :class:`BiRationalFunction` -- exact (untruncated)
  bivariate polynomials and their quotients, used for connection matrices
  and couplings.
* :class:`LogSeries` -- c0 + c1*log(z1) + c2*log(z2) with BiSeries
  components, closed under the Euler operators theta_i = z_i d/dz_i.

Coefficients are exact rationals (gmpy2.mpq when available, otherwise
fractions.Fraction).  All values are immutable in use: operations return
new objects and never mutate their operands.
"""

from __future__ import annotations

from typing import Iterable, Mapping

try:
    from gmpy2 import mpq as Q
except ImportError:  # pragma: no cover - gmpy2 is a declared dependency
    from fractions import Fraction as Q

__all__ = [
    "Q",
    "as_rational",
    "QSeries",
    "BiSeries",
    "LogSeries",
    "BiPolynomial",
    "BiRationalFunction",
    "rf_equal",
]

_ZERO = Q(0)
_ONE = Q(1)


def as_rational(x) -> Q:
    """Coerce ints, rational strings like '3/4' and rationals to Q."""
    if isinstance(x, float):
        raise TypeError("floats are not allowed in exact arithmetic")
    return Q(x)


def _newton_nth_root(a, n: int):
    """n-th root of a series with constant/leading term 1 by Newton iteration.

    Each step doubles the number of correct coefficients; the iteration
    count is sized from the truncation order of `a`.
    """
    if n <= 0:
        raise ValueError("root index must be a positive integer")
    y = a.one_like()
    steps = 1
    span = a.root_span()
    while (1 << steps) <= span + 1:
        steps += 1
    inv_n = Q(1, n)
    for _ in range(steps):
        # y <- y + y*(a*y^-n - 1)/n
        corr = (a * (y.inv() ** n) - y.one_like()) * inv_n
        y = y + y * corr
    return y


class QSeries:
    """Truncated univariate Laurent series sum_{k>=-pole} c_k q^k.

    `qmax` is the largest exponent whose coefficient is known exactly;
    coefficients beyond it are unknown (not zero).  Arithmetic propagates
    the truncation honestly: the result's qmax is the largest exponent
    both operands can certify.
    """

    __slots__ = ("coeffs", "qmax")

    def __init__(self, coeffs: Mapping[int, object], qmax: int):
        clean = {}
        for k, v in coeffs.items():
            if k > qmax:
                continue
            v = as_rational(v)
            if v != 0:
                clean[int(k)] = v
        self.coeffs = clean
        self.qmax = int(qmax)

    # -- constructors -------------------------------------------------

    @classmethod
    def zero(cls, qmax: int) -> "QSeries":
        return cls({}, qmax)

    @classmethod
    def one(cls, qmax: int) -> "QSeries":
        return cls({0: _ONE}, qmax)

    @classmethod
    def const(cls, c, qmax: int) -> "QSeries":
        return cls({0: as_rational(c)}, qmax)

    @classmethod
    def from_list(cls, coeffs: Iterable, qmax: int, lo: int = 0) -> "QSeries":
        return cls({lo + i: c for i, c in enumerate(coeffs)}, qmax)

    def one_like(self) -> "QSeries":
        return QSeries.one(self.qmax)

    # -- inspection ---------------------------------------------------

    @property
    def pole_order(self) -> int:
        return max(0, -self.valuation())

    def valuation(self) -> int:
        """Lowest exponent with a nonzero coefficient (0 for the zero series)."""
        return min(self.coeffs) if self.coeffs else 0

    def coeff(self, k: int) -> Q:
        if k > self.qmax:
            raise IndexError(f"coefficient q^{k} beyond truncation {self.qmax}")
        return self.coeffs.get(k, _ZERO)

    def is_zero(self) -> bool:
        return not self.coeffs

    def root_span(self) -> int:
        return self.qmax

    def __eq__(self, other) -> bool:
        if not isinstance(other, QSeries):
            return NotImplemented
        return self.qmax == other.qmax and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.qmax, frozenset(self.coeffs.items())))

    def __repr__(self) -> str:
        terms = [f"{c}*q^{k}" for k, c in sorted(self.coeffs.items())[:6]]
        body = " + ".join(terms) if terms else "0"
        return f"QSeries({body} + O(q^{self.qmax + 1}))"

    def first_difference(self, other: "QSeries", upto: int | None = None):
        """Smallest exponent <= upto where the two series differ, or None."""
        hi = min(self.qmax, other.qmax)
        if upto is not None:
            hi = min(hi, upto)
        lo = min(self.valuation(), other.valuation())
        for k in range(lo, hi + 1):
            a, b = self.coeffs.get(k, _ZERO), other.coeffs.get(k, _ZERO)
            if a != b:
                return k, a, b
        return None

    def agrees(self, other: "QSeries", upto: int | None = None) -> bool:
        return self.first_difference(other, upto) is None

    # -- arithmetic ---------------------------------------------------

    def __add__(self, other):
        if isinstance(other, int) or type(other) is type(_ONE):
            other = QSeries.const(other, self.qmax)
        if not isinstance(other, QSeries):
            return NotImplemented
        qmax = min(self.qmax, other.qmax)
        out = dict(self.coeffs)
        for k, v in other.coeffs.items():
            out[k] = out.get(k, _ZERO) + v
        return QSeries(out, qmax)

    __radd__ = __add__

    def __neg__(self):
        return QSeries({k: -v for k, v in self.coeffs.items()}, self.qmax)

    def __sub__(self, other):
        if isinstance(other, int) or type(other) is type(_ONE):
            other = QSeries.const(other, self.qmax)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int) or type(other) is type(_ONE):
            c = as_rational(other)
            return QSeries({k: c * v for k, v in self.coeffs.items()}, self.qmax)
        if not isinstance(other, QSeries):
            return NotImplemented
        # c_k = sum a_i b_{k-i} is certified for k <= min(Na+vb, Nb+va)
        qmax = min(self.qmax + other.valuation(), other.qmax + self.valuation())
        out = {}
        for i, a in self.coeffs.items():
            for j, b in other.coeffs.items():
                k = i + j
                if k > qmax:
                    continue
                out[k] = out.get(k, _ZERO) + a * b
        return QSeries(out, qmax)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            return self.inv() ** (-n)
        result = QSeries.one(self.qmax)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def scale(self, c) -> "QSeries":
        return self * as_rational(c)

    def shift(self, k: int) -> "QSeries":
        """Multiply by q^k (exact; truncation moves with the shift)."""
        return QSeries({i + k: v for i, v in self.coeffs.items()}, self.qmax + k)

    def truncate(self, qmax: int) -> "QSeries":
        if qmax > self.qmax:
            raise ValueError("cannot extend truncation")
        return QSeries({k: v for k, v in self.coeffs.items() if k <= qmax}, qmax)

    def inv(self) -> "QSeries":
        """Multiplicative inverse; requires a nonzero leading coefficient."""
        if not self.coeffs:
            raise ZeroDivisionError("inverse of the zero series")
        v = self.valuation()
        unit = self.shift(-v)  # ordinary power series, constant term nonzero
        c0 = unit.coeffs[0]
        n = unit.qmax
        inv_c0 = _ONE / c0
        out = {0: inv_c0}
        for k in range(1, n + 1):
            s = _ZERO
            for i, a in unit.coeffs.items():
                if 0 < i <= k:
                    t = out.get(k - i)
                    if t is not None:
                        s += a * t
            if s != 0:
                out[k] = -inv_c0 * s
        return QSeries(out, n).shift(-v)

    def theta(self) -> "QSeries":
        """The derivation q d/dq."""
        return QSeries({k: k * v for k, v in self.coeffs.items()}, self.qmax)

    def nth_root(self, n: int) -> "QSeries":
        if self.coeff(0) != 1 or self.valuation() < 0:
            raise ValueError("nth_root requires constant term 1")
        return _newton_nth_root(self, n)

    # -- serialization ------------------------------------------------

    def to_json(self) -> dict:
        p = self.pole_order
        return {
            "pole_order": p,
            "qmax": self.qmax,
            "coeffs": [str(self.coeffs.get(k, _ZERO)) for k in range(-p, self.qmax + 1)],
        }

    @classmethod
    def from_json(cls, data: dict) -> "QSeries":
        p = int(data["pole_order"])
        coeffs = {i - p: Q(c) for i, c in enumerate(data["coeffs"])}
        return cls(coeffs, int(data["qmax"]))


class BiSeries:
    """Bivariate power series in (z1, z2), truncated at degree `order` in
    each variable separately.

    The per-variable bound is closed under multiplication: the coefficient
    of z1^n z2^m with n, m <= K only involves operand coefficients with
    exponents <= K componentwise, so products lose no precision.
    """

    __slots__ = ("coeffs", "order")

    def __init__(self, coeffs: Mapping[tuple, object], order: int):
        clean = {}
        for (n, m), v in coeffs.items():
            if n > order or m > order:
                continue
            if n < 0 or m < 0:
                raise ValueError("BiSeries exponents must be non-negative")
            v = as_rational(v)
            if v != 0:
                clean[(int(n), int(m))] = v
        self.coeffs = clean
        self.order = int(order)

    # -- constructors -------------------------------------------------

    @classmethod
    def zero(cls, order: int) -> "BiSeries":
        return cls({}, order)

    @classmethod
    def one(cls, order: int) -> "BiSeries":
        return cls({(0, 0): _ONE}, order)

    @classmethod
    def const(cls, c, order: int) -> "BiSeries":
        return cls({(0, 0): as_rational(c)}, order)

    @classmethod
    def variable(cls, i: int, order: int) -> "BiSeries":
        if i not in (1, 2):
            raise ValueError("variable index must be 1 or 2")
        return cls({(1, 0) if i == 1 else (0, 1): _ONE}, order)

    @classmethod
    def monomial(cls, c, n: int, m: int, order: int) -> "BiSeries":
        return cls({(n, m): as_rational(c)}, order)

    def one_like(self) -> "BiSeries":
        return BiSeries.one(self.order)

    # -- inspection ---------------------------------------------------

    def coeff(self, n: int, m: int) -> Q:
        if n > self.order or m > self.order:
            raise IndexError(f"coefficient ({n},{m}) beyond truncation {self.order}")
        return self.coeffs.get((n, m), _ZERO)

    def is_zero(self) -> bool:
        return not self.coeffs

    def root_span(self) -> int:
        return 2 * self.order

    def __eq__(self, other) -> bool:
        if not isinstance(other, BiSeries):
            return NotImplemented
        return self.order == other.order and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.order, frozenset(self.coeffs.items())))

    def __repr__(self) -> str:
        terms = [f"{c}*z1^{n}*z2^{m}" for (n, m), c in sorted(self.coeffs.items())[:6]]
        body = " + ".join(terms) if terms else "0"
        return f"BiSeries({body} + ..., order={self.order})"

    def first_difference(self, other: "BiSeries", upto: int | None = None):
        """Lexicographically smallest (n, m) where the series differ, or None."""
        hi = min(self.order, other.order)
        if upto is not None:
            hi = min(hi, upto)
        keys = set(self.coeffs) | set(other.coeffs)
        for n, m in sorted(k for k in keys if k[0] <= hi and k[1] <= hi):
            a = self.coeffs.get((n, m), _ZERO)
            b = other.coeffs.get((n, m), _ZERO)
            if a != b:
                return (n, m), a, b
        return None

    def agrees(self, other: "BiSeries", upto: int | None = None) -> bool:
        return self.first_difference(other, upto) is None

    # -- arithmetic ---------------------------------------------------

    def __add__(self, other):
        if isinstance(other, int) or type(other) is type(_ONE):
            other = BiSeries.const(other, self.order)
        if not isinstance(other, BiSeries):
            return NotImplemented
        order = min(self.order, other.order)
        out = dict(self.coeffs)
        for k, v in other.coeffs.items():
            out[k] = out.get(k, _ZERO) + v
        return BiSeries(out, order)

    __radd__ = __add__

    def __neg__(self):
        return BiSeries({k: -v for k, v in self.coeffs.items()}, self.order)

    def __sub__(self, other):
        if isinstance(other, int) or type(other) is type(_ONE):
            other = BiSeries.const(other, self.order)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int) or type(other) is type(_ONE):
            c = as_rational(other)
            return BiSeries({k: c * v for k, v in self.coeffs.items()}, self.order)
        if not isinstance(other, BiSeries):
            return NotImplemented
        order = min(self.order, other.order)
        out = {}
        for (n1, m1), a in self.coeffs.items():
            if n1 > order or m1 > order:
                continue
            for (n2, m2), b in other.coeffs.items():
                n, m = n1 + n2, m1 + m2
                if n > order or m > order:
                    continue
                key = (n, m)
                cur = out.get(key)
                out[key] = a * b if cur is None else cur + a * b
        return BiSeries(out, order)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            return self.inv() ** (-n)
        result = BiSeries.one(self.order)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def truncate(self, order: int) -> "BiSeries":
        if order > self.order:
            raise ValueError("cannot extend truncation")
        return BiSeries(self.coeffs, order)

    def inv(self) -> "BiSeries":
        c0 = self.coeffs.get((0, 0), _ZERO)
        if c0 == 0:
            raise ZeroDivisionError("inverse requires a nonzero constant term")
        K = self.order
        inv_c0 = _ONE / c0
        out = {(0, 0): inv_c0}
        rest = [(k, v) for k, v in self.coeffs.items() if k != (0, 0)]
        for d in range(1, 2 * K + 1):
            for n in range(max(0, d - K), min(d, K) + 1):
                m = d - n
                s = _ZERO
                for (i, j), a in rest:
                    if i <= n and j <= m:
                        t = out.get((n - i, m - j))
                        if t is not None:
                            s += a * t
                if s != 0:
                    out[(n, m)] = -inv_c0 * s
        return BiSeries(out, K)

    def theta(self, var: int) -> "BiSeries":
        """Euler operator theta_var = z_var d/dz_var."""
        idx = 0 if var == 1 else 1
        return BiSeries({k: k[idx] * v for k, v in self.coeffs.items()}, self.order)

    def exp(self) -> "BiSeries":
        if self.coeffs.get((0, 0), _ZERO) != 0:
            raise ValueError("exp requires zero constant term")
        acc = BiSeries.one(self.order)
        term = BiSeries.one(self.order)
        for k in range(1, 2 * self.order + 1):
            term = term * self * Q(1, k)
            if term.is_zero():
                break
            acc = acc + term
        return acc

    def log(self) -> "BiSeries":
        if self.coeffs.get((0, 0), _ZERO) != 1:
            raise ValueError("log requires constant term 1")
        x = self - 1
        acc = BiSeries.zero(self.order)
        term = BiSeries.one(self.order)
        for k in range(1, 2 * self.order + 1):
            term = term * x
            if term.is_zero():
                break
            acc = acc + term * Q((-1) ** (k + 1), k)
        return acc

    def nth_root(self, n: int) -> "BiSeries":
        if self.coeffs.get((0, 0), _ZERO) != 1:
            raise ValueError("nth_root requires constant term 1")
        return _newton_nth_root(self, n)

    def substitute(self, inner1: "BiSeries", inner2: "BiSeries") -> "BiSeries":
        """Graded composition self(inner1, inner2).

        Both inner series must have zero constant term, which makes the
        composition well-defined on truncations.
        """
        for inner in (inner1, inner2):
            if inner.coeffs.get((0, 0), _ZERO) != 0:
                raise ValueError("substitution requires zero inner constant term")
        order = min(self.order, inner1.order, inner2.order)
        max_n = max((k[0] for k in self.coeffs), default=0)
        max_m = max((k[1] for k in self.coeffs), default=0)
        pow1 = [BiSeries.one(order)]
        for _ in range(max_n):
            pow1.append(pow1[-1] * inner1)
        pow2 = [BiSeries.one(order)]
        for _ in range(max_m):
            pow2.append(pow2[-1] * inner2)
        acc = BiSeries.zero(order)
        for (n, m), c in sorted(self.coeffs.items()):
            acc = acc + pow1[n] * pow2[m] * c
        return acc

    # -- serialization ------------------------------------------------

    def to_json(self) -> dict:
        return {f"{n},{m}": str(c) for (n, m), c in sorted(self.coeffs.items())}

    @classmethod
    def from_json(cls, data: Mapping[str, str], order: int) -> "BiSeries":
        coeffs = {}
        for key, val in data.items():
            n, m = key.split(",")
            coeffs[(int(n), int(m))] = Q(val)
        return cls(coeffs, order)


class LogSeries:
    """c0 + c1*log(z1) + c2*log(z2) with BiSeries components.

    Log-degree is capped at 1, which is enough for the logarithmic period
    solutions handled here; theta_a acts by the Leibniz rule with
    theta_a log(z_b) = delta_ab.
    """

    __slots__ = ("c0", "c1", "c2")

    def __init__(self, c0: BiSeries, c1: BiSeries | None = None, c2: BiSeries | None = None):
        order = c0.order
        self.c0 = c0
        self.c1 = c1 if c1 is not None else BiSeries.zero(order)
        self.c2 = c2 if c2 is not None else BiSeries.zero(order)
        if self.c1.order != order or self.c2.order != order:
            raise ValueError("LogSeries components must share a truncation order")

    @property
    def order(self) -> int:
        return self.c0.order

    def __add__(self, other: "LogSeries") -> "LogSeries":
        return LogSeries(self.c0 + other.c0, self.c1 + other.c1, self.c2 + other.c2)

    def __sub__(self, other: "LogSeries") -> "LogSeries":
        return LogSeries(self.c0 - other.c0, self.c1 - other.c1, self.c2 - other.c2)

    def __neg__(self) -> "LogSeries":
        return LogSeries(-self.c0, -self.c1, -self.c2)

    def __mul__(self, other):
        # only multiplication by a log-free factor keeps log-degree <= 1
        if isinstance(other, LogSeries):
            raise TypeError("product of two LogSeries may exceed log-degree 1")
        return LogSeries(self.c0 * other, self.c1 * other, self.c2 * other)

    __rmul__ = __mul__

    def theta(self, var: int) -> "LogSeries":
        extra = self.c1 if var == 1 else self.c2
        return LogSeries(self.c0.theta(var) + extra, self.c1.theta(var), self.c2.theta(var))

    def is_zero(self) -> bool:
        return self.c0.is_zero() and self.c1.is_zero() and self.c2.is_zero()

    def first_difference(self, other: "LogSeries", upto: int | None = None):
        for label, a, b in (("1", self.c0, other.c0), ("log z1", self.c1, other.c1), ("log z2", self.c2, other.c2)):
            diff = a.first_difference(b, upto)
            if diff is not None:
                (n, m), lhs, rhs = diff
                return (n, m, label), lhs, rhs
        return None

    def agrees(self, other: "LogSeries", upto: int | None = None) -> bool:
        return self.first_difference(other, upto) is None


class BiPolynomial:
    """Exact bivariate polynomial over the rationals (no truncation)."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Mapping[tuple, object]):
        clean = {}
        for (n, m), v in coeffs.items():
            v = as_rational(v)
            if v != 0:
                clean[(int(n), int(m))] = v
        self.coeffs = clean

    @classmethod
    def zero(cls) -> "BiPolynomial":
        return cls({})

    @classmethod
    def one(cls) -> "BiPolynomial":
        return cls({(0, 0): _ONE})

    @classmethod
    def const(cls, c) -> "BiPolynomial":
        return cls({(0, 0): as_rational(c)})

    @classmethod
    def variable(cls, i: int) -> "BiPolynomial":
        return cls({(1, 0) if i == 1 else (0, 1): _ONE})

    def coeff(self, n: int, m: int) -> Q:
        return self.coeffs.get((n, m), _ZERO)

    def is_zero(self) -> bool:
        return not self.coeffs

    def __eq__(self, other) -> bool:
        if isinstance(other, int) or type(other) is type(_ONE):
            other = BiPolynomial.const(other)
        if not isinstance(other, BiPolynomial):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(frozenset(self.coeffs.items()))

    def __repr__(self) -> str:
        terms = [f"{c}*z1^{n}*z2^{m}" for (n, m), c in sorted(self.coeffs.items())[:8]]
        return "BiPolynomial(" + (" + ".join(terms) if terms else "0") + ")"

    def __add__(self, other):
        if isinstance(other, int) or type(other) is type(_ONE):
            other = BiPolynomial.const(other)
        if not isinstance(other, BiPolynomial):
            return NotImplemented
        out = dict(self.coeffs)
        for k, v in other.coeffs.items():
            out[k] = out.get(k, _ZERO) + v
        return BiPolynomial(out)

    __radd__ = __add__

    def __neg__(self):
        return BiPolynomial({k: -v for k, v in self.coeffs.items()})

    def __sub__(self, other):
        if isinstance(other, int) or type(other) is type(_ONE):
            other = BiPolynomial.const(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int) or type(other) is type(_ONE):
            c = as_rational(other)
            return BiPolynomial({k: c * v for k, v in self.coeffs.items()})
        if not isinstance(other, BiPolynomial):
            return NotImplemented
        out = {}
        for (n1, m1), a in self.coeffs.items():
            for (n2, m2), b in other.coeffs.items():
                key = (n1 + n2, m1 + m2)
                cur = out.get(key)
                out[key] = a * b if cur is None else cur + a * b
        return BiPolynomial(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result = BiPolynomial.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def theta(self, var: int) -> "BiPolynomial":
        idx = 0 if var == 1 else 1
        return BiPolynomial({k: k[idx] * v for k, v in self.coeffs.items()})

    def to_series(self, order: int) -> BiSeries:
        return BiSeries(self.coeffs, order)

    def to_json(self) -> dict:
        return {f"{n},{m}": str(c) for (n, m), c in sorted(self.coeffs.items())}


class BiRationalFunction:
    """Quotient of exact bivariate polynomials.

    Kept unreduced; equality is cross-multiplication equality, which is
    exact without needing multivariate gcd.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: BiPolynomial, den: BiPolynomial):
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        self.num = num
        self.den = den

    @classmethod
    def from_poly(cls, p: BiPolynomial) -> "BiRationalFunction":
        return cls(p, BiPolynomial.one())

    @classmethod
    def zero(cls) -> "BiRationalFunction":
        return cls(BiPolynomial.zero(), BiPolynomial.one())

    @classmethod
    def const(cls, c) -> "BiRationalFunction":
        return cls(BiPolynomial.const(c), BiPolynomial.one())

    @staticmethod
    def _coerce(x) -> "BiRationalFunction":
        if isinstance(x, BiRationalFunction):
            return x
        if isinstance(x, BiPolynomial):
            return BiRationalFunction.from_poly(x)
        return BiRationalFunction.const(x)

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __add__(self, other):
        other = self._coerce(other)
        return BiRationalFunction(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return BiRationalFunction(-self.num, self.den)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return (-self) + self._coerce(other)

    def __mul__(self, other):
        other = self._coerce(other)
        return BiRationalFunction(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other.num.is_zero():
            raise ZeroDivisionError("division by the zero rational function")
        return BiRationalFunction(self.num * other.den, self.den * other.num)

    def theta(self, var: int) -> "BiRationalFunction":
        # quotient rule: theta(n/d) = (theta(n) d - n theta(d)) / d^2
        return BiRationalFunction(
            self.num.theta(var) * self.den - self.num * self.den.theta(var),
            self.den * self.den,
        )

    def equals(self, other) -> bool:
        other = self._coerce(other)
        return (self.num * other.den - other.num * self.den).is_zero()

    def cross_difference(self, other) -> BiPolynomial:
        other = self._coerce(other)
        return self.num * other.den - other.num * self.den

    def to_series(self, order: int) -> BiSeries:
        if self.den.coeff(0, 0) == 0:
            raise ZeroDivisionError("denominator vanishes at the origin; no power-series expansion")
        return self.num.to_series(order) * self.den.to_series(order).inv()

    def to_json(self) -> dict:
        return {"num": self.num.to_json(), "den": self.den.to_json()}

    def __repr__(self) -> str:
        return f"BiRationalFunction({self.num!r} / {self.den!r})"


def rf_equal(a: BiRationalFunction, b: BiRationalFunction) -> bool:
    """Exact equality p/q = r/s via p*s - r*q = 0 (no truncation involved)."""
    return BiRationalFunction._coerce(a).equals(b)
