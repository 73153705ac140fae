"""Weight-one forms A, B, C and the E2-analogue E for Gamma_0(N), N = 1, 2, 3.

All tau-derivatives are realised as q d/dq, which keeps every coefficient
rational; the Ramanujan-Serre relations holding exactly under this
convention is itself one of the verified identities.

C is not an integral q-series: it is a positive rational power of q times
a unit, scaled so that C^r = d_N * q * unit^r has integral exponents and
rational coefficients.  It is therefore carried as a :class:`RootForm`
and consumed through its r-th power everywhere downstream.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .report import Check, VerificationReport, bool_check, series_check
from .series import Q, QSeries

LEVELS = (1, 2, 3)
ROOT_EXPONENT = {1: 6, 2: 4, 3: 3}
DN = {1: 432, 2: 64, 3: 27}


class EtaQuotient:
    """q^offset * unit with a rational offset accumulated from eta prefactors."""

    __slots__ = ("offset", "unit")

    def __init__(self, offset, unit: QSeries):
        self.offset = Q(offset)
        self.unit = unit

    def __mul__(self, other: "EtaQuotient") -> "EtaQuotient":
        return EtaQuotient(self.offset + other.offset, self.unit * other.unit)

    def __truediv__(self, other: "EtaQuotient") -> "EtaQuotient":
        return EtaQuotient(self.offset - other.offset, self.unit * other.unit.inv())

    def __pow__(self, n: int) -> "EtaQuotient":
        return EtaQuotient(self.offset * n, self.unit ** n)

    def scale(self, c) -> "EtaQuotient":
        return EtaQuotient(self.offset, self.unit * Q(c))

    def __add__(self, other: "EtaQuotient") -> "EtaQuotient":
        lo, hi = (self, other) if self.offset <= other.offset else (other, self)
        gap = hi.offset - lo.offset
        if gap != int(gap):
            raise ValueError("eta quotients with non-integral offset gap cannot be added")
        return EtaQuotient(lo.offset, lo.unit + hi.unit.shift(int(gap)))

    def root(self, n: int) -> "EtaQuotient":
        return EtaQuotient(self.offset / n, self.unit.nth_root(n))

    def finalize(self) -> QSeries:
        """Collapse to a plain q-series; the offset must have cancelled to an integer."""
        if self.offset != int(self.offset):
            raise ValueError(f"non-integral eta offset {self.offset}: transcription error upstream")
        return self.unit.shift(int(self.offset))


@lru_cache(maxsize=None)
def eta_expansion(scale: int, qmax: int) -> EtaQuotient:
    """Dedekind eta at scale*tau: q^(scale/24) * prod_{n>=1} (1 - q^(scale*n)).

    The product is expanded with Euler's pentagonal number theorem.
    """
    if qmax < 0:
        raise ValueError("qmax must be non-negative")
    coeffs = {0: 1}
    k = 1
    while True:
        lo = scale * k * (3 * k - 1) // 2
        hi = scale * k * (3 * k + 1) // 2
        if lo > qmax and hi > qmax:
            break
        sign = -1 if k % 2 else 1
        if lo <= qmax:
            coeffs[lo] = coeffs.get(lo, 0) + sign
        if hi <= qmax:
            coeffs[hi] = coeffs.get(hi, 0) + sign
        k += 1
    return EtaQuotient(Q(scale, 24), QSeries(coeffs, qmax))


def _divisor_power_sums(power: int, qmax: int) -> list:
    sums = [0] * (qmax + 1)
    for d in range(1, qmax + 1):
        dp = d ** power
        for n in range(d, qmax + 1, d):
            sums[n] += dp
    return sums


def eisenstein(k: int, qmax: int) -> QSeries:
    """Classical Eisenstein series E2, E4, E6 with constant term 1."""
    factors = {2: -24, 4: 240, 6: -504}
    if k not in factors:
        raise ValueError(f"unsupported Eisenstein weight {k}")
    sums = _divisor_power_sums(k - 1, qmax)
    coeffs = {0: Q(1)}
    for n in range(1, qmax + 1):
        coeffs[n] = Q(factors[k] * sums[n])
    return QSeries(coeffs, qmax)


@dataclass(frozen=True)
class RootForm:
    """A form of the shape d_N^(1/r) * q^offset * unit, available through its r-th power."""

    offset: Q
    scale_r: int  # exact value of (prefactor)^r
    unit: QSeries  # constant term 1
    r: int

    def power_r(self) -> QSeries:
        shift = self.offset * self.r
        if shift != int(shift):
            raise ValueError("r-th power of RootForm must have integral exponents")
        return (self.unit ** self.r).shift(int(shift)) * Q(self.scale_r)


@dataclass(frozen=True)
class FormSet:
    level: int
    r: int
    d_N: int
    A: QSeries
    B: QSeries
    C: RootForm
    E: QSeries

    @property
    def Ar(self) -> QSeries:
        return self.A ** self.r

    @property
    def Br(self) -> QSeries:
        return self.B ** self.r

    @property
    def Cr(self) -> QSeries:
        return self.C.power_r()


def build_forms(level: int, qmax: int = 30) -> FormSet:
    """q-expansions of A, B, C, E for Gamma_0(level), level in {1, 2, 3}."""
    if level not in LEVELS:
        raise ValueError(f"unsupported congruence level {level}")
    if qmax < 1:
        raise ValueError("qmax must be at least 1")
    r = ROOT_EXPONENT[level]
    d_N = DN[level]
    if level == 1:
        e4 = eisenstein(4, qmax)
        e6 = eisenstein(6, qmax)
        a = e4.nth_root(4)
        e4_32 = e4.nth_root(2) ** 3
        b = ((e4_32 + e6) * Q(1, 2)).nth_root(6)
        c_pow = (e4_32 - e6) * Q(1, 2)  # equals 432*q*(unit)^6
        lead = c_pow.coeff(1)
        if c_pow.valuation() != 1 or lead != d_N:
            raise AssertionError("C^6 should be 432*q + O(q^2) at level 1")
        c_unit6 = c_pow.shift(-1) * Q(1, d_N)
        c = RootForm(Q(1, r), d_N, c_unit6.nth_root(6), r)
    else:
        e1 = eta_expansion(1, qmax)
        en = eta_expansion(level, qmax)
        if level == 2:
            a = ((en ** 24).scale(64) + e1 ** 24).root(4) / (e1 ** 2 * en ** 2)
            b = e1 ** 4 / en ** 2
            c_eq = en ** 4 / e1 ** 2
        else:
            a = ((en ** 12).scale(27) + e1 ** 12).root(3) / (e1 * en)
            b = e1 ** 3 / en
            c_eq = en ** 3 / e1
        a = a.finalize()
        b = b.finalize()
        if c_eq.offset != Q(1, r):
            raise AssertionError("C offset should be 1/r")
        c = RootForm(c_eq.offset, d_N, c_eq.unit, r)
    for name, form in (("A", a), ("B", b)):
        if form.coeff(0) != 1:
            raise AssertionError(f"{name} should have constant term 1")
    cr = c.power_r()
    # E = d/dtau log(B^r C^r) with d/dtau := q d/dq;
    # the C^r = d_N q u^r factor contributes 1 + theta(u^r)/u^r.
    br = b ** r
    ur = c.unit ** r
    e = br.theta() * br.inv() + 1 + ur.theta() * ur.inv()
    if e.coeff(0) != 1:
        raise AssertionError("E should have constant term 1")
    if not (a ** r).agrees(br + cr):
        raise AssertionError("A^r = B^r + C^r fails; transcription error")
    return FormSet(level, r, d_N, a, b, c, e)


def hauptmodul_j(forms: FormSet) -> QSeries:
    """j = d_N A^(2r) / (C^r (A^r - C^r)), a Laurent series with a simple pole."""
    den = forms.Cr * (forms.Ar - forms.Cr)
    if den.is_zero() or den.coeff(den.valuation()) == 0:
        raise ZeroDivisionError("hauptmodul denominator has no invertible leading term")
    return forms.A ** (2 * forms.r) * den.inv() * Q(forms.d_N)


def alpha_series(forms: FormSet) -> QSeries:
    """alpha = (C/A)^r, the normalized hauptmodul vanishing at the cusp."""
    return forms.Cr * forms.Ar.inv()


def verify_ramanujan_ring(forms: FormSet) -> VerificationReport:
    """Machine check of the differential ring of A, B, C, E.

    The C-relation dC/dtau = C(E + A^2)/(2r) is verified in its r-th power
    form d(C^r)/dtau = C^r (E + A^2)/2, which is equivalent and stays inside
    integral rational q-series.
    """
    report = VerificationReport(suite="ramanujan", model=f"N={forms.level}")
    a, b, e = forms.A, forms.B, forms.E
    r = forms.r
    ar, br, cr = forms.Ar, forms.Br, forms.Cr
    half_r = Q(1, 2 * r)
    a2 = a * a
    rhs_a = a * (e + (cr - br) * (a ** (r - 2)).inv()) * half_r
    report.add(series_check("dA = A(E + (C^r - B^r)/A^(r-2))/(2r)", a.theta(), rhs_a))
    report.add(series_check("dB = B(E - A^2)/(2r)", b.theta(), b * (e - a2) * half_r))
    report.add(series_check("d(C^r) = C^r(E + A^2)/2", cr.theta(), cr * (e + a2) * Q(1, 2),
                            convention="C-relation checked on C^r"))
    report.add(series_check("dE = (E^2 - A^4)/(2r)", e.theta(), (e * e - a2 * a2) * half_r))
    report.add(series_check("A^r = B^r + C^r", ar, br + cr))
    if forms.level == 1:
        report.add(series_check("E equals E2 at level 1", e, eisenstein(2, e.qmax)))
    return report


def verify_hauptmodul(forms: FormSet) -> VerificationReport:
    """j-function identities: pole normalization, level-1 oracle, 1/j = alpha(1-alpha)/d_N."""
    report = VerificationReport(suite="jfunction", model=f"N={forms.level}")
    j = hauptmodul_j(forms)
    report.add(bool_check("j has a simple pole with leading coefficient 1",
                          j.valuation() == -1 and j.coeff(-1) == 1,
                          detail=f"valuation={j.valuation()}, lead={j.coeff(j.valuation())}"))
    if forms.level == 1:
        eta24 = (eta_expansion(1, forms.A.qmax) ** 24).finalize()
        oracle = eisenstein(4, forms.A.qmax) ** 3 * eta24.inv()
        report.add(series_check("level 1: j = E4^3/eta^24", j, oracle))
        first = (j.coeff(-1), j.coeff(0), j.coeff(1))
        report.add(bool_check("level 1: j = q^-1 + 744 + 196884q + ...",
                              first == (1, 744, 196884), detail=str(first)))
    alpha = alpha_series(forms)
    report.add(series_check("1/j = alpha(1-alpha)/d_N", j.inv(),
                            alpha * (1 - alpha) * Q(1, forms.d_N)))
    report.add(series_check("d(alpha) = alpha(1-alpha)A^2", alpha.theta(),
                            alpha * (1 - alpha) * forms.A * forms.A))
    return report
