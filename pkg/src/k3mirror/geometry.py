"""Two-parameter K3 hypersurface families: differential operators, period
series, connection matrices, couplings and the intersection pairing.

The three families are labelled E6, E7, E8 after the type of their elliptic
fiber.  Everything downstream of :func:`model_params` is exact rational
arithmetic.

A note on provenance of the connection matrices.  The first three rows of
G1, G2 follow from the two differential operators directly.  For the fourth
rows this module carries two versions: a transcription of the published
closed forms (`g1_printed`, `g2_printed`) and the flat completion derived
here from the operator ideal (`g1`, `g2`).  The derived rows are the unique
ones compatible with integrability and are certified against the actual
period solutions by :func:`verify_period_system`; the transcribed rows are
kept as hypotheses and compared entry by entry in :func:`verify_flatness`.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import factorial

from .series import (
    Q,
    BiPolynomial,
    BiRationalFunction,
    BiSeries,
    LogSeries,
)
from .linalg import mat_mul, mat_sub, mat_theta
from .report import VerificationReport, bool_check, rf_check, series_check

__all__ = [
    "ModelParams",
    "MODEL_LABELS",
    "model_params",
    "holomorphic_period",
    "apply_operator",
    "PeriodSystem",
    "frobenius_log_periods",
    "ConnectionPair",
    "gm_matrices",
    "verify_flatness",
    "verify_period_system",
    "PairingData",
    "yukawa",
    "verify_yukawa",
    "verify_pairing",
]

MODEL_LABELS = ("E6", "E7", "E8")


@dataclass(frozen=True)
class ModelParams:
    """All per-family constants."""

    label: str
    d: int
    w1: int
    w2: int
    mu: int
    nu: int
    level: int
    r: int
    d_N: int
    c_hh: int
    c_hl: int
    c_ll: int

    @property
    def c(self) -> int:
        # coupling normalization; fixed so the flat-gauge intersection
        # constants come out as (c_hh, c_hl, 0)
        return self.c_hl

    def __post_init__(self):
        assert self.nu * 2 == self.d
        assert self.w1 % 2 == 0 and self.w2 % 2 == 0
        mu = (
            (2 * self.d) // (self.w1 * self.w2)
            * (self.d // self.w1) ** (self.w1 // 2 - 1)
            * (self.d // self.w2) ** (self.w2 // 2 - 1)
        )
        assert mu == self.mu
        assert self.mu * self.nu**2 == self.d_N
        assert self.c_hh == 4 * self.d // (self.w1 * self.w2)
        assert self.c_hl == 2 * self.d // (self.w1 * self.w2)
        assert self.c_hh == 2 * self.c_hl
        assert self.c_ll == 0


_MODELS = {
    "E6": ModelParams("E6", d=6, w1=2, w2=2, mu=3, nu=3, level=3, r=3, d_N=27,
                      c_hh=6, c_hl=3, c_ll=0),
    "E7": ModelParams("E7", d=8, w1=4, w2=2, mu=4, nu=4, level=2, r=4, d_N=64,
                      c_hh=4, c_hl=2, c_ll=0),
    "E8": ModelParams("E8", d=12, w1=6, w2=4, mu=12, nu=6, level=1, r=6, d_N=432,
                      c_hh=2, c_hl=1, c_ll=0),
}


def model_params(label: str) -> ModelParams:
    try:
        return _MODELS[label.upper()]
    except KeyError:
        raise ValueError(f"unknown model label {label!r}; expected one of {MODEL_LABELS}")


# ---------------------------------------------------------------------------
# periods


def holomorphic_period(p: ModelParams, order: int) -> BiSeries:
    """The power-series solution with constant term 1.

    Coefficient of z1^n z2^m is
    (dn/2)! / ((w1 n/2)! (w2 n/2)! (m!)^2 (n-2m)!) over n >= 2m >= 0;
    all factorial arguments are integral for the three models.
    """
    coeffs = {}
    for n in range(order + 1):
        assert (p.d * n) % 2 == 0 and (p.w1 * n) % 2 == 0 and (p.w2 * n) % 2 == 0
        top = factorial(p.d * n // 2)
        f1 = factorial(p.w1 * n // 2)
        f2 = factorial(p.w2 * n // 2)
        for m in range(min(n // 2, order) + 1):
            coeffs[(n, m)] = Q(top, f1 * f2 * factorial(m) ** 2 * factorial(n - 2 * m))
    return BiSeries(coeffs, order)


def apply_operator(p: ModelParams, which: int, f):
    """Apply the first (which=1) or second (which=2) annihilating operator.

    Works on anything with .theta(var) that supports +, - and scalar or
    BiSeries multiplication (BiSeries and LogSeries).
    """
    t1 = f.theta(1)
    t2 = f.theta(2)
    if which == 1:
        z1 = BiSeries.variable(1, f.order)
        inner = t1.theta(1) * (p.nu**2) + t1 * (p.nu**2) + f * (p.nu - 1)
        return t1.theta(1) - t1.theta(2) * 2 - inner * z1 * p.mu
    if which == 2:
        z2 = BiSeries.variable(2, f.order)
        inner = t1.theta(1) - t1.theta(2) * 4 + t2.theta(2) * 4 - t1 + t2 * 2
        return t2.theta(2) - inner * z2
    raise ValueError("operator index must be 1 or 2")


@dataclass(frozen=True)
class PeriodSystem:
    """Holomorphic solution and the two logarithmic companions.

    The logarithmic solutions are X0*log(z_a) + Shat^a with Shat^a a plain
    power series vanishing at the origin; the transcendental normalization
    of the logarithm is absorbed into Shat.
    """

    params: ModelParams
    order: int
    x0: BiSeries
    shat1: BiSeries
    shat2: BiSeries

    def xhat(self, a: int) -> LogSeries:
        if a == 1:
            return LogSeries(self.shat1, c1=self.x0)
        if a == 2:
            return LogSeries(self.shat2, c2=self.x0)
        raise ValueError("logarithmic solution index must be 1 or 2")

    def solutions(self):
        return (
            ("X0", LogSeries(self.x0)),
            ("Xhat1", self.xhat(1)),
            ("Xhat2", self.xhat(2)),
        )


def _solve_log_companion(p: ModelParams, x0: BiSeries, a: int) -> BiSeries:
    """Find the series S with L_i(X0*log z_a + S) = 0, S(0,0) = 0.

    The residues R_i = L_i(X0*log z_a) are log-free because L_i X0 = 0;
    S is then fixed degree by degree: the first operator determines the
    z2-independent coefficients (diagonal factor n^2), the second operator
    lifts in the z2 direction (diagonal factor m^2).  Both operators are
    re-applied to the assembled solution afterwards as a consistency check.
    """
    order = x0.order
    log_part = LogSeries(BiSeries.zero(order), **{f"c{a}": x0})
    resid = [apply_operator(p, i, log_part) for i in (1, 2)]
    for r in resid:
        assert r.c1.is_zero() and r.c2.is_zero(), "operator must annihilate X0"
    r1, r2 = resid[0].c0, resid[1].c0

    s = {}
    for n in range(1, order + 1):
        rec = p.mu * (p.nu**2 * (n - 1) ** 2 + p.nu**2 * (n - 1) + p.nu - 1)
        s[(n, 0)] = (rec * s.get((n - 1, 0), Q(0)) - r1.coeff(n, 0)) / Q(n * n)
    for m in range(1, order + 1):
        for n in range(order + 1):
            lift = (n - 2 * m + 2) * (n - 2 * m + 1)
            s[(n, m)] = (lift * s.get((n, m - 1), Q(0)) - r2.coeff(n, m)) / Q(m * m)
    shat = BiSeries(s, order)

    xhat = log_part + LogSeries(shat)
    for i in (1, 2):
        out = apply_operator(p, i, xhat)
        assert out.is_zero(), f"operator {i} fails to annihilate the log solution"
    return shat


def frobenius_log_periods(p: ModelParams, order: int) -> PeriodSystem:
    if order < 2:
        raise ValueError("order must be at least 2")
    x0 = holomorphic_period(p, order)
    shat1 = _solve_log_companion(p, x0, 1)
    shat2 = _solve_log_companion(p, x0, 2)
    return PeriodSystem(p, order, x0, shat1, shat2)


# ---------------------------------------------------------------------------
# connection matrices


def _rf(num: BiPolynomial, den: BiPolynomial) -> BiRationalFunction:
    return BiRationalFunction(num, den)


@dataclass(frozen=True)
class ConnectionPair:
    """The two connection matrices in the basis built from the period form.

    `g1`, `g2` satisfy the integrability identity exactly (derived fourth
    rows); `g1_printed`, `g2_printed` transcribe the published closed forms
    and are compared against the derived rows as hypotheses.
    """

    params: ModelParams
    g1: list
    g2: list
    g1_printed: list
    g2_printed: list
    delta1: BiPolynomial
    delta2: BiPolynomial
    disc: BiPolynomial


def gm_matrices(p: ModelParams) -> ConnectionPair:
    mu, nu = p.mu, p.nu
    one = BiPolynomial.one()
    z1 = BiPolynomial.variable(1)
    z2 = BiPolynomial.variable(2)
    d1 = one - z1 * (mu * nu**2)
    d2 = one - z2 * 4
    disc = d1 * d1 + (d2 - one) * (d1 - one) * (d1 - one)

    def const(c):
        return BiRationalFunction.const(c)

    def poly(q):
        return BiRationalFunction.from_poly(q)

    half = Q(1, 2)
    # second-derivative row shared by both matrices: coefficients of the
    # mixed derivative of the period form in the chosen basis
    row_mixed = [
        poly(z1 * Q(mu * (1 - nu), 2)),
        poly((d1 - one) * half),
        const(0),
        poly(d1 * half),
    ]
    # row for the second variable applied twice (derived; the published
    # first entry has the opposite sign of the z1 coefficient)
    row_sec_derived = [
        _rf(z1 * z2 * (2 * mu * (nu - 1)), d2),
        _rf((one - d1 * 2) * z2, d2),
        _rf(z2 * 2, d2),
        _rf((one - d1 * 2) * z2, d2),
    ]
    row_sec_printed = [
        _rf(z1 * z2 * (2 * nu * (1 - nu)), d2),
        _rf((one - d1 * 2) * z2, d2),
        _rf(z2 * 2, d2),
        _rf((one - d1 * 2) * z2, d2),
    ]

    # derived fourth rows: the unique completion compatible with both
    # operators (solved from the operator ideal; certified against the
    # period solutions by verify_period_system)
    b = mu * nu**2  # = d_N; 1 - b z1 is delta1
    g1r4 = [
        _rf(z1 * (mu * (nu - 1)) * (one - z1 * (2 * b) + z1 * z2 * (8 * b)), disc),
        _rf(
            z1 * mu * (
                one * (nu**2 + nu - 1)
                + z2 * (4 * nu - 4)
                - z1 * (2 * mu * nu**4 + mu * nu**3 - mu * nu**2)
                + z1 * z2 * (8 * mu * nu**4 + 4 * mu * nu**3 - 4 * mu * nu**2)
            ),
            disc,
        ),
        _rf(z1 * (2 * mu * (nu - 1)) * (one - z2 * 4), disc),  # = 2 mu (nu-1) z1 delta2
        _rf(z1 * (3 * b) * (one - z1 * b + z1 * z2 * (4 * b)), disc),
    ]
    disc2 = disc * 2
    g2r4 = [
        _rf(z1 * z1 * (mu**2 * nu**2 * (nu - 1)) * (one * (-1) + z2 * 8 + z1 * b - z1 * z2 * (4 * b)), disc2),
        _rf(
            z1 * mu * (
                z1 * (mu * nu**4) - z2 * (4 * nu - 4) - z1 * z2 * (8 * mu * nu**4)
                - z1 * z1 * (mu**2 * nu**6) + z1 * z1 * z2 * (4 * mu**2 * nu**6)
            ) * (-1),
            disc2,
        ),
        _rf(z1 * (mu * (nu - 1)) * (one - z2 * 4) * d1, disc),  # = mu (nu-1) z1 delta1 delta2
        _rf(
            z1 * b * (
                one * (-1) + z1 * (2 * b) - z1 * z2 * (12 * b)
                - z1 * z1 * (b * b) + z1 * z1 * z2 * (4 * b * b)
            ) * (-1),
            disc2,
        ),
    ]

    # published fourth rows, transcribed verbatim (hypotheses)
    p1r4 = [
        _rf(z1 * (mu * (1 - nu)) * ((one - d1) * 2 - one), disc),
        _rf(
            z1 * mu * (
                ((one * 2 - d1) * d2 - one * 2) * (1 - nu)
                + (d1 * d2 * 2 - one) * nu**2
            ),
            disc,
        ),
        _rf(z1 * (2 * mu * (1 - nu)) * d2, disc),
        _rf(z1 * (3 * b) * (one - (one - d1) * d2), disc),
    ]
    p2r4 = [
        _rf(z1 * (mu * (1 - nu)) * (one - d1) * (one - (one + d1) * d2), disc2),
        _rf(
            z1 * mu * (
                (one - d2) * (1 - nu) - (one - d1) * (one - (one + d1) * d2) * nu**2
            ),
            disc2,
        ),
        _rf(z1 * (mu * (nu - 1)) * d1 * d2, disc),
        _rf((one - d1) * ((one - d1) * (d2 * 3 - one) - (one - d1 * d1) * d2 - one), disc2),
    ]

    g1 = [
        [const(0), const(1), const(0), const(0)],
        [const(0), const(0), const(0), const(1)],
        row_mixed,
        g1r4,
    ]
    g2 = [
        [const(0), const(0), const(1), const(0)],
        list(row_mixed),
        row_sec_derived,
        g2r4,
    ]
    g1_printed = [g1[0], g1[1], row_mixed, p1r4]
    g2_printed = [g2[0], list(row_mixed), row_sec_printed, p2r4]
    return ConnectionPair(p, g1, g2, g1_printed, g2_printed, d1, d2, disc)


def _flatness_residual(g1, g2, order_sign: int):
    """theta1 G2 - theta2 G1 + s*(G2 G1 - G1 G2) with s = order_sign."""
    lhs = mat_sub(mat_theta(g2, 1), mat_theta(g1, 2))
    comm = mat_sub(mat_mul(g2, g1), mat_mul(g1, g2))
    if order_sign < 0:
        comm = mat_sub(mat_mul(g1, g2), mat_mul(g2, g1))
    return [[a + b for a, b in zip(ra, rb)] for ra, rb in zip(lhs, comm)]


# entries of the published closed forms that differ from the flat
# completion, frozen as an inventory; verify_flatness asserts exactly this
# set of discrepancies, so any change to either side is flagged
PRINTED_ROW_MISMATCHES = {
    "G1": {(4, 1), (4, 2), (4, 3)},
    "G2": {(3, 1), (4, 1), (4, 2), (4, 4)},
}


def verify_flatness(c: ConnectionPair) -> VerificationReport:
    """Integrability of the connection, plus printed-row hypothesis checks.

    The integrability identity is required to hold exactly for (g1, g2) in
    the order theta1 G2 - theta2 G1 + G2 G1 - G1 G2; the opposite commutator
    order is evaluated and recorded too.  The published fourth rows are then
    compared entry by entry against the flat completion: agreement is
    required outside PRINTED_ROW_MISMATCHES, disagreement inside it.
    """
    rep = VerificationReport("flatness", c.params.label)
    res = _flatness_residual(c.g1, c.g2, 1)
    ok = all(x.num.is_zero() for row in res for x in row)
    rep.add(bool_check("integrability theta1 G2 - theta2 G1 + [G2,G1] = 0", ok,
                       convention="commutator order G2G1-G1G2"))
    res_opp = _flatness_residual(c.g1, c.g2, -1)
    ok_opp = all(x.num.is_zero() for row in res_opp for x in row)
    rep.add(bool_check(
        "opposite commutator order does not also hold", not ok_opp,
        convention="records which order holds: G2G1-G1G2 only"))

    for name, ours, printed in (
        ("G1", c.g1, c.g1_printed),
        ("G2", c.g2, c.g2_printed),
    ):
        mism = PRINTED_ROW_MISMATCHES[name]
        for i in range(4):
            for j in range(4):
                agree = printed[i][j].equals(ours[i][j])
                expect_agree = (i + 1, j + 1) not in mism
                if expect_agree:
                    chk = rf_check(
                        f"published {name} entry ({i + 1},{j + 1}) matches flat completion",
                        printed[i][j], ours[i][j], convention="transcription hypothesis")
                else:
                    chk = bool_check(
                        f"published {name} entry ({i + 1},{j + 1}) differs from flat "
                        "completion (documented discrepancy)",
                        not agree, convention="transcription hypothesis: frozen discrepancy")
                rep.add(chk)
    for sign, tag in ((1, "G2G1-G1G2"), (-1, "G1G2-G2G1")):
        res_p = _flatness_residual(c.g1_printed, c.g2_printed, sign)
        ok_p = all(x.num.is_zero() for row in res_p for x in row)
        rep.add(bool_check(
            f"published rows are not integrable (order {tag}; documented)",
            not ok_p, convention="transcription hypothesis: frozen discrepancy"))
    return rep


def verify_period_system(c: ConnectionPair, ps: PeriodSystem, order: int | None = None) -> VerificationReport:
    """theta_i Pi = G_i Pi for Pi built from each solution."""
    rep = VerificationReport("picard-fuchs", c.params.label)
    K = ps.order if order is None else order
    g_series = [
        [[e.to_series(ps.order) for e in row] for row in g] for g in (c.g1, c.g2)
    ]
    for name, sol in ps.solutions():
        for i in (1, 2):
            if name == "X0":
                out = apply_operator(ps.params, i, LogSeries(ps.x0))
                rep.add(series_check(f"operator {i} annihilates X0", out,
                                     LogSeries(BiSeries.zero(ps.order)), upto=K))
        pi = [sol, sol.theta(1), sol.theta(2), sol.theta(1).theta(1)]
        for i, g in ((1, g_series[0]), (2, g_series[1])):
            for k in range(4):
                lhs = pi[k].theta(i)
                rhs = pi[0] * g[k][0]
                for l in range(1, 4):
                    rhs = rhs + pi[l] * g[k][l]
                rep.add(series_check(
                    f"theta_{i} row {k + 1} of periods from {name}", lhs, rhs, upto=K - 1))
    for i in (1, 2):
        for a in (1, 2):
            out = apply_operator(ps.params, i, ps.xhat(a))
            rep.add(series_check(f"operator {i} annihilates Xhat{a}", out,
                                 LogSeries(BiSeries.zero(ps.order)), upto=K - 1))
    return rep


# ---------------------------------------------------------------------------
# couplings and pairing


@dataclass(frozen=True)
class PairingData:
    """Second-order couplings and the intersection pairing matrix.

    `y11`, `y12`, `y22`, `y44` are the values consistent with the
    connection (certified by verify_pairing); printed closed forms that
    differ are kept in `printed` for hypothesis checks.
    """

    params: ModelParams
    y11: BiRationalFunction
    y12: BiRationalFunction
    y22: BiRationalFunction
    y44: BiRationalFunction
    q24: BiRationalFunction
    q34: BiRationalFunction
    q: list
    printed: dict


def yukawa(p: ModelParams, conn: ConnectionPair | None = None) -> PairingData:
    if conn is None:
        conn = gm_matrices(p)
    one = BiPolynomial.one()
    z2 = BiPolynomial.variable(2)
    d1, d2, disc = conn.delta1, conn.delta2, conn.disc
    c = p.c

    y11 = _rf(one * (2 * c), disc)
    y12 = _rf(d1 * c, disc)
    # consistent with the connection: coefficient of the top basis element
    # in the second repeated derivative row, times y11
    y22 = _rf((one - d1 * 2) * z2 * (2 * c), d2 * disc)
    y22_printed = _rf((d1 * 2 - one) * z2 * (2 * c), disc)

    q24 = y11.theta(1) * Q(1, 2)
    q34 = y11.theta(2) * Q(-1, 2) + y12.theta(1)
    # y44 from pairing compatibility on the (2,4) entry:
    # theta1 q24 = y44 + [y11 G1_42 + y12 G1_43 + q24 G1_44]
    g1 = conn.g1
    y44 = q24.theta(1) - (y11 * g1[3][1] + y12 * g1[3][2] + q24 * g1[3][3])

    th1 = y11.theta(1)
    y44_printed = (
        th1.theta(1) * (-4)
        + th1 * ((d1 - one) * (one + d2 * (one + d1))) * Q(1, 2)
        + y11 * (
            (d1 - one) * (d2 * (one - d1) * 2 - one)
            + BiPolynomial.variable(1) * (4 * p.mu * (p.nu - 1)) * ((one - d2) * 4 + d2 * 3)
        ) * Q(1, 2)
    ) * _rf(one * (-1), disc)

    zero = BiRationalFunction.zero()
    q = [
        [zero, zero, zero, y11 * (-1)],
        [zero, y11, y12, q24],
        [zero, y12, y22, q34],
        [y11 * (-1), q24, q34, y44],
    ]
    printed = {
        "Y22": y22_printed,
        "Y44": y44_printed,
        "theta1_Y11_multiplier": _rf((one - d1) * (one + (d1 - one) * d2), disc),
        "theta2_Y11_multiplier": _rf((one - d1) * (one - d1) * (d2 - one), disc),
    }
    return PairingData(p, y11, y12, y22, y44, q24, q34, q, printed)


def verify_yukawa(pd: PairingData) -> VerificationReport:
    """Coupling relations plus the printed closed-form hypotheses."""
    p = pd.params
    one = BiPolynomial.one()
    z2 = BiPolynomial.variable(2)
    d1 = one - BiPolynomial.variable(1) * p.d_N
    d2 = one - z2 * 4

    rep = VerificationReport("yukawa", p.label)
    rep.add(rf_check("Delta1*Y11 - 2*Y12 = 0", pd.y11 * d1, pd.y12 * 2))
    rep.add(rf_check("Delta2*Y22 + 4*z2*Y12 - z2*Y11 = 0",
                     pd.y22 * d2 + pd.y12 * (z2 * 4), pd.y11 * z2))

    # published multiplier displays: off by a factor 2 (theta1) and a sign
    # (theta2); the corrected variants must hold exactly and the verbatim
    # ones must keep failing (frozen discrepancies)
    th1, th2 = pd.y11.theta(1), pd.y11.theta(2)
    m1, m2 = pd.printed["theta1_Y11_multiplier"], pd.printed["theta2_Y11_multiplier"]
    rep.add(bool_check(
        "published theta1 Y11 multiplier display differs (documented: off by factor 2)",
        not th1.equals(m1 * pd.y11),
        convention="transcription hypothesis: frozen discrepancy"))
    rep.add(bool_check(
        "published theta2 Y11 multiplier display differs (documented: off by sign)",
        not th2.equals(m2 * pd.y11),
        convention="transcription hypothesis: frozen discrepancy"))
    rep.add(rf_check("theta1 Y11 = 2 * published multiplier * Y11",
                     th1, m1 * pd.y11 * 2, convention="corrected: factor 2"))
    rep.add(rf_check("theta2 Y11 = - published multiplier * Y11",
                     th2, m2 * pd.y11 * (-1), convention="corrected: sign"))

    rep.add(bool_check(
        "published Y22 closed form differs from relation-compatible value "
        "(documented: missing 1/Delta2 and sign)",
        not pd.y22.equals(pd.printed["Y22"]),
        convention="transcription hypothesis: frozen discrepancy"))
    rep.add(bool_check(
        "published Y44 closed form differs from pairing-compatible value (documented)",
        not pd.y44.equals(pd.printed["Y44"]),
        convention="transcription hypothesis: frozen discrepancy"))
    return rep


def verify_pairing(conn: ConnectionPair, pd: PairingData) -> VerificationReport:
    """Derivation compatibility theta_i Q = G_i Q + Q G_i^T, entrywise."""
    rep = VerificationReport("pairing", conn.params.label)
    q = pd.q
    for i in range(4):
        for j in range(4):
            rep.add(bool_check(f"Q symmetric ({i + 1},{j + 1})", q[i][j].equals(q[j][i])))
    for i, g in ((1, conn.g1), (2, conn.g2)):
        gt = [[g[b][a] for b in range(4)] for a in range(4)]
        rhs = [[x + y for x, y in zip(ra, rb)]
               for ra, rb in zip(mat_mul(g, q), mat_mul(q, gt))]
        for a in range(4):
            for b in range(4):
                rep.add(rf_check(f"theta_{i} Q = G_{i} Q + Q G_{i}^T at ({a + 1},{b + 1})",
                                 q[a][b].theta(i), rhs[a][b]))
    return rep
