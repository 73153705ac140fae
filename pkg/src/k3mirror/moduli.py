"""Mirror map, frame matrix, flat-gauge connection, and the identity suite
linking the two-parameter families to Gamma_0(N) form expansions.

Coordinates: the base carries (z1, z2); the flat side carries the nomes
(q1, q2) with q_a = z_a * exp(Shat^a / X0).  Two auxiliary nome arguments
appear throughout: p1 = q1 and p2 = q1*q2, matching tau1 = t1 and
tau2 = t1 + t2.

Truncation contract: q-side series are carried on the square box of order
K, but compositions through the mirror map are only exact on the region of
total degree <= K; every verifier in this module therefore compares
coefficients with n + m <= K (or K-1 after differentiation-free products,
still K).  The helper `td` truncates to that region.
"""

from __future__ import annotations

from dataclasses import dataclass

from .series import Q, BiSeries, QSeries
from .linalg import mat_mul, series_mat_inv
from .modular import FormSet, alpha_series, build_forms
from .geometry import (
    ConnectionPair,
    ModelParams,
    PairingData,
    PeriodSystem,
    frobenius_log_periods,
    gm_matrices,
    yukawa,
)
from .report import VerificationReport, bool_check, series_check

__all__ = [
    "td",
    "lift_nome",
    "SeriesComposer",
    "MirrorMap",
    "mirror_map",
    "FrameMatrix",
    "build_frame",
    "transformed_connection",
    "verify_modular_vector_field",
    "verify_factorization",
    "verify_inverse_mirror",
    "verify_frame_identities",
]


def td(s: BiSeries, cap: int) -> BiSeries:
    """Truncate to total degree <= cap (keeps the box order)."""
    return BiSeries({k: v for k, v in s.coeffs.items() if k[0] + k[1] <= cap}, s.order)


def lift_nome(f: QSeries, arg: int, order: int) -> BiSeries:
    """Lift a one-variable expansion to (q1, q2): arg 1 -> f(q1), 2 -> f(q1*q2)."""
    if f.valuation() < 0:
        raise ValueError("cannot lift a series with a pole")
    out = {}
    for n in range(order + 1):
        c = f.coeff(n)
        if c != 0:
            out[(n, 0) if arg == 1 else (n, n)] = c
    return BiSeries(out, order)


class SeriesComposer:
    """Evaluate base-side series at a q-expansion of (z1, z2).

    Power products of the inner series are cached; results are exact for
    total degree <= order because the inner series start at degree 1.
    """

    def __init__(self, z1q: BiSeries, z2q: BiSeries):
        if z1q.coeffs.get((0, 0), 0) != 0 or z2q.coeffs.get((0, 0), 0) != 0:
            raise ValueError("inner series must vanish at the origin")
        self.order = min(z1q.order, z2q.order)
        self._pow1 = [BiSeries.one(self.order), td(z1q, self.order)]
        self._pow2 = [BiSeries.one(self.order), td(z2q, self.order)]

    def _power(self, cache: list, k: int) -> BiSeries:
        while len(cache) <= k:
            cache.append(td(cache[-1] * cache[1], self.order))
        return cache[k]

    def series(self, f) -> BiSeries:
        """Compose a BiSeries (or BiPolynomial via to_series) in (z1, z2)."""
        if hasattr(f, "to_series"):
            f = f.to_series(self.order)
        by_m: dict = {}
        for (n, m), c in f.coeffs.items():
            if n + m <= self.order:
                by_m.setdefault(m, {})[n] = c
        acc = BiSeries.zero(self.order)
        for m, row in sorted(by_m.items()):
            part = BiSeries.zero(self.order)
            for n, c in sorted(row.items()):
                part = part + self._power(self._pow1, n) * c
            acc = acc + (part if m == 0 else td(self._power(self._pow2, m) * part, self.order))
        return acc

    def rational(self, rf) -> BiSeries:
        num = self.series(rf.num)
        den = self.series(rf.den)
        return td(num * den.inv(), self.order)


@dataclass(frozen=True)
class MirrorMap:
    """q_a = z_a * q_unit_a(z) and the inverse z_a = q_a * z_unit_a(q)."""

    params: ModelParams
    order: int
    periods: PeriodSystem
    q_unit1: BiSeries
    q_unit2: BiSeries
    z_unit1: BiSeries
    z_unit2: BiSeries

    def z_of_q(self) -> tuple:
        K = self.order
        return (BiSeries.variable(1, K) * self.z_unit1,
                BiSeries.variable(2, K) * self.z_unit2)

    def composer(self) -> SeriesComposer:
        z1q, z2q = self.z_of_q()
        return SeriesComposer(z1q, z2q)


def mirror_map(p: ModelParams, ps: PeriodSystem | None = None, order: int | None = None) -> MirrorMap:
    if ps is None:
        ps = frobenius_log_periods(p, order if order is not None else 10)
    K = ps.order
    x0inv = ps.x0.inv()
    l1 = ps.shat1 * x0inv
    l2 = ps.shat2 * x0inv
    q_unit1 = l1.exp()
    q_unit2 = l2.exp()

    # invert by fixed point: z_a = q_a * exp(-l_a(z(q))); each sweep extends
    # correctness by one total degree, so K sweeps reach total degree K
    q1 = BiSeries.variable(1, K)
    q2 = BiSeries.variable(2, K)
    u1 = BiSeries.one(K)
    u2 = BiSeries.one(K)
    for cap in range(1, K + 1):
        comp = SeriesComposer(td(q1 * u1, cap), td(q2 * u2, cap))
        u1 = td((-comp.series(l1)).exp(), cap)
        u2 = td((-comp.series(l2)).exp(), cap)

    mm = MirrorMap(p, K, ps, q_unit1, q_unit2, u1, u2)
    # round trip: q(z(q)) = q on total degree <= K
    comp = mm.composer()
    z1q, z2q = mm.z_of_q()
    for a, (zq, qu, qv) in enumerate(((z1q, q_unit1, q1), (z2q, q_unit2, q2)), start=1):
        back = td(zq * comp.series(qu), K)
        assert back.agrees(td(qv, K)), f"mirror map round trip failed for q{a}"
    return mm


@dataclass(frozen=True)
class FrameMatrix:
    """Lower-triangular change of frame S with S Q S^T = Phi.

    Independent coordinates on the section: s0 = 1/X0(z(q)),
    s_{a,i} = (D_a z_i / z_i) * s0 and s_a = D_a log s0, with
    D_a = q_a d/dq_a; the last row is solved from the pairing condition.
    """

    params: ModelParams
    order: int
    s0: BiSeries
    s_a: tuple            # coordinates (s1, s2) with s_a = D_a log s0
    s_ai: tuple           # ((s11, s12), (s21, s22))
    s3: tuple             # (s30, s31, s32, s33)
    dlogz: tuple          # (D_a z_i / z_i) as a 2x2 tuple of BiSeries
    y_q: dict             # couplings and pairing entries pushed to q

    @property
    def matrix(self) -> list:
        # the (1+a, 1) entries are D_a s0 = s_a * s0, so that row 1+a is the
        # D_a-covariant derivative of row 1 in the period basis
        K = self.order
        zero = BiSeries.zero(K)
        (s11, s12), (s21, s22) = self.s_ai
        s30, s31, s32, s33 = self.s3
        return [
            [self.s0, zero, zero, zero],
            [td(self.s_a[0] * self.s0, K), s11, s12, zero],
            [td(self.s_a[1] * self.s0, K), s21, s22, zero],
            [s30, s31, s32, s33],
        ]


def _d(s: BiSeries, a: int) -> BiSeries:
    return s.theta(a)


def build_frame(p: ModelParams, mm: MirrorMap, pd: PairingData | None = None) -> FrameMatrix:
    if pd is None:
        pd = yukawa(p)
    K = mm.order
    comp = mm.composer()
    s0 = comp.series(mm.periods.x0).inv()
    s1 = _d(s0, 1) * s0.inv()
    s2 = _d(s0, 2) * s0.inv()

    units = (mm.z_unit1, mm.z_unit2)
    dlogz = tuple(
        tuple(
            td((BiSeries.one(K) if a == i else BiSeries.zero(K))
               + _d(units[i].log(), a + 1), K)
            for i in range(2))
        for a in range(2))
    s_ai = tuple(tuple(td(dlogz[a][i] * s0, K) for i in range(2)) for a in range(2))

    y = {name: comp.rational(rf) for name, rf in (
        ("y11", pd.y11), ("y12", pd.y12), ("y22", pd.y22),
        ("q24", pd.q24), ("q34", pd.q34), ("y44", pd.y44))}

    s33 = (s0 * y["y11"]).inv()
    # row-4 components from (S Q S^T)_{a+1,4} = 0, a = 1, 2, with the
    # (1+a, 1) matrix entries D_a s0
    m = [[s_ai[a][0] * y["y11"] + s_ai[a][1] * y["y12"],
          s_ai[a][0] * y["y12"] + s_ai[a][1] * y["y22"]] for a in range(2)]
    rhs = [td((_d(s0, a + 1) * y["y11"] - s_ai[a][0] * y["q24"] - s_ai[a][1] * y["q34"]) * s33, K)
           for a in range(2)]
    det_inv = (m[0][0] * m[1][1] - m[0][1] * m[1][0]).inv()
    s31 = td((rhs[0] * m[1][1] - rhs[1] * m[0][1]) * det_inv, K)
    s32 = td((rhs[1] * m[0][0] - rhs[0] * m[1][0]) * det_inv, K)
    # (S Q S^T)_{44} = 0
    bracket = (
        s31 * s31 * y["y11"] + s31 * s32 * y["y12"] * 2 + s32 * s32 * y["y22"]
        + (s31 * y["q24"] + s32 * y["q34"]) * s33 * 2 + s33 * s33 * y["y44"]
    )
    s30 = td(bracket * (y["y11"] * s33 * 2).inv(), K)
    return FrameMatrix(p, K, s0, (td(s1, K), td(s2, K)),
                       s_ai, (s30, s31, s32, s33), dlogz, y)


def _phi(p: ModelParams, K: int) -> list:
    c = [[Q(0)] * 4 for _ in range(4)]
    c[0][3] = c[3][0] = Q(-1)
    c[1][1] = Q(p.c_hh)
    c[1][2] = c[2][1] = Q(p.c_hl)
    return [[BiSeries.const(v, K) for v in row] for row in c]


def transformed_connection(p: ModelParams, mm: MirrorMap,
                           conn: ConnectionPair | None = None,
                           frame: FrameMatrix | None = None) -> tuple:
    """The connection in the new frame: matrices of D_1 and D_2."""
    if conn is None:
        conn = gm_matrices(p)
    if frame is None:
        frame = build_frame(p, mm)
    K = mm.order
    comp = mm.composer()
    g_q = [[[comp.rational(e) for e in row] for row in g] for g in (conn.g1, conn.g2)]
    s = frame.matrix
    s_inv = series_mat_inv(s)
    sg = [mat_mul(mat_mul(s, g), s_inv) for g in g_q]
    out = []
    for a in range(2):
        ds = [[_d(e, a + 1) for e in row] for row in s]
        acc = mat_mul(ds, s_inv)
        for i in range(2):
            coef = frame.dlogz[a][i]
            acc = [[x + td(coef * y, K) for x, y in zip(ra, rb)]
                   for ra, rb in zip(acc, sg[i])]
        out.append([[td(e, K) for e in row] for row in acc])
    return tuple(out)


def verify_modular_vector_field(p: ModelParams, mm: MirrorMap,
                                frame: FrameMatrix | None = None) -> VerificationReport:
    """Flat-gauge connection is constant and sparse; pairing and intersection
    constants come out right."""
    rep = VerificationReport("modular-vector-field", p.label)
    K = mm.order
    conn = gm_matrices(p)
    if frame is None:
        frame = build_frame(p, mm)
    a1, a2 = transformed_connection(p, mm, conn, frame)

    expected = {
        0: {(1, 2): Q(1), (2, 4): Q(p.c_hh), (3, 4): Q(p.c_hl)},
        1: {(1, 3): Q(1), (2, 4): Q(p.c_hl), (3, 4): Q(0)},
    }
    cap = K - 1  # one q-derivative was taken
    for idx, mat in enumerate((a1, a2)):
        want = expected[idx]
        for i in range(4):
            for j in range(4):
                target = BiSeries.const(want.get((i + 1, j + 1), Q(0)), K)
                rep.add(series_check(
                    f"flat-gauge matrix D{idx + 1} entry ({i + 1},{j + 1}) is constant "
                    f"{want.get((i + 1, j + 1), 0)}",
                    td(mat[i][j], cap), td(target, cap), upto=cap))

    # S Q S^T = Phi
    s = frame.matrix
    y = frame.y_q
    zero = BiSeries.zero(K)
    qmat = [
        [zero, zero, zero, -y["y11"]],
        [zero, y["y11"], y["y12"], y["q24"]],
        [zero, y["y12"], y["y22"], y["q34"]],
        [-y["y11"], y["q24"], y["q34"], y["y44"]],
    ]
    st = [[s[j][i] for j in range(4)] for i in range(4)]
    sqst = mat_mul(mat_mul(s, qmat), st)
    phi = _phi(p, K)
    for i in range(4):
        for j in range(4):
            rep.add(series_check(f"S Q S^T = Phi entry ({i + 1},{j + 1})",
                                 td(sqst[i][j], K), td(phi[i][j], K), upto=K))

    # intersection constants from the middle block
    cexp = [[p.c_hh, p.c_hl], [p.c_hl, p.c_ll]]
    for a in range(2):
        for b in range(2):
            calg = (frame.s_ai[a][0] * frame.s_ai[b][0] * y["y11"]
                    + (frame.s_ai[a][0] * frame.s_ai[b][1]
                       + frame.s_ai[a][1] * frame.s_ai[b][0]) * y["y12"]
                    + frame.s_ai[a][1] * frame.s_ai[b][1] * y["y22"])
            rep.add(series_check(
                f"C^alg_{a + 1}{b + 1} = {cexp[a][b]}",
                td(calg, K), BiSeries.const(cexp[a][b], K), upto=K))
    return rep


def verify_factorization(p: ModelParams, mm: MirrorMap,
                         forms: FormSet | None = None) -> VerificationReport:
    """X0(z(q)) = A(q1) * A(q1 q2) with A of the matching level."""
    rep = VerificationReport("factorization", p.label)
    K = mm.order
    if forms is None:
        forms = build_forms(p.level, qmax=max(2 * K, 30))
    comp = mm.composer()
    x0q = comp.series(mm.periods.x0)
    prod = lift_nome(forms.A, 1, K) * lift_nome(forms.A, 2, K)
    rep.add(series_check("X0(z(q)) = A(q1) A(q1q2)", td(x0q, K), td(prod, K), upto=K))
    return rep


def verify_inverse_mirror(p: ModelParams, mm: MirrorMap,
                          forms: FormSet | None = None) -> VerificationReport:
    """z1 = (a1 + a2 - 2 a1 a2)/d_N and d_N^2 z1^2 z2 = a1 a2 (1-a1)(1-a2),
    with a_b = alpha(p_b) the normalized hauptmodul at the two nome arguments.
    The second display is checked in multiplied-out form (z1 is not a unit).
    """
    rep = VerificationReport("inverse-mirror", p.label)
    K = mm.order
    if forms is None:
        forms = build_forms(p.level, qmax=max(2 * K, 30))
    alpha = alpha_series(forms)
    a1 = lift_nome(alpha, 1, K)
    a2 = lift_nome(alpha, 2, K)
    one = BiSeries.one(K)
    z1q, z2q = mm.z_of_q()
    rep.add(series_check("d_N z1(q) = alpha1 + alpha2 - 2 alpha1 alpha2",
                         td(z1q * p.d_N, K), td(a1 + a2 - a1 * a2 * 2, K), upto=K))
    rep.add(series_check(
        "d_N^2 z1(q)^2 z2(q) = alpha1 alpha2 (1-alpha1)(1-alpha2)",
        td(z2q * z1q * z1q * Q(p.d_N) ** 2, K),
        td(a1 * a2 * (one - a1) * (one - a2), K), upto=K))
    return rep


def verify_frame_identities(p: ModelParams, mm: MirrorMap,
                            frame: FrameMatrix | None = None,
                            forms: FormSet | None = None) -> VerificationReport:
    """Closed forms for s_a and s_{1,1} in terms of level-N expansions.

    Two derivative conventions are possible: differentiating in (t1, t2)
    directly, or in (tau1, tau2) = (t1, t1 + t2) where d/dtau1 = D1 - D2 and
    d/dtau2 = D2.  Both are evaluated; the one that holds is recorded.
    """
    rep = VerificationReport("frame", p.label)
    K = mm.order
    if frame is None:
        frame = build_frame(p, mm)
    if forms is None:
        forms = build_forms(p.level, qmax=max(2 * K, 30))
    r = forms.r

    # univariate ingredients
    log_deriv_a = forms.A.theta() * forms.A.inv()  # p d/dp log A
    closed = (forms.E + (forms.Cr * 2 - forms.Ar) * (forms.A ** (r - 2)).inv()) * Q(-1, 2 * r)
    rep.add(series_check(
        "-(E + (2C^r - A^r)/A^(r-2))/(2r) = -d log A (one variable)",
        closed, -log_deriv_a))

    s1, s2 = frame.s_a
    target1 = -lift_nome(log_deriv_a, 1, K)
    target2 = -lift_nome(log_deriv_a, 2, K)
    conventions = {
        "t-frame": (s1, s2),
        "tau-frame": (s1 - s2, s2),
    }
    results = {
        tag: td(c1, K).agrees(td(target1, K), upto=K)
        and td(c2, K).agrees(td(target2, K), upto=K)
        for tag, (c1, c2) in conventions.items()
    }
    rep.add(bool_check(
        "s_a = -d log A(arg a) under a documented derivative convention",
        any(results.values()),
        convention="; ".join(f"{t}: {'holds' if ok else 'fails'}"
                             for t, ok in results.items())))

    # s_{1,1} closed form, in multiplied form (the displayed denominator
    # alpha1(1-alpha2) + alpha2(1-alpha1) vanishes at the origin):
    # s_{1,1} * (a1(1-a2) + a2(1-a1)) * A(arg2) = a1(1-a1)(1-2a2) * A(arg1)
    alpha = alpha_series(forms)
    a1 = lift_nome(alpha, 1, K)
    a2 = lift_nome(alpha, 2, K)
    one = BiSeries.one(K)
    den = (a1 * (one - a2) + a2 * (one - a1)) * lift_nome(forms.A, 2, K)
    num = a1 * (one - a1) * (one - a2 * 2) * lift_nome(forms.A, 1, K)
    (s11, s12), (s21, s22) = frame.s_ai
    candidates = {"t-frame": s11, "tau-frame": s11 - s21}
    passed = {tag: td(cand * den, K).agrees(td(num, K), upto=K)
              for tag, cand in candidates.items()}
    rep.add(bool_check(
        "s_11 closed form (multiplied through) under a documented convention",
        any(passed.values()),
        convention="; ".join(f"{t}: {'holds' if ok else 'fails'}"
                             for t, ok in passed.items())))
    return rep
