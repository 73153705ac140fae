"""Canonical coordinates, frame change, factorization, and inverse map.

The mirror coordinates are exercised both through the verification suites
and through independently frozen leading coefficients.
"""

from gmpy2 import mpq as Q

from k3mirror.geometry import model_params
from k3mirror.moduli import (
    build_frame,
    lift_nome,
    mirror_map,
    td,
    transformed_connection,
    verify_factorization,
    verify_frame_identities,
    verify_inverse_mirror,
    verify_modular_vector_field,
)
from k3mirror.series import BiSeries

LABELS = ("E6", "E7", "E8")


def _fails(rep):
    return [c.name for c in rep.checks if c.status == "fail"]


class TestMirrorMap:
    def test_units_are_units(self, contexts):
        for label in LABELS:
            mm = contexts[label].mirror
            for u in (mm.q_unit1, mm.q_unit2, mm.z_unit1, mm.z_unit2):
                assert u.coeff(0, 0) == 1, label

    def test_leading_inversion_coefficients(self, contexts):
        # q1 = z1 exp(Shat1/X0) gives z1 = q1 (1 - shat1_z1 q1 + ...)
        for label in LABELS:
            ctx = contexts[label]
            s1_lead = ctx.periods.shat1.coeff(1, 0)
            assert ctx.mirror.z_unit1.coeff(1, 0) == -s1_lead, label

    def test_round_trip_to_total_degree(self, contexts):
        for label in LABELS:
            mm = contexts[label].mirror
            K = mm.order
            comp = mm.composer()
            z1q, z2q = mm.z_of_q()
            q1 = BiSeries.variable(1, K)
            q2 = BiSeries.variable(2, K)
            assert td(z1q * comp.series(mm.q_unit1), K).agrees(td(q1, K))
            assert td(z2q * comp.series(mm.q_unit2), K).agrees(td(q2, K))

    def test_low_order_rebuild_agrees(self):
        # the inversion is stable under the working order: recomputing at a
        # lower order reproduces the same truncation
        p = model_params("E6")
        lo = mirror_map(p, order=4)
        hi = mirror_map(p, order=6)
        assert td(hi.z_unit1, 4).agrees(td(lo.z_unit1, 4))
        assert td(hi.z_unit2, 4).agrees(td(lo.z_unit2, 4))


class TestFactorization:
    def test_product_factorization(self, contexts):
        for label in LABELS:
            ctx = contexts[label]
            rep = verify_factorization(ctx.params, ctx.mirror, ctx.forms)
            assert rep.passed, (label, _fails(rep))

    def test_first_nome_coefficient_matches_form(self, contexts):
        for label in LABELS:
            ctx = contexts[label]
            comp = ctx.mirror.composer()
            x0q = comp.series(ctx.periods.x0)
            # coefficient of q1: a1 from one factor, 0 from the diagonal one
            assert x0q.coeff(1, 0) == ctx.forms.A.coeff(1), label

    def test_inverse_mirror_displays(self, contexts):
        for label in LABELS:
            ctx = contexts[label]
            rep = verify_inverse_mirror(ctx.params, ctx.mirror, ctx.forms)
            assert rep.passed, (label, _fails(rep))


class TestFrame:
    def test_flat_gauge_connection_constants(self, contexts):
        for label in LABELS:
            ctx = contexts[label]
            rep = verify_modular_vector_field(ctx.params, ctx.mirror, ctx.frame)
            assert rep.passed, (label, _fails(rep))

    def test_transformed_connection_entries_explicitly(self, contexts):
        ctx = contexts["E6"]
        p = ctx.params
        a1, a2 = transformed_connection(p, ctx.mirror, ctx.connection, ctx.frame)
        cap = ctx.mirror.order - 1
        expected = {
            0: {(1, 2): Q(1), (2, 4): Q(p.c_hh), (3, 4): Q(p.c_hl)},
            1: {(1, 3): Q(1), (2, 4): Q(p.c_hl)},
        }
        for idx, m in enumerate((a1, a2)):
            for i in range(4):
                for j in range(4):
                    want = expected[idx].get((i + 1, j + 1), Q(0))
                    const = BiSeries.const(want, ctx.mirror.order)
                    assert td(m[i][j], cap).agrees(td(const, cap)), (idx, i, j)

    def test_frame_closed_forms_with_recorded_convention(self, contexts):
        for label in LABELS:
            ctx = contexts[label]
            rep = verify_frame_identities(ctx.params, ctx.mirror, ctx.frame, ctx.forms)
            assert rep.passed, (label, _fails(rep))
            for check in rep.checks:
                if check.convention and "tau-frame" in check.convention:
                    assert "tau-frame: holds" in check.convention, (label, check.name)

    def test_first_row_is_inverse_period(self, contexts):
        for label in LABELS:
            ctx = contexts[label]
            K = ctx.mirror.order
            comp = ctx.mirror.composer()
            x0q = comp.series(ctx.periods.x0)
            assert td(ctx.frame.s0 * x0q, K).agrees(td(BiSeries.one(K), K)), label

    def test_diagonal_nome_log_derivative(self, contexts):
        # s2 = -d log A evaluated on the diagonal nome argument
        for label in LABELS:
            ctx = contexts[label]
            K = ctx.mirror.order
            ld = ctx.forms.A.theta() * ctx.forms.A.inv()
            target = -lift_nome(ld, 2, K)
            assert td(ctx.frame.s_a[1], K).agrees(td(target, K), upto=K), label
