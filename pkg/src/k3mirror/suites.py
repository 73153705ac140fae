"""Named verification suites over a per-model cached context.

Each suite is a function ModelContext -> VerificationReport; the registry
maps the public suite names used by the command-line driver.  Expensive
shared objects (period system, connection, mirror map, frame) are built
once per context and reused across suites.
"""

from __future__ import annotations

from . import geometry, liealg, modular, moduli

__all__ = ["SUITE_NAMES", "ModelContext", "run_suite"]

SUITE_NAMES = (
    "ramanujan",
    "jfunction",
    "picard-fuchs",
    "flatness",
    "yukawa",
    "pairing",
    "factorization",
    "inverse-mirror",
    "frame",
    "modular-vector-field",
    "lie",
)


class ModelContext:
    """Lazily built, cached per-model data at a fixed truncation order."""

    def __init__(self, label: str, order: int = 10, qmax: int = 30):
        if order < 2:
            raise ValueError("order must be at least 2")
        if qmax < 2 * order:
            raise ValueError("qmax must be at least twice the bivariate order")
        self.params = geometry.model_params(label)
        self.order = order
        self.qmax = qmax
        self._cache: dict = {}

    def _get(self, key: str, build):
        if key not in self._cache:
            self._cache[key] = build()
        return self._cache[key]

    @property
    def forms(self) -> modular.FormSet:
        return self._get("forms", lambda: modular.build_forms(self.params.level, self.qmax))

    @property
    def periods(self) -> geometry.PeriodSystem:
        return self._get("periods",
                         lambda: geometry.frobenius_log_periods(self.params, self.order))

    @property
    def connection(self) -> geometry.ConnectionPair:
        return self._get("connection", lambda: geometry.gm_matrices(self.params))

    @property
    def pairing(self) -> geometry.PairingData:
        return self._get("pairing", lambda: geometry.yukawa(self.params, self.connection))

    @property
    def mirror(self) -> moduli.MirrorMap:
        return self._get("mirror", lambda: moduli.mirror_map(self.params, self.periods))

    @property
    def frame(self) -> moduli.FrameMatrix:
        return self._get("frame",
                         lambda: moduli.build_frame(self.params, self.mirror, self.pairing))


_SUITES = {
    "ramanujan": lambda ctx: modular.verify_ramanujan_ring(ctx.forms),
    "jfunction": lambda ctx: modular.verify_hauptmodul(ctx.forms),
    "picard-fuchs": lambda ctx: geometry.verify_period_system(ctx.connection, ctx.periods),
    "flatness": lambda ctx: geometry.verify_flatness(ctx.connection),
    "yukawa": lambda ctx: geometry.verify_yukawa(ctx.pairing),
    "pairing": lambda ctx: geometry.verify_pairing(ctx.connection, ctx.pairing),
    "factorization": lambda ctx: moduli.verify_factorization(ctx.params, ctx.mirror, ctx.forms),
    "inverse-mirror": lambda ctx: moduli.verify_inverse_mirror(ctx.params, ctx.mirror, ctx.forms),
    "frame": lambda ctx: moduli.verify_frame_identities(ctx.params, ctx.mirror,
                                                        ctx.frame, ctx.forms),
    "modular-vector-field": lambda ctx: moduli.verify_modular_vector_field(
        ctx.params, ctx.mirror, ctx.frame),
}


def _lie_suite(ctx: ModelContext):
    reports = [liealg.verify_group(ctx.params),
               liealg.verify_lie_condition(ctx.params),
               liealg.verify_commutators(ctx.params)]
    merged = reports[0]
    for r in reports[1:]:
        merged.extend(r.checks)
    return merged


_SUITES["lie"] = _lie_suite


def run_suite(name: str, ctx: ModelContext):
    try:
        suite = _SUITES[name]
    except KeyError:
        raise ValueError(f"unknown suite {name!r}; expected one of {SUITE_NAMES}")
    rep = suite(ctx)
    rep.model = ctx.params.label
    return rep
