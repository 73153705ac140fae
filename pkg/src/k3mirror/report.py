"""Structured pass/fail records for identity verification.

Every verifier in this package returns a :class:`VerificationReport`:
a list of named checks, each either passing or carrying a first-discrepancy
witness.  Failures are data, not exceptions, so a run can report every
broken identity at once.
"""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass
class Check:
    name: str
    status: str  # "pass" | "fail" | "skipped"
    max_order_checked: int | None = None
    convention: str | None = None
    first_discrepancy: dict | None = None

    def to_dict(self) -> dict:
        out = {"name": self.name, "status": self.status}
        if self.max_order_checked is not None:
            out["max_order_checked"] = self.max_order_checked
        if self.convention is not None:
            out["convention"] = self.convention
        if self.first_discrepancy is not None:
            out["first_discrepancy"] = self.first_discrepancy
        return out


@dataclass
class VerificationReport:
    suite: str
    model: str | None = None
    checks: list[Check] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.status != "fail" for c in self.checks)

    def add(self, check: Check) -> Check:
        self.checks.append(check)
        return check

    def extend(self, checks) -> None:
        self.checks.extend(checks)

    def to_dict(self) -> dict:
        return {
            "suite": self.suite,
            "model": self.model,
            "passed": self.passed,
            "checks": [c.to_dict() for c in self.checks],
        }


def series_check(name: str, lhs, rhs, upto: int | None = None, convention: str | None = None) -> Check:
    """Compare two series-like values coefficientwise (BiSeries, QSeries or LogSeries)."""
    diff = lhs.first_difference(rhs, upto)
    order = upto
    if order is None:
        order = min(getattr(lhs, "order", getattr(lhs, "qmax", 0)),
                    getattr(rhs, "order", getattr(rhs, "qmax", 0)))
    if diff is None:
        return Check(name, "pass", max_order_checked=order, convention=convention)
    where, a, b = diff
    return Check(
        name,
        "fail",
        max_order_checked=order,
        convention=convention,
        first_discrepancy={"monomial": str(where), "lhs": str(a), "rhs": str(b)},
    )


def rf_check(name: str, lhs, rhs, convention: str | None = None) -> Check:
    """Exact rational-function equality via cross multiplication."""
    diff = lhs.cross_difference(rhs)
    if diff.is_zero():
        return Check(name, "pass", convention=convention)
    (n, m) = sorted(diff.coeffs)[0]
    return Check(
        name,
        "fail",
        convention=convention,
        first_discrepancy={"monomial": f"({n},{m})", "lhs": str(diff.coeff(n, m)), "rhs": "0"},
    )


def bool_check(name: str, ok: bool, detail: str | None = None, convention: str | None = None) -> Check:
    if ok:
        return Check(name, "pass", convention=convention)
    return Check(name, "fail", convention=convention,
                 first_discrepancy={"monomial": "", "lhs": detail or "false", "rhs": "true"})
