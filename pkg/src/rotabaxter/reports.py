"""Pass/fail reports carrying reproducible witnesses."""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass
class Report:
    """Outcome of one verification.

    ``witness`` is present exactly when the check failed and contains enough
    information (argument tuple plus the nonzero residual, as strings) to
    re-evaluate the residual independently.  ``order`` records the truncation
    bound (p_max or arity cap) the check was run to, when one applies.
    """

    check: str
    ok: bool
    witness: dict | None = None
    order: int | None = None
    details: dict = field(default_factory=dict)

    def __bool__(self) -> bool:
        return self.ok

    def to_dict(self) -> dict:
        return {
            "check": self.check,
            "pass": self.ok,
            "order": self.order,
            "witness": self.witness,
        }


def named_residual(vec, names) -> dict:
    return {name: str(x) for name, x in zip(names, vec) if x}
