from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Callable, Iterable, Sequence

from .values import format_value

PASS, FAIL, INAPPLICABLE = "PASS", "FAIL", "INAPPLICABLE"


@dataclass(frozen=True)
class CheckReport:
    """Outcome of a predicate, lemma or theorem check.

    ``witness`` is the canonically smallest counterexample tuple when a
    universally quantified property fails.  Hypothesis-gated checks whose
    hypotheses do not hold are reported with ``applicable=False`` and a
    vacuous ``verdict=True``; ``alarm`` marks a gated check whose
    hypotheses held but whose conclusion failed.
    """

    property: str
    verdict: bool
    witness: tuple | None = None
    sub_reports: tuple[CheckReport, ...] = ()
    applicable: bool = True
    detail: str = ""
    alarm: bool = False

    def __bool__(self) -> bool:
        return self.verdict

    @property
    def status(self) -> str:
        if not self.applicable:
            return INAPPLICABLE
        return PASS if self.verdict else FAIL

    def failing(self) -> CheckReport | None:
        """Deepest first failing report along the first failing branch."""
        if self.verdict:
            return None
        for sub in self.sub_reports:
            if not sub.verdict:
                return sub.failing()
        return self

    def find(self, prop: str) -> CheckReport | None:
        if self.property == prop:
            return self
        for sub in self.sub_reports:
            hit = sub.find(prop)
            if hit is not None:
                return hit
        return None

    def witness_text(self) -> str:
        if self.witness is None:
            return ""
        return "(" + ",".join(_show(w) for w in self.witness) + ")"

    def to_dict(self) -> dict[str, Any]:
        d: dict[str, Any] = {"property": self.property, "status": self.status,
                             "verdict": self.verdict}
        if self.witness is not None:
            d["witness"] = [_show(w) for w in self.witness]
        if self.detail:
            d["detail"] = self.detail
        if self.alarm:
            d["alarm"] = True
        if self.sub_reports:
            d["sub_reports"] = [s.to_dict() for s in self.sub_reports]
        return d

    def summary(self) -> str:
        bad = self.failing()
        if bad is None:
            return self.property
        text = bad.property
        if bad.witness is not None:
            text += f" witness={bad.witness_text()}"
        return text


def _show(x: Any) -> str:
    try:
        return format_value(x)
    except TypeError:
        return str(x)


def conjunction(prop: str, subs: Sequence[CheckReport], detail: str = "") -> CheckReport:
    """All sub-reports must pass; the witness is taken from the first failure."""
    subs = tuple(subs)
    bad = next((s for s in subs if not s.verdict), None)
    if bad is None:
        return CheckReport(prop, True, sub_reports=subs, detail=detail)
    leaf = bad.failing()
    return CheckReport(prop, False, leaf.witness, subs, detail=detail)


def first_failure(prop: str, candidates: Iterable[tuple], ok: Callable[..., bool],
                  detail: str = "") -> CheckReport:
    """Check ``ok(*c)`` for every candidate tuple, in the order given.

    Candidates must be produced in canonical lexicographic order so that the
    first failure is the minimal witness.
    """
    for c in candidates:
        if not ok(*c):
            return CheckReport(prop, False, tuple(c), detail=detail)
    return CheckReport(prop, True, detail=detail)


def gated(prop: str, hypotheses: Sequence[CheckReport],
          conclusion: Callable[[], CheckReport], detail: str = "") -> CheckReport:
    """Evaluate ``conclusion`` only when every hypothesis holds."""
    hyps = conjunction("hypotheses", hypotheses)
    if not hyps.verdict:
        return CheckReport(prop, True, None, (hyps,), applicable=False,
                           detail=detail or f"hypothesis {hyps.summary()} unmet")
    concl = conclusion()
    if concl.verdict:
        return CheckReport(prop, True, None, (hyps, concl), detail=detail)
    leaf = concl.failing()
    return CheckReport(prop, False, leaf.witness, (hyps, concl), detail=detail,
                       alarm=True)


def equality_report(prop: str, left: Any, right: Any) -> CheckReport:
    """Compare two relations (or pair sets) extensionally."""
    lp = _pairs(left)
    rp = _pairs(right)
    if lp == rp:
        return CheckReport(prop, True)
    from .values import canon_key
    diff = sorted(lp ^ rp, key=lambda p: tuple(canon_key(v) for v in p))
    w = diff[0]
    side = "left only" if w in lp else "right only"
    return CheckReport(prop, False, tuple(w), detail=side)


def _pairs(r: Any) -> frozenset:
    return r.pairs if hasattr(r, "pairs") else frozenset(r)
