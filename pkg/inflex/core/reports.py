"""
Inflex — Reportes de verificación
Registro estructurado pass/fail/refused de cada comprobación y su serialización.
"""
import logging
import time
from dataclasses import dataclass, field
from typing import Any, Callable

from sympy.polys.rings import PolyElement

from inflex.core.algebra import InflexError, to_text
from inflex.core.constants import VERDICTS

logger = logging.getLogger(__name__)


class UnknownCheckError(InflexError):
    pass


def serialize(obj: Any) -> Any:
    """JSON-friendly canonical form of computed objects."""
    if isinstance(obj, PolyElement):
        return to_text(obj)
    if hasattr(obj, "to_dict"):
        return obj.to_dict()
    if isinstance(obj, (bool, int, float, str)) or obj is None:
        return obj
    if isinstance(obj, dict):
        return {str(k): serialize(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple, set, frozenset)):
        items = sorted(obj) if isinstance(obj, (set, frozenset)) else obj
        return [serialize(v) for v in items]
    if hasattr(obj, "numerator") and hasattr(obj, "denominator"):
        num, den = int(obj.numerator), int(obj.denominator)
        return str(num) if den == 1 else f"{num}/{den}"
    return str(obj)


@dataclass
class VerificationReport:
    id: str
    params: dict
    verdict: str
    computed: Any = None
    expected: Any = None
    counterexample: Any = None
    millis: int = 0
    notes: list[str] = field(default_factory=list)

    def __post_init__(self):
        if self.verdict not in VERDICTS:
            raise ValueError(f"unknown verdict {self.verdict!r}")

    @property
    def passed(self) -> bool:
        return self.verdict == "pass"

    def to_dict(self, include_time: bool = True) -> dict:
        out = {
            "id": self.id,
            "params": serialize(self.params),
            "verdict": self.verdict,
            "computed": serialize(self.computed),
            "expected": serialize(self.expected),
        }
        if self.counterexample is not None:
            out["counterexample"] = serialize(self.counterexample)
        if self.notes:
            out["notes"] = list(self.notes)
        if include_time:
            out["millis"] = self.millis
        return out


@dataclass(frozen=True)
class CheckDescriptor:
    """Registered check: id, parameter schema, entry point and source anchor."""
    id: str
    runner: Callable[..., "VerificationReport"]
    anchor: str
    quote: str
    kind: str = "theorem"          # theorem | conjecture | identity | table | plumbing
    params: dict = field(default_factory=dict)
    corrections: tuple[str, ...] = ()

    def to_dict(self) -> dict:
        return {
            "id": self.id,
            "anchor": self.anchor,
            "quote": self.quote,
            "kind": self.kind,
            "params": serialize(self.params),
            "corrections": list(self.corrections),
        }


class ReportBuilder:
    """
    Accumulates labelled comparisons and turns them into one report.

    The first mismatch becomes the counterexample.
    """

    def __init__(self, check_id: str, params: dict | None = None):
        self.check_id = check_id
        self.params = dict(params or {})
        self.computed: dict[str, Any] = {}
        self.expected: dict[str, Any] = {}
        self.counterexample: Any = None
        self.refused_reason: str | None = None
        self.notes: list[str] = []
        self._start = time.perf_counter()

    def expect(self, label: str, computed: Any, expected: Any, counterexample: Any = None) -> bool:
        self.computed[label] = computed
        self.expected[label] = expected
        ok = computed == expected
        if not ok and self.counterexample is None:
            self.counterexample = counterexample if counterexample is not None else {
                "at": label,
                "computed": serialize(computed),
                "expected": serialize(expected),
            }
        return ok

    def expect_true(self, label: str, condition: bool, counterexample: Any = None) -> bool:
        return self.expect(label, bool(condition), True, counterexample)

    def record(self, label: str, value: Any) -> None:
        """Computed value with no expectation attached."""
        self.computed[label] = value

    def note(self, text: str) -> None:
        self.notes.append(text)

    def refuse(self, reason: str) -> "VerificationReport":
        self.refused_reason = reason
        return self.finish()

    def finish(self) -> VerificationReport:
        millis = int((time.perf_counter() - self._start) * 1000)
        if self.refused_reason is not None:
            verdict = "refused"
            self.notes.append(self.refused_reason)
        else:
            verdict = "fail" if self.counterexample is not None else "pass"
        report = VerificationReport(
            id=self.check_id,
            params=self.params,
            verdict=verdict,
            computed=self.computed,
            expected=self.expected,
            counterexample=self.counterexample,
            millis=millis,
            notes=self.notes,
        )
        if verdict == "fail":
            logger.warning(f"[Harness] {self.check_id} failed at {serialize(self.counterexample)}")
        elif verdict == "refused":
            logger.warning(f"[Harness] {self.check_id} refused: {self.refused_reason}")
        else:
            logger.info(f"[Harness] {self.check_id} passed in {millis} ms")
        return report
