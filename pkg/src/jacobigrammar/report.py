from __future__ import annotations

from dataclasses import asdict, dataclass, field
from typing import Any, Dict, Optional, Tuple


@dataclass
class VerificationReport:
    id: str
    range: Tuple[int, int]
    passed: bool
    counterexample: Optional[Dict[str, Any]] = None
    elapsed: float = 0.0
    details: Dict[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        if not self.passed and self.counterexample is None:
            raise ValueError(f"failing report {self.id} needs a counterexample")

    @property
    def status(self) -> str:
        return "pass" if self.passed else "fail"

    def line(self) -> str:
        lo, hi = self.range
        text = f"{self.status.upper():4}  {self.id:<34} n={lo}..{hi}  {self.elapsed:7.3f}s"
        if not self.passed:
            text += f"  counterexample={self.counterexample}"
        return text

    def to_json(self) -> dict:
        out = asdict(self)
        out["range"] = list(self.range)
        out["status"] = self.status
        return _jsonable(out)


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, bool) or obj is None or isinstance(obj, (float, str)):
        return obj
    if isinstance(obj, int):
        return str(obj) if abs(obj) >= 2 ** 53 else obj
    if isinstance(obj, complex):
        return [obj.real, obj.imag]
    return str(obj)
