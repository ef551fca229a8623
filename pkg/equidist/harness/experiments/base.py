"""Base class for named acceptance experiments."""

from abc import ABC, abstractmethod
from typing import Any, ClassVar, Mapping, Optional

from ...config import EquidistSettings
from ...errors import ArgumentError
from ...models import ExperimentResult
from ...sequences import split_top_level


def _coerce(key: str, default: Any, value: Any) -> Any:
    """Convert an override to the type of its default."""
    if isinstance(value, str):
        value = value.strip()
    try:
        if isinstance(default, bool):
            if isinstance(value, str):
                if value.lower() not in ("1", "0", "true", "false", "yes", "no", "on", "off"):
                    raise ValueError(value)
                return value.lower() in ("1", "true", "yes", "on")
            return bool(value)
        if isinstance(default, int):
            return int(value)
        if isinstance(default, float):
            return float(value)
        if isinstance(default, list):
            if isinstance(value, str):
                items = split_top_level(value) if value else []
            else:
                items = list(value)
            kind = type(default[0]) if default else str
            return [kind(item) for item in items]
        return str(value)
    except (TypeError, ValueError) as e:
        raise ArgumentError(f"override {key}={value!r}: expected {type(default).__name__}") from e


class BaseExperiment(ABC):
    """A named experiment with documented defaults.

    Each experiment turns its parameters into an ExperimentResult whose
    rows become the CSV report and whose full model becomes the JSON report.
    """

    name: ClassVar[str]
    description: ClassVar[str] = ""
    defaults: ClassVar[dict[str, Any]] = {}

    def params(self, overrides: Optional[Mapping[str, Any]] = None) -> dict[str, Any]:
        """Defaults with overrides applied.

        Raises:
            ArgumentError: unknown key or a value of the wrong type
        """
        params = dict(self.defaults)
        for key, value in (overrides or {}).items():
            key = key.replace("-", "_")
            if key not in params:
                raise ArgumentError(
                    f"experiment {self.name} has no parameter {key!r} (known: {', '.join(sorted(params))})"
                )
            params[key] = _coerce(key, self.defaults[key], value)
        return params

    @abstractmethod
    def run(self, params: dict[str, Any], settings: EquidistSettings) -> ExperimentResult:
        """Run the experiment.

        Args:
            params: Complete parameter set (see params)
            settings: Precision and worker settings

        Returns:
            ExperimentResult with passed set from the acceptance criterion
        """
        pass
