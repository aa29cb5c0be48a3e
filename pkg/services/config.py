import os
from dataclasses import dataclass, replace
from enum import IntEnum
from typing import Optional

from services.errors import ConfigError


DEFAULT_TOLERANCE = 1e-6
DEFAULT_RHO = 8


class StreamMode(IntEnum):
    """Whole-stream scheme, stored as the header mode byte."""

    FULL = 0x00
    EXCEPTION_ONLY = 0x01
    GORILLA = 0x02

    @property
    def label(self) -> str:
        return _MODE_LABELS[self]

    @classmethod
    def from_label(cls, label: str) -> "StreamMode":
        key = (label or "").strip().lower()
        for mode, name in _MODE_LABELS.items():
            if name == key:
                return mode
        raise ConfigError(f"unknown mode '{label}' (expected one of {', '.join(_MODE_LABELS.values())})")


_MODE_LABELS = {
    StreamMode.FULL: "full",
    StreamMode.EXCEPTION_ONLY: "exception-only",
    StreamMode.GORILLA: "gorilla",
}


@dataclass(frozen=True)
class CodecConfig:
    tolerance: float = DEFAULT_TOLERANCE
    rho: int = DEFAULT_RHO
    mode: StreamMode = StreamMode.FULL

    def __post_init__(self):
        if not (0.0 < self.tolerance < 0.5):
            raise ConfigError(f"tolerance must be in (0, 0.5), got {self.tolerance}")
        if isinstance(self.rho, bool) or not isinstance(self.rho, int) or self.rho < 0:
            raise ConfigError(f"rho must be a non-negative integer, got {self.rho!r}")
        if not isinstance(self.mode, StreamMode):
            raise ConfigError(f"mode must be a StreamMode, got {self.mode!r}")

    def with_mode(self, mode: StreamMode) -> "CodecConfig":
        return replace(self, mode=mode)

    @classmethod
    def from_env(cls, base: Optional["CodecConfig"] = None) -> "CodecConfig":
        """
        Overlay DEXOR_TOLERANCE / DEXOR_RHO / DEXOR_MODE on top of `base`
        (or the defaults). Unset or empty variables leave the field as is.
        """
        cfg = base or cls()
        tolerance = cfg.tolerance
        rho = cfg.rho
        mode = cfg.mode

        raw = os.getenv("DEXOR_TOLERANCE", "").strip()
        if raw:
            try:
                tolerance = float(raw)
            except ValueError:
                raise ConfigError(f"DEXOR_TOLERANCE is not a number: {raw!r}")

        raw = os.getenv("DEXOR_RHO", "").strip()
        if raw:
            try:
                rho = int(raw)
            except ValueError:
                raise ConfigError(f"DEXOR_RHO is not an integer: {raw!r}")

        raw = os.getenv("DEXOR_MODE", "").strip()
        if raw:
            mode = StreamMode.from_label(raw)

        return cls(tolerance=tolerance, rho=rho, mode=mode)


def env_true(name: str) -> bool:
    v = os.getenv(name, "").strip().lower()
    return v in ("1", "true", "yes", "on")
