"""Scenario configuration files (JSON).

Layout::

    {
      "defaults": {"sim": {...}, "initials": [...], "benefits": {...},
                   "premium_multipliers": [...]},
      "scenarios": [{"name": "B1", "params": {"Lambda": 20, ...}, ...}]
    }

Any scenario key overrides the matching entry in ``defaults``.
"""

from __future__ import annotations

import dataclasses
import hashlib
import json
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import Any

from .actuarial import BenefitSchedule
from .model import PARAM_NAMES, ModelParams, State
from .simulate import SimConfig

_SCENARIO_KEYS = {"name", "params", "initials", "sim", "benefits", "premium_multipliers"}
_SIM_KEYS = {"t0", "t_end", "step"}
_STATE_KEYS = ("S", "I", "H", "D")


class ConfigError(ValueError):
    """Malformed or invalid scenario configuration."""


@dataclass(frozen=True)
class Scenario:
    name: str
    params: ModelParams
    initials: tuple[State, ...]
    sim: SimConfig
    benefits: BenefitSchedule | None = None
    premium_multipliers: tuple[float, ...] = (1.0,)

    def sim_for(self, index: int) -> SimConfig:
        return dataclasses.replace(self.sim, initial=self.initials[index])

    def to_dict(self) -> dict[str, Any]:
        out: dict[str, Any] = {
            "name": self.name,
            "params": self.params.as_dict(),
            "initials": [dataclasses.asdict(x) for x in self.initials],
            "sim": {"t0": self.sim.t0, "t_end": self.sim.t_end, "step": self.sim.step},
        }
        if self.benefits is not None:
            out["benefits"] = dataclasses.asdict(self.benefits)
        out["premium_multipliers"] = list(self.premium_multipliers)
        return out


def bundled_config_path(name: str = "paper_tables.json") -> Path:
    return Path(str(resources.files("sishd") / "data" / name))


def _field_error(where: str, exc: Exception) -> ConfigError:
    return ConfigError(f"{where}: {exc}")


def _parse_params(raw: Any, where: str) -> ModelParams:
    if not isinstance(raw, dict):
        raise ConfigError(f"{where}.params: expected an object")
    missing = [k for k in PARAM_NAMES if k not in raw]
    if missing:
        raise ConfigError(f"{where}.params: missing field(s) {', '.join(missing)}")
    unknown = sorted(set(raw) - set(PARAM_NAMES))
    if unknown:
        raise ConfigError(f"{where}.params: unknown field(s) {', '.join(unknown)}")
    try:
        return ModelParams(**{k: raw[k] for k in PARAM_NAMES})
    except (TypeError, ValueError) as exc:
        # ModelParams messages lead with the field name.
        field = str(exc).split()[0]
        raise ConfigError(f"{where}.params.{field}: {exc}") from None


def _parse_state(raw: Any, where: str) -> State:
    if isinstance(raw, (list, tuple)):
        if len(raw) not in (3, 4):
            raise ConfigError(f"{where}: expected [S, I, H] or [S, I, H, D]")
        raw = dict(zip(_STATE_KEYS, raw))
    if not isinstance(raw, dict):
        raise ConfigError(f"{where}: expected an object or list")
    unknown = sorted(set(raw) - set(_STATE_KEYS))
    if unknown:
        raise ConfigError(f"{where}: unknown field(s) {', '.join(unknown)}")
    try:
        return State(raw["S"], raw["I"], raw["H"], raw.get("D", 0.0))
    except KeyError as exc:
        raise ConfigError(f"{where}: missing field {exc.args[0]}") from None
    except (TypeError, ValueError) as exc:
        raise _field_error(where, exc) from None


def _parse_scenario(raw: Any, defaults: dict[str, Any], k: int) -> Scenario:
    if not isinstance(raw, dict):
        raise ConfigError(f"scenarios[{k}]: expected an object")
    unknown = sorted(set(raw) - _SCENARIO_KEYS)
    if unknown:
        raise ConfigError(f"scenarios[{k}]: unknown field(s) {', '.join(unknown)}")
    merged = {**defaults, **raw}
    name = merged.get("name")
    if not isinstance(name, str) or not name:
        raise ConfigError(f"scenarios[{k}].name: expected a nonempty string")
    where = f"scenario {name!r}"

    params = _parse_params(merged.get("params"), where)

    initials_raw = merged.get("initials")
    if not isinstance(initials_raw, list) or not initials_raw:
        raise ConfigError(f"{where}.initials: expected a nonempty list")
    initials = tuple(
        _parse_state(x, f"{where}.initials[{j}]") for j, x in enumerate(initials_raw)
    )

    sim_raw = merged.get("sim", {})
    if not isinstance(sim_raw, dict):
        raise ConfigError(f"{where}.sim: expected an object")
    unknown = sorted(set(sim_raw) - _SIM_KEYS)
    if unknown:
        raise ConfigError(f"{where}.sim: unknown field(s) {', '.join(unknown)}")
    try:
        sim = SimConfig(
            **{k: float(v) for k, v in sim_raw.items()}, initial=initials[0]
        )
    except (TypeError, ValueError) as exc:
        raise _field_error(f"{where}.sim", exc) from None

    benefits = None
    if merged.get("benefits") is not None:
        b = merged["benefits"]
        if not isinstance(b, dict) or set(b) != {"b_I", "b_H", "d"}:
            raise ConfigError(f"{where}.benefits: expected an object with b_I, b_H, d")
        try:
            benefits = BenefitSchedule(**b)
        except (TypeError, ValueError) as exc:
            raise _field_error(f"{where}.benefits", exc) from None

    mult_raw = merged.get("premium_multipliers", [1.0])
    if (
        not isinstance(mult_raw, list)
        or not mult_raw
        or not all(isinstance(m, (int, float)) and not isinstance(m, bool) and m >= 0 for m in mult_raw)
    ):
        raise ConfigError(f"{where}.premium_multipliers: expected a nonempty list of nonnegative numbers")

    return Scenario(
        name=name,
        params=params,
        initials=initials,
        sim=sim,
        benefits=benefits,
        premium_multipliers=tuple(float(m) for m in mult_raw),
    )


def parse_config(data: Any) -> list[Scenario]:
    if not isinstance(data, dict):
        raise ConfigError("top level: expected an object with a 'scenarios' list")
    unknown = sorted(set(data) - {"defaults", "scenarios"})
    if unknown:
        raise ConfigError(f"top level: unknown field(s) {', '.join(unknown)}")
    defaults = data.get("defaults", {})
    if not isinstance(defaults, dict) or "name" in defaults or "params" in defaults:
        raise ConfigError("defaults: expected an object without name/params")
    raw = data.get("scenarios")
    if not isinstance(raw, list):
        raise ConfigError("scenarios: expected a list")
    if not raw:
        raise ConfigError("no scenarios")
    scenarios = [_parse_scenario(s, defaults, k) for k, s in enumerate(raw)]
    seen: set[str] = set()
    for s in scenarios:
        if s.name in seen:
            raise ConfigError(f"duplicate scenario name {s.name!r}")
        seen.add(s.name)
    return scenarios


def load_config(path: str | Path) -> list[Scenario]:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"{path}: cannot read config ({exc.strerror or exc})") from None
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path}:{exc.lineno}:{exc.colno}: {exc.msg}") from None
    try:
        return parse_config(data)
    except ConfigError as exc:
        raise ConfigError(f"{path}: {exc}") from None


def dump_config(scenarios: list[Scenario]) -> str:
    return json.dumps({"scenarios": [s.to_dict() for s in scenarios]}, indent=2, sort_keys=True)


def config_hash(scenarios: list[Scenario]) -> str:
    canonical = json.dumps([s.to_dict() for s in scenarios], sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(canonical.encode()).hexdigest()


def with_overrides(
    scenarios: list[Scenario], *, step: float | None = None, horizon: float | None = None
) -> list[Scenario]:
    """Copy of ``scenarios`` with the integration step and/or horizon replaced."""
    changes = {}
    if step is not None:
        changes["step"] = step
    if horizon is not None:
        changes["t_end"] = horizon
    if not changes:
        return list(scenarios)
    try:
        return [dataclasses.replace(s, sim=dataclasses.replace(s.sim, **changes)) for s in scenarios]
    except ValueError as exc:
        raise ConfigError(f"sim override: {exc}") from None
