"""Flat key-value run configuration: parsing, validation, emission.

The document format is plain UTF-8 text, one "key = value" per line with
dotted keys, `#` comments and blank lines allowed.  Unknown keys are
rejected.  An empty document yields the all-defaults scenario (the fig1
experiment on the 200x200 grid).
"""

from __future__ import annotations

from .errors import ConfigParseError, ConfigurationError
from .network import GridSpec
from .scenarios import (
    DEFAULT_TAU,
    HeterogeneityDistribution,
    HomogeneousUtilities,
    LaunchPlan,
    Scenario,
)
from .simulation import InnovatorSchedule

_PRODUCT_KEYS = ("A", "B", "AB")
_PRODUCT_INDEX = {"A": 0, "B": 1, "AB": 2}

KNOWN_KEYS = frozenset(
    [
        "grid.width",
        "grid.height",
        "network.p_r",
        "decision.temperature",
        "options.preset",
        "utilities.mode",
        "utilities.A",
        "utilities.B",
        "utilities.AB",
        "utilities.groups",
        "launch.t_b",
        "launch.tau",
        "run.max_ticks",
        "run.saturation_window",
        "run.seed",
        "run.replications",
    ]
    + [
        f"innovators.{p}.{f}"
        for p in _PRODUCT_KEYS
        for f in ("rate", "target_fraction", "start_tick")
    ]
)

DEFAULTS = {
    "grid.width": "200",
    "grid.height": "200",
    "network.p_r": "0.0",
    "decision.temperature": "0.0",
    "options.preset": "three",
    "utilities.mode": "homogeneous",
    "utilities.A": "0.6",
    "utilities.B": "0.6",
    "run.max_ticks": "500",
    "run.saturation_window": "5",
    "run.seed": "1",
    "run.replications": "1",
}


def parse_document(text: str) -> dict[str, str]:
    """Parse the raw key-value lines; rejects malformed lines and unknown
    keys with the line number."""
    values = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigParseError(f"expected 'key = value', got {raw.strip()!r}", line=lineno)
        key, _, value = line.partition("=")
        key, value = key.strip(), value.strip()
        if key not in KNOWN_KEYS:
            raise ConfigParseError(f"unknown key {key!r}", line=lineno)
        if not value:
            raise ConfigParseError(f"empty value for key {key!r}", line=lineno)
        values[key] = value
    return values


def _typed(values, key, kind):
    raw = values[key]
    try:
        return kind(raw)
    except ValueError:
        raise ConfigurationError(f"{key}: expected {kind.__name__}, got {raw!r}") from None


def _parse_groups(raw: str):
    groups = []
    for part in raw.split(","):
        frac, sep, du = part.strip().partition(":")
        if not sep:
            raise ConfigurationError(
                f"utilities.groups: expected 'fraction:delta_u' pairs, got {part.strip()!r}"
            )
        try:
            groups.append((float(frac), float(du)))
        except ValueError:
            raise ConfigurationError(f"utilities.groups: non-numeric entry {part.strip()!r}") from None
    return tuple(groups)


def build_scenario(values: dict[str, str]) -> Scenario:
    """Validate a merged key-value mapping and build the Scenario."""
    merged = dict(DEFAULTS)
    merged.update(values)

    options = merged["options.preset"]
    if options not in ("three", "four"):
        raise ConfigurationError(f"options.preset: expected 'three' or 'four', got {options!r}")

    mode = merged["utilities.mode"]
    if mode == "homogeneous":
        labels = ("A", "B") if options == "three" else ("A", "B", "AB")
        if options == "four" and "utilities.AB" not in merged:
            raise ConfigurationError("utilities.AB: required for the four-option model")
        utilities = HomogeneousUtilities(
            tuple(_typed(merged, f"utilities.{p}", float) for p in labels)
        )
    elif mode == "heterogeneous":
        if "utilities.groups" not in merged:
            raise ConfigurationError("utilities.groups: required in heterogeneous mode")
        utilities = HeterogeneityDistribution(_parse_groups(merged["utilities.groups"]))
    else:
        raise ConfigurationError(
            f"utilities.mode: expected 'homogeneous' or 'heterogeneous', got {mode!r}"
        )

    launch = None
    if "launch.t_b" in merged:
        tau = _typed(merged, "launch.tau", float) if "launch.tau" in merged else DEFAULT_TAU
        launch = LaunchPlan(t_b=_typed(merged, "launch.t_b", int), tau=tau)
    elif "launch.tau" in merged:
        raise ConfigurationError("launch.tau: launch.t_b is required when a launch plan is given")

    # Innovator defaults (products A and B at 125/tick) apply only when the
    # document says nothing at all about innovators.
    if not any(k.startswith("innovators.") for k in merged):
        merged["innovators.A.rate"] = "125"
        merged["innovators.B.rate"] = "125"
    schedules = []
    for label in _PRODUCT_KEYS:
        if f"innovators.{label}.rate" not in merged:
            continue
        if label == "AB" and options == "three":
            raise ConfigurationError("innovators.AB.rate: AB exists only in the four-option model")
        kwargs = {"product": _PRODUCT_INDEX[label], "rate": _typed(merged, f"innovators.{label}.rate", int)}
        tf_key = f"innovators.{label}.target_fraction"
        st_key = f"innovators.{label}.start_tick"
        if tf_key in merged:
            kwargs["target_fraction"] = _typed(merged, tf_key, float)
        if st_key in merged:
            kwargs["start_tick"] = _typed(merged, st_key, int)
        schedules.append(InnovatorSchedule(**kwargs))

    return Scenario(
        grid=GridSpec(_typed(merged, "grid.width", int), _typed(merged, "grid.height", int)),
        p_r=_typed(merged, "network.p_r", float),
        temperature=_typed(merged, "decision.temperature", float),
        options=options,
        utilities=utilities,
        innovators=tuple(schedules),
        launch=launch,
        max_ticks=_typed(merged, "run.max_ticks", int),
        saturation_window=_typed(merged, "run.saturation_window", int),
        seed=_typed(merged, "run.seed", int),
        replications=_typed(merged, "run.replications", int),
    )


def parse_config(text: str) -> Scenario:
    return build_scenario(parse_document(text))


def scenario_values(scn: Scenario) -> dict[str, str]:
    """Key-value mapping that reparses to an equal Scenario."""
    values = {
        "grid.width": str(scn.grid.width),
        "grid.height": str(scn.grid.height),
        "network.p_r": repr(scn.p_r),
        "decision.temperature": repr(scn.temperature),
        "options.preset": scn.options,
        "run.max_ticks": str(scn.max_ticks),
        "run.saturation_window": str(scn.saturation_window),
        "run.seed": str(scn.seed),
        "run.replications": str(scn.replications),
    }
    if isinstance(scn.utilities, HomogeneousUtilities):
        values["utilities.mode"] = "homogeneous"
        labels = ("A", "B") if scn.options == "three" else ("A", "B", "AB")
        for label, v in zip(labels, scn.utilities.values):
            values[f"utilities.{label}"] = repr(v)
    else:
        values["utilities.mode"] = "heterogeneous"
        values["utilities.groups"] = ",".join(
            f"{f!r}:{du!r}" for f, du in scn.utilities.groups
        )
    if scn.launch is not None:
        values["launch.t_b"] = str(scn.launch.t_b)
        values["launch.tau"] = repr(scn.launch.tau)
    index_to_label = {v: k for k, v in _PRODUCT_INDEX.items()}
    for sched in scn.innovators:
        label = index_to_label[sched.product]
        values[f"innovators.{label}.rate"] = str(sched.rate)
        values[f"innovators.{label}.target_fraction"] = repr(sched.target_fraction)
        values[f"innovators.{label}.start_tick"] = str(sched.start_tick)
    return values


def emit_config(scn: Scenario) -> str:
    """Serialize a Scenario back to the document format (round-trips)."""
    values = scenario_values(scn)
    lines = [f"{key} = {values[key]}" for key in sorted(values)]
    return "\n".join(lines) + "\n"


def apply_override(values: dict[str, str], key: str, value: str) -> None:
    """Set one key (sweep/--set); unknown keys rejected."""
    if key not in KNOWN_KEYS:
        raise ConfigurationError(f"unknown key {key!r}")
    values[key] = value
