"""Run and sweep configuration: TOML schema, validation, canonical rendering.

The schema is small and strict.  A config names a scenario kind, its
parameters, the run controls, and optionally a drive, an output section,
and a sweep section.  Validation never stops at the first problem: every
violation is collected, each tagged with its dotted key and, when the key
can be located in the source text, its line number.

The renderer emits a canonical form (fixed key order, repr floats) such
that parse(render(cfg)) == cfg and the sha256 of the rendered text is a
stable fingerprint of the run.
"""
from __future__ import annotations

import hashlib
import json
import math
from dataclasses import dataclass, field

try:
    import tomllib as _toml
except ImportError:  # python 3.10
    import tomli as _toml

from .fields import (ACRingScenario, CombinedScenario, DriveProtocol,
                     SternScenario)

KINDS = ("ac_ring", "stern", "combined")
BRANCHES = ("+", "-")
UNIT_NAMES = ("internal", "si")
MIN_STEPS, MAX_STEPS = 2 ** 4, 2 ** 20
ENV_OUT_DIR = "RINGSPIN_OUT"

# scenario keys per kind: (required, optional)
_SCENARIO_KEYS = {
    "ac_ring": (("alpha", "chi_tilt"), ("radius", "ab_flux")),
    "stern": (("b_phi", "b_z", "omega"), ("radius", "n")),
    "combined": (("alpha", "chi_tilt", "b_phi", "b_z", "omega"),
                 ("radius", "ab_flux")),
}
_SWEEPABLE = {
    "ac_ring": ("alpha", "chi_tilt", "ab_flux"),
    "stern": ("b_phi", "b_z", "omega"),
    "combined": ("alpha", "chi_tilt", "b_phi", "b_z", "omega", "ab_flux"),
}
_DRIVE_TARGETS = {
    "ac_ring": ("alpha", "ab_flux"),
    "stern": ("b_phi",),
    "combined": ("alpha", "b_phi", "ab_flux"),
}


class ConfigError(ValueError):
    """Carries every violation found in a config, not just the first."""

    def __init__(self, violations):
        self.violations = list(violations)
        super().__init__("\n".join(self.violations))


@dataclass(frozen=True)
class EmitFlags:
    trajectory: bool = True
    phases: bool = True
    faraday: bool = True
    plotdata: bool = False


@dataclass(frozen=True)
class RunConfig:
    kind: str
    scenario: object
    n_steps: int = 8192
    branch: str = "+"
    units: str = "internal"
    drive: DriveProtocol | None = None
    drive_samples: int = 65
    out_dir: str | None = None
    emit: EmitFlags = field(default_factory=EmitFlags)


@dataclass(frozen=True)
class SweepConfig:
    run: RunConfig
    parameter: str
    start: float
    stop: float
    count: int
    unwrap: bool = True


def _is_number(v) -> bool:
    return isinstance(v, (int, float)) and not isinstance(v, bool)


def _find_line(text: str, section: str, key: str) -> int | None:
    """Best-effort line number of `key` inside `[section]` of the source."""
    want_header = None if section == "" else f"[{section}]"
    in_section = section == ""
    for i, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if stripped.startswith("["):
            in_section = (want_header is not None and stripped == want_header)
            continue
        if in_section and (stripped.startswith(key + " ")
                           or stripped.startswith(key + "=")):
            return i
    return None


class _Collector:
    def __init__(self, text: str, source: str):
        self.text = text
        self.source = source
        self.violations: list[str] = []

    def add(self, section: str, key: str, msg: str):
        path = f"{section}.{key}" if section else key
        line = _find_line(self.text, section.split(".")[0] if section else "", key)
        where = f"{self.source}:{line}: " if line is not None else f"{self.source}: "
        self.violations.append(f"{where}{path}: {msg}")


def _check_scenario(col: _Collector, kind: str, table) -> dict | None:
    if not isinstance(table, dict):
        col.add("", "scenario", "must be a table")
        return None
    required, optional = _SCENARIO_KEYS[kind]
    allowed = set(required) | set(optional)
    values = {}
    for k in sorted(table):
        if k not in allowed:
            col.add("scenario", k, f"unknown key for kind {kind!r}")
    for k in required:
        if k not in table:
            col.add("scenario", k, "required key is missing")
    bounds = {
        "alpha": ("must be a number >= 0", lambda v: v >= 0.0),
        "chi_tilt": ("must be a number in [0, pi]", lambda v: 0.0 <= v <= math.pi),
        "radius": ("must be a number > 0", lambda v: v > 0.0),
        "ab_flux": ("must be a number", lambda v: True),
        "b_phi": ("must be a number >= 0", lambda v: v >= 0.0),
        "b_z": ("must be a number >= 0", lambda v: v >= 0.0),
        "omega": ("must be a number > 0", lambda v: v > 0.0),
        "n": ("must be an integer >= 0",
              lambda v: isinstance(v, int) and v >= 0),
    }
    ok = True
    for k, v in table.items():
        if k not in allowed:
            ok = False
            continue
        msg, pred = bounds[k]
        if k == "n":
            if not (isinstance(v, int) and not isinstance(v, bool) and v >= 0):
                col.add("scenario", k, msg)
                ok = False
                continue
            values[k] = v
            continue
        if not _is_number(v):
            col.add("scenario", k, msg)
            ok = False
            continue
        if not pred(float(v)):
            col.add("scenario", k, msg + f", got {v}")
            ok = False
            continue
        values[k] = float(v)
    if not ok or any(k not in table for k in required):
        return None
    return values


def _build_scenario(kind: str, values: dict):
    cls = {"ac_ring": ACRingScenario, "stern": SternScenario,
           "combined": CombinedScenario}[kind]
    return cls(**values)


def _check_run(col: _Collector, table) -> dict:
    out = {"n_steps": 8192, "branch": "+", "units": "internal",
           "emit": EmitFlags()}
    if table is None:
        return out
    if not isinstance(table, dict):
        col.add("", "run", "must be a table")
        return out
    for k in sorted(table):
        if k not in ("steps", "branch", "units", "emit"):
            col.add("run", k, "unknown key")
    if "steps" in table:
        v = table["steps"]
        if not (isinstance(v, int) and not isinstance(v, bool)
                and MIN_STEPS <= v <= MAX_STEPS and (v & (v - 1)) == 0):
            col.add("run", "steps",
                    f"must be a power of two in [{MIN_STEPS}, {MAX_STEPS}], got {v}")
        else:
            out["n_steps"] = v
    if "branch" in table:
        v = table["branch"]
        if v not in BRANCHES:
            col.add("run", "branch", f"must be '+' or '-', got {v!r}")
        else:
            out["branch"] = v
    if "units" in table:
        v = table["units"]
        if v not in UNIT_NAMES:
            col.add("run", "units", f"must be one of {UNIT_NAMES}, got {v!r}")
        else:
            out["units"] = v
    if "emit" in table:
        em = table["emit"]
        if not isinstance(em, dict):
            col.add("run", "emit", "must be a table of booleans")
        else:
            flags = {}
            for k in sorted(em):
                if k not in ("trajectory", "phases", "faraday", "plotdata"):
                    col.add("run.emit", k, "unknown emit flag")
                elif not isinstance(em[k], bool):
                    col.add("run.emit", k, "must be a boolean")
                else:
                    flags[k] = em[k]
            out["emit"] = EmitFlags(**flags)
    return out


def _check_drive(col: _Collector, kind: str, table) -> tuple:
    if table is None:
        return None, 65
    if not isinstance(table, dict):
        col.add("", "drive", "must be a table")
        return None, 65
    for k in sorted(table):
        if k not in ("target", "knots", "samples"):
            col.add("drive", k, "unknown key")
    target = table.get("target")
    ok = True
    if target not in _DRIVE_TARGETS.get(kind, ()):
        col.add("drive", "target",
                f"must be one of {_DRIVE_TARGETS[kind]} for kind {kind!r}, "
                f"got {target!r}")
        ok = False
    knots = table.get("knots")
    pairs = []
    if (not isinstance(knots, list) or len(knots) < 2
            or not all(isinstance(k, list) and len(k) == 2
                       and all(_is_number(x) for x in k) for k in knots)):
        col.add("drive", "knots", "must be a list of at least two [t, value] pairs")
        ok = False
    else:
        pairs = [(float(t), float(v)) for t, v in knots]
        ts = [t for t, _ in pairs]
        if not all(b > a for a, b in zip(ts, ts[1:])):
            col.add("drive", "knots", "knot times must be strictly increasing")
            ok = False
    samples = table.get("samples", 65)
    if not (isinstance(samples, int) and not isinstance(samples, bool)
            and samples >= 5):
        col.add("drive", "samples", f"must be an integer >= 5, got {samples}")
        samples = 65
    if not ok:
        return None, samples
    return DriveProtocol(target=target, knots=tuple(pairs)), samples


def _check_output(col: _Collector, table) -> str | None:
    if table is None:
        return None
    if not isinstance(table, dict):
        col.add("", "output", "must be a table")
        return None
    for k in sorted(table):
        if k != "directory":
            col.add("output", k, "unknown key")
    d = table.get("directory")
    if d is not None and not isinstance(d, str):
        col.add("output", "directory", "must be a string")
        return None
    return d


def _check_sweep(col: _Collector, kind: str, table) -> dict | None:
    if table is None:
        return None
    if not isinstance(table, dict):
        col.add("", "sweep", "must be a table")
        return None
    for k in sorted(table):
        if k not in ("parameter", "from", "to", "count", "unwrap"):
            col.add("sweep", k, "unknown key")
    out = {}
    ok = True
    p = table.get("parameter")
    if p not in _SWEEPABLE.get(kind, ()):
        col.add("sweep", "parameter",
                f"must be one of {_SWEEPABLE[kind]} for kind {kind!r}, got {p!r}")
        ok = False
    out["parameter"] = p
    for key, name in (("from", "start"), ("to", "stop")):
        v = table.get(key)
        if not _is_number(v):
            col.add("sweep", key, "must be a number")
            ok = False
        else:
            out[name] = float(v)
    c = table.get("count")
    if not (isinstance(c, int) and not isinstance(c, bool) and c >= 2):
        col.add("sweep", "count", f"must be an integer >= 2, got {c!r}")
        ok = False
    else:
        out["count"] = c
    u = table.get("unwrap", True)
    if not isinstance(u, bool):
        col.add("sweep", "unwrap", "must be a boolean")
        ok = False
    else:
        out["unwrap"] = u
    return out if ok else None


def build_config(doc: dict, text: str = "", source: str = "<config>"):
    """Validate a parsed TOML document; returns RunConfig or SweepConfig.

    Raises ConfigError listing every violation found.
    """
    col = _Collector(text, source)
    if not isinstance(doc, dict):
        raise ConfigError([f"{source}: top level must be a table"])
    for k in sorted(doc):
        if k not in ("kind", "scenario", "run", "drive", "output", "sweep"):
            col.add("", k, "unknown top-level key")
    kind = doc.get("kind")
    if kind not in KINDS:
        col.add("", "kind", f"must be one of {KINDS}, got {kind!r}")
        raise ConfigError(col.violations)

    scen_values = _check_scenario(col, kind, doc.get("scenario"))
    run_bits = _check_run(col, doc.get("run"))
    drive, samples = _check_drive(col, kind, doc.get("drive"))
    out_dir = _check_output(col, doc.get("output"))
    sweep_bits = _check_sweep(col, kind, doc.get("sweep"))
    if doc.get("sweep") is not None and doc.get("drive") is not None:
        col.add("", "sweep", "sweep and drive cannot be combined in one config")
    if col.violations:
        raise ConfigError(col.violations)

    scenario = _build_scenario(kind, scen_values)
    run = RunConfig(kind=kind, scenario=scenario, n_steps=run_bits["n_steps"],
                    branch=run_bits["branch"], units=run_bits["units"],
                    drive=drive, drive_samples=samples, out_dir=out_dir,
                    emit=run_bits["emit"])
    if sweep_bits is None:
        return run
    return SweepConfig(run=run, **sweep_bits)


def parse_config_text(text: str, source: str = "<config>"):
    try:
        doc = _toml.loads(text)
    except _toml.TOMLDecodeError as exc:
        raise ConfigError([f"{source}: TOML syntax error: {exc}"]) from exc
    return build_config(doc, text, source)


def parse_config(path):
    """Parse and validate a config file; raises ConfigError on any violation."""
    with open(path, "r", encoding="utf-8") as fh:
        text = fh.read()
    return parse_config_text(text, source=str(path))


def apply_overrides(doc: dict, assignments) -> list[str]:
    """Apply key=value overrides (dotted keys, TOML-literal values) to doc.

    Returns a list of violations for malformed assignments; valid ones are
    applied in place.
    """
    problems = []
    for raw in assignments:
        if "=" not in raw:
            problems.append(f"--set {raw!r}: expected key=value")
            continue
        key, _, value = raw.partition("=")
        key = key.strip()
        if not key:
            problems.append(f"--set {raw!r}: empty key")
            continue
        try:
            parsed = _toml.loads(f"v = {value.strip()}")["v"]
        except _toml.TOMLDecodeError:
            parsed = value.strip()  # fall back to a bare string
        node = doc
        parts = key.split(".")
        for part in parts[:-1]:
            nxt = node.get(part)
            if not isinstance(nxt, dict):
                nxt = {}
                node[part] = nxt
            node = nxt
        node[parts[-1]] = parsed
    return problems


def _fmt_value(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, int):
        return str(v)
    if isinstance(v, float):
        r = repr(v)
        # TOML floats need a dot or exponent
        return r if any(c in r for c in ".eE") or r in ("inf", "nan") else r + ".0"
    if isinstance(v, str):
        return json.dumps(v)
    if isinstance(v, (list, tuple)):
        return "[" + ", ".join(_fmt_value(x) for x in v) + "]"
    raise TypeError(f"cannot render {type(v).__name__} as TOML")


def render_config(cfg) -> str:
    """Canonical TOML for a RunConfig or SweepConfig (round-trips exactly)."""
    sweep = None
    if isinstance(cfg, SweepConfig):
        sweep, cfg = cfg, cfg.run
    scen = cfg.scenario
    lines = [f'kind = "{cfg.kind}"', "", "[scenario]"]
    required, optional = _SCENARIO_KEYS[cfg.kind]
    for k in (*required, *optional):
        lines.append(f"{k} = {_fmt_value(getattr(scen, k))}")
    lines += ["", "[run]",
              f"steps = {cfg.n_steps}",
              f'branch = "{cfg.branch}"',
              f'units = "{cfg.units}"',
              "",
              "[run.emit]"]
    for k in ("trajectory", "phases", "faraday", "plotdata"):
        lines.append(f"{k} = {_fmt_value(getattr(cfg.emit, k))}")
    if cfg.drive is not None:
        knots = [[t, v] for t, v in cfg.drive.knots]
        lines += ["", "[drive]",
                  f'target = "{cfg.drive.target}"',
                  f"knots = {_fmt_value(knots)}",
                  f"samples = {cfg.drive_samples}"]
    if cfg.out_dir is not None:
        lines += ["", "[output]", f"directory = {_fmt_value(cfg.out_dir)}"]
    if sweep is not None:
        lines += ["", "[sweep]",
                  f'parameter = "{sweep.parameter}"',
                  f"from = {_fmt_value(sweep.start)}",
                  f"to = {_fmt_value(sweep.stop)}",
                  f"count = {sweep.count}",
                  f"unwrap = {_fmt_value(sweep.unwrap)}"]
    return "\n".join(lines) + "\n"


def config_hash(cfg) -> str:
    """Stable 16-hex fingerprint of the canonical rendering.

    The output directory is excluded: it changes where artifacts land, not
    what is computed, and the hash identifies the computation.
    """
    from dataclasses import replace
    if isinstance(cfg, SweepConfig):
        cfg = replace(cfg, run=replace(cfg.run, out_dir=None))
    else:
        cfg = replace(cfg, out_dir=None)
    return hashlib.sha256(render_config(cfg).encode("utf-8")).hexdigest()[:16]
