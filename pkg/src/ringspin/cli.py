"""Command-line front end: run one scenario, sweep a parameter, self-check.

Verbs:
  ringspin run CONFIG [--set k=v ...] [--out DIR]
  ringspin sweep CONFIG [--set k=v ...] [--out DIR] [--jobs N]
  ringspin check

Exit codes: 0 success, 2 config errors (every violation is printed), 3
numerical-quality flags (outputs are still written), 4 I/O failures.

The default output directory is ./out, overridable by the RINGSPIN_OUT
environment variable, the config's [output] section, or --out, in rising
precedence.  Reruns of the same config produce byte-identical artifacts;
sweeps are deterministic for any --jobs value because rows are collected
in sweep order regardless of completion order.
"""
from __future__ import annotations

import argparse
import concurrent.futures
import json
import math
import os
import sys
from dataclasses import replace

import numpy as np

from .classical import (cone_sampler, faraday_compare, flux_ledger,
                        line_integral_aeff, precess, ryu_motive_force,
                        stern_si_estimate)
from .config import (ENV_OUT_DIR, ConfigError, RunConfig, SweepConfig,
                     apply_overrides, build_config, config_hash,
                     render_config)
from .fields import ACRingScenario, SternScenario, UnitSystem
from .invariant import (analytic_phases, cone_solution, liouville_residual,
                        solve_beta, stern_geometric_phase)
from .pauli import HermitianObservable, exp_unitary
from .propagate import convergence_probe, decompose_phases, propagate

try:
    import tomllib as _toml
except ImportError:
    import tomli as _toml

DEFECT_FLAG = 1e-8
RESIDUAL_FLAG = 1e-10
FARADAY_FLAG = 1e-3


def _fmt(x) -> str:
    """Shortest exact decimal for a float (deterministic across runs)."""
    return repr(float(x))


def _circular_delta(a: float, b: float) -> float:
    return float((a - b + math.pi) % (2.0 * math.pi) - math.pi)


def _blochs(states: np.ndarray) -> np.ndarray:
    a = states[:, 0]
    b = states[:, 1]
    return np.stack([2.0 * np.real(np.conj(a) * b),
                     2.0 * np.imag(np.conj(a) * b),
                     np.abs(a) ** 2 - np.abs(b) ** 2], axis=-1)


def _write_text(path: str, text: str):
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)


def _conventions(kind: str) -> list:
    notes = [
        "geometric phases follow the transport convention: the '+' branch "
        "accumulates (cos(theta) - 1) * pi per loop, unwrapped by overlap "
        "continuity; geometric_mod / geometric_principal fold to (-pi, pi]",
        "the ledger's phi_geo is half the cone solid angle, "
        "pi * (1 - cos(theta)); it equals minus the transport-convention "
        "geometric phase up to a constant 2*pi on the lower branch",
    ]
    if kind in ("ac_ring", "combined"):
        notes += [
            "cone relation used: tan(beta) = 4 alpha sin(chi) / "
            "(1 + 4 alpha cos(chi)); the sign-flipped closed form "
            "tan(beta) = alpha sin(chi) / (alpha cos(chi) - 1) is reported "
            "as angle_alt and fails the invariance equation "
            "(residual_alt is O(1))",
            "dynamical phase per loop is 4 pi alpha cos(chi - beta); the "
            "half-sized companion 2 pi alpha cos(chi - beta) is reported "
            "as dynamical_alt",
        ]
    if kind == "stern":
        notes += [
            "cone relation used: tan(chi_c) = mu B_phi / (mu B_z + "
            "hbar omega / 2); angle_alt uses the full quantum hbar omega "
            "in the denominator",
            "geometric magnitudes pi * (1 +/- cos chi_c) are the mod-2pi "
            "representatives of the transport values",
        ]
    return notes


def _compute_run(cfg: RunConfig) -> dict:
    """Everything a run produces, plus its numerical-quality flags."""
    out: dict = {"flags": [], "config_hash": config_hash(cfg)}
    scenario = cfg.scenario
    try:
        sol = cone_solution(scenario, cfg.branch)
    except ValueError as exc:
        out["flags"].append(f"cone solution failed: {exc}")
        return out
    residual = liouville_residual(sol)
    residual_alt = (liouville_residual(sol, cone_angle=sol.beta_alt)
                    if sol.beta_alt is not None else None)
    ana = analytic_phases(scenario, cfg.branch)
    out["solution"] = sol
    out["residual"] = residual
    out["residual_alt"] = residual_alt
    out["analytic"] = ana
    out["ledger"] = flux_ledger(scenario, cfg.branch)
    if sol.limiting:
        out["flags"].append("limiting-case cone: closed-form denominator "
                            "vanished, beta pinned at pi/2")
    if residual > RESIDUAL_FLAG:
        out["flags"].append(f"invariance residual {residual:.3e} exceeds "
                            f"{RESIDUAL_FLAG:.0e}")

    traj = propagate(scenario, n_steps=cfg.n_steps, branch=cfg.branch)
    out["trajectory"] = traj
    try:
        dec = decompose_phases(traj)
        out["decomposition"] = dec
        if dec.defect > DEFECT_FLAG:
            out["flags"].append(f"cyclicity defect {dec.defect:.3e} exceeds "
                                f"{DEFECT_FLAG:.0e}")
        if not dec.anchored:
            out["flags"].append("geometric-phase unwrap not anchored "
                                "(overlap path near zero); principal value used")
    except ValueError as exc:
        out["flags"].append(f"phase decomposition failed: {exc}")

    if cfg.drive is not None:
        report = faraday_compare(scenario, cfg.drive, branch=cfg.branch,
                                 n_t=cfg.drive_samples)
        out["faraday"] = report
        out["ryu"] = ryu_motive_force(scenario, cfg.drive, report.ts, cfg.branch)
        if report.relative > FARADAY_FLAG:
            out["flags"].append(f"force/flux emf relative discrepancy "
                                f"{report.relative:.3e} exceeds {FARADAY_FLAG:.0e}")
    return out


def _phases_payload(cfg: RunConfig, res: dict) -> dict:
    sol = res["solution"]
    ana = res["analytic"]
    ledger = res["ledger"]
    payload = {
        "config_hash": res["config_hash"],
        "kind": cfg.kind,
        "branch": cfg.branch,
        "n_steps": cfg.n_steps,
        "cone": {
            "angle": float(sol.beta),
            "angle_alt": None if sol.beta_alt is None else float(sol.beta_alt),
            "azimuth": float(sol.azimuth),
            "limiting": bool(sol.limiting),
            "invariance_residual": float(res["residual"]),
            "invariance_residual_alt": (None if res["residual_alt"] is None
                                        else float(res["residual_alt"])),
        },
        "analytic": {
            "dynamical": float(ana.dynamical),
            "geometric_unwrapped": float(ana.geometric),
            "geometric_mod": float(ana.geometric_mod),
            "total": float(ana.total),
            "dynamical_alt": (None if ana.dynamical_alt is None
                              else float(ana.dynamical_alt)),
        },
        "ledger": {
            "phi_ab": float(ledger.phi_ab),
            "phi_dyn_ac": float(ledger.phi_dyn_ac),
            "phi_geo": float(ledger.phi_geo),
            "phi_total": float(ledger.phi_total),
        },
        "conventions": _conventions(cfg.kind),
        "flags": list(res["flags"]),
    }
    dec = res.get("decomposition")
    if dec is not None:
        payload["numeric"] = {
            "dynamical": float(dec.dynamical),
            "geometric": float(dec.geometric),
            "geometric_principal": float(dec.geometric_principal),
            "total": float(dec.total),
            "defect": float(dec.defect),
            "stepwise_total": float(dec.stepwise_total),
            "anchored": bool(dec.anchored),
            "norm_drift": float(res["trajectory"].norm_drift),
        }
        payload["delta"] = {
            "dynamical": float(dec.dynamical - ana.dynamical),
            "geometric_mod_2pi": _circular_delta(dec.geometric, ana.geometric),
            "dynamical_vs_alt": (None if ana.dynamical_alt is None else
                                 float(dec.dynamical - ana.dynamical_alt)),
        }
    if cfg.units == "si":
        u = UnitSystem.si()
        payload["si"] = {
            "mu_joule_per_tesla": u.mu,
            "flux_quantum_weber": u.flux_quantum,
            "note": "scenario numbers are in internal units; the SI block "
                    "reports unit constants and, for the magnetic ring, a "
                    "standard-parameters emf estimate",
        }
        if cfg.kind == "stern":
            est = stern_si_estimate()
            payload["si"]["standard_ramp"] = {
                "volts_peak": est.volts_peak,
                "hbar_omega_joule": est.hbar_omega,
                "mu_b_z_joule": est.mu_b_z,
                "ramp_seconds": est.ramp_time,
            }
    return payload


def _write_trajectory_csv(path: str, traj):
    blochs = _blochs(traj.states)
    rows = ["param,re0,im0,re1,im1,sx,sy,sz"]
    st = traj.states
    for i in range(len(traj.params)):
        rows.append(",".join([
            _fmt(traj.params[i]),
            _fmt(st[i, 0].real), _fmt(st[i, 0].imag),
            _fmt(st[i, 1].real), _fmt(st[i, 1].imag),
            _fmt(blochs[i, 0]), _fmt(blochs[i, 1]), _fmt(blochs[i, 2]),
        ]))
    _write_text(path, "\n".join(rows) + "\n")


def _write_faraday_csv(path: str, report):
    rows = ["t,eps_force,eps_flux,phi_ab,phi_dyn,phi_geo"]
    for i in range(len(report.ts)):
        rows.append(",".join([
            _fmt(report.ts[i]), _fmt(report.eps_force[i]),
            _fmt(report.eps_flux[i]), _fmt(report.phi_ab[i]),
            _fmt(report.phi_dyn_ac[i]), _fmt(report.phi_geo[i]),
        ]))
    rows.append(f"# max|eps_force-eps_flux| = {_fmt(report.max_abs_diff)} "
                f"(relative {_fmt(report.relative)}; boundary samples "
                f"one-sided: {str(report.boundary_one_sided).lower()})")
    _write_text(path, "\n".join(rows) + "\n")


def _write_summary(path: str, cfg: RunConfig, res: dict, written):
    lines = [f"config_hash = {res['config_hash']}",
             f"kind = {cfg.kind}",
             f"branch = {cfg.branch}",
             f"steps = {cfg.n_steps}",
             f"units = {cfg.units}"]
    sol = res.get("solution")
    if sol is not None:
        lines += [f"cone_angle = {_fmt(sol.beta)}",
                  f"cone_azimuth = {_fmt(sol.azimuth)}",
                  f"limiting = {str(sol.limiting).lower()}",
                  f"invariance_residual = {_fmt(res['residual'])}"]
        if sol.beta_alt is not None:
            lines += [f"cone_angle_alt = {_fmt(sol.beta_alt)}",
                      f"invariance_residual_alt = {_fmt(res['residual_alt'])}"]
        ana = res["analytic"]
        lines += [f"analytic_dynamical = {_fmt(ana.dynamical)}",
                  f"analytic_geometric = {_fmt(ana.geometric)}",
                  f"analytic_total = {_fmt(ana.total)}"]
        led = res["ledger"]
        lines += [f"ledger_phi_ab = {_fmt(led.phi_ab)}",
                  f"ledger_phi_dyn_ac = {_fmt(led.phi_dyn_ac)}",
                  f"ledger_phi_geo = {_fmt(led.phi_geo)}",
                  f"ledger_phi_total = {_fmt(led.phi_total)}"]
    dec = res.get("decomposition")
    if dec is not None:
        lines += [f"numeric_dynamical = {_fmt(dec.dynamical)}",
                  f"numeric_geometric = {_fmt(dec.geometric)}",
                  f"numeric_total = {_fmt(dec.total)}",
                  f"defect = {_fmt(dec.defect)}",
                  f"norm_drift = {_fmt(res['trajectory'].norm_drift)}"]
    rep = res.get("faraday")
    if rep is not None:
        lines += [f"faraday_max_abs_diff = {_fmt(rep.max_abs_diff)}",
                  f"faraday_relative = {_fmt(rep.relative)}"]
    flags = res["flags"]
    lines.append("flags = " + ("; ".join(flags) if flags else "none"))
    lines.append("files = " + (", ".join(written) if written else "none"))
    _write_text(path, "\n".join(lines) + "\n")


def _resolve_out_dir(cfg_dir, cli_dir) -> str:
    if cli_dir:
        return cli_dir
    if cfg_dir:
        return cfg_dir
    return os.environ.get(ENV_OUT_DIR) or "out"


def _load_config(path: str, sets, out_override):
    with open(path, "r", encoding="utf-8") as fh:
        text = fh.read()
    try:
        doc = _toml.loads(text)
    except _toml.TOMLDecodeError as exc:
        raise ConfigError([f"{path}: TOML syntax error: {exc}"]) from exc
    problems = apply_overrides(doc, sets or [])
    if problems:
        raise ConfigError(problems)
    if out_override:
        doc.setdefault("output", {})["directory"] = out_override
    return build_config(doc, text, source=str(path))


def _cmd_run(args) -> int:
    cfg = _load_config(args.config, args.set, args.out)
    if isinstance(cfg, SweepConfig):
        raise ConfigError([f"{args.config}: config has a [sweep] section; "
                           "use the sweep subcommand"])
    out_dir = _resolve_out_dir(cfg.out_dir, None)
    os.makedirs(out_dir, exist_ok=True)
    res = _compute_run(cfg)
    written = []

    if "trajectory" in res and cfg.emit.trajectory:
        p = os.path.join(out_dir, "trajectory.csv")
        _write_trajectory_csv(p, res["trajectory"])
        written.append("trajectory.csv")
    if "solution" in res and cfg.emit.phases and "decomposition" in res:
        p = os.path.join(out_dir, "phases.json")
        _write_text(p, json.dumps(_phases_payload(cfg, res), indent=2,
                                  sort_keys=True) + "\n")
        written.append("phases.json")
    if "faraday" in res and cfg.emit.faraday:
        p = os.path.join(out_dir, "faraday.csv")
        _write_faraday_csv(p, res["faraday"])
        written.append("faraday.csv")
    if cfg.emit.plotdata:
        if "trajectory" in res:
            blochs = _blochs(res["trajectory"].states)
            rows = [" ".join(_fmt(v) for v in row) for row in blochs]
            _write_text(os.path.join(out_dir, "bloch_path.dat"),
                        "\n".join(rows) + "\n")
            written.append("bloch_path.dat")
        if "faraday" in res:
            rep = res["faraday"]
            rows = [" ".join([_fmt(rep.ts[i]), _fmt(rep.eps_force[i]),
                              _fmt(rep.eps_flux[i])])
                    for i in range(len(rep.ts))]
            _write_text(os.path.join(out_dir, "emf_overlay.dat"),
                        "\n".join(rows) + "\n")
            written.append("emf_overlay.dat")

    _write_summary(os.path.join(out_dir, "summary.txt"), cfg, res, written)
    written.append("summary.txt")
    for name in written:
        print(os.path.join(out_dir, name))
    if res["flags"]:
        for f in res["flags"]:
            print(f"flag: {f}", file=sys.stderr)
        return 3
    return 0


def _sweep_point(run_cfg: RunConfig, parameter: str, value: float) -> dict:
    row = {"value": value, "cone_angle": math.nan, "dynamical": math.nan,
           "geometric": math.nan, "defect": math.nan, "status": "ok"}
    try:
        scen = replace(run_cfg.scenario, **{parameter: value})
        sol = cone_solution(scen, run_cfg.branch)
        traj = propagate(scen, n_steps=run_cfg.n_steps, branch=run_cfg.branch)
        dec = decompose_phases(traj)
        row["cone_angle"] = sol.beta
        row["dynamical"] = dec.dynamical
        row["geometric"] = dec.geometric
        row["defect"] = dec.defect
        notes = []
        if sol.limiting:
            notes.append("limiting")
        if dec.defect > DEFECT_FLAG:
            notes.append("defect")
        if not dec.anchored:
            notes.append("unanchored")
        if notes:
            row["status"] = "flag: " + "+".join(notes)
    except (ValueError, TypeError) as exc:
        msg = str(exc).replace(",", ";").replace("\n", " ")
        row["status"] = f"error: {msg}"
    return row


def _cmd_sweep(args) -> int:
    cfg = _load_config(args.config, args.set, args.out)
    if not isinstance(cfg, SweepConfig):
        raise ConfigError([f"{args.config}: config has no [sweep] section; "
                           "use the run subcommand"])
    if args.jobs < 1:
        raise ConfigError([f"--jobs must be >= 1, got {args.jobs}"])
    run_cfg = cfg.run
    out_dir = _resolve_out_dir(run_cfg.out_dir, None)
    os.makedirs(out_dir, exist_ok=True)

    values = np.linspace(cfg.start, cfg.stop, cfg.count)
    if args.jobs == 1:
        rows = [_sweep_point(run_cfg, cfg.parameter, float(v)) for v in values]
    else:
        # rows are gathered in sweep order, so the output is byte-identical
        # no matter how many workers raced to produce them
        with concurrent.futures.ThreadPoolExecutor(max_workers=args.jobs) as ex:
            futures = [ex.submit(_sweep_point, run_cfg, cfg.parameter, float(v))
                       for v in values]
            rows = [f.result() for f in futures]
    if cfg.start > cfg.stop:
        rows = rows[::-1]

    if cfg.unwrap:
        idx = [i for i, r in enumerate(rows) if math.isfinite(r["geometric"])]
        if len(idx) > 1:
            unwrapped = np.unwrap([rows[i]["geometric"] for i in idx])
            for i, g in zip(idx, unwrapped):
                rows[i]["geometric"] = float(g)

    header = "value,cone_angle,dynamical,geometric,defect,status"
    lines = [header]
    for r in rows:
        lines.append(",".join([_fmt(r["value"]), _fmt(r["cone_angle"]),
                               _fmt(r["dynamical"]), _fmt(r["geometric"]),
                               _fmt(r["defect"]), r["status"]]))
    _write_text(os.path.join(out_dir, "sweep.csv"), "\n".join(lines) + "\n")

    errors = sum(1 for r in rows if r["status"].startswith("error"))
    flagged = sum(1 for r in rows if r["status"].startswith("flag"))
    summary = [f"config_hash = {config_hash(cfg)}",
               f"kind = {run_cfg.kind}",
               f"parameter = {cfg.parameter}",
               f"from = {_fmt(cfg.start)}",
               f"to = {_fmt(cfg.stop)}",
               f"count = {cfg.count}",
               f"unwrap = {str(cfg.unwrap).lower()}",
               f"points_ok = {len(rows) - errors - flagged}",
               f"points_flagged = {flagged}",
               f"points_failed = {errors}",
               "files = sweep.csv" + (", phase_vs_param.dat"
                                      if run_cfg.emit.plotdata else "")]
    _write_text(os.path.join(out_dir, "summary.txt"), "\n".join(summary) + "\n")

    if run_cfg.emit.plotdata:
        rows_ok = [r for r in rows if math.isfinite(r["geometric"])]
        dat = [" ".join([_fmt(r["value"]), _fmt(r["dynamical"]),
                         _fmt(r["geometric"])]) for r in rows_ok]
        _write_text(os.path.join(out_dir, "phase_vs_param.dat"),
                    "\n".join(dat) + "\n")

    print(os.path.join(out_dir, "sweep.csv"))
    print(os.path.join(out_dir, "summary.txt"))
    if errors or flagged:
        print(f"flag: {errors} failed, {flagged} flagged of {len(rows)} points",
              file=sys.stderr)
        return 3
    return 0


def _check_table() -> list:
    """(name, passed, detail) rows for the built-in verification suite."""
    rows = []

    def add(name, passed, detail):
        rows.append((name, bool(passed), detail))

    rng = np.random.default_rng(20260819)

    # closed-form exponential against a scaled-and-squared Taylor series
    worst = 0.0
    for _ in range(24):
        c0, cx, cy, cz = rng.uniform(-1.5, 1.5, size=4)
        theta = rng.uniform(-2.0, 2.0)
        obs = HermitianObservable(c0, cx, cy, cz)
        m = -1.0j * theta * obs.matrix
        # halve until the argument is small, so the 20-term tail is < 1e-24
        squarings = 0
        while np.max(np.abs(m)) > 0.25:
            m = m / 2.0
            squarings += 1
        term = np.eye(2, dtype=complex)
        series = np.eye(2, dtype=complex)
        for k in range(1, 21):
            term = term @ m / k
            series = series + term
        for _ in range(squarings):
            series = series @ series
        worst = max(worst, float(np.max(np.abs(exp_unitary(obs, theta) - series))))
    add("exp-unitary-vs-series", worst < 1e-13, f"max deviation {worst:.2e}")

    obs = HermitianObservable(0.3, 0.4, -0.2, 0.7)
    comp = exp_unitary(obs, 0.35) @ exp_unitary(obs, 0.9)
    err = float(np.max(np.abs(comp - exp_unitary(obs, 1.25))))
    add("exp-unitary-group-law", err < 1e-14, f"U(a)U(b)=U(a+b) to {err:.2e}")

    worst = 0.0
    for alpha in (0.1, 0.5, 1.0, 2.0):
        for chi in (0.2, 1.0, 2.0, 3.0):
            sol = solve_beta(ACRingScenario(alpha=alpha, chi_tilt=chi))
            worst = max(worst, liouville_residual(sol))
    add("invariance-residual", worst < 1e-10, f"max residual {worst:.2e}")

    sol = solve_beta(ACRingScenario(alpha=0.7, chi_tilt=1.1))
    res_alt = liouville_residual(sol, cone_angle=sol.beta_alt)
    add("sign-flipped-form-rejected", res_alt > 0.1,
        f"alt-form residual {res_alt:.2e} (should be O(1))")

    scen = ACRingScenario(alpha=0.9, chi_tilt=1.4)
    ana = analytic_phases(scen)
    dec = decompose_phases(propagate(scen, n_steps=2048))
    d_err = abs(dec.dynamical - ana.dynamical)
    g_err = abs(dec.geometric - ana.geometric)
    add("ring-transport-vs-analytic", d_err < 1e-4 and g_err < 1e-4,
        f"dyn err {d_err:.2e}, geo err {g_err:.2e} at n=2048")

    st = SternScenario(b_phi=0.8, b_z=0.6, omega=1.1)
    sol_st = cone_solution(st)
    dec_st = decompose_phases(propagate(st, n_steps=4096))
    target = stern_geometric_phase(sol_st.beta, "+")
    g_err = abs(_circular_delta(dec_st.geometric, target))
    add("magnetic-ring-geometric", g_err < 1e-5,
        f"mod-2pi error {g_err:.2e} at n=4096")

    from .fields import CombinedScenario
    cb = CombinedScenario(alpha=0.3, chi_tilt=0.5, b_phi=0.4, b_z=0.8, omega=1.0)
    dec_cb = decompose_phases(propagate(cb, n_steps=4096))
    add("combined-cyclicity", dec_cb.defect < 1e-8,
        f"defect {dec_cb.defect:.2e}")

    from .fields import DriveProtocol
    drive = DriveProtocol(target="alpha", knots=((0.0, 0.2), (1.0, 0.6)))
    rep = faraday_compare(ACRingScenario(alpha=0.2, chi_tilt=0.8), drive,
                          n_t=17, n_ring=256, n_steps=1024)
    add("force-vs-flux-emf", rep.relative < 1e-3,
        f"relative discrepancy {rep.relative:.2e}")

    sol9 = solve_beta(ACRingScenario(alpha=0.6, chi_tilt=0.9))
    s0 = 0.5 * np.array([math.sin(sol9.beta), 0.0, math.cos(sol9.beta)])
    tr = precess(ACRingScenario(alpha=0.6, chi_tilt=0.9), s0, omega=1.0,
                 n_steps=4096, frame_term=False)
    cone = np.arctan2(np.hypot(tr.spins[:, 0], tr.spins[:, 1]), tr.spins[:, 2])
    drift = float(np.max(np.abs(cone - sol9.beta)))
    add("classical-cone-matches-quantum", drift < 1e-5,
        f"cone drift {drift:.2e} without the frame term")

    r1 = _sweep_point(RunConfig(kind="ac_ring",
                                scenario=ACRingScenario(alpha=0.4, chi_tilt=0.7),
                                n_steps=1024), "alpha", 0.4)
    r2 = _sweep_point(RunConfig(kind="ac_ring",
                                scenario=ACRingScenario(alpha=0.4, chi_tilt=0.7),
                                n_steps=1024), "alpha", 0.4)
    same = all(_fmt(r1[k]) == _fmt(r2[k]) for k in
               ("value", "cone_angle", "dynamical", "geometric", "defect"))
    add("repeat-determinism", same, "identical formatted rows on recompute")

    return rows


def _cmd_check(_args) -> int:
    rows = _check_table()
    width = max(len(name) for name, _, _ in rows)
    ok = 0
    for name, passed, detail in rows:
        tag = "PASS" if passed else "FAIL"
        ok += passed
        print(f"[{tag}] {name:<{width}}  {detail}")
    print(f"overall: {ok}/{len(rows)} passed")
    return 0 if ok == len(rows) else 3


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ringspin",
        description="Spin transport on rings: cones, phases, motive forces.")
    sub = parser.add_subparsers(dest="command")

    p_run = sub.add_parser("run", help="run one scenario from a TOML config")
    p_run.add_argument("config", help="path to the config file")
    p_run.add_argument("--set", action="append", default=[], metavar="KEY=VALUE",
                       help="override a config key (dotted path, TOML value)")
    p_run.add_argument("--out", default=None, help="output directory")

    p_sw = sub.add_parser("sweep", help="sweep one scenario parameter")
    p_sw.add_argument("config", help="path to the config file (needs [sweep])")
    p_sw.add_argument("--set", action="append", default=[], metavar="KEY=VALUE")
    p_sw.add_argument("--out", default=None)
    p_sw.add_argument("--jobs", type=int, default=1,
                      help="concurrent sweep points (output is identical "
                           "for any value)")

    sub.add_parser("check", help="run the built-in verification table")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command is None:
        parser.print_help()
        return 2
    try:
        if args.command == "run":
            return _cmd_run(args)
        if args.command == "sweep":
            return _cmd_sweep(args)
        return _cmd_check(args)
    except ConfigError as exc:
        for v in exc.violations:
            print(f"config error: {v}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return 4


if __name__ == "__main__":
    sys.exit(main())
