"""
Command-line front end.

    susyd calibrate | spectrum | partner | verify | figures [options]

Exit codes: 0 success, 1 verification failure, 2 domain or configuration
error, 3 I/O error. Option values come from flags, then SUSYD_* environment
variables, then built-in defaults.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from pathlib import Path

import numpy as np

from . import deuteron
from .deuteron import DeuteronCalibration, Table
from .errors import DomainError
from .hulthen import HulthenPotential, bound_state_count, spectrum
from .solver import RadialProblem, solve_bound_states
from .susy import PartnerPotential, classify_susy, partner_state, superpotential_from_strength
from .verify import _hulthen_window, _partner_window, run_battery

EXIT_OK, EXIT_VERIFY, EXIT_DOMAIN, EXIT_IO = 0, 1, 2, 3

COMMANDS = ("calibrate", "spectrum", "partner", "verify", "figures")


def _fmt(v) -> str:
    if isinstance(v, (bool, np.bool_)):
        return "true" if v else "false"
    if isinstance(v, (float, np.floating)):
        return format(float(v), ".17g")
    if v is None:
        return ""
    return str(v)


def write_csv(stream, header, rows) -> None:
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([_fmt(v) for v in row])


def table_csv(table: Table) -> str:
    buf = io.StringIO()
    write_csv(buf, table.columns, table.data.tolist())
    return buf.getvalue()


def _env_float(name: str, default: float) -> float:
    raw = os.environ.get(name)
    if raw is None:
        return default
    try:
        return float(raw)
    except ValueError:
        raise DomainError(f"{name}={raw!r} is not a number") from None


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--binding-energy-mev", type=float, default=None,
                        help="deuteron binding energy in MeV (default -2.22456614)")
    common.add_argument("--alpha-fm", type=float, default=None,
                        help="Hulthén range alpha in fm (default 3)")
    common.add_argument("--strength-v0", type=float, default=None,
                        help="dimensionless Hulthén strength; overrides calibration")
    common.add_argument("--grid-points", type=int, default=200_000,
                        help="oracle and finite-difference grid size")
    common.add_argument("--constants", choices=sorted(deuteron.PRESETS), default="rounded",
                        help="energy-scale constants: the quoted 4.6113 MeV at 3 fm, or CODATA 2018")
    common.add_argument("--format", dest="output_format", choices=("json", "csv"), default="json")
    common.add_argument("--out", default=None, help="output directory")

    parser = argparse.ArgumentParser(prog="susyd", description=__doc__.split("\n\n")[0].strip())
    sub = parser.add_subparsers(dest="command", required=True)
    helps = {
        "calibrate": "fit V0 and kappa to the binding energy",
        "spectrum": "analytic Hulthén levels with oracle energies",
        "partner": "hard-core partner potential and its single level",
        "verify": "run the analytic-versus-oracle battery",
        "figures": "write figure CSVs and gnuplot scripts",
    }
    for name in COMMANDS:
        sub.add_parser(name, parents=[common], help=helps[name])
    return parser


def resolve_config(args) -> dict:
    binding = args.binding_energy_mev
    if binding is None:
        binding = _env_float("SUSYD_BINDING_ENERGY_MEV", deuteron.BINDING_ENERGY_MEV)
    alpha = args.alpha_fm
    if alpha is None:
        alpha = _env_float("SUSYD_ALPHA_FM", deuteron.DEFAULT_ALPHA_FM)
    out = args.out if args.out is not None else os.environ.get("SUSYD_OUT")
    if args.grid_points < 1000:
        raise DomainError(f"--grid-points must be at least 1000, got {args.grid_points}")
    return {
        "command": args.command,
        "binding_energy_mev": binding,
        "alpha_fm": alpha,
        "strength_v0": args.strength_v0,
        "grid_points": args.grid_points,
        "constants": args.constants,
        "output_format": args.output_format,
        "output_dir": out,
    }


def _calibration(cfg: dict) -> DeuteronCalibration:
    constants = deuteron.PRESETS[cfg["constants"]]
    if cfg["strength_v0"] is not None:
        return deuteron.calibrate_from_strength(cfg["strength_v0"], cfg["alpha_fm"], constants)
    return deuteron.calibrate(cfg["binding_energy_mev"], cfg["alpha_fm"], constants)


def _key_value_csv(d: dict) -> str:
    buf = io.StringIO()
    write_csv(buf, ("key", "value"), d.items())
    return buf.getvalue()


def _render(cfg: dict, payload: dict, csv_text: str) -> str:
    if cfg["output_format"] == "csv":
        return csv_text
    return json.dumps(payload, indent=2) + "\n"


def _emit(cfg: dict, text: str) -> None:
    sys.stdout.write(text)
    if cfg["output_dir"]:
        out = Path(cfg["output_dir"])
        out.mkdir(parents=True, exist_ok=True)
        (out / f"{cfg['command']}.{cfg['output_format']}").write_text(text, newline="\n")


def run_calibrate(cfg: dict) -> int:
    d = _calibration(cfg).as_dict()
    _emit(cfg, _render(cfg, d, _key_value_csv(d)))
    return EXIT_OK


def run_spectrum(cfg: dict) -> int:
    if cfg["strength_v0"] is not None:
        V0 = cfg["strength_v0"]
        if not V0 > 0:
            raise DomainError(f"V0 must be positive, got {V0}")
        units = deuteron.PhysicalUnits(cfg["alpha_fm"], deuteron.PRESETS[cfg["constants"]])
    else:
        cal = _calibration(cfg)
        V0, units = cal.V0, cal.units
    analytic = spectrum(V0)
    oracle = solve_bound_states(
        RadialProblem(HulthenPotential(V0), 1.0, grid_points=cfg["grid_points"]),
        _hulthen_window(V0),
        max(bound_state_count(V0), 1) + 1,
    )
    found = {lv.n: lv for lv in oracle.levels}
    rows = []
    for st in analytic.levels:
        lv = found.get(st.n)
        rows.append({
            "n": st.n,
            "k": st.k,
            "E": st.energy,
            "E_MeV": units.to_mev(st.energy),
            "oracle_E": None if lv is None else lv.energy,
            "oracle_nodes": None if lv is None else lv.nodes,
        })
    payload = {
        "V0": V0,
        "energy_scale_mev": units.energy_scale,
        "bound_state_count": len(analytic),
        "oracle_level_count": len(oracle),
        "levels": rows,
    }
    buf = io.StringIO()
    header = ("n", "k", "E", "E_MeV", "oracle_E", "oracle_nodes")
    write_csv(buf, header, ([r[h] for h in header] for r in rows))
    _emit(cfg, _render(cfg, payload, buf.getvalue()))
    return EXIT_OK


def run_partner(cfg: dict) -> int:
    cal = _calibration(cfg)
    w = superpotential_from_strength(cal.V0)
    state = partner_state(cal.V0)
    phase = classify_susy(cal.V0, w.factorization_energy)
    pot = PartnerPotential(w.kappa)
    oracle = solve_bound_states(
        RadialProblem(pot, 2.0, grid_points=cfg["grid_points"]), _partner_window(pot), 2
    )
    d = {
        "V0": cal.V0,
        "kappa": w.kappa,
        "factorization_energy": w.factorization_energy,
        "susy_phase": phase.phase,
        "missing_level": phase.missing_level,
        "E": state.energy,
        "E_MeV": cal.units.to_mev(state.energy),
        "oracle_level_count": len(oracle),
        "oracle_E": oracle.levels[0].energy if oracle.levels else None,
        "oracle_E_MeV": cal.units.to_mev(oracle.levels[0].energy) if oracle.levels else None,
        "exterior_probability": deuteron.exterior_probability(cal),
    }
    _emit(cfg, _render(cfg, d, _key_value_csv(d)))
    return EXIT_OK


def run_verify(cfg: dict) -> int:
    cal = _calibration(cfg)
    report = run_battery(cal, cfg["grid_points"], config={k: v for k, v in cfg.items() if k != "output_dir"})
    payload = report.as_dict()
    buf = io.StringIO()
    header = ("name", "analytic", "oracle", "abs_error", "rel_error", "tolerance", "comparison", "passed", "detail")
    write_csv(buf, header, ([row[h] for h in header] for row in payload["checks"]))
    _emit(cfg, _render(cfg, payload, buf.getvalue()))
    return EXIT_OK if report.passed else EXIT_VERIFY


FIGURE1_GP = """\
set datafile separator ','
set key top right
set xlabel 'r (fm)'
set ylabel 'potential (MeV)'
set xrange [0:{r_max:.6g}]
set yrange [-40:40]
plot 'figure1.csv' using 1:2 with lines title 'Hulthén V', \\
     '' using 1:3 with lines title 'SUSY partner (hard core)', \\
     '' using 1:4 with lines dashtype 2 title 'no-core Hulthén V_H', \\
     '' using 1:5 with lines dashtype 3 title 'E_d'
"""

FIGURE2_GP = """\
set datafile separator ','
set key top right
set xlabel 'x = r/alpha'
set ylabel 'probability density'
set xrange [0:{x_max:.6g}]
plot 'figure2.csv' using 1:2 with lines title '|psi_H(x)|^2 (no core)', \\
     '' using 1:3 with lines title '|psi~(x)|^2 (hard core)'
"""


def run_figures(cfg: dict) -> int:
    cal = _calibration(cfg)
    out = Path(cfg["output_dir"] or ".")
    fig1 = deuteron.figure1_data(cal)
    fig2 = deuteron.figure2_data(cal)
    files = {
        "figure1.csv": table_csv(fig1),
        "figure2.csv": table_csv(fig2),
        "figure1.gp": FIGURE1_GP.format(r_max=float(fig1.column("r_fm")[-1])),
        "figure2.gp": FIGURE2_GP.format(x_max=float(fig2.column("x")[-1])),
    }
    out.mkdir(parents=True, exist_ok=True)
    for name, text in files.items():
        (out / name).write_text(text, encoding="utf-8", newline="\n")
    summary = {"output_dir": str(out), "files": sorted(files)}
    sys.stdout.write(json.dumps(summary, indent=2) + "\n")
    return EXIT_OK


RUNNERS = {
    "calibrate": run_calibrate,
    "spectrum": run_spectrum,
    "partner": run_partner,
    "verify": run_verify,
    "figures": run_figures,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = resolve_config(args)
        return RUNNERS[cfg["command"]](cfg)
    except DomainError as exc:
        print(f"susyd: error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except OSError as exc:
        print(f"susyd: I/O error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
