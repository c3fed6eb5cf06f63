import argparse
import sys
from typing import Any, Dict, List, Optional, TextIO

import numpy as np

from analysis_events.event_register import configure_events
from cantor_fractal.cantor import on_agreement, triadic_grid, triadic_measure, validate_ON
from cuntz_operators.isometries import cuntz_residual, isometry_relation_residual
from cuntz_operators.restricted_operator import restrict_to_M, restricted_operators
from cuntz_operators.sparse_sequence import SparseSequence, random_sparse_sequence
from dyadic_measure.fractal_scale import daubechies_ratio_scan, fractal_ratio_scan
from dyadic_measure.measure import (
    MeasureTable, density_profile, lower_bound, measure_grid, mu0_interval, mu_f_interval)
from dyadic_measure.measure_exceptions import (
    BaseMismatch, DigitOutOfRange, GridCapExceeded, InvalidScanLength, NonUnitVector)
from dyadic_measure.n_adic_interval import as_interval
from filter_bank.filter_exceptions import InvalidFilterInput, UnsupportedBranching
from filter_bank.qmf_validation import block_coefficient_matrices, validate_qmf
from qmlab.cli_exceptions import RunConfigError
from qmlab.command_registry import CommandRegistry, get_schema
from qmlab.output_writer import table, write_csv, write_output
from qmlab.run_config import RunConfig, load_settings, settings_from_config
from qmlab.svg_writer import emit_svg
from spectral_analysis.spectral_exceptions import DominanceAbsent
from spectral_analysis.dominant_eigen import dominant_eigendata
from spectral_analysis.spectrum import left_ones_check, spectrum_F0
from wavelet_packets.cascade import cascade
from wavelet_packets.packet_coefficients import expansion_coefficients, marginal_distribution, packet_index
from wavelet_packets.packet_exceptions import (
    HorizonCrossed, InvalidHorizon, InvalidPacketIndex, InvalidPacketWord, InvalidResolution,
    InvalidTilingPair, IterationsExceeded, PacketDepthExceeded)
from wavelet_packets.tiling import (
    Tiling, classic_tiling, parse_pairs, refine_tiling, singleton_tiling, table_one_tiling,
    validate_tiling)

USAGE_ERRORS = (
    RunConfigError, InvalidFilterInput, UnsupportedBranching, DigitOutOfRange, BaseMismatch,
    NonUnitVector, GridCapExceeded, InvalidScanLength, DominanceAbsent, InvalidTilingPair,
    InvalidHorizon, HorizonCrossed, InvalidPacketWord, InvalidPacketIndex, InvalidResolution,
    IterationsExceeded, PacketDepthExceeded,
)

NAMED_TILINGS = {
    "classic": classic_tiling,
    "singleton": singleton_tiling,
    "table-one": table_one_tiling,
}


def _pair(value:complex) -> List[float]:
    value = complex(value)
    return [value.real, value.imag]


def _word(digits) -> str:
    return "".join(str(d) for d in digits)


def run_filter(config: RunConfig) -> Dict[str, Any]:
    bank = config.bank()
    settings = config.settings
    rng = np.random.default_rng(config.seed)
    sequences = [random_sparse_sequence(rng) for _ in range(config.params["trials"])]
    cuntz = cuntz_residual(bank, sequences, config.tolerance)
    summary = {"N": bank.n_branches, "genus": bank.genus}

    if bank.n_branches == 2:
        report = validate_qmf(bank, config.tolerance, settings.circle_samples)
        summary["qmf"] = report.to_dict()
        summary["block_max_residual"] = block_coefficient_matrices(bank).max_residual
        passed = bool(report.passed and cuntz.passed)
    else:
        report = validate_ON(bank, settings.circle_samples, config.tolerance)
        summary["on"] = report.to_dict()
        passed = bool(report.passed and cuntz.passed)
    summary["cuntz"] = cuntz.to_dict()
    summary["isometry_relation_residual"] = isometry_relation_residual(bank)
    summary["verdict"] = "pass" if passed else "fail"

    rows = [[i, k, c.real, c.imag] for i, branch in enumerate(bank.branches) for k, c in enumerate(branch)]
    return {
        "command": "filter",
        "passed": passed,
        "summary": summary,
        "table": table(["branch", "k", "re", "im"], rows),
    }


def run_matrices(config: RunConfig) -> Dict[str, Any]:
    bank = config.bank()
    operators = restricted_operators(bank, config.params["subspace"])
    rows = []
    for F in operators:
        for r, row in enumerate(F.matrix):
            for c, value in enumerate(row):
                rows.append([F.branch, F.indices[r], F.indices[c], value.real, value.imag])
    summary = {
        "subspace": config.params["subspace"],
        "dimension": operators[0].dimension,
        "index_window": list(operators[0].index_window),
    }
    return {
        "command": "matrices",
        "summary": summary,
        "table": table(["branch", "row_index", "col_index", "re", "im"], rows),
    }


def run_measure(config: RunConfig) -> Dict[str, Any]:
    bank = config.bank()
    params = config.params
    settings = config.settings

    if params.get("digits") is not None:
        interval = as_interval(params["digits"], bank.n_branches)
        summary = {"word": interval.to_string(), "left": str(interval.left_endpoint_exact)}
        if params.get("f_index") is not None:
            summary["mass"] = mu_f_interval(bank, SparseSequence.basis(params["f_index"]), interval)
        else:
            summary["mass"] = mu0_interval(bank, interval)
        if params.get("lower_bound"):
            summary["lower_bound"] = lower_bound(bank, interval)
        return {"command": "measure", "summary": summary}

    if params.get("depth") is None:
        raise RunConfigError("measure needs --digits or --depth")
    grid = measure_grid(bank, params["depth"], settings.grid_cap, settings.mass_floor)
    if config.svg_path:
        emit_svg(grid, config.svg_path)
    return {
        "command": "measure",
        "summary": {"N": grid.base, "depth": grid.depth, "total_mass": grid.total_mass()},
        "table": table(["word", "left", "mass"], [list(row) for row in grid.rows()]),
    }


def _scan_kind(config: RunConfig, bank) -> str:
    kind = config.params["kind"]
    if kind != "auto":
        return kind
    spectrum = spectrum_F0(bank, config.settings.dominance_margin)
    if spectrum.fractal_scale is not None:
        return "fractal"
    if spectrum.strictly_dominant and abs(spectrum.dominant - 1 / np.sqrt(2.0)) < 1e-9:
        return "daubechies"
    return "density"


def run_scan(config: RunConfig) -> Dict[str, Any]:
    bank = config.bank()
    params = config.params
    settings = config.settings
    kind = _scan_kind(config, bank)

    if kind == "density":
        depths = list(range(params["min_depth"], params["max_depth"] + 1))
        profile = density_profile(bank, params["lo"], params["hi"], depths, settings.grid_cap)
        return {
            "command": "scan",
            "summary": {"kind": kind, "lo": params["lo"], "hi": params["hi"]},
            "table": table(["depth", "max_density"], [list(row) for row in profile]),
        }

    scanner = fractal_ratio_scan if kind == "fractal" else daubechies_ratio_scan
    scan = scanner(
        bank, params["digits"], n_max=params["n_max"],
        stop_delta=settings.scan_stop_delta, dominance_margin=settings.dominance_margin)
    summary = {
        "kind": kind,
        "base_word": scan.base_word,
        "scale_factor": scan.scale_factor,
        "estimate": scan.estimate,
        "stop_n": scan.stop_n,
        "residual": scan.residual,
        "predicted_limit": scan.predicted_limit,
    }
    summary.update(scan.extras)
    return {
        "command": "scan",
        "summary": summary,
        "table": table(["n", "ratio"], [[n, r] for n, r in enumerate(scan.ratios, start=1)]),
    }


def run_spectrum(config: RunConfig) -> Dict[str, Any]:
    bank = config.bank()
    data = spectrum_F0(bank, config.settings.dominance_margin)
    summary = {
        "strictly_dominant": bool(data.strictly_dominant),
        "dominant": _pair(data.dominant) if data.dominant is not None else None,
        "fractal_scale": data.fractal_scale,
        "v": None,
        "v_norm_squared": None,
    }
    if data.fractal_scale is not None:
        # xi = e_0 + v, the right eigenvector of F_0 for conj(a_0) with <e_0|xi> = 1
        F = restrict_to_M(bank, 0)
        e0 = np.zeros(F.dimension)
        e0[0] = 1.0
        v = dominant_eigendata(F, np.conj(bank.lowpass[0]), e0).right_vector[1:]
        summary["v"] = [_pair(c) for c in v]
        summary["v_norm_squared"] = float(np.sum(np.abs(v) ** 2))
    if bank.n_branches == 2:
        summary["left_ones_residual"] = left_ones_check(bank)
    rows = [[i, v.real, v.imag, abs(v)] for i, v in enumerate(np.asarray(data.eigenvalues, dtype=complex))]
    return {
        "command": "spectrum",
        "summary": summary,
        "table": table(["index", "re", "im", "modulus"], rows),
    }


def run_tiling(config: RunConfig) -> Dict[str, Any]:
    params = config.params
    horizon = params["horizon"] or config.settings.horizon
    if params.get("named"):
        tiling = NAMED_TILINGS[params["named"]](horizon)
    elif params.get("pairs"):
        tiling = Tiling(parse_pairs(params["pairs"]), horizon)
    else:
        raise RunConfigError("tiling validate needs --pairs or --named")
    for pair in params.get("refine") or []:
        tiling = refine_tiling(tiling, parse_pairs(pair)[0])

    verdict = validate_tiling(tiling)
    summary = {"verdict": str(verdict)}
    summary.update(verdict.to_dict())
    summary["pairs"] = tiling.to_string()
    return {"command": "tiling", "passed": bool(verdict.valid), "summary": summary}


def run_packets(config: RunConfig) -> Dict[str, Any]:
    params = config.params
    action = params["packets_command"]
    settings = config.settings

    if action == "index":
        text = params["word"] or ""
        if not text.isdigit() and text:
            raise InvalidPacketWord(text, params["p"])
        word = tuple(int(c) for c in text)
        m = packet_index(params["p"], params["n"], word)
        return {
            "command": "packets",
            "summary": {"action": action, "p": params["p"], "n": params["n"], "word": _word(word), "m": m},
        }

    bank = config.bank()
    if action == "coeffs":
        coefficients = expansion_coefficients(bank, params["p"], params["k"], settings.max_depth, settings.prune_below)
        rows = [[_word(w), j, c.real, c.imag] for w, j, c in coefficients.entries()]
        return {
            "command": "packets",
            "summary": {"action": action, "p": params["p"], "k": params["k"], "total_mass": coefficients.total_mass()},
            "table": table(["word", "j", "re", "im"], rows),
        }

    marginal = marginal_distribution(bank, params["p"], params["n"], params["k"], settings.max_depth)
    return {
        "command": "packets",
        "summary": {
            "action": action, "p": params["p"], "n": params["n"], "k": params["k"],
            "total_mass": float(sum(marginal.masses)),
        },
        "table": table(["m", "mass"], [[m, mass] for m, mass in marginal.packets()]),
    }


def run_cascade(config: RunConfig) -> Dict[str, Any]:
    bank = config.bank()
    params = config.params
    samples = cascade(bank, params["n"], params["iters"], params["res"], config.settings.max_iterations)
    payload = {
        "command": "cascade",
        "summary": {
            "n": samples.n,
            "iterations": samples.iterations,
            "resolution": samples.resolution,
            "integral": float(np.real(samples.integral())),
        },
        "table": table(["x", "value"], [list(row) for row in samples.rows()]),
    }
    if params.get("csv"):
        with open(params["csv"], "w", newline="") as f:
            write_csv(payload, f, config.settings.significant_digits)
    if config.svg_path:
        emit_svg(samples, config.svg_path)
    return payload


def run_cantor(config: RunConfig) -> Dict[str, Any]:
    bank = config.bank(default="cantor")
    params = config.params
    settings = config.settings

    if params.get("digits") is not None:
        mass = triadic_measure(params["digits"], bank)
        return {
            "command": "cantor",
            "summary": {"word": params["digits"], "mass": float(mass), "exact": str(mass)},
        }

    if params.get("agreement"):
        report = on_agreement(np.random.default_rng(config.seed), params["trials"], bank)
        return {
            "command": "cantor",
            "passed": bool(report.all_agree),
            "summary": {"trials": len(report.on_verdicts), "agreements": report.agreements},
            "table": table(
                ["trial", "on_verdict", "cuntz_verdict"],
                [[i, a, b] for i, (a, b) in enumerate(zip(report.on_verdicts, report.cuntz_verdicts))]),
        }

    if params.get("check_hutchinson"):
        residual = triadic_grid(params["depth"], bank, settings.grid_cap).max_residual()
        return {
            "command": "cantor",
            "passed": bool(float(residual) <= config.tolerance),
            "summary": {"depth": params["depth"], "max_residual": float(residual)},
        }

    report = triadic_grid(params["depth"], bank, settings.grid_cap)
    if config.svg_path:
        emit_svg(MeasureTable(report.base, report.depth, np.array([float(m) for m in report.masses])), config.svg_path)
    return {
        "command": "cantor",
        "summary": {
            "depth": report.depth,
            "exact": bool(report.exact),
            "total_mass": float(report.total_mass()),
            "max_hutchinson_residual": float(report.max_residual()),
        },
        "table": table(["word", "left", "mass"], [[w, str(left), float(m)] for w, left, m in report.rows()]),
    }


HANDLERS = {
    "filter": run_filter,
    "matrices": run_matrices,
    "measure": run_measure,
    "scan": run_scan,
    "spectrum": run_spectrum,
    "tiling": run_tiling,
    "packets": run_packets,
    "cascade": run_cascade,
    "cantor": run_cantor,
}


def build_registry() -> CommandRegistry:
    registry = CommandRegistry(usage_errors=USAGE_ERRORS)
    for name, handler in HANDLERS.items():
        registry.add_command(name, get_schema(name), handler)
    return registry


def _bank_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(add_help=False)
    group = parser.add_argument_group("Bank source (exactly one)")
    source = group.add_mutually_exclusive_group()
    source.add_argument("--beta", type=float, help="genus-2 bank of the beta family, angle in radians")
    source.add_argument("--daubechies", action="store_true", help="Daubechies 4-tap bank")
    source.add_argument("--haar", type=int, choices=[1, 2, 3, 4], help="one of the four degenerate Haar banks")
    source.add_argument("--coeffs", type=str, help="comma-separated real low-pass coefficients (N=2)")
    source.add_argument("--cantor", action="store_true", help="the N=3 Cantor bank")
    source.add_argument("--bank-json", dest="bank_json", type=str, help="path of a filter bank JSON file")
    return parser


def _common_parser(suppress:bool) -> argparse.ArgumentParser:
    # the copy attached to subcommands must not overwrite values given before the subcommand
    default = (lambda value: argparse.SUPPRESS) if suppress else (lambda value: value)
    parser = argparse.ArgumentParser(add_help=False)
    group = parser.add_argument_group("Output and numerics")
    group.add_argument("--format", choices=["text", "json", "csv"], default=default("text"))
    group.add_argument("--tolerance", type=float, default=default(None), help="overrides [filters] tolerance")
    group.add_argument("--seed", type=int, default=default(0), help="seed of randomized checks")
    group.add_argument("--svg", type=str, default=default(None), help="also render the result as SVG")
    group.add_argument("--config", type=str, default=default(None), help="path of config.ini")
    return parser


def build_parser() -> argparse.ArgumentParser:
    common = _common_parser(suppress=True)
    bank = _bank_parser()
    parser = argparse.ArgumentParser(
        prog="qmlab",
        description="Quadrature-mirror filters, Cuntz isometries and the measures they induce",
        parents=[_common_parser(suppress=False)],
    )
    commands = parser.add_subparsers(dest="command", required=True)

    p = commands.add_parser("filter", parents=[common, bank], help="validate a filter bank")
    p.add_argument("--trials", type=int, default=50, help="random sequences for the Cuntz relation check")

    p = commands.add_parser("matrices", parents=[common, bank], help="restricted operators F_i")
    p.add_argument("--subspace", choices=["M", "L"], default="M")

    p = commands.add_parser("measure", parents=[common, bank], help="masses of N-adic intervals")
    p.add_argument("--digits", type=str, help="interval address, most significant digit first")
    p.add_argument("--depth", type=int, help="all intervals of this depth")
    p.add_argument("--f-index", dest="f_index", type=int, help="use mu_f with f = e_n instead of mu_0")
    p.add_argument("--lower-bound", dest="lower_bound", action="store_true", help="also report the lower bound")

    p = commands.add_parser("scan", parents=[common, bank], help="asymptotic ratios and density growth")
    p.add_argument("--kind", choices=["auto", "fractal", "daubechies", "density"], default="auto")
    p.add_argument("--base", "--digits", dest="digits", type=str, default="", help="base word of the ratio scan")
    p.add_argument("--n-max", dest="n_max", type=int, default=60)
    p.add_argument("--lo", type=float, default=0.0)
    p.add_argument("--hi", type=float, default=1.0)
    p.add_argument("--min-depth", dest="min_depth", type=int, default=1)
    p.add_argument("--max-depth", dest="max_depth", type=int, default=12)

    commands.add_parser("spectrum", parents=[common, bank], help="spectrum of F_0")

    p = commands.add_parser("tiling", parents=[common], help="tilings of the integers by packet houses")
    tiling_commands = p.add_subparsers(dest="tiling_command", required=True)
    v = tiling_commands.add_parser("validate", parents=[common])
    v.add_argument("--pairs", type=str, help='"p:n,p:n,..."')
    v.add_argument("--named", choices=sorted(NAMED_TILINGS))
    v.add_argument("--horizon", type=int, default=None)
    v.add_argument("--refine", action="append", help="split the pair p:n into its two halves first")

    p = commands.add_parser("packets", parents=[common], help="wavelet packet indices and coefficients")
    packet_commands = p.add_subparsers(dest="packets_command", required=True)
    s = packet_commands.add_parser("index", parents=[common])
    s.add_argument("--p", type=int, required=True)
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--word", type=str, default="")
    s = packet_commands.add_parser("coeffs", parents=[common, bank])
    s.add_argument("--p", type=int, required=True)
    s.add_argument("--k", type=int, default=0)
    s = packet_commands.add_parser("marginal", parents=[common, bank])
    s.add_argument("--p", type=int, required=True)
    s.add_argument("--n", type=int, default=0)
    s.add_argument("--k", type=int, default=0)

    p = commands.add_parser("cascade", parents=[common, bank], help="cascade approximation of phi_n")
    p.add_argument("--n", type=int, default=0)
    p.add_argument("--iters", type=int, default=10)
    p.add_argument("--res", type=int, default=256)
    p.add_argument("--csv", type=str, help="also write x,value to this file")

    p = commands.add_parser("cantor", parents=[common, bank], help="the N=3 Cantor measure")
    p.add_argument("--depth", type=int, default=1)
    p.add_argument("--digits", type=str, help="a single base-3 word")
    p.add_argument("--check-hutchinson", dest="check_hutchinson", action="store_true")
    p.add_argument("--agreement", action="store_true", help="compare O_N and Cuntz verdicts on perturbed banks")
    p.add_argument("--trials", type=int, default=20)
    return parser


def run(argv: Optional[List[str]]=None, stdout: TextIO=None, stderr: TextIO=None) -> int:
    """
    Parse argv, execute the command and print its output

    :return: 0 on success or a valid verdict, 1 on a failing verdict or an internal error,
        2 on usage errors
    :rtype: int
    """
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)

    configs = load_settings(args.config)
    settings = settings_from_config(configs)
    configure_events(settings.register_events, settings.events_file)
    try:
        config = RunConfig.from_args(args, settings)
    except RunConfigError as e:
        print(f"qmlab: {e}", file=stderr)
        return 2

    response = build_registry().execute(config.command, config)
    if response["status_code"] == 200:
        payload = response["return"]
        write_output(payload, config.output_format, stdout, settings.significant_digits)
        return 0 if payload.get("passed", True) else 1

    print(f"qmlab: {response['exception']}", file=stderr)
    return 2 if response["status_code"] == 400 else 1


def main():
    sys.exit(run())
