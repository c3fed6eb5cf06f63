import argparse
import configparser
import os
from dataclasses import dataclass, field
from typing import Any, Dict, Optional

from cantor_fractal.cantor import cantor_filter
from filter_bank.filter_bank import FilterBank
from filter_bank.filter_families import beta_family, daubechies, haar_variant
from qmlab.cli_exceptions import RunConfigError

DEFAULT_CONFIG_PATH = os.path.join(os.path.dirname(os.path.dirname(os.path.realpath(__file__))), "config.ini")

BANK_SOURCES = ("beta", "daubechies", "haar", "coeffs", "cantor", "bank_json")


@dataclass(frozen=True)
class Settings:
    """
    Numerical defaults read from config.ini; every field falls back to the shipped value
    """
    tolerance: float = 1e-10
    circle_samples: int = 256
    dominance_margin: float = 1e-9
    singular_tolerance: float = 1e-12
    grid_cap: int = 3 ** 12
    mass_floor: float = 1e-300
    scan_stop_delta: float = 1e-6
    horizon: int = 2 ** 16
    max_depth: int = 12
    prune_below: float = 1e-15
    max_iterations: int = 20
    significant_digits: int = 12
    register_events: bool = False
    events_file: Optional[str] = None


def load_settings(path:Optional[str]=None) -> configparser.ConfigParser:
    configs = configparser.ConfigParser()
    configs.read(path or DEFAULT_CONFIG_PATH)
    return configs


def settings_from_config(configs: configparser.ConfigParser) -> Settings:
    defaults = Settings()

    def get(section, key, kind):
        fallback = getattr(defaults, key)
        if not configs.has_section(section):
            return fallback
        if kind is bool:
            return configs[section].getboolean(key, fallback=fallback)
        if kind is int:
            return configs[section].getint(key, fallback=fallback)
        if kind is float:
            return configs[section].getfloat(key, fallback=fallback)
        return configs[section].get(key, fallback=fallback) or None

    return Settings(
        tolerance=get("filters", "tolerance", float),
        circle_samples=get("filters", "circle_samples", int),
        dominance_margin=get("spectral", "dominance_margin", float),
        singular_tolerance=get("spectral", "singular_tolerance", float),
        grid_cap=get("measure", "grid_cap", int),
        mass_floor=get("measure", "mass_floor", float),
        scan_stop_delta=get("measure", "scan_stop_delta", float),
        horizon=get("packets", "horizon", int),
        max_depth=get("packets", "max_depth", int),
        prune_below=get("packets", "prune_below", float),
        max_iterations=get("packets", "max_iterations", int),
        significant_digits=get("output", "significant_digits", int),
        register_events=get("events", "register_events", bool),
        events_file=get("events", "events_file", str),
    )


def parse_coeffs(text:str) -> list:
    try:
        return [float(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise RunConfigError(f"--coeffs expects comma-separated reals, got '{text}'")


@dataclass(frozen=True)
class RunConfig:
    """
    Everything one CLI invocation needs: the bank source, the command and its parameters,
    output options and the numerical settings

    :raises RunConfigError: more than one bank source, or tolerance <= 0
    """
    command: str
    params: Dict[str, Any]
    settings: Settings
    bank_source: Optional[str] = None
    bank_value: Any = None
    output_format: str = "text"
    svg_path: Optional[str] = None
    seed: int = 0
    tolerance: float = field(default=1e-10)

    def __post_init__(self):
        if self.tolerance <= 0:
            raise RunConfigError(f"tolerance must be > 0, got {self.tolerance}")
        if self.bank_source is not None and self.bank_source not in BANK_SOURCES:
            raise RunConfigError(f"unknown bank source '{self.bank_source}'")

    @classmethod
    def from_args(cls, args: argparse.Namespace, settings: Settings) -> "RunConfig":
        given = [(name, getattr(args, name, None)) for name in BANK_SOURCES]
        given = [(name, value) for name, value in given if value is not None and value is not False]
        if len(given) > 1:
            raise RunConfigError("exactly one bank source may be given, got " + ", ".join(n for n, _ in given))
        source, value = given[0] if given else (None, None)

        params = {
            key: value for key, value in vars(args).items()
            if key not in BANK_SOURCES + ("command", "format", "svg", "seed", "tolerance", "config")
        }
        tolerance = args.tolerance if getattr(args, "tolerance", None) is not None else settings.tolerance
        return cls(
            command=args.command,
            params=params,
            settings=settings,
            bank_source=source,
            bank_value=value,
            output_format=getattr(args, "format", "text") or "text",
            svg_path=getattr(args, "svg", None),
            seed=getattr(args, "seed", 0) or 0,
            tolerance=tolerance,
        )

    def bank(self, default:Optional[str]=None) -> FilterBank:
        """
        Build the filter bank named by the bank source

        :param default: source used when none was given ("cantor" for the cantor command)

        :raises RunConfigError: no bank source and no default, or an unreadable --bank-json file
        """
        source, value = self.bank_source, self.bank_value
        if source is None:
            if default is None:
                raise RunConfigError(
                    f"'{self.command}' needs a bank: --beta, --daubechies, --haar, --coeffs, --cantor or --bank-json")
            source, value = default, True
        if source == "beta":
            return beta_family(value)
        if source == "daubechies":
            return daubechies()
        if source == "haar":
            return haar_variant(value)
        if source == "coeffs":
            return FilterBank.from_lowpass(parse_coeffs(value))
        if source == "cantor":
            return cantor_filter()
        try:
            with open(value, "r") as f:
                text = f.read()
        except OSError as e:
            raise RunConfigError(f"cannot read bank file '{value}': {e.strerror}")
        return FilterBank.from_json(text)
