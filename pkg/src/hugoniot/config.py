"""TOML config parsing for sweep runs.

Layout (all sections optional except [case]):

    [case]
    names = ["toro1", "toro2"]      # or: name = "toro1"
    [scheme]
    names = ["ricca", "movers-plus"]
    [grid]
    sizes = [[100, 1], [200, 1]]    # or: nx = [100, 200]
    [march]
    orders = [1, 2]
    cfl = 0.1
    integrator = "rk3"
    [gas]
    gamma = 1.4
"""

from __future__ import annotations

try:
    import tomllib
except ModuleNotFoundError:  # Python 3.10
    import tomli as tomllib

from .cases import registry_lookup
from .errors import ConfigError
from .gas import GasModel
from .schemes import SCHEME_IDS


def _as_list(section, key_plural, key_single):
    if key_plural in section:
        val = section[key_plural]
        if not isinstance(val, list) or not val:
            raise ConfigError(f"{key_plural} must be a non-empty list")
        return val
    if key_single in section:
        return [section[key_single]]
    return None


def load_sweep_config(path):
    """Parse a sweep config; returns kwargs for runner.sweep plus overrides."""
    try:
        with open(path, "rb") as fh:
            data = tomllib.load(fh)
    except OSError as err:
        raise ConfigError(f"cannot read config file: {err}") from None
    except tomllib.TOMLDecodeError as err:
        raise ConfigError(f"malformed config file: {err}") from None

    case = data.get("case", {})
    names = _as_list(case, "names", "name")
    if not names:
        raise ConfigError("config needs [case] with 'name' or 'names'")
    for n in names:
        registry_lookup(n)  # raises UnknownCase for typos

    scheme = data.get("scheme", {})
    schemes = _as_list(scheme, "names", "name") or ["movers-plus"]
    for s in schemes:
        if s not in SCHEME_IDS:
            raise ConfigError(f"unknown scheme {s!r}")

    march = data.get("march", {})
    orders = _as_list(march, "orders", "order") or [1]
    for o in orders:
        if o not in (1, 2):
            raise ConfigError(f"order must be 1 or 2, got {o}")

    grid = data.get("grid", {})
    grids = None
    if "sizes" in grid:
        grids = [tuple(int(v) for v in pair) for pair in grid["sizes"]]
        if any(len(g) != 2 for g in grids):
            raise ConfigError("grid sizes must be [nx, ny] pairs")
    elif "nx" in grid:
        nxs = grid["nx"] if isinstance(grid["nx"], list) else [grid["nx"]]
        grids = [(int(nx), 1) for nx in nxs]

    overrides = {}
    if "cfl" in march:
        overrides["cfl"] = float(march["cfl"])
    if "tmax" in march:
        overrides["final_time"] = float(march["tmax"])
    if "max_iters" in march:
        overrides["max_iters"] = int(march["max_iters"])

    gas_sec = data.get("gas", {})
    if gas_sec:
        known = {"gamma", "prandtl", "reynolds", "mach_ref", "sutherland_ratio"}
        bad = set(gas_sec) - known
        if bad:
            raise ConfigError(f"unknown [gas] keys: {sorted(bad)}")
        try:
            overrides["gas"] = GasModel(**gas_sec)
        except ValueError as err:
            raise ConfigError(str(err)) from None

    extra = {}
    if "integrator" in march:
        if march["integrator"] not in ("euler1", "rk3"):
            raise ConfigError("integrator must be 'euler1' or 'rk3'")
        extra["integrator"] = march["integrator"]
    if "movers_lambda_min" in scheme:
        extra["movers_lambda_min"] = scheme["movers_lambda_min"]

    return {"case_names": names, "schemes": schemes, "orders": orders,
            "grids": grids, **extra}, overrides
