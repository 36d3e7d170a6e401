"""Plain-text emitters for fields, residual histories and reports.

All dumps are deterministic (fixed float format) so repeated runs can be
compared byte for byte.
"""

from __future__ import annotations

import os

import numpy as np

FLOAT_FMT = "%.12e"


def _header(case, scheme, order, time):
    return f"# case={case} scheme={scheme} order={order} time={FLOAT_FMT % time}\n"


def write_field_1d(path, case, scheme, order, time, x, W, gamma):
    """Columns: x rho u p e_internal (specific internal energy)."""
    e = W[:, 3] / ((gamma - 1.0) * W[:, 0])
    with open(path, "w") as fh:
        fh.write(_header(case, scheme, order, time))
        fh.write("# x rho u p e_internal\n")
        for k in range(len(x)):
            row = (x[k], W[k, 0], W[k, 1], W[k, 3], e[k])
            fh.write(" ".join(FLOAT_FMT % v for v in row) + "\n")


def write_field_2d(path, case, scheme, order, time, blocks, gamma):
    """Columns: i j x y rho u v p Mach; blocks separated by '# block=k'.

    `blocks` is a list of (xc, yc, W) with W of shape (ni, nj, 4).
    """
    with open(path, "w") as fh:
        fh.write(_header(case, scheme, order, time))
        fh.write("# i j x y rho u v p mach\n")
        for k, (xc, yc, W) in enumerate(blocks):
            if len(blocks) > 1:
                fh.write(f"# block={k}\n")
            a = np.sqrt(gamma * W[..., 3] / W[..., 0])
            mach = np.hypot(W[..., 1], W[..., 2]) / a
            ni, nj = xc.shape
            for i in range(ni):
                for j in range(nj):
                    row = (xc[i, j], yc[i, j], W[i, j, 0], W[i, j, 1],
                           W[i, j, 2], W[i, j, 3], mach[i, j])
                    fh.write(f"{i} {j} "
                             + " ".join(FLOAT_FMT % v for v in row) + "\n")


def write_history(path, history):
    """Two columns: iteration, relative residual."""
    with open(path, "w") as fh:
        fh.write("# iteration relative_residual\n")
        for it, rel in history:
            fh.write(f"{it} {FLOAT_FMT % rel}\n")


def output_root(cli_value=None):
    """Output directory: --out flag, else HUGONIOT_OUT, else ./runs."""
    if cli_value:
        return cli_value
    return os.environ.get("HUGONIOT_OUT", "runs")
