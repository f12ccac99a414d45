#!/usr/bin/env python3
"""Smoke test for the irslink_py extension module.

Build the module first:

    cargo build -p irslink-py --release --features extension-module

then run this script from the repository root (or anywhere):

    python3 python/smoke_test.py
"""

import math
import shutil
import sys
import tempfile
from pathlib import Path

REPO = Path(__file__).resolve().parent.parent


def load_module():
    """Copy the built cdylib next to a temp dir under an importable name."""
    candidates = [
        REPO / "target" / "release" / "libirslink_py.so",
        REPO / "target" / "debug" / "libirslink_py.so",
    ]
    built = next((p for p in candidates if p.exists()), None)
    if built is None:
        sys.exit(
            "libirslink_py.so not found; build it with\n"
            "  cargo build -p irslink-py --release --features extension-module"
        )
    stage = Path(tempfile.mkdtemp(prefix="irslink-py-"))
    shutil.copy2(built, stage / "irslink_py.so")
    sys.path.insert(0, str(stage))
    import irslink_py

    return irslink_py


def main():
    irslink_py = load_module()
    s = irslink_py.Scenario()

    # Noise budget: -94 dBm.
    sigma2 = s.noise_power()
    assert abs(10 * math.log10(sigma2 / 1e-3) - (-94.0)) < 1e-9, sigma2

    # Channel gains are positive and the direct path is the weakest.
    beta_sd, beta_sr, beta_rd = s.channel_gains()
    assert 0 < beta_sd < beta_sr, (beta_sd, beta_sr, beta_rd)

    # A 100-element surface beats the bare link at the same power.
    p = 0.1
    assert s.rate_irs(p, 100) > s.rate_siso(p) > 0

    # Power/rate round-trip through the bindings.
    r_bar = 4.0
    assert abs(s.rate_siso(s.power_siso(r_bar)) - r_bar) < 1e-9
    assert abs(s.rate_df(s.power_df(r_bar)) - r_bar) < 1e-9

    # Element threshold at the 80 m position matches the known value.
    s80 = irslink_py.Scenario()
    s80.set("d1_m", "80")
    n4 = s80.min_elements(4.0)
    assert abs(n4 - 165) <= 2, n4

    # Energy-efficiency comparison and crossovers.
    ee_siso, ee_df, ee_irs, best = s.energy_efficiency(2.0)
    assert best == "siso" and ee_siso >= max(ee_df, ee_irs)
    _, _, _, best10 = s.energy_efficiency(10.0)
    assert best10 == "irs"
    n_real, n_opt = s.optimal_elements(10.0)
    assert n_real > 0 and n_opt >= 1

    siso_df, df_irs, onset = s.crossovers()
    assert abs(siso_df - 3.47) < 0.05, siso_df
    assert abs(df_irs - 8.48) < 0.05, df_irs
    assert abs(onset - 4.9) < 0.1, onset

    # Invalid inputs surface as ValueError.
    try:
        s.set("alpha", "2.5")
        s.rate_irs(p, 100)
    except ValueError:
        pass
    else:
        sys.exit("expected ValueError for alpha out of range")

    print("smoke test passed")


if __name__ == "__main__":
    main()
