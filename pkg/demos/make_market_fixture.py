"""Build the synthetic market-like fixture CSVs used by tests and demos.

Writes two files into the target directory (default tests/fixtures):

  market_prices.csv   date,price    6,194 rows
  market_volumes.csv  date,volume   6,693 rows

Prices follow a random walk with slowly varying volatility; volumes carry an
exponential growth trend with persistent lognormal noise, the pattern the
volume-deviation transform is built to remove. The volume history starts 499
days earlier than the price history so that abs-returns (drops 1 row) and
volume-deviation with window=500 (drops 500 rows) emit series aligned on the
same 6,193 dates.

Usage: python demos/make_market_fixture.py [OUTDIR]
"""

from __future__ import annotations

import sys
from datetime import date, timedelta
from pathlib import Path

import numpy as np

N_VOLUME = 6_693
EXTRA_HISTORY = 499  # volume rows preceding the first price row
N_PRICE = N_VOLUME - EXTRA_HISTORY
SEED = 20260810
START = date(1984, 10, 11)


def build(outdir: Path) -> None:
    rng = np.random.default_rng(SEED)

    # slowly mean-reverting log-volatility gives realistic clustering
    log_vol = np.empty(N_VOLUME)
    log_vol[0] = 0.0
    shocks = rng.standard_normal(N_VOLUME)
    for t in range(1, N_VOLUME):
        log_vol[t] = 0.97 * log_vol[t - 1] + 0.25 * shocks[t]
    sigma = 0.012 * np.exp(0.5 * log_vol)

    returns = sigma * rng.standard_normal(N_VOLUME)
    prices = 100.0 * np.exp(np.cumsum(returns[EXTRA_HISTORY:]))

    # volume: exponential growth times persistent noise, coupled to volatility
    growth = np.log(25.0) / N_VOLUME
    u = np.empty(N_VOLUME)
    u[0] = 0.0
    vol_noise = rng.standard_normal(N_VOLUME)
    for t in range(1, N_VOLUME):
        u[t] = 0.9 * u[t - 1] + 0.3 * vol_noise[t]
    volumes = 1.0e6 * np.exp(growth * np.arange(N_VOLUME) + 0.4 * u + 0.6 * log_vol)

    dates = [START + timedelta(days=i) for i in range(N_VOLUME)]
    outdir.mkdir(parents=True, exist_ok=True)
    with open(outdir / "market_volumes.csv", "w", encoding="utf-8") as fh:
        fh.write("date,volume\n")
        for d, v in zip(dates, volumes):
            fh.write(f"{d.isoformat()},{v:.6g}\n")
    with open(outdir / "market_prices.csv", "w", encoding="utf-8") as fh:
        fh.write("date,price\n")
        for d, p in zip(dates[EXTRA_HISTORY:], prices):
            fh.write(f"{d.isoformat()},{p:.10g}\n")
    print(f"wrote {outdir / 'market_prices.csv'} ({N_PRICE} rows)")
    print(f"wrote {outdir / 'market_volumes.csv'} ({N_VOLUME} rows)")


if __name__ == "__main__":
    target = Path(sys.argv[1]) if len(sys.argv) > 1 else (
        Path(__file__).resolve().parent.parent / "tests" / "fixtures"
    )
    build(target)
