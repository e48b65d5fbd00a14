"""Smoke test for the islandperf_py extension module.

Build first, e.g. `maturin develop -m crates/py/Cargo.toml`, or
`cargo build --release -p islandperf-py` and point ISLANDPERF_PY_LIB at the
resulting shared library.
"""

import importlib.machinery
import importlib.util
import math
import os
import sys


def load():
    path = os.environ.get("ISLANDPERF_PY_LIB")
    if not path:
        import islandperf_py

        return islandperf_py
    loader = importlib.machinery.ExtensionFileLoader("islandperf_py", path)
    spec = importlib.util.spec_from_file_location("islandperf_py", path, loader=loader)
    module = importlib.util.module_from_spec(spec)
    loader.exec_module(module)
    return module


def main():
    ip = load()

    peaks, dump = ip.ppeaks_generate(4, 16, 7)
    assert len(peaks) == 4 and all(len(p) == 16 for p in peaks)
    assert ip.ppeaks_fitness(dump, peaks[2]) == 0.0

    run = ip.run_ppeaks(4, 16, 7, seed=1, islands=4, pop_size=8, max_evaluations=200_000)
    assert run["hit_target"] and run["best_fitness"] == 0.0, run
    assert run["evaluations"] >= 32

    vrp = "\n".join(
        [
            "NAME : tiny",
            "TYPE : CVRP",
            "DIMENSION : 4",
            "EDGE_WEIGHT_TYPE : EUC_2D",
            "CAPACITY : 5",
            "NODE_COORD_SECTION",
            "1 0 0",
            "2 3 0",
            "3 3 4",
            "4 0 4",
            "DEMAND_SECTION",
            "1 0",
            "2 3",
            "3 3",
            "4 2",
            "DEPOT_SECTION",
            "1",
            "-1",
            "EOF",
        ]
    )
    assert ip.cvrp_decode(vrp, [1, 2, 3]) == [[1], [2, 3]]
    assert math.isclose(ip.cvrp_fitness(vrp, [1, 2, 3]), 6.0 + 12.0)

    xs = [1, 2, 4, 8, 16, 32, 64]
    ys = [1.0 / (x + 1.0) + 0.02 for x in xs]
    su = ip.speedup(xs, ys)
    assert su[0] == 1.0 and su[-1] > su[1]
    fit = ip.fit_model("rational3", xs, ys)
    assert fit["mae"] < 1e-6 and len(fit["predictions"]) == len(xs), fit
    ranked = ip.rank_models(xs, ys)
    assert ranked[0][0] == "rational3" and len(ranked) == 6

    h, df, p = ip.kruskal_wallis([[1.0, 2.0, 3.0], [4.0, 5.0, 6.0], [7.0, 8.0, 9.0]])
    assert df == 2 and math.isclose(h, 7.2) and math.isclose(p, ip.chi_square_sf(7.2, 2))
    assert ip.termination_target("ppeaks-20-100") == 0.0

    print("python smoke test: ok")


if __name__ == "__main__":
    sys.exit(main())
