"""smoke test for the python bindings: parse a config, run a tiny sweep,
check determinism of the CSV serialization."""

import sys

import pymqc

CONFIG = """
[run]
model = stirap_const
strategies = none, w1
sweep = nu
grid = 0.5 0.7
tol = 1e-9
"""


def main() -> int:
    cfg = pymqc.parse_config(CONFIG)
    assert cfg.model == "stirap_const"
    assert cfg.strategies == ["none", "w1"]
    assert cfg.grid == [0.5, 0.7]

    e_none = pymqc.evaluate_infidelity(cfg, "none", 0.5)
    e_w1 = pymqc.evaluate_infidelity(cfg, "w1", 0.5)
    assert 0.0 <= e_w1 < e_none <= 1.0, (e_none, e_w1)

    records = pymqc.run_sweep(cfg, threads=2)
    assert len(records) == 2
    assert all(r.ok for r in records)
    csv1 = pymqc.sweep_csv(cfg, records)
    csv2 = pymqc.sweep_csv(cfg, pymqc.run_sweep(cfg, threads=1))
    assert csv1 == csv2, "sweep output must be deterministic"
    assert csv1.startswith("# config_hash=")

    pulses = pymqc.pulses_csv(cfg, "w1", 0.5, n_samples=32)
    assert pulses.count("\n") == 34  # preamble + header + 32 samples

    print("python smoke: ok")
    return 0


if __name__ == "__main__":
    sys.exit(main())
