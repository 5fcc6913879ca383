"""Rewrite the golden files under tests/golden from the current implementation.

Run only after a deliberate change to a frozen value:

    python3 tools/regen_golden.py
"""
import hashlib
import json
from pathlib import Path

from mtbounds.montecarlo.experiments import SimulationConfig, mcdiarmid_experiment, run_experiment
from mtbounds.montecarlo.prng import Xoshiro256
from mtbounds.orlicz import LawSpec

ROOT = Path(__file__).resolve().parents[1]
GOLDEN = ROOT / "tests" / "golden"

MCDIARMID_ARGS = dict(m=3, n=50, law=LawSpec.weibull(1.0, 1.0), x=2.0, trials=5000, seed=20240611)
VERIFY_CONFIG = ROOT / "configs" / "rademacher_d1.json"
VERIFY_SEED = 42


def mcdiarmid_golden():
    out = mcdiarmid_experiment(**MCDIARMID_ARGS)
    out.pop("runtime_seconds")
    return out


def verify_digest():
    cfg = SimulationConfig.from_json_obj(json.loads(VERIFY_CONFIG.read_text()), seed=VERIFY_SEED)
    return hashlib.sha256(run_experiment(cfg).to_json().encode()).hexdigest()


def main():
    GOLDEN.mkdir(parents=True, exist_ok=True)
    (GOLDEN / "prng_first_output").write_text(f"{Xoshiro256(0, 0).next_int():#018x}\n")
    (GOLDEN / "mcdiarmid_comparison.json").write_text(json.dumps(mcdiarmid_golden(), indent=2, sort_keys=True) + "\n")
    (GOLDEN / "verify_rademacher_d1_seed42.sha256").write_text(
        f"{verify_digest()}  configs/rademacher_d1.json --seed {VERIFY_SEED}\n")


if __name__ == "__main__":
    main()
