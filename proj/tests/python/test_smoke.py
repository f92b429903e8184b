import math

import rateless as rl


def test_capacity_of_reference_channels():
    cap = rl.capacity(rl.Dmc.bsc(0.25))
    assert abs(cap.capacity_bits - 0.18872187554086717) < 1e-9
    assert abs(cap.optimal_prior.probs[0] - 0.5) < 1e-9
    assert abs(rl.capacity(rl.Dmc.bec(0.5)).capacity_bits - 0.5) < 1e-9
    assert abs(rl.capacity(rl.Dmc.z_channel(0.5)).capacity_bits - math.log2(1.25)) < 1e-6


def test_bounds_formulas():
    assert abs(rl.bounds.rate_known(1.0, 20, 2**-10) - 20 / 31) < 1e-12
    assert rl.bounds.rate_universal(1.0, 20, 0.5, 2, 2) < rl.bounds.rate_known(1.0, 20, 0.5)
    r1, r2, total = rl.bounds.slepian_wolf_rates(2.0, 0.0, 0.5)
    assert (r1, r2, total) == (5.0, 3.0, 8.0)
    burn = rl.bounds.burnashev_exponent(rl.Dmc.z_channel(0.5), 0.1)
    assert burn["infinite"]


def test_mixture_closed_form():
    cm = rl.CountMatrix(2, 1)
    cm.add(0, 0)
    cm.add(0, 0)
    assert abs(rl.mixture_log_prob(cm) - math.log2(3 / 8)) < 1e-12
    assert abs(rl.kt_conditional(cm, 0, 0) - 2.5 / 3) < 1e-12
    assert abs(rl.kt_kappa(2) - math.log2(math.pi)) < 1e-12


def test_codebook_is_deterministic():
    cb = rl.Codebook.discrete(42, 4, rl.InputPrior.uniform(2))
    assert cb.prefix(1, 16) == cb.prefix(1, 16)
    assert cb.message_count == 4


def test_awgn_scores():
    ch = rl.AwgnChannel(1.0, 1.0)
    assert abs(ch.capacity_bits() - 0.5) < 1e-12
    assert abs(rl.awgn_log_score(ch, 0.0, 0.0) - 0.5) < 1e-12


def test_run_experiment_round_trip():
    report = rl.run_experiment(
        {
            "scheme": "known",
            "channel": {"type": "noiseless", "size": 2},
            "source": {"type": "uniform", "M": 2},
            "epsilon": 0.0625,
            "trials": 50,
            "seed": 7,
        }
    )
    assert report["trials"] == 50
    assert report["mean_t"] == 5.0
    assert report["bounds"]["capacity"] == 1.0


def test_sweep_table():
    csv = rl.sweep_table(
        {
            "formulas": ["rate_known"],
            "fixed": {"capacity": 1.0, "epsilon": 0.5},
            "sweep": {"variable": "log2_m", "from": 8, "to": 16, "points": 3},
        }
    )
    lines = csv.strip().split("\n")
    assert lines[0] == "log2_m,rate_known"
    assert len(lines) == 4
