from matwaring.fuzz import commutator_trials, fuzz, lemma33_trials, replay, run_decompose_trial


def test_small_run_all_pass():
    rep = fuzz(1, 10, [2], 10**6, 100)
    assert rep.successes == 10 and rep.all_passed


def test_reports_are_reproducible():
    assert fuzz(7, 3, [3, 4], 1000, 50) == fuzz(7, 3, [3, 4], 1000, 50)
    assert commutator_trials(7, 5, [2, 3]) == commutator_trials(7, 5, [2, 3])


def test_zero_entry_bound_gives_zero_targets():
    rep = fuzz(2, 3, [2, 3], 100, 0)
    assert rep.all_passed


def test_replay_matches_original():
    rec = run_decompose_trial(5, 4, 2, 1000, 100)
    assert replay(rec, 1000, 100) == rec


def test_lemma33_trials():
    assert lemma33_trials(0, 50).all_passed


def test_timing_is_opt_in():
    assert fuzz(0, 1, [2], 10, 10).timing is None
    assert fuzz(0, 1, [2], 10, 10, timing=True).timing is not None
