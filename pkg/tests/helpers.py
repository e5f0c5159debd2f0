"""Tower parameter sets shared by the test modules."""

# small towers covering each (e, l) case and both parities of q
SMALL_TOWERS = [
    (2, 1, 2, 1, 2),
    (2, 1, 6, 2, 3),
    (2, 2, 4, 4, 2),
    (3, 1, 4, 4, 2),
    (3, 1, 6, 2, 3),
    (3, 1, 6, 3, 2),
    (5, 1, 2, 1, 2),
    (5, 1, 4, 4, 2),
]

# criterion number -> ("PASS" | "FAIL", title), filled by tests/test_acceptance.py
ACCEPTANCE_RESULTS: dict[int, tuple[str, str]] = {}
