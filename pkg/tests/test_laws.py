from dblcat import laws


def test_interchange():
    ok, count = laws.check_interchange(max_configs=60)
    assert ok and count == 60


def test_unitors_and_triangle():
    ok, count = laws.check_unitors_and_triangle()
    assert ok and count == 33


def test_pentagon():
    ok, count = laws.check_pentagon()
    assert ok and count == 8


def test_companion_identities():
    ok, count = laws.check_companion_identities()
    assert ok and count == 11


def test_run_all_report_shape():
    ok, report = laws.run_all(max_interchange=40)
    assert ok
    assert set(report) == {"interchange", "unitors_triangle", "pentagon",
                           "companion_conjoint"}
    assert all(r["ok"] for r in report.values())
