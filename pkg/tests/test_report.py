import numpy as np
import pytest

from mrgrip.report import (
    PUBLISHED_SUPPORT_AT_2V,
    coefficient_mismatch_summary,
    discrepancy_report,
    format_report,
    published_support_polynomial,
    support_poly_audit,
)


def test_published_polynomial_at_two_volts():
    assert published_support_polynomial(2.0) == pytest.approx(401.783, abs=1e-3)


def test_audit_within_one_percent_but_beyond_tenth():
    devs = support_poly_audit()
    assert np.all(devs <= 0.01)       # passes a 1% check
    assert np.max(devs) > 1e-3        # fails a 0.1% check
    assert np.max(devs) == pytest.approx(0.00891, abs=2e-4)


def test_report_lists_all_three_support_values():
    rows = discrepancy_report()
    by_label = {r.label: r for r in rows}
    headline = by_label["support force at 2 V, headline"]
    assert headline.published == PUBLISHED_SUPPORT_AT_2V == 419.79
    assert headline.model == pytest.approx(414.781, abs=1e-3)
    poly = by_label["support force at 2 V, published polynomial"]
    assert poly.published == pytest.approx(401.783, abs=1e-3)
    assert poly.model == pytest.approx(414.781, abs=1e-3)


def test_report_covers_ratio_and_peak_conflicts():
    rows = discrepancy_report()
    by_label = {r.label: r for r in rows}
    assert by_label["force-to-power ratio at 2 V"].published == 276.18
    assert by_label["force-to-power ratio at 2 V"].model == pytest.approx(272.628, abs=1e-3)
    assert by_label["force-to-power ratio at 3 V"].published == 127.05
    assert by_label["peak holding force at 2 V"].published == 368.24
    assert by_label["headline peak/power pairing"].published == pytest.approx(256.757, abs=1e-3)
    assert by_label["fingertip coefficient"].model == pytest.approx(0.28527, abs=1e-5)


def test_coefficient_rows_flag_large_deviations():
    rows = discrepancy_report()
    flagged = [r for r in rows if r.label.startswith("support polynomial c") and r.note]
    assert any(r.label == "support polynomial c2" for r in flagged)
    c0 = next(r for r in rows if r.label == "support polynomial c0")
    assert c0.note == ""  # below the 0.1% mark


def test_summary_line_flags_the_mismatch():
    line = coefficient_mismatch_summary()
    assert "within 1%" in line
    assert "exceeds 0.1%" in line


def test_text_and_csv_formats():
    rows = discrepancy_report()
    text = format_report(rows, "text")
    assert "419.79" in text and "414.781" in text and "401.783" in text
    csv_text = format_report(rows, "csv")
    lines = csv_text.strip().split("\n")
    assert lines[0] == "label,published,model,unit,rel_diff_pct,note"
    assert len(lines) == len(rows) + 1
    with pytest.raises(ValueError):
        format_report(rows, "yaml")


def test_rel_diff_sign():
    rows = discrepancy_report()
    headline = next(r for r in rows if r.label == "support force at 2 V, headline")
    assert headline.rel_diff_pct < 0  # model sits below the published headline
