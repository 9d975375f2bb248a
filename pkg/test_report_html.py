#!/usr/bin/env python3
"""
Tests for the HTML verification report.
"""

import dataclasses

import pytest
from bs4 import BeautifulSoup

from report_html import generate_report_html, save_report_html
from verifier import Mismatch, lemma_consequence_checks, verify_range


@pytest.fixture(scope="module")
def report():
    return verify_range(2, 100)


def _soup(report):
    return BeautifulSoup(generate_report_html(report, lemma_consequence_checks(report)), "lxml")


def test_summary_cards(report):
    soup = _soup(report)
    assert "Verified" in soup.find(id="verdict").get_text()
    assert soup.find(id="numbers").get_text() == "99"
    assert soup.find(id="mismatches").get_text() == "0"
    assert soup.find(id="max-k").get_text() == "5"
    assert soup.find(id="ap-instances").get_text() == f"{report.ap_instances:,}"


def test_family_and_histogram_tables(report):
    soup = _soup(report)
    case_rows = soup.find(id="case-table").find_all("tr", class_="case-row")
    assert len(case_rows) == 13
    xii = [row for row in case_rows if row.find("td").get_text() == "XII"][0]
    assert xii.find("td", class_="count").get_text() == "1"
    assert len(soup.find(id="k-table").find_all("tr", class_="k-row")) == 6


def test_checks_are_listed(report):
    soup = _soup(report)
    items = soup.find(id="checks").find_all("div", class_="check-item")
    assert len(items) == 6
    assert all("pass" in item["class"] for item in items)
    assert "No mismatches" in soup.find(id="mismatch-table").get_text()


def test_failed_report(report):
    hist = dict(report.k_histogram_ap)
    hist[6] = 1
    faulty = dataclasses.replace(
        report,
        k_histogram_ap=hist,
        extremal_ap_instances={5: (60,), 6: (97,)},
        mismatches=(Mismatch(97, True, "NotAP", ()),),
        mismatch_count=1,
    )
    soup = _soup(faulty)
    assert "failed" in soup.find(id="verdict").get_text()
    failing = soup.find_all("div", class_="fail")
    assert [item.find(class_="check-name").get_text() for item in failing] == ["❌ NO-K-GE-6"]
    rows = soup.find(id="mismatch-table").find_all("tr", class_="mismatch-row")
    assert [row.find("td").get_text() for row in rows] == ["97"]


def test_save_report_html(report, tmp_path):
    path = tmp_path / "verify.html"
    checks = lemma_consequence_checks(report)
    assert save_report_html(report, checks, str(path)) == str(path)
    soup = BeautifulSoup(path.read_text(encoding="utf-8"), "lxml")
    assert soup.title.get_text() == "Small divisors in AP - [2, 100]"
