#!/usr/bin/env python3
"""
Verification Report HTML Page

Renders a VerificationReport and its check results as a standalone,
styled HTML page (summary cards, family table, AP-length histogram,
checks and mismatches).
"""

from datetime import datetime
from html import escape
from typing import List

import config
from classifier import ITEMS, THEOREM_FAMILIES
from verifier import CheckResult, VerificationReport, verification_passed


def _case_rows(report: VerificationReport) -> str:
    rows = ""
    for case_id in THEOREM_FAMILIES:
        rows += f"""
                <tr class="case-row">
                    <td>{case_id.value}</td>
                    <td>{ITEMS[case_id]}</td>
                    <td class="count">{report.case_counts.get(case_id.value, 0):,}</td>
                </tr>"""
    rows += f"""
                <tr class="case-row not-ap">
                    <td>NotAP</td>
                    <td>-</td>
                    <td class="count">{report.case_counts.get("NotAP", 0):,}</td>
                </tr>"""
    return rows


def _histogram_rows(report: VerificationReport) -> str:
    rows = ""
    for k, count in sorted(report.k_histogram_ap.items()):
        rows += f"""
                <tr class="k-row">
                    <td>{k}</td>
                    <td class="count">{count:,}</td>
                </tr>"""
    return rows


def _check_items(checks: List[CheckResult]) -> str:
    items = ""
    for check in checks:
        status = "pass" if check.passed else "fail"
        icon = "✅" if check.passed else "❌"
        witnesses = ", ".join(str(n) for n in check.witnesses) or "none"
        items += f"""
            <div class="check-item {status}">
                <span class="check-name">{icon} {escape(check.name)}</span>
                <span class="check-detail">{escape(check.detail)}</span>
                <span class="check-witnesses">witnesses: {witnesses}</span>
            </div>"""
    return items


def _mismatch_rows(report: VerificationReport) -> str:
    if not report.mismatches:
        return """
                <tr><td colspan="4" class="empty">No mismatches</td></tr>"""
    rows = ""
    for m in report.mismatches:
        rows += f"""
                <tr class="mismatch-row">
                    <td>{m.n}</td>
                    <td>{m.oracle_is_ap}</td>
                    <td>{escape(m.classifier_case)}</td>
                    <td>{list(m.nontrivial_small_divisors)}</td>
                </tr>"""
    return rows


def generate_report_html(report: VerificationReport, checks: List[CheckResult]) -> str:
    """
    Generate the HTML page for a verification run.

    Args:
        report: The merged verification report
        checks: Output of lemma_consequence_checks(report)

    Returns:
        str: Complete HTML document
    """
    passed = verification_passed(report, checks)
    verdict = "✅ Verified" if passed else "❌ Verification failed"
    max_k = "-" if report.max_k_ap is None else report.max_k_ap

    return f"""<!DOCTYPE html>
<html lang="en">
<head>
    <meta charset="UTF-8">
    <meta name="viewport" content="width=device-width, initial-scale=1.0">
    <title>Small divisors in AP - [{report.lo}, {report.hi}]</title>
    <style>
        * {{
            margin: 0;
            padding: 0;
            box-sizing: border-box;
        }}

        body {{
            font-family: 'Segoe UI', Tahoma, Geneva, Verdana, sans-serif;
            background: linear-gradient(135deg, #667eea 0%, #764ba2 100%);
            min-height: 100vh;
            padding: 20px;
        }}

        .container {{
            max-width: 900px;
            margin: 0 auto;
            background: white;
            border-radius: 15px;
            box-shadow: 0 20px 40px rgba(0,0,0,0.1);
            overflow: hidden;
        }}

        .header {{
            background: linear-gradient(135deg, #667eea 0%, #764ba2 100%);
            color: white;
            padding: 30px;
            text-align: center;
        }}

        .header h1 {{
            font-size: 2.2em;
            margin-bottom: 10px;
            font-weight: 300;
        }}

        .stats {{
            background: #f8f9fa;
            padding: 20px;
            border-bottom: 1px solid #e9ecef;
        }}

        .stats-grid {{
            display: grid;
            grid-template-columns: repeat(auto-fit, minmax(160px, 1fr));
            gap: 15px;
            text-align: center;
        }}

        .stat-item {{
            background: white;
            padding: 15px;
            border-radius: 8px;
            box-shadow: 0 2px 4px rgba(0,0,0,0.1);
        }}

        .stat-number {{
            font-size: 1.5em;
            font-weight: bold;
            color: #667eea;
        }}

        .stat-label {{
            color: #6c757d;
            font-size: 0.9em;
        }}

        .section {{
            padding: 30px;
        }}

        .section h2 {{
            color: #333;
            margin-bottom: 20px;
            font-size: 1.6em;
        }}

        table {{
            width: 100%;
            border-collapse: collapse;
        }}

        th, td {{
            padding: 8px 12px;
            border-bottom: 1px solid #e9ecef;
            text-align: left;
        }}

        td.count {{
            text-align: right;
            font-variant-numeric: tabular-nums;
        }}

        .check-item {{
            border: 1px solid #e9ecef;
            border-radius: 12px;
            padding: 15px 20px;
            margin-bottom: 12px;
            display: flex;
            flex-wrap: wrap;
            gap: 12px;
        }}

        .check-item.fail {{
            border-color: #dc3545;
            background: #fff5f5;
        }}

        .check-name {{
            font-weight: bold;
            color: #333;
        }}

        .check-detail, .check-witnesses {{
            color: #6c757d;
        }}

        .footer {{
            background: #f8f9fa;
            padding: 20px;
            text-align: center;
            color: #6c757d;
            border-top: 1px solid #e9ecef;
        }}

        @media (max-width: 768px) {{
            .stats-grid {{
                grid-template-columns: 1fr;
            }}
        }}
    </style>
</head>
<body>
    <div class="container">
        <div class="header">
            <h1 id="verdict">{verdict}</h1>
            <p>Nontrivial small divisors in arithmetic progression over [{report.lo:,}, {report.hi:,}]</p>
        </div>

        <div class="stats">
            <div class="stats-grid">
                <div class="stat-item">
                    <div class="stat-number" id="numbers">{report.size:,}</div>
                    <div class="stat-label">Numbers checked</div>
                </div>
                <div class="stat-item">
                    <div class="stat-number" id="ap-instances">{report.ap_instances:,}</div>
                    <div class="stat-label">A_n in AP</div>
                </div>
                <div class="stat-item">
                    <div class="stat-number" id="mismatches">{report.mismatch_count:,}</div>
                    <div class="stat-label">Mismatches</div>
                </div>
                <div class="stat-item">
                    <div class="stat-number" id="max-k">{max_k}</div>
                    <div class="stat-label">Longest AP</div>
                </div>
                <div class="stat-item">
                    <div class="stat-number" id="throughput">{report.throughput:,.0f}</div>
                    <div class="stat-label">Numbers per second</div>
                </div>
            </div>
        </div>

        <div class="section">
            <h2>📊 Families</h2>
            <table id="case-table">
                <tr><th>Family</th><th>Item</th><th>Count</th></tr>{_case_rows(report)}
            </table>
        </div>

        <div class="section">
            <h2>📏 AP length histogram</h2>
            <table id="k-table">
                <tr><th>k = |A_n|</th><th>Count</th></tr>{_histogram_rows(report)}
            </table>
        </div>

        <div class="section" id="checks">
            <h2>🔍 Checks</h2>{_check_items(checks)}
        </div>

        <div class="section">
            <h2>⚠️ Mismatches</h2>
            <table id="mismatch-table">
                <tr><th>n</th><th>Oracle AP</th><th>Classifier</th><th>A_n</th></tr>{_mismatch_rows(report)}
            </table>
        </div>

        <div class="footer">
            <p>Generated {datetime.now().strftime('%Y-%m-%d %H:%M')} | {report.segments} segment(s) in {report.elapsed:.2f}s | schema {config.SCHEMA_VERSION}</p>
        </div>
    </div>
</body>
</html>
"""


def save_report_html(report: VerificationReport, checks: List[CheckResult], path: str) -> str:
    """
    Write the HTML page to path.

    Returns:
        str: The path written
    """
    with open(path, "w", encoding=config.FILE_ENCODING) as f:
        f.write(generate_report_html(report, checks))
    return path
