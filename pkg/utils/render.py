import json
from sympy import Rational, latex
from sympy.polys.rings import PolyElement
from constants import FAILED, JSON, LATEX, PASSED
from models.base import BenchRow, EigenRecord, TableRow, VerifyReport
from utils.exact import format_rational
from utils.sympoly import is_symmetric, to_msym


def _label_str(label) -> str:
    return "(" + ",".join(str(entry) for entry in label) + ")"


def _latex_rational(val) -> str:
    return latex(Rational(val.numerator, val.denominator))


def poly_text(p: PolyElement) -> str:
    return str(p.as_expr()) if p else "0"


def poly_latex(p: PolyElement) -> str:
    if not p:
        return "0"
    if not is_symmetric(p):
        return latex(p.as_expr())
    parts = []
    for partition, coeff in sorted(to_msym(p).items(), reverse=True):
        body = f"M_{{{_label_str(partition)}}}"
        magnitude = abs(coeff)
        sign = "-" if coeff < 0 else "+"
        term = body if magnitude == 1 else f"{_latex_rational(magnitude)} {body}"
        parts.append((sign, term))
    head_sign, head = parts[0]
    text = ("-" if head_sign == "-" else "") + head
    for sign, term in parts[1:]:
        text += f" {sign} {term}"
    return text


def dump(doc) -> str:
    return json.dumps(doc, indent=2, ensure_ascii=False)


def render_records(records: list[EigenRecord], reports: list[VerifyReport], fmt: str) -> str:
    if fmt == JSON:
        return dump(
            {
                "records": [rec.to_document() for rec in records],
                "reports": [report.to_document() for report in reports],
            }
        )
    blocks = []
    for rec in records:
        params = rec.params
        if fmt == LATEX:
            blocks.append(
                f"P_{{{_label_str(rec.label)}}} = {poly_latex(rec.poly)}, \\quad "
                f"E = {_latex_rational(rec.energy)}"
            )
            continue
        mu = "" if params.mu is None else f" mu={format_rational(params.mu)}"
        coeffs = ", ".join(
            f"{_label_str(m)}: {format_rational(c)}" for m, c in sorted(rec.coeffs.entries.items(), reverse=True)
        )
        blocks.append(
            "\n".join(
                [
                    f"model {params.model} N={params.N} lambda={format_rational(params.lam)}{mu} "
                    f"method {rec.method} label {_label_str(rec.label)}",
                    f"P = {poly_text(rec.poly)}",
                    f"E = {format_rational(rec.energy)}",
                    f"coefficients: {coeffs}",
                ]
            )
        )
    if reports:
        blocks.append(render_reports(reports, fmt))
    return "\n\n".join(blocks)


def render_reports(reports: list[VerifyReport], fmt: str) -> str:
    if fmt == JSON:
        return dump(
            {
                "passed": all(report.passed for report in reports),
                "reports": [report.to_document() for report in reports],
            }
        )
    lines = []
    for report in reports:
        for check in report.checks:
            status = PASSED if check.passed else FAILED
            line = f"{status:<5} {report.subject:<32} {check.name}"
            if check.detail:
                line += f"  [{check.detail}]"
            if check.witness is not None:
                witness = check.witness if isinstance(check.witness, str) else poly_text(check.witness)
                line += f"  witness: {witness}"
            lines.append(line)
    return "\n".join(lines)


def render_table(rows: list[TableRow], reports: list[VerifyReport], fmt: str) -> str:
    if fmt == JSON:
        doc = {"rows": [row.to_document() for row in rows]}
        if reports:
            doc["reports"] = [report.to_document() for report in reports]
        return dump(doc)
    lines = []
    for row in rows:
        leading = sorted(row.leading.items(), reverse=True)
        if fmt == LATEX:
            terms = " ".join(f"{_label_str(k)}: {_latex_rational(c)}" for k, c in leading)
            lines.append(f"{_label_str(row.label)} & {_latex_rational(row.energy)} & {terms} \\\\")
        else:
            terms = ", ".join(f"{_label_str(k)}: {format_rational(c)}" for k, c in leading)
            lines.append(f"{_label_str(row.label):<16} E = {format_rational(row.energy):<10} {terms}")
    if reports:
        lines.append(render_reports(reports, fmt))
    return "\n".join(lines)


def render_bench(rows: list[BenchRow], fmt: str) -> str:
    if fmt == JSON:
        return dump({"rows": [row.model_dump(mode="json") for row in rows]})
    return "\n".join(
        f"{row.operation:<18} {_label_str(row.label):<16} size={row.size:<3} terms={row.terms:<6} {row.seconds:.6f}s"
        for row in rows
    )
